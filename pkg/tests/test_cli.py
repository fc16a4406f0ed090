"""Command-line interface: parsing, exit codes, CSV/JSON emission."""

import json
import math

import pytest

from kgcoherent.cli import CSV_HEADER, main, parse_alpha


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestAlphaParsing:
    @pytest.mark.parametrize("text,want", [
        ("0.1+0.2i", 0.1 + 0.2j),
        ("1-2i", 1 - 2j),
        (" 1 + 2 i ", 1 + 2j),
        ("-0.5-0.25i", -0.5 - 0.25j),
        ("3", 3 + 0j),
        ("2i", 2j),
        ("-i", -1j),
        ("1e-2+2e-1i", 0.01 + 0.2j),
    ])
    def test_valid(self, text, want):
        assert parse_alpha(text) == want

    @pytest.mark.parametrize("text", ["", "abc", "1+2", "i2", "1++2i"])
    def test_invalid(self, text):
        from kgcoherent.cli import UsageError
        with pytest.raises(UsageError):
            parse_alpha(text)


class TestSpectrumCommand:
    def test_linear_levels(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--model", "linear",
                           "--k", "1", "--n", "3")
        assert code == 0
        rows = out.strip().splitlines()
        assert rows[0] == "n,energy,epsilon"
        energies = [float(r.split(",")[1]) for r in rows[1:]]
        assert energies == pytest.approx([1.0, math.sqrt(3), math.sqrt(5)],
                                         rel=1e-8)

    def test_pt_levels(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--model", "pt",
                           "--m", "1", "--omega", "1", "--n", "2")
        assert code == 0
        energies = [float(r.split(",")[1]) for r in out.strip().splitlines()[1:]]
        assert energies == pytest.approx([1.6180340, 2.6180340], abs=1e-6)

    def test_negative_coupling_rejected(self, capsys):
        code, _, err = run(capsys, "spectrum", "--k", "-1")
        assert code == 2
        assert "coupling must be positive" in err


class TestStateCommand:
    def test_linear_vacuum(self, capsys):
        code, out, _ = run(capsys, "state", "--model", "linear",
                           "--alpha", "0", "--trunc", "5")
        assert code == 0
        rows = json.loads(out)["coefficients"]
        assert rows[0]["abs2"] == 1.0
        assert all(r["abs2"] == 0.0 for r in rows[1:])

    def test_pt_ratio(self, capsys):
        code, out, _ = run(capsys, "state", "--model", "pt",
                           "--alpha", "1+0i", "--trunc", "10")
        assert code == 0
        rows = json.loads(out)["coefficients"]
        ratio = abs(rows[1]["re"] / rows[0]["re"])
        assert ratio == pytest.approx(0.4370160, abs=1e-6)

    def test_cumulative_norm(self, capsys):
        code, out, _ = run(capsys, "state", "--model", "pt",
                           "--alpha", "2-1i", "--trunc", "60")
        rows = json.loads(out)["coefficients"]
        assert rows[-1]["cumulative_norm"] >= 1.0 - 1e-10


class TestEvolveAndFigures:
    def test_evolve_header_and_values(self, capsys):
        code, out, _ = run(capsys, "evolve", "--alpha", "0.1+0.2i",
                           "--t0", "0", "--t1", "1", "--dt", "0.5")
        assert code == 0
        rows = out.strip().splitlines()
        assert rows[0] == CSV_HEADER
        first = [float(v) for v in rows[1].split(",")]
        assert first[0] == 0.0
        assert first[3] == pytest.approx(0.5, abs=1e-8)
        assert first[4] == pytest.approx(math.sqrt(2) * 0.1, abs=1e-8)

    def test_evolve_validation(self, capsys):
        code, _, err = run(capsys, "evolve", "--t0", "5", "--t1", "1")
        assert code == 2

    def test_unknown_figure(self, capsys):
        code, _, err = run(capsys, "figures", "fig99")
        assert code == 2
        assert "unknown figure" in err

    def test_fig1_envelope_and_determinism(self, tmp_path, capsys):
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        assert main(["figures", "fig1", "-o", str(out1)]) == 0
        assert main(["figures", "fig1", "-o", str(out2)]) == 0
        b1, b2 = out1.read_bytes(), out2.read_bytes()
        assert b1 == b2
        rows = b1.decode().strip().splitlines()
        assert rows[0] == CSV_HEADER
        products = [float(r.split(",")[3]) for r in rows[1:]]
        assert min(products) >= 0.4999
        assert max(products) <= 0.515
        meta = json.loads((tmp_path / "a.meta.json").read_text())
        assert meta["config"]["dt"] == 0.05
        assert meta["config"]["alpha"] == "0.1+0.2i"

    def test_fig8_initial_mean_x(self, tmp_path):
        out = tmp_path / "fig8.csv"
        assert main(["figures", "fig8", "-o", str(out)]) == 0
        first = out.read_text().splitlines()[1].split(",")
        assert float(first[4]) == pytest.approx(0.141421, abs=1e-6)

    def test_outdir_env(self, tmp_path, monkeypatch):
        monkeypatch.setenv("KGCOHERENT_OUTDIR", str(tmp_path))
        assert main(["figures", "fig1"]) == 0
        assert (tmp_path / "fig1.csv").exists()


class TestConfigFile:
    def test_merge_with_flags_winning(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("model=pt\nomega=1\nn=2\n")
        code, out, _ = run(capsys, "--config", str(cfg), "spectrum")
        assert code == 0
        assert len(out.strip().splitlines()) == 3  # header + 2 levels
        code, out, _ = run(capsys, "--config", str(cfg), "spectrum", "--n", "4")
        assert len(out.strip().splitlines()) == 5  # flag wins

    def test_bad_config_line(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("just-a-word\n")
        code, _, err = run(capsys, "--config", str(cfg), "spectrum")
        assert code == 2


class TestVerifyCommands:
    def test_verify_coherence(self, capsys):
        code, out, err = run(capsys, "verify", "coherence")
        assert code == 0
        payload = json.loads(out)
        assert payload["passed"]
        assert all(c["passed"] for c in payload["checks"])

    def test_verify_unknown_suite(self, capsys):
        code, _, err = run(capsys, "verify", "nonsense")
        assert code == 2

    def test_measure_check_small(self, capsys):
        code, out, _ = run(capsys, "measure-check", "--n-max", "2")
        assert code == 0
        payload = json.loads(out)
        assert payload["passed"]
        assert [m["n"] for m in payload["moments"]] == [0, 1, 2]

    def test_measure_check_validation(self, capsys):
        code, _, _ = run(capsys, "measure-check", "--m", "-1")
        assert code == 2

    def test_oracle_command(self, capsys):
        code, out, _ = run(capsys, "oracle", "--model", "linear",
                           "--n", "4", "--points", "1001")
        assert code == 0
        payload = json.loads(out)
        assert payload["passed"]
        assert payload["max_rel_error"] <= 1e-3
