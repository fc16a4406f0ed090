"""Named verification suites: spectra, coherence, measure, oracle.

Each suite returns a list of check records {name, value, bound, passed};
the CLI serializes them and turns failures into exit codes.  The bounds
are the package's published tolerances, fixed here rather than in the
callers.
"""

import numpy as np

from . import evolution, linear_osc, oracle, poschl_teller

__all__ = ["verify_spectra", "verify_coherence", "verify_measure",
           "verify_oracle", "run_suite", "SUITES"]


def _check(name, value, bound, passed=None):
    if passed is None:
        passed = bool(value <= bound)
    return {"name": name, "value": float(value), "bound": float(bound),
            "passed": bool(passed)}


def verify_spectra(grid_count=4001, n_count=8):
    """FD eigensolver vs analytic spectra for both models."""
    checks = []
    lin = linear_osc.LinearModel(1.0, 1.0)
    rep = oracle.spectrum_compare(
        oracle.linear_potential(lin.m, lin.k, grid_count),
        lin.energies(n_count - 1), n_count)
    checks.append(_check("linear_fd_max_rel_error", rep["max_rel_error"], 1e-3))
    checks.append(_check("linear_fd_convergence_order", rep["convergence_order"],
                         2.2, passed=1.8 <= rep["convergence_order"] <= 2.2))
    ptm = poschl_teller.PTModel(1.0, 1.0)
    rep = oracle.spectrum_compare(
        oracle.pt_potential(ptm.m, ptm.omega, grid_count),
        ptm.energies(n_count - 1), n_count)
    checks.append(_check("pt_fd_max_rel_error", rep["max_rel_error"], 1e-3))
    checks.append(_check("pt_fd_convergence_order", rep["convergence_order"],
                         2.2, passed=1.8 <= rep["convergence_order"] <= 2.2))
    spacing = np.diff(ptm.energies(60)) - ptm.omega
    checks.append(_check("pt_equal_spacing", np.max(np.abs(spacing)), 0.0,
                         passed=bool(np.all(spacing == 0.0))))
    return checks


def verify_coherence(truncation=60):
    """PT eigenstate/phase-coherence identities and linear-model decoherence."""
    checks = []
    ptm = poschl_teller.PTModel(1.0, 1.0)
    alphas = [0.5, 1.0, 1 + 0.5j, 1 + 2j, 2 - 1j]
    worst_eig = 0.0
    for alpha in alphas:
        state = poschl_teller.coherent_coefficients(ptm, alpha, truncation)
        out = poschl_teller.apply_annihilation(ptm, state.coefficients)
        res = np.linalg.norm(out - alpha * state.coefficients) \
            / np.linalg.norm(state.coefficients)
        worst_eig = max(worst_eig, float(res))
    checks.append(_check("pt_eigenstate_residual", worst_eig, 1e-10))
    worst_phase = max(
        poschl_teller.phase_coherence_check(ptm, alpha, truncation, t)
        for alpha in alphas for t in np.linspace(0.0, 12.0, 20))
    checks.append(_check("pt_phase_coherence_residual", worst_phase, 1e-12))
    lin = linear_osc.LinearModel(1.0, 1.0)
    state = evolution.make_state(
        lin, linear_osc.coherent_coefficients(linear_osc.CoherentSpec(1 + 2j, 50)))
    checks.append(_check("linear_lowering_residual_t0",
                         evolution.lowering_residual(state, 0.0), 1e-12))
    res_t1 = evolution.lowering_residual(state, 1.0)
    checks.append(_check("linear_lowering_residual_t1", res_t1, 1e-3,
                         passed=res_t1 > 1e-3))
    return checks


def verify_measure(n_max=10, tol=1e-6):
    """Moments of the candidate resolution-of-unity weight."""
    ptm = poschl_teller.PTModel(1.0, 1.0)
    report = poschl_teller.verify_measure_moments(ptm, n_max, tol)
    return [_check(f"measure_moment_n{r['n']}", r["rel_err"], tol,
                   passed=r["passed"]) for r in report]


def verify_oracle(grid_count=4001, truncation=50):
    """Closed-form linear-model series vs quadrature moments on an alpha/t lattice."""
    checks = []
    lin = linear_osc.LinearModel(1.0, 1.0)
    grid = evolution.default_grid(lin, grid_count)
    worst = 0.0
    for alpha in (0.1 + 0.2j, 1 + 2j, 2 - 1j, 0.5):
        spec = linear_osc.CoherentSpec(alpha, truncation)
        state = evolution.make_state(lin, linear_osc.coherent_coefficients(spec))
        for t in (0.0, 0.7, 3.1, 12.9):
            f = evolution.synthesize(state, grid, t)
            mean_x, mean_x2, _ = evolution.position_moments(f)
            mean_p, mean_p2 = evolution.momentum_moments(f)
            series = linear_osc.expectation_series(lin, spec, t)
            for got, want in zip((mean_x, mean_p, mean_x2, mean_p2), series):
                err = abs(got - want) / max(abs(want), 1e-2)
                worst = max(worst, err)
    checks.append(_check("linear_series_vs_quadrature", worst, 1e-6))
    f0 = evolution.synthesize(state, grid, 0.0)
    f1 = evolution.synthesize(state, grid, 5.0)
    from .numerics import GridFunction, quadrature
    n0 = quadrature(GridFunction(grid, np.abs(f0.values) ** 2)).real
    n1 = quadrature(GridFunction(grid, np.abs(f1.values) ** 2)).real
    checks.append(_check("norm_conservation", abs(n1 - n0), 1e-10))
    return checks


SUITES = {
    "spectra": verify_spectra,
    "coherence": verify_coherence,
    "measure": verify_measure,
    "oracle": verify_oracle,
}


def run_suite(name):
    """Run one named suite, or every suite for name == 'all'."""
    if name == "all":
        checks = []
        for suite in SUITES.values():
            checks.extend(suite())
        return checks
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name]()
