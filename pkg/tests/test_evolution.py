"""Grid synthesis and quadrature moments: the model-independent oracle."""

import math

import numpy as np
import pytest

from kgcoherent import evolution, linear_osc, poschl_teller
from kgcoherent.evolution import (
    SupportError,
    default_grid,
    heisenberg_product,
    lowering_residual,
    make_state,
    momentum_moments,
    position_moments,
    synthesize,
)
from kgcoherent.linear_osc import CoherentSpec, LinearModel, coherent_coefficients
from kgcoherent.numerics import Grid, GridFunction, quadrature
from kgcoherent.poschl_teller import PTModel


def linear_coherent_state(alpha, truncation=50, model=None):
    model = model or LinearModel(1, 1)
    return make_state(model, coherent_coefficients(CoherentSpec(alpha, truncation)))


class TestSynthesize:
    def test_stationary_density(self):
        m = LinearModel(1, 1)
        c = np.zeros(6, dtype=complex)
        c[0] = 1.0
        state = make_state(m, c)
        grid = default_grid(m)
        f0 = synthesize(state, grid, 0.0)
        f1 = synthesize(state, grid, 2.7)
        assert np.allclose(np.abs(f0.values), np.abs(f1.values), atol=1e-14)

    def test_unit_norm(self):
        state = linear_coherent_state(0.1 + 0.2j)
        grid = default_grid(state.model)
        f = synthesize(state, grid, 0.0)
        norm = quadrature(GridFunction(grid, np.abs(f.values) ** 2)).real
        assert norm == pytest.approx(1.0, abs=1e-8)

    def test_pt_wall_values(self):
        m = PTModel(1, 1)
        state = make_state(m, poschl_teller.coherent_coefficients(m, 1.0, 40).coefficients)
        f = synthesize(state, default_grid(m), 0.3)
        assert abs(f.values[0]) < 1e-15
        assert abs(f.values[-1]) < 1e-15

    def test_pt_grid_outside_support_rejected(self):
        m = PTModel(1, 1)
        state = make_state(m, poschl_teller.coherent_coefficients(m, 1.0, 10).coefficients)
        with pytest.raises(ValueError):
            synthesize(state, Grid(-2.0, 2.0, 101), 0.0)

    def test_norm_conserved_in_time(self):
        state = linear_coherent_state(1 + 2j)
        grid = default_grid(state.model)
        norms = []
        for t in (0.0, 1.0, 5.0, 20.0):
            f = synthesize(state, grid, t)
            norms.append(quadrature(GridFunction(grid, np.abs(f.values) ** 2)).real)
        assert max(norms) - min(norms) < 1e-10


class TestPositionMoments:
    def test_gaussian_ground_state(self):
        m = LinearModel(1, 1)
        c = np.zeros(3, dtype=complex)
        c[0] = 1.0
        f = synthesize(make_state(m, c), default_grid(m), 0.0)
        mean_x, mean_x2, norm = position_moments(f)
        assert mean_x == pytest.approx(0.0, abs=1e-10)
        assert mean_x2 == pytest.approx(0.5, abs=1e-8)
        assert norm == pytest.approx(1.0, abs=1e-8)

    def test_first_excited(self):
        m = LinearModel(1, 1)
        c = np.zeros(3, dtype=complex)
        c[1] = 1.0
        f = synthesize(make_state(m, c), default_grid(m), 0.0)
        _, mean_x2, _ = position_moments(f)
        assert mean_x2 == pytest.approx(1.5, abs=1e-8)

    def test_support_truncation_error(self):
        m = LinearModel(1, 1)
        c = np.zeros(3, dtype=complex)
        c[0] = 1.0
        narrow = Grid(-0.5, 0.5, 201)
        f = synthesize(make_state(m, c), narrow, 0.0)
        with pytest.raises(SupportError):
            position_moments(f)


class TestMomentumMoments:
    def test_real_function_zero_momentum(self):
        m = LinearModel(1, 1)
        c = np.zeros(4, dtype=complex)
        c[2] = 1.0
        f = synthesize(make_state(m, c), default_grid(m), 0.0)
        mean_p, _ = momentum_moments(f)
        assert mean_p == pytest.approx(0.0, abs=1e-10)

    def test_ground_state_p2(self):
        m = LinearModel(1, 1)
        c = np.zeros(3, dtype=complex)
        c[0] = 1.0
        f = synthesize(make_state(m, c), default_grid(m), 0.0)
        _, mean_p2 = momentum_moments(f)
        assert mean_p2 == pytest.approx(0.5, abs=1e-7)

    def test_coherent_momentum_at_t0(self):
        f = synthesize(linear_coherent_state(0.1 + 0.2j),
                       default_grid(LinearModel(1, 1)), 0.0)
        mean_p, _ = momentum_moments(f)
        assert mean_p == pytest.approx(math.sqrt(2.0) * 0.2, abs=1e-6)

    def test_boundary_leak_error(self):
        g = Grid(-1.0, 1.0, 201)
        f = GridFunction(g, np.ones(201, dtype=complex))
        with pytest.raises(SupportError):
            momentum_moments(f)


class TestHeisenbergProduct:
    def test_stationary_ground_state(self):
        m = LinearModel(1, 1)
        c = np.zeros(3, dtype=complex)
        c[0] = 1.0
        dx, dp, prod = heisenberg_product(make_state(m, c), default_grid(m), 0.0)
        assert prod == pytest.approx(0.5, abs=1e-6)

    def test_matches_closed_form(self):
        m = LinearModel(1, 1)
        spec = CoherentSpec(0.1 + 0.2j, 50)
        state = make_state(m, coherent_coefficients(spec))
        grid = default_grid(m)
        for t in (0.0, 7.3):
            _, _, prod = heisenberg_product(state, grid, t)
            _, _, want = linear_osc.uncertainties(m, spec, t)
            assert prod == pytest.approx(want, abs=1e-6)

    def test_pt_state_bounded_below(self):
        m = PTModel(1, 1)
        state = make_state(m, poschl_teller.coherent_coefficients(m, 1.0, 60).coefficients)
        _, _, prod = heisenberg_product(state, default_grid(m), 0.0)
        assert prod >= 0.5

    def test_grid_refinement_stable(self):
        m = LinearModel(1, 1)
        state = make_state(m, coherent_coefficients(CoherentSpec(0.1 + 0.2j, 50)))
        coarse = heisenberg_product(state, default_grid(m, 4001), 1.3)
        fine = heisenberg_product(state, default_grid(m, 8001), 1.3)
        assert abs(coarse[2] - fine[2]) < 1e-8


class TestLoweringResidual:
    def test_zero_at_t0(self):
        assert lowering_residual(linear_coherent_state(0.7 - 0.3j), 0.0) <= 1e-12

    def test_grows_under_evolution(self):
        assert lowering_residual(linear_coherent_state(1 + 2j), 1.0) > 1e-3

    def test_vacuum_defined_as_zero(self):
        state = linear_coherent_state(0.0, truncation=5)
        assert lowering_residual(state, 0.0) == 0.0

    def test_pt_state_rejected(self):
        m = PTModel(1, 1)
        state = make_state(m, poschl_teller.coherent_coefficients(m, 1.0, 10).coefficients)
        with pytest.raises(ValueError):
            lowering_residual(state, 0.0)

    def test_zero_state_rejected(self):
        state = make_state(LinearModel(1, 1), np.zeros(4, dtype=complex))
        with pytest.raises(ValueError):
            lowering_residual(state, 0.0)


class TestStateVector:
    def test_mismatched_lengths_rejected(self):
        m = LinearModel(1, 1)
        with pytest.raises(ValueError):
            evolution.StateVector(m, np.zeros(3, dtype=complex), np.zeros(4))

    def test_model_tags(self):
        lin = linear_coherent_state(0.5)
        assert lin.model_tag == "LinearScalar"
        m = PTModel(1, 1)
        state = make_state(m, poschl_teller.coherent_coefficients(m, 0.5, 10).coefficients)
        assert state.model_tag == "PoschlTeller"
