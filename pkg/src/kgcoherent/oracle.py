"""Independent finite-difference spectral solver for H_s.

Discretizes H_s = -(1/2m) d^2/dx^2 + (m + S(x))^2 / (2m) with Dirichlet
boundaries and extracts the lowest eigenvalues by Sturm bisection.  Used
to validate every analytic spectrum in the package from a route that
shares no code with the analytic formulas.
"""

import math
from dataclasses import dataclass

import numpy as np

from .numerics import Grid, TridiagonalMatrix, tridiag_smallest_eigenvalues

__all__ = [
    "PotentialSpec",
    "linear_potential",
    "pt_potential",
    "build_hamiltonian",
    "fd_schrodinger_eigenvalues",
    "spectrum_compare",
]

PT_WALL_INSET = 1e-4


@dataclass(frozen=True)
class PotentialSpec:
    """Mass, scalar potential callable, and discretization domain."""

    m: float
    s: object  # callable x-array -> S(x)
    grid: Grid
    label: str = "custom"

    def refined(self, factor=2):
        g = self.grid
        return PotentialSpec(self.m, self.s, Grid(g.x_min, g.x_max,
                                                  factor * (g.count - 1) + 1),
                             self.label)


def linear_potential(m=1.0, k=1.0, count=4001, half_width=None):
    """S(x) = k|x| - m on a box wide enough that the wall is invisible."""
    if half_width is None:
        half_width = 12.0 / math.sqrt(k)
    return PotentialSpec(m, lambda x: k * np.abs(x) - m,
                         Grid(-half_width, half_width, count), "linear")


def pt_potential(m=1.0, omega=1.0, count=4001, inset=PT_WALL_INSET, branch=+1):
    """S(x) = -m +/- m/cos(omega x), walls inset from the cosine singularity."""
    if branch not in (+1, -1):
        raise ValueError("branch must be +1 or -1")
    half = math.pi / (2.0 * omega) - inset
    return PotentialSpec(m, lambda x: -m + branch * m / np.cos(omega * x),
                         Grid(-half, half, count), "poschl-teller")


def build_hamiltonian(spec):
    """Dirichlet tridiagonal discretization of H_s on the interior points."""
    g = spec.grid
    if g.count - 2 < 100:
        raise ValueError("need at least 100 interior points")
    x = g.points()[1:-1]
    s = np.asarray(spec.s(x), dtype=float)
    if np.any(~np.isfinite(s)):
        raise ValueError("potential is singular on an interior grid point")
    h = g.h
    m = spec.m
    diag = 1.0 / (m * h * h) + (m + s) ** 2 / (2.0 * m)
    off = np.full(x.size - 1, -1.0 / (2.0 * m * h * h))
    return TridiagonalMatrix(diag, off)


def fd_schrodinger_eigenvalues(spec, count, brackets=None):
    """The lowest `count` eigenvalues epsilon_n of the discretized H_s."""
    return tridiag_smallest_eigenvalues(build_hamiltonian(spec), count,
                                        brackets=brackets)


def spectrum_compare(spec, analytic_energies, n_count, refine_factor=2):
    """FD spectrum vs analytic E_n at two resolutions.

    Converts FD eigenvalues to energies via E = sqrt(2 m epsilon), reports
    relative errors on the fine grid and the empirical convergence order
    from the coarse/fine pair.  Orders below 1.5 mark the run as failed.
    """
    analytic = np.asarray(analytic_energies, dtype=float)
    if n_count > min(20, analytic.size):
        raise ValueError("n_count exceeds the supplied analytic levels (max 20)")
    analytic = analytic[:n_count]
    eps_coarse = fd_schrodinger_eigenvalues(spec, n_count)
    # the coarse values bracket the fine ones to O(h^2); the Sturm solver
    # verifies the hint and widens it if the discretization shifted further
    width = np.maximum(1e-3 * np.abs(eps_coarse), 1e-4)
    eps_fine = fd_schrodinger_eigenvalues(
        spec.refined(refine_factor), n_count,
        brackets=(eps_coarse - width, eps_coarse + width))
    e_coarse = np.sqrt(2.0 * spec.m * eps_coarse)
    e_fine = np.sqrt(2.0 * spec.m * eps_fine)
    err_coarse = np.abs(e_coarse - analytic) / analytic
    err_fine = np.abs(e_fine - analytic) / analytic
    with np.errstate(divide="ignore", invalid="ignore"):
        orders = np.log(err_coarse / err_fine) / math.log(refine_factor)
    orders = orders[np.isfinite(orders)]
    order = float(np.median(orders)) if orders.size else float("nan")
    return {
        "label": spec.label,
        "energies_fd": e_fine,
        "energies_analytic": analytic,
        "rel_errors": err_fine,
        "max_rel_error": float(np.max(err_fine)),
        "convergence_order": order,
        "converged": bool(order >= 1.5),
    }
