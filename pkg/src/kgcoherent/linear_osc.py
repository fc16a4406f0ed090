"""Linear scalar potential S(x) = k|x| - m for a relativistic spinless particle.

The relativistic spectrum is E_n = sqrt((2n+1) k); the underlying
Schrodinger problem is a harmonic oscillator with m*omega = k, so the
eigenfunctions are Hermite functions.  Annihilation-operator coherent
states built on the positive-energy sector carry the usual Poissonian
coefficients; their expectation values evolve with the non-equally-spaced
relativistic phases, which is what the closed-form series below encode.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .numerics import compensated_sum, hermite_h, log_gamma

__all__ = [
    "LinearModel",
    "CoherentSpec",
    "TimeSeries",
    "VarianceError",
    "coherent_coefficients",
    "expectation_series",
    "uncertainties",
    "time_series",
]

HEISENBERG_FLOOR = 0.5 * (1.0 - 1e-6)
_VAR_CLAMP = -1e-10


class VarianceError(RuntimeError):
    """A variance came out negative beyond round-off tolerance."""


@dataclass(frozen=True)
class LinearModel:
    """Mass m and coupling k (natural units); omega = k/m."""

    m: float = 1.0
    k: float = 1.0

    def __post_init__(self):
        if not (self.m > 0.0):
            raise ValueError("mass must be positive")
        if not (self.k > 0.0):
            raise ValueError("coupling must be positive")

    @property
    def omega(self):
        return self.k / self.m

    def energy(self, n):
        """Relativistic level E_n = sqrt((2n+1) k), positive branch."""
        if n < 0:
            raise ValueError("n must be >= 0")
        return math.sqrt((2 * n + 1) * self.k)

    def schrodinger_eigenvalue(self, n):
        """epsilon_n = E_n^2 / (2m) = (n + 1/2) omega."""
        if n < 0:
            raise ValueError("n must be >= 0")
        return (2 * n + 1) * self.k / (2.0 * self.m)

    def eigenfunction(self, n, x):
        """Normalized oscillator eigenfunction u_n(x), with m*omega = k."""
        if n < 0:
            raise ValueError("n must be >= 0")
        xi = math.sqrt(self.k) * float(x)
        log_norm = 0.25 * math.log(self.k / math.pi) - 0.5 * (
            n * math.log(2.0) + log_gamma(n + 1.0))
        h = hermite_h(n, xi)
        if h == 0.0:
            return 0.0
        # split the exponent so large-n values stay in range
        return math.copysign(1.0, h) * math.exp(
            log_norm + math.log(abs(h)) - 0.5 * xi * xi)

    def eigenfunction_basis(self, n_max, x):
        """Rows u_0..u_{n_max} sampled on the array x (stable recursion)."""
        x = np.asarray(x, dtype=float)
        xi = math.sqrt(self.k) * x
        basis = np.empty((n_max + 1, x.size))
        basis[0] = (self.k / math.pi) ** 0.25 * np.exp(-0.5 * xi * xi)
        if n_max >= 1:
            basis[1] = math.sqrt(2.0) * xi * basis[0]
        for n in range(1, n_max):
            basis[n + 1] = (math.sqrt(2.0 / (n + 1)) * xi * basis[n]
                            - math.sqrt(n / (n + 1.0)) * basis[n - 1])
        return basis

    def energies(self, n_max):
        return np.sqrt((2.0 * np.arange(n_max + 1) + 1.0) * self.k)


@dataclass(frozen=True)
class CoherentSpec:
    """Annihilation-operator eigenvalue alpha and truncation order N."""

    alpha: complex
    truncation: int = 50

    def __post_init__(self):
        if self.truncation < 1:
            raise ValueError("truncation must be >= 1")
        if not (math.isfinite(abs(self.alpha))):
            raise ValueError("alpha must be finite")


@dataclass(frozen=True)
class TimeSeries:
    t: np.ndarray
    mean_x: np.ndarray
    mean_p: np.ndarray
    var_x: np.ndarray
    var_p: np.ndarray
    dx: np.ndarray
    dp: np.ndarray
    product: np.ndarray


def coherent_coefficients(spec):
    """c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!), n = 0..N, in log space."""
    alpha = complex(spec.alpha)
    n_idx = np.arange(spec.truncation + 1)
    r = abs(alpha)
    if r == 0.0:
        c = np.zeros(spec.truncation + 1, dtype=complex)
        c[0] = 1.0
        return c
    phase = cmath.phase(alpha)
    log_mag = (n_idx * math.log(r) - 0.5 * r * r
               - 0.5 * np.array([log_gamma(n + 1.0) for n in n_idx]))
    return np.exp(log_mag) * np.exp(1j * phase * n_idx)


def _series_terms(model, spec, t):
    """The four compensated sums of the closed-form expectation series."""
    alpha = complex(spec.alpha)
    a, b = alpha.real, alpha.imag
    r2 = a * a + b * b
    n_max = spec.truncation
    energies = model.energies(n_max + 2)

    # weights e^{-|alpha|^2} |alpha|^{2n} / n!, built iteratively
    w = np.empty(n_max + 1)
    w[0] = math.exp(-r2)
    for n in range(n_max):
        w[n + 1] = w[n] * r2 / (n + 1)

    th1 = (energies[:n_max + 1] - energies[1:n_max + 2]) * t
    th2 = (energies[:n_max + 1] - energies[2:n_max + 3]) * t
    sx = compensated_sum(w * (a * np.cos(th1) - b * np.sin(th1)))
    sp = compensated_sum(w * (a * np.sin(th1) + b * np.cos(th1)))
    cross = compensated_sum(
        w * ((a * a - b * b) * np.cos(th2) - 2.0 * a * b * np.sin(th2)))
    return sx, sp, cross, r2


def expectation_series(model, spec, t):
    """Closed-form <x>, <p>, <x^2>, <p^2> at time t (series over n <= N)."""
    k = model.k
    sx, sp, cross, r2 = _series_terms(model, spec, float(t))
    mean_x = math.sqrt(2.0 / k) * sx
    mean_p = math.sqrt(2.0 * k) * sp
    mean_x2 = (r2 + 0.5) / k + cross / k
    mean_p2 = k * (r2 + 0.5) - k * cross
    return mean_x, mean_p, mean_x2, mean_p2


def uncertainties(model, spec, t):
    """(dx, dp, dx*dp) from the closed-form series at time t."""
    mean_x, mean_p, mean_x2, mean_p2 = expectation_series(model, spec, t)
    var_x = mean_x2 - mean_x * mean_x
    var_p = mean_p2 - mean_p * mean_p
    if var_x < _VAR_CLAMP or var_p < _VAR_CLAMP:
        raise VarianceError(
            f"negative variance beyond round-off at t={t}: "
            f"var_x={var_x:.3e}, var_p={var_p:.3e}")
    dx = math.sqrt(max(var_x, 0.0))
    dp = math.sqrt(max(var_p, 0.0))
    return dx, dp, dx * dp


def time_series(model, spec, t_grid):
    """Sampled means and uncertainties over a strictly increasing t grid."""
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.size == 0:
        raise ValueError("t_grid must be nonempty")
    if t_grid.size > 1 and not np.all(np.diff(t_grid) > 0.0):
        raise ValueError("t_grid must be strictly increasing")
    rows = np.empty((t_grid.size, 4))
    for i, t in enumerate(t_grid):
        rows[i] = expectation_series(model, spec, t)
    mean_x, mean_p, mean_x2, mean_p2 = rows.T
    var_x = mean_x2 - mean_x ** 2
    var_p = mean_p2 - mean_p ** 2
    if np.any(var_x < _VAR_CLAMP) or np.any(var_p < _VAR_CLAMP):
        raise VarianceError("negative variance beyond round-off in time series")
    dx = np.sqrt(np.maximum(var_x, 0.0))
    dp = np.sqrt(np.maximum(var_p, 0.0))
    return TimeSeries(t=t_grid, mean_x=mean_x, mean_p=mean_p,
                      var_x=var_x, var_p=var_p, dx=dx, dp=dp,
                      product=dx * dp)
