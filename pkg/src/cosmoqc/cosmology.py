"""Analytic layer: scale factor, mode frequencies, Bogoliubov coefficients
and closed-form particle numbers for the tanh expansion model."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .specfun import complex_loggamma

__all__ = [
    "CosmologyParams",
    "ModeFrequencies",
    "BogoliubovPair",
    "scale_factor",
    "frequencies",
    "bogoliubov",
    "beta_sq_closed_form",
    "squeezing",
    "n_expected_full",
    "n_expected_truncated",
    "thermal_distribution",
    "REFERENCE_PARAMS",
]

# omega_minus below this fraction of omega_plus counts as "no mixing"
_DEGENERATE_TOL = 1e-14


@dataclass(frozen=True)
class CosmologyParams:
    """Physical knobs of the model.

    ``A`` and ``B`` fix the asymptotic conformal factor ``C = A -/+ B``,
    ``rho`` the transition rate, ``m`` and ``k`` the field mass and mode
    momentum, and ``t`` the evolution time after the expansion.
    """

    A: float = 1.5
    B: float = 0.5
    rho: float = 1.0
    m: float = 1.0
    k: float = 1.0
    t: float = 1.0

    def __post_init__(self):
        if not self.A > abs(self.B):
            raise ValueError(f"need A > |B|, got A={self.A}, B={self.B}")
        if not self.rho > 0:
            raise ValueError(f"need rho > 0, got {self.rho}")
        if self.m < 0:
            raise ValueError(f"need m >= 0, got {self.m}")
        if self.t < 0:
            raise ValueError(f"need t >= 0, got {self.t}")

    def with_(self, **changes) -> "CosmologyParams":
        return replace(self, **changes)


REFERENCE_PARAMS = CosmologyParams(A=1.5, B=0.5, rho=1.0, m=1.0, k=1.0, t=1.0)


@dataclass(frozen=True)
class ModeFrequencies:
    omega_in: float
    omega_out: float
    omega_plus: float
    omega_minus: float


@dataclass(frozen=True)
class BogoliubovPair:
    alpha: complex
    beta: complex

    @property
    def alpha_beta_conj(self) -> complex:
        return self.alpha * self.beta.conjugate()


def scale_factor(params: CosmologyParams, eta):
    """Conformal factor C(eta) = A + B tanh(rho eta). Accepts arrays."""
    return params.A + params.B * np.tanh(params.rho * np.asarray(eta, dtype=float))


def frequencies(params: CosmologyParams) -> ModeFrequencies:
    """In/out frequencies of the mode and their half sum and difference."""
    k2, m2 = params.k ** 2, params.m ** 2
    rad_in = k2 + m2 * (params.A - params.B)
    rad_out = k2 + m2 * (params.A + params.B)
    if rad_in <= 0 or rad_out <= 0:
        raise ValueError(f"non-positive frequency radicand ({rad_in}, {rad_out})")
    w_in, w_out = math.sqrt(rad_in), math.sqrt(rad_out)
    return ModeFrequencies(
        omega_in=w_in,
        omega_out=w_out,
        omega_plus=0.5 * (w_out + w_in),
        omega_minus=0.5 * (w_out - w_in),
    )


def bogoliubov(params: CosmologyParams) -> BogoliubovPair:
    """Bogoliubov coefficients relating in and out modes.

    alpha = sqrt(w_out/w_in) G(1 - i w_in/rho) G(-i w_out/rho)
            / (G(-i w_+/rho) G(1 - i w_+/rho))
    beta  = sqrt(w_out/w_in) G(1 - i w_in/rho) G(i w_out/rho)
            / (G(i w_-/rho) G(1 + i w_-/rho))

    The gamma products are formed in log space: for small ``rho`` each
    factor underflows long before the ratio does. When ``w_-`` vanishes
    (``B = 0`` or ``m = 0``) the ``1/G(i w_-/rho)`` factor is zero and
    ``beta`` is returned as exactly 0.
    """
    f = frequencies(params)
    rho = params.rho
    log_pref = 0.5 * math.log(f.omega_out / f.omega_in)
    lg_in = complex_loggamma(1 - 1j * f.omega_in / rho)

    log_alpha = (
        log_pref
        + lg_in
        + complex_loggamma(-1j * f.omega_out / rho)
        - complex_loggamma(-1j * f.omega_plus / rho)
        - complex_loggamma(1 - 1j * f.omega_plus / rho)
    )
    alpha = cmath.exp(log_alpha)

    if abs(f.omega_minus) < _DEGENERATE_TOL * f.omega_plus:
        return BogoliubovPair(alpha=alpha, beta=0j)

    log_beta = (
        log_pref
        + lg_in
        + complex_loggamma(1j * f.omega_out / rho)
        - complex_loggamma(1j * f.omega_minus / rho)
        - complex_loggamma(1 + 1j * f.omega_minus / rho)
    )
    beta = cmath.exp(log_beta) if log_beta.real > -745.2 else 0j
    return BogoliubovPair(alpha=alpha, beta=beta)


def _log_sinh(x: float) -> float:
    x = abs(x)
    return x + math.log1p(-math.exp(-2 * x)) - math.log(2)


def beta_sq_closed_form(params: CosmologyParams) -> float:
    """|beta|^2 = sinh^2(pi w_-/rho) / (sinh(pi w_in/rho) sinh(pi w_out/rho)).

    Reference magnitude obtained from |G(iy)|^2 = pi/(y sinh pi y) and
    |G(1+iy)|^2 = pi y / sinh(pi y); independent of the gamma routine.
    """
    f = frequencies(params)
    c = math.pi / params.rho
    if f.omega_minus == 0:
        return 0.0
    log_val = (
        2 * _log_sinh(c * f.omega_minus)
        - _log_sinh(c * f.omega_in)
        - _log_sinh(c * f.omega_out)
    )
    return math.exp(log_val) if log_val > -745.2 else 0.0


def squeezing(params: CosmologyParams, bog: BogoliubovPair | None = None) -> float:
    """Squeezing magnitude r = 2 |alpha| |beta| w_out t."""
    if bog is None:
        bog = bogoliubov(params)
    w_out = frequencies(params).omega_out
    return 2.0 * abs(bog.alpha) * abs(bog.beta) * w_out * params.t


def n_expected_full(params: CosmologyParams) -> float:
    """Mean particle number per mode for the untruncated boson: sinh^2 r."""
    return math.sinh(squeezing(params)) ** 2


def n_expected_truncated(params: CosmologyParams) -> float:
    """Mean particle number with at most one excitation per mode."""
    th2 = math.tanh(squeezing(params)) ** 2
    return th2 / (1.0 + th2)


def thermal_distribution(params: CosmologyParams, n_max: int) -> np.ndarray:
    """Occupation probabilities p_n = tanh^{2n}(r) / cosh^2(r), n = 0..n_max.

    This is the reduced single-mode state of the two-mode squeezed vacuum.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    r = squeezing(params)
    ratio = math.tanh(r) ** 2
    p0 = 1.0 / math.cosh(r) ** 2
    out = np.empty(n_max + 1)
    out[0] = p0
    for n in range(1, n_max + 1):
        out[n] = out[n - 1] * ratio
    return out
