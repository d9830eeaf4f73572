"""Depolarizing-noise execution and zero-noise extrapolation."""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import OptimizeWarning, curve_fit

from .paulicompile import Circuit
from .simcore import apply_gate, expectation, init_state

__all__ = [
    "NoiseModel",
    "REFERENCE_NOISE",
    "ZneConfig",
    "ZneResult",
    "EXTRAPOLATORS",
    "depolarize",
    "run_noisy",
    "fold_circuit",
    "zne_extrapolate",
    "mitigated_expectations",
    "mitigated_observable",
    "error_budget",
]

log = logging.getLogger(__name__)

EXTRAPOLATORS = ("linear", "richardson-quadratic", "exponential")


@dataclass(frozen=True)
class NoiseModel:
    """Per-gate depolarizing probabilities for one- and two-qubit gates."""

    eps1: float = 0.0
    eps2: float = 0.0

    def __post_init__(self):
        for name in ("eps1", "eps2"):
            v = getattr(self, name)
            if not 0.0 <= v < 1.0:
                raise ValueError(f"{name} must lie in [0, 1), got {v}")

    @property
    def is_ideal(self) -> bool:
        return self.eps1 == 0.0 and self.eps2 == 0.0


# average hardware gate errors used as the default noise level
REFERENCE_NOISE = NoiseModel(eps1=4.238e-4, eps2=6.741e-3)


@dataclass(frozen=True)
class ZneConfig:
    scale_factors: tuple[int, ...] = (1, 3, 5)
    extrapolator: str = "richardson-quadratic"

    def __post_init__(self):
        s = tuple(int(x) for x in self.scale_factors)
        object.__setattr__(self, "scale_factors", s)
        if not s or s[0] != 1:
            raise ValueError("scale factors must start at 1")
        if any(x % 2 == 0 for x in s):
            raise ValueError("scale factors must be odd")
        if any(b <= a for a, b in zip(s, s[1:])):
            raise ValueError("scale factors must be strictly increasing")
        if self.extrapolator not in EXTRAPOLATORS:
            raise ValueError(f"unknown extrapolator {self.extrapolator!r}")


@dataclass(frozen=True)
class ZneResult:
    value: float
    method: str
    fallback: bool = False
    note: str = ""

    def __float__(self):
        return self.value


def depolarize(rho: np.ndarray, qubits: Sequence[int], eps: float) -> np.ndarray:
    """Depolarizing channel on ``qubits``.

    rho -> (1 - eps) rho + eps / (d^2 - 1) * sum_{P != I} P rho P, with d the
    support dimension. Uses sum_P P rho P = d * Tr_S(rho) (x) I_S.
    """
    if eps == 0.0:
        return rho
    n = rho.shape[0].bit_length() - 1
    support = list(qubits)
    rest = [q for q in range(n) if q not in support]
    d, r = 2 ** len(support), 2 ** len(rest)
    order = support + rest
    perm = order + [q + n for q in order]
    t = rho.reshape((2,) * (2 * n)).transpose(perm).reshape(d, r, d, r)
    reduced = np.einsum("iaib->ab", t)
    mixed = np.einsum("ij,ab->iajb", np.eye(d) / d, reduced)
    mixed = mixed.reshape((2,) * (2 * n)).transpose(np.argsort(perm)).reshape(rho.shape)
    w = eps * d * d / (d * d - 1)
    return (1.0 - w) * rho + w * mixed


def run_noisy(c: Circuit, initial: str, noise: NoiseModel) -> np.ndarray:
    """Density-matrix run of ``c``; every gate is followed by depolarizing
    noise on its support (``eps1`` for one-qubit, ``eps2`` for two-qubit)."""
    psi = init_state(c.n_qubits, initial)
    rho = np.outer(psi, psi.conj())
    for g in c.gates:
        rho = apply_gate(rho, g)
        eps = noise.eps1 if len(g.qubits) == 1 else noise.eps2
        rho = depolarize(rho, g.qubits, eps)
    return rho


def fold_circuit(c: Circuit, scale: int) -> Circuit:
    """Global folding C (C^dag C)^((scale - 1) / 2)."""
    if scale < 1 or scale % 2 == 0:
        raise ValueError(f"scale must be an odd positive integer, got {scale}")
    inv = c.inverse()
    gates = list(c.gates)
    for _ in range((scale - 1) // 2):
        gates.extend(inv.gates)
        gates.extend(c.gates)
    return Circuit(c.n_qubits, gates)


def _poly_at_zero(s: np.ndarray, v: np.ndarray, deg: int) -> float:
    coeffs = np.polyfit(s, v, deg)
    return float(coeffs[-1])


def _exp_model(s, a, b, c):
    return a + b * np.exp(-c * s)


def _exp_initial_guess(s: np.ndarray, v: np.ndarray):
    """Three-point closed form through first, middle and last samples."""
    i, j, k = 0, len(s) // 2, len(s) - 1
    d1, d2 = v[j] - v[i], v[k] - v[j]
    h1, h2 = s[j] - s[i], s[k] - s[j]
    if d1 == 0 or d2 / d1 <= 0:
        return None
    # equal spacing makes this exact; otherwise a starting point
    q = (d2 / d1) ** (1.0 / h2) if math.isclose(h1, h2) else (d2 / d1) ** (2.0 / (h1 + h2))
    if q == 1.0:
        return None
    c = -math.log(q)
    b = d1 / (math.exp(-c * s[j]) - math.exp(-c * s[i]))
    a = v[i] - b * math.exp(-c * s[i])
    return a, b, c


def zne_extrapolate(points: Iterable[tuple[float, float]], method: str = "richardson-quadratic") -> ZneResult:
    """Zero-noise estimate from (scale, value) pairs.

    ``linear``: least-squares line at scale 0. ``richardson-quadratic``:
    quadratic through the points (least squares beyond three) at 0.
    ``exponential``: least-squares fit of a + b exp(-c s), returns a + b;
    when that fit is impossible or fails the linear estimate is returned with
    ``fallback=True``.
    """
    pts = sorted((float(s), float(v)) for s, v in points)
    s = np.array([p[0] for p in pts])
    v = np.array([p[1] for p in pts])
    if len(np.unique(s)) != len(s):
        raise ValueError("scales must be distinct")
    need = {"linear": 2, "richardson-quadratic": 3, "exponential": 3}
    if method not in need:
        raise ValueError(f"unknown extrapolator {method!r}")
    if len(s) < need[method]:
        raise ValueError(f"{method} needs at least {need[method]} points")

    if np.ptp(v) <= 1e-15 * max(1.0, np.max(np.abs(v))):
        return ZneResult(float(np.mean(v)), method)
    if method == "linear":
        return ZneResult(_poly_at_zero(s, v, 1), method)
    if method == "richardson-quadratic":
        return ZneResult(_poly_at_zero(s, v, 2), method)

    p0 = _exp_initial_guess(s, v)
    note = ""
    if p0 is None:
        note = "data not monotone-exponential"
    else:
        try:
            with warnings.catch_warnings():
                # three points, three parameters: no covariance to report
                warnings.simplefilter("ignore", OptimizeWarning)
                popt, _ = curve_fit(_exp_model, s, v, p0=p0, maxfev=10000)
            est = float(popt[0] + popt[1])
            if math.isfinite(est):
                return ZneResult(est, method)
            note = "non-finite exponential fit"
        except (RuntimeError, ValueError, FloatingPointError) as exc:
            note = f"exponential fit failed: {exc}"
    log.warning("exponential extrapolation fell back to linear (%s)", note)
    return ZneResult(_poly_at_zero(s, v, 1), "linear", fallback=True, note=note)


def mitigated_expectations(
    c: Circuit,
    words: Sequence[str],
    noise: NoiseModel,
    cfg: ZneConfig = ZneConfig(),
    initial: str | None = None,
    shots: int | None = None,
    rng: np.random.Generator | None = None,
) -> tuple[dict[str, ZneResult], dict[int, dict[str, float]]]:
    """ZNE estimates for several diagonal observables from one set of runs.

    Returns the extrapolated results and the raw values per scale factor.
    """
    if initial is None:
        initial = "0" * c.n_qubits
    raw: dict[int, dict[str, float]] = {}
    for scale in cfg.scale_factors:
        rho = run_noisy(fold_circuit(c, scale), initial, noise)
        raw[scale] = {w: expectation(rho, w, shots, rng) for w in words}
    results = {
        w: zne_extrapolate([(sc, raw[sc][w]) for sc in cfg.scale_factors], cfg.extrapolator)
        for w in words
    }
    return results, raw


def mitigated_observable(
    c: Circuit, obs: str, noise: NoiseModel, cfg: ZneConfig = ZneConfig(), initial: str | None = None
) -> float:
    """Zero-noise estimate of <obs> for circuit ``c`` started in ``initial``
    (all zeros by default)."""
    results, _ = mitigated_expectations(c, [obs], noise, cfg, initial)
    return results[obs].value


def error_budget(n1: int, n2: int, eps1: float, eps2: float) -> tuple[float, float]:
    """(survival, error) under the crude law survival = exp(-sum n eps)."""
    survival = math.exp(-(n2 * eps2 + n1 * eps1))
    return survival, 1.0 - survival
