"""Expansion-rate sweeps and plot-ready tables.

Every number written here is formatted with a fixed 12-significant-digit
scientific format, so identical inputs give byte-identical files.
"""

from __future__ import annotations

import io
import math
from dataclasses import asdict, dataclass, fields
from typing import Iterable, Sequence

import numpy as np

from .cosmology import (
    CosmologyParams,
    n_expected_full,
    n_expected_truncated,
    scale_factor,
)
from .mitigation import NoiseModel, ZneConfig, fold_circuit, run_noisy, zne_extrapolate
from .paulicompile import build_evolution_circuit
from .simcore import (
    FIDELITY_OBSERVABLES,
    PARTICLE_OBSERVABLES,
    expectation,
    fidelity,
    fidelity_first_order,
    init_state,
    partial_trace_mode,
    particle_number_from_expectations,
    populations_from_expectations,
    run_circuit,
    theoretical_reduced_state,
)

__all__ = [
    "SweepConfig",
    "SweepRow",
    "sweep_point",
    "run_sweep",
    "format_number",
    "rows_to_csv",
    "scale_factor_csv",
]

_READOUT = tuple(dict.fromkeys([*PARTICLE_OBSERVABLES, *FIDELITY_OBSERVABLES]))


@dataclass(frozen=True)
class SweepConfig:
    A: float = 1.5
    B: float = 0.5
    mass: float = 1.0
    momentum: float = 1.0
    time: float = 1.0
    x_min: float = -2.0
    x_max: float = 2.0
    points: int = 41
    eps1: float = 4.238e-4
    eps2: float = 6.741e-3
    zne_scales: tuple[int, ...] = (1, 3, 5)
    zne_method: str = "richardson-quadratic"
    shots: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.points < 1:
            raise ValueError("points must be >= 1")
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise ValueError("x range must be finite")
        if self.shots is not None and self.shots < 1:
            raise ValueError("shots must be positive")
        # validates A, B, mass, time and the ZNE settings eagerly
        self.params(1.0)
        self.noise()
        self.zne()

    def params(self, rho: float) -> CosmologyParams:
        return CosmologyParams(
            A=self.A, B=self.B, rho=rho, m=self.mass, k=self.momentum, t=self.time
        )

    def noise(self) -> NoiseModel:
        return NoiseModel(eps1=self.eps1, eps2=self.eps2)

    def zne(self) -> ZneConfig:
        return ZneConfig(tuple(self.zne_scales), self.zne_method)

    def grid(self) -> np.ndarray:
        if self.points == 1:
            return np.array([self.x_min])
        return np.linspace(self.x_min, self.x_max, self.points)


@dataclass(frozen=True)
class SweepRow:
    x: float
    rho: float
    n_full: float
    n_trunc: float
    n_ideal: float
    n_noisy: float
    n_zne: float
    f_ideal: float
    f_noisy: float
    f_zne: float
    f_first_order: float


def _clip_unit(v: float) -> float:
    return min(max(v, 0.0), 1.0)


def sweep_point(cfg: SweepConfig, x: float, rng: np.random.Generator | None = None) -> SweepRow:
    """All sweep columns at one expansion rate rho = 10**x."""
    rho = 10.0 ** x
    params = cfg.params(rho)
    circ = build_evolution_circuit(params)
    theory = theoretical_reduced_state(params)
    shots = cfg.shots

    psi = run_circuit(circ, init_state(4, "0000"))
    ideal = {w: expectation(psi, w, shots, rng) for w in _READOUT}

    zcfg = cfg.zne()
    raw: dict[int, dict[str, float]] = {}
    rho_noisy = None
    for scale in zcfg.scale_factors:
        dm = run_noisy(fold_circuit(circ, scale), "0000", cfg.noise())
        if scale == 1:
            rho_noisy = dm
        raw[scale] = {w: expectation(dm, w, shots, rng) for w in _READOUT}
    mitigated = {
        w: zne_extrapolate([(s, raw[s][w]) for s in zcfg.scale_factors], zcfg.extrapolator).value
        for w in _READOUT
    }

    return SweepRow(
        x=float(x),
        rho=rho,
        n_full=n_expected_full(params),
        n_trunc=n_expected_truncated(params),
        n_ideal=particle_number_from_expectations(ideal),
        n_noisy=particle_number_from_expectations(raw[1]),
        n_zne=max(particle_number_from_expectations(mitigated), 0.0),
        f_ideal=_clip_unit(fidelity(theory, partial_trace_mode(psi))),
        f_noisy=_clip_unit(fidelity(theory, partial_trace_mode(rho_noisy))),
        f_zne=_clip_unit(fidelity(theory, populations_from_expectations(mitigated))),
        f_first_order=_clip_unit(fidelity_first_order(ideal, params)),
    )


def run_sweep(cfg: SweepConfig) -> list[SweepRow]:
    """Rows in grid order. Sampling (if any) draws from one seeded stream."""
    rng = np.random.default_rng(cfg.seed) if cfg.shots is not None else None
    return [sweep_point(cfg, x, rng) for x in cfg.grid()]


def format_number(v: float) -> str:
    v = float(v) + 0.0  # folds -0.0 into 0.0
    return f"{v:.11e}"


def rows_to_csv(rows: Iterable[SweepRow]) -> str:
    buf = io.StringIO()
    names = [f.name for f in fields(SweepRow)]
    buf.write(",".join(names) + "\n")
    for row in rows:
        d = asdict(row)
        buf.write(",".join(format_number(d[n]) for n in names) + "\n")
    return buf.getvalue()


def scale_factor_csv(
    A: float,
    B: float,
    rhos: Sequence[float],
    eta_min: float = -10.0,
    eta_max: float = 10.0,
    eta_points: int = 201,
) -> str:
    """Table of C(eta) on a shared eta grid, one column per expansion rate."""
    if eta_points < 1:
        raise ValueError("eta_points must be >= 1")
    params = [CosmologyParams(A=A, B=B, rho=r) for r in rhos]
    etas = np.linspace(eta_min, eta_max, eta_points)
    cols = [scale_factor(p, etas) for p in params]
    buf = io.StringIO()
    buf.write(",".join(["eta"] + [f"C_rho={r:g}" for r in rhos]) + "\n")
    for i, eta in enumerate(etas):
        buf.write(",".join([format_number(eta)] + [format_number(c[i]) for c in cols]) + "\n")
    return buf.getvalue()
