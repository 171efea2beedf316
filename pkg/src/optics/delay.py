# src/optics/delay.py
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import bisect

from console import status, warn
from errors import NoCrossoverInRange, NumericalError
from params import Config

from .group import DispersionPoint, Mode, group_index_at

Evaluator = Callable[[Config, float, Mode], DispersionPoint]

CROSSOVER_XTOL = 1e-3


@dataclass(frozen=True)
class DelayRow:
    scenario: str
    mode: str
    omega_3: float
    N_g: Optional[float]
    v_g: Optional[float]
    tau_ns: Optional[float]
    error: Optional[str] = None


def _default_evaluator(config: Config, delta_p: float, mode: Mode) -> DispersionPoint:
    return group_index_at(config, delta_p, mode)


def delay_table(
    scenarios: Iterable[Tuple[str, Config]],
    modes: Sequence[Mode] = ("cold",),
    delta_p: float = 0.0,
    evaluate: Evaluator = _default_evaluator,
) -> List[DelayRow]:
    """One row per (scenario, mode); a failing row carries the error name instead of values."""
    rows: List[DelayRow] = []
    for name, config in scenarios:
        for mode in modes:
            omega_3 = config.system.omega_3
            try:
                point = evaluate(config, delta_p, mode)
            except NumericalError as e:
                warn("delay", f"{name} [{mode}]: {e.name}: {e}")
                rows.append(DelayRow(name, mode, omega_3, None, None, None, error=e.name))
                continue
            rows.append(DelayRow(name, mode, omega_3, point.N_g, point.v_g, point.tau_ns))
    return rows


@dataclass(frozen=True)
class SweepRow:
    omega_3: float
    N_g_cold: float
    N_g_hot: float
    v_g_cold: float
    v_g_hot: float

    @property
    def difference(self) -> float:
        return self.N_g_cold - self.N_g_hot


def omega3_sweep(
    config: Config, omega3_values: Iterable[float], evaluate: Evaluator = _default_evaluator
) -> List[SweepRow]:
    rows = []
    for omega_3 in omega3_values:
        cfg = config.with_system(omega_3=float(omega_3))
        cold = evaluate(cfg, 0.0, "cold")
        hot = evaluate(cfg, 0.0, "hot")
        rows.append(SweepRow(float(omega_3), cold.N_g, hot.N_g, cold.v_g, hot.v_g))
    return rows


def superluminal_crossover(
    config: Config,
    omega3_range: Tuple[float, float],
    *,
    samples: int = 25,
    xtol: float = CROSSOVER_XTOL,
    difference: Optional[Callable[[float], float]] = None,
) -> float:
    """Omega_3 where cold and hot group indices at resonance coincide.

    A coarse scan locates the first sign change of N_g(cold) - N_g(hot); bisection
    refines it. `difference` replaces the model evaluation.
    """
    lo, hi = omega3_range
    if not lo < hi:
        raise NoCrossoverInRange(f"empty omega_3 range [{lo:g}, {hi:g}]")

    if difference is None:

        def difference(omega_3: float) -> float:
            cfg = config.with_system(omega_3=float(omega_3))
            return group_index_at(cfg, 0.0, "cold").N_g - group_index_at(cfg, 0.0, "hot").N_g

    xs = np.linspace(lo, hi, max(samples, 2))
    values = [difference(float(x)) for x in xs]
    for i, value in enumerate(values):
        if value == 0.0:
            return float(xs[i])
        if i and np.sign(value) != np.sign(values[i - 1]):
            root = bisect(difference, float(xs[i - 1]), float(xs[i]), xtol=xtol)
            status("crossover", f"omega_3* = {root:.6g} in [{xs[i - 1]:.6g}, {xs[i]:.6g}]")
            return float(root)

    raise NoCrossoverInRange(f"N_g(cold) - N_g(hot) keeps its sign on [{lo:g}, {hi:g}]")
