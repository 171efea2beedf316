# src/medium/doppler.py
"""Maxwellian velocity averages for the hot medium.

The weight exp(-(kv/V_D)^2)/(V_D sqrt(pi)) becomes the Hermite weight after
kv = V_D u, so Gauss-Hermite is the default rule. The adaptive trapezoid on a
truncated window is the independent check and the fallback near poles.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterable, List, Tuple

import numpy as np
from scipy.integrate import trapezoid
from scipy.special import roots_hermite

from console import status, warn
from errors import NumericalError, PoleInSupport, QuadratureNotConverged
from params import Config, QuadratureSpec

from .coherences import ArrayLike, singular_velocities
from .response import OpticalResponse, response_at, spectrum

Integrand = Callable[[np.ndarray], np.ndarray]

COLD_LIMIT = 1e-6
POLE_CLEARANCE = 1e-3
SUPPORT_WIDTH = 6.0
REAL_AXIS_TOL = 1e-9
MIN_PANELS = 64
ROUNDOFF = 1e-13
MAX_NODES = 1024
# kv samples per batched solve in hot_spectrum
BATCH_LIMIT = 2**17


@lru_cache(maxsize=None)
def hermite_rule(node_count: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights normalized so the weights sum to 1."""
    nodes, weights = roots_hermite(node_count)
    weights = weights / np.sqrt(np.pi)
    if not (np.all(np.isfinite(nodes)) and np.all(np.isfinite(weights))):
        raise QuadratureNotConverged(f"Gauss-Hermite rule with {node_count} nodes is not finite")
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _real_poles(poles: np.ndarray, v_doppler: float) -> np.ndarray:
    on_axis = np.abs(poles.imag) <= REAL_AXIS_TOL * max(1.0, v_doppler)
    inside = np.abs(poles.real) <= SUPPORT_WIDTH * v_doppler
    return poles[on_axis & inside]


def _near_pole(kv: np.ndarray, poles: np.ndarray) -> bool:
    if poles.size == 0:
        return False
    gaps = np.abs(kv[:, None] - poles[None, :])
    return bool(np.min(gaps) < POLE_CLEARANCE)


def pole_clearance(poles: np.ndarray, v_doppler: float) -> float:
    """Distance from the nearest pole to the support, in units of V_D."""
    if poles.size == 0:
        return np.inf
    outside = np.maximum(np.abs(poles.real) - SUPPORT_WIDTH * v_doppler, 0.0)
    return float(np.min(np.hypot(outside, poles.imag)) / v_doppler)


def nodes_for_clearance(clearance: float, quadrature: QuadratureSpec) -> int:
    """Smallest Gauss-Hermite rule, at least `node_count`, whose error
    exp(-2 d sqrt(2n)) for a pole at distance d falls below rel_tol."""
    if clearance <= 0:
        return max(quadrature.node_count, MAX_NODES)
    needed = 0.5 * (np.log(1.0 / quadrature.rel_tol) / (2.0 * clearance)) ** 2
    return int(max(quadrature.node_count, min(MAX_NODES, np.ceil(needed))))


def adaptive_average(
    f: Integrand,
    v_doppler: float,
    quadrature: QuadratureSpec,
    breakpoints: Iterable[float] = (),
) -> np.ndarray:
    """Trapezoid on [-T V_D, T V_D], split at `breakpoints`, doubling panels until
    successive estimates agree to `rel_tol`."""
    half = quadrature.truncation * v_doppler
    cuts = [b for b in breakpoints if -half < b < half]
    edges = np.unique(np.concatenate(([-half, half], cuts)))
    norm = 1.0 / (v_doppler * np.sqrt(np.pi))

    panels = MIN_PANELS
    previous = None
    while panels * (len(edges) - 1) <= quadrature.max_panels:
        total = 0.0
        magnitude = 0.0
        for lo, hi in zip(edges[:-1], edges[1:]):
            x = np.linspace(lo, hi, panels + 1)
            weight = norm * np.exp(-((x / v_doppler) ** 2))
            values = np.asarray(f(x))
            total = total + trapezoid(values * weight, x, axis=-1)
            magnitude = magnitude + trapezoid(np.abs(values) * weight, x, axis=-1)
        if previous is not None:
            change = np.max(np.abs(total - previous))
            # cancelling integrands converge to roundoff of the absolute integral
            floor = ROUNDOFF * np.max(magnitude)
            if change <= max(quadrature.rel_tol * np.max(np.abs(total)), floor):
                return np.asarray(total)
        previous = total
        panels *= 2

    raise QuadratureNotConverged(
        f"adaptive trapezoid exceeded {quadrature.max_panels} panels at rel_tol={quadrature.rel_tol:g}"
    )


def _finite(value: np.ndarray) -> np.ndarray:
    if not np.all(np.isfinite(value)):
        raise QuadratureNotConverged("Doppler average is not finite")
    return value


def doppler_average(
    f: Integrand,
    v_doppler: float,
    quadrature: QuadratureSpec | None = None,
    poles: ArrayLike = (),
) -> np.ndarray:
    """Average of f(kv) over the Maxwellian of width `v_doppler`.

    `f` maps a 1-D array of kv samples to values whose last axis runs over those
    samples. `poles` are complex kv where f is singular.
    """
    q = quadrature or QuadratureSpec()
    if v_doppler < COLD_LIMIT:
        return np.asarray(f(np.zeros(1)))[..., 0]

    poles = np.atleast_1d(np.asarray(poles, dtype=complex))
    on_axis = _real_poles(poles, v_doppler)
    if on_axis.size:
        raise PoleInSupport(f"singular velocity at kv={on_axis[0].real:.6g} inside +-{SUPPORT_WIDTH:g} V_D")

    if q.method == "gauss-hermite":
        nodes, weights = hermite_rule(q.node_count)
        kv = v_doppler * nodes
        if not _near_pole(kv, poles):
            # numpy's pairwise summation fixes the reduction order
            return _finite(np.sum(np.asarray(f(kv)) * weights, axis=-1))
        warn("doppler", "quadrature node within 1e-3 of a pole, switching to adaptive trapezoid")

    return _finite(adaptive_average(f, v_doppler, q, breakpoints=poles.real))


def hot_spectrum(config: Config, grid: ArrayLike) -> OpticalResponse:
    """Doppler-averaged chi_e, chi_m, xi_EH, xi_HE on a detuning grid.

    One Gauss-Hermite rule serves the whole grid. It starts at `node_count` and
    grows with the closest pole clearance on the grid, up to MAX_NODES.
    """
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    v = config.medium.v_doppler
    if v < COLD_LIMIT:
        return spectrum(config, grid, "cold")

    q = config.quadrature
    averaged = np.empty((4, grid.size), dtype=complex)

    all_poles: List[np.ndarray] = []
    for i, dp in enumerate(grid):
        poles = singular_velocities(config.system, dp)
        on_axis = _real_poles(poles, v)
        if on_axis.size:
            raise PoleInSupport(
                f"singular velocity at kv={on_axis[0].real:.6g} inside +-{SUPPORT_WIDTH:g} V_D"
            ).at_grid_point(i, float(dp))
        all_poles.append(poles)

    node_count = q.node_count
    if q.method == "gauss-hermite":
        clearance = min((pole_clearance(p, v) for p in all_poles), default=np.inf)
        node_count = nodes_for_clearance(clearance, q)
        if node_count > q.node_count:
            status("doppler", f"pole clearance {clearance:.3g} V_D, using {node_count} Gauss-Hermite nodes")
    nodes, weights = hermite_rule(node_count)
    kv = v * nodes

    fallback = [
        i for i, poles in enumerate(all_poles) if q.method != "gauss-hermite" or _near_pole(kv, poles)
    ]
    clean = np.ones(grid.size, dtype=bool)
    clean[fallback] = False
    clean_idx = np.flatnonzero(clean)

    chunk = max(1, BATCH_LIMIT // node_count)
    for start in range(0, clean_idx.size, chunk):
        rows = clean_idx[start : start + chunk]
        try:
            r = response_at(config, kv[None, :], grid[rows][:, None])
        except NumericalError as e:
            if e.index:
                pos = int(rows[e.index[0]])
                raise e.at_grid_point(pos, float(grid[pos])) from None
            raise
        averaged[:, rows] = np.sum(r.stack() * weights, axis=-1)

    if fallback and q.method == "gauss-hermite":
        warn("doppler", f"{len(fallback)} grid point(s) near a pole, using adaptive trapezoid")
    for i in fallback:
        dp = float(grid[i])
        try:
            averaged[:, i] = adaptive_average(
                lambda x, dp=dp: response_at(config, x, dp).stack(),
                v,
                q,
                breakpoints=all_poles[i].real,
            )
        except NumericalError as e:
            raise e.at_grid_point(i, dp) from None

    bad = np.flatnonzero(~np.all(np.isfinite(averaged), axis=0))
    if bad.size:
        i = int(bad[0])
        raise QuadratureNotConverged(
            f"Doppler average is not finite ({node_count} nodes)"
        ).at_grid_point(i, float(grid[i]))
    return OpticalResponse.from_stack(averaged)


def hot_response(config: Config, delta_p: float) -> OpticalResponse:
    return hot_spectrum(config, np.array([delta_p]))[0]
