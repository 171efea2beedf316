# src/medium/coherences.py
"""First-order coherences rho_14, rho_13 of the double-lambda system.

The unknown vector is (rho_14, rho_13, rho_12). Steady state of Y' = M Y + X
gives Y = -M^-1 X, solved once per drive (probe electric, probe magnetic).
The linear solve is authoritative; `closed_form_betas` is the Cramer-rule
cross-check.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
from numpy.polynomial import Polynomial

from errors import SingularSystem
from params import SystemParams

ArrayLike = Union[float, np.ndarray]

CONDITION_LIMIT = 1e12

ROW_14, ROW_13, ROW_12 = 0, 1, 2


@dataclass(frozen=True)
class ShiftedDetunings:
    d_p: ArrayLike
    d_b: ArrayLike
    d_1: ArrayLike
    d_2: ArrayLike
    kv: ArrayLike


def shifted_detunings(
    system: SystemParams, kv: ArrayLike = 0.0, delta_p: ArrayLike | None = None
) -> ShiftedDetunings:
    """Doppler replacement rule; `delta_p` overrides the configured probe detuning."""
    dp = system.delta_p if delta_p is None else np.asarray(delta_p, dtype=float)
    kv = np.asarray(kv, dtype=float)
    return ShiftedDetunings(
        d_p=dp + kv,
        d_b=system.delta_b + system.alpha_3 * kv,
        d_1=system.delta_1 + system.alpha_1 * kv,
        d_2=system.delta_2 + system.alpha_2 * kv,
        kv=kv,
    )


@dataclass(frozen=True)
class DenominatorTerms:
    a1: np.ndarray
    a2: np.ndarray
    a3: np.ndarray


def denominator_terms(system: SystemParams, s: ShiftedDetunings) -> DenominatorTerms:
    g_probe = system.half_width_probe
    g_two = system.half_width_two_photon
    a1 = 1j * np.asarray(s.d_p) - g_probe
    a3 = 1j * np.asarray(s.d_b) - g_probe
    a2 = 1j * (np.asarray(s.d_1) - np.asarray(s.d_b)) - g_two
    a1, a2, a3 = np.broadcast_arrays(a1, a2, a3)
    return DenominatorTerms(a1=a1, a2=a2, a3=a3)


@dataclass(frozen=True)
class CoherenceCoefficients:
    beta_ee: np.ndarray
    beta_eb: np.ndarray
    beta_be: np.ndarray
    beta_bb: np.ndarray

    def coherences(self, omega_p: float, omega_b: float) -> Tuple[np.ndarray, np.ndarray]:
        """(rho_14, rho_13) for the given probe amplitudes."""
        rho_14 = omega_p * self.beta_ee + omega_b * self.beta_eb
        rho_13 = omega_p * self.beta_be + omega_b * self.beta_bb
        return rho_14, rho_13

    def conjugate_deviation(self) -> np.ndarray:
        """|beta_EB - conj(beta_BE)| relative to the larger of the two magnitudes."""
        scale = np.maximum(np.abs(self.beta_eb), np.abs(self.beta_be))
        diff = np.abs(self.beta_eb - np.conj(self.beta_be))
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(scale > 0, diff / np.where(scale > 0, scale, 1.0), 0.0)


def build_system_matrix(
    system: SystemParams, s: ShiftedDetunings
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    t = denominator_terms(system, s)
    o1, o2, o3 = system.omega_1, system.omega_2, system.omega_3
    shape = t.a1.shape

    m = np.zeros(shape + (3, 3), dtype=complex)
    m[..., ROW_14, ROW_14] = t.a1
    m[..., ROW_13, ROW_13] = t.a3
    m[..., ROW_12, ROW_12] = t.a2
    m[..., ROW_14, ROW_13] = 0.5j * o3 * np.exp(1j * system.phi)
    m[..., ROW_13, ROW_14] = 0.5j * o3 * np.exp(-1j * system.phi)
    m[..., ROW_14, ROW_12] = 0.5j * o2
    m[..., ROW_12, ROW_14] = 0.5j * o2
    m[..., ROW_13, ROW_12] = 0.5j * o1
    m[..., ROW_12, ROW_13] = -0.5j * o1

    x_p = np.zeros(3, dtype=complex)
    x_p[ROW_14] = 0.5j * system.omega_p
    x_b = np.zeros(3, dtype=complex)
    x_b[ROW_13] = 0.5j * system.omega_b
    return m, x_p, x_b


def _unit_drive(x: np.ndarray, row: int) -> np.ndarray:
    # drive per unit Rabi frequency; a zero drive is replaced by the unit one
    amplitude = x[row] / 0.5j
    if amplitude == 0:
        unit = np.zeros(3, dtype=complex)
        unit[row] = 0.5j
        return unit
    return x / amplitude


def _first_bad(mask: np.ndarray) -> Tuple[int, ...] | None:
    if not np.any(mask):
        return None
    return tuple(int(i) for i in np.argwhere(mask)[0])


def unit_drives(x_p: np.ndarray, x_b: np.ndarray) -> np.ndarray:
    """(3, 2) drive columns per unit probe Rabi frequency, electric then magnetic."""
    return np.stack([_unit_drive(x_p, ROW_14), _unit_drive(x_b, ROW_13)], axis=-1)


def steady_state_vectors(m: np.ndarray, x_p: np.ndarray, x_b: np.ndarray) -> np.ndarray:
    """Y = -M^-1 X for both unit drives; the last axis runs over the drives."""
    m = np.asarray(m, dtype=complex)
    bad = _first_bad(~np.all(np.isfinite(m), axis=(-2, -1)))
    if bad is not None:
        raise SingularSystem("coefficient matrix has non-finite entries", index=bad)
    try:
        with np.errstate(all="ignore"):
            cond = np.linalg.cond(m)
        bad = _first_bad(~np.isfinite(cond) | (cond > CONDITION_LIMIT))
        if bad is not None:
            raise SingularSystem(
                f"condition number {float(np.asarray(cond)[bad]):.3g} above {CONDITION_LIMIT:.0e}",
                index=bad,
            )
        rhs = np.broadcast_to(unit_drives(x_p, x_b), m.shape[:-2] + (3, 2))
        return -np.linalg.solve(m, rhs)
    except np.linalg.LinAlgError as e:
        raise SingularSystem(f"linear solve failed: {e}") from None


def solve_steady_state(m: np.ndarray, x_p: np.ndarray, x_b: np.ndarray) -> CoherenceCoefficients:
    y = steady_state_vectors(m, x_p, x_b)
    return CoherenceCoefficients(
        beta_ee=y[..., ROW_14, 0],
        beta_be=y[..., ROW_13, 0],
        beta_eb=y[..., ROW_14, 1],
        beta_bb=y[..., ROW_13, 1],
    )


def closed_form_betas(system: SystemParams, s: ShiftedDetunings) -> CoherenceCoefficients:
    t = denominator_terms(system, s)
    a1, a2, a3 = t.a1, t.a2, t.a3
    o1, o2, o3 = system.omega_1, system.omega_2, system.omega_3
    phase = np.exp(1j * system.phi)

    denom = 2.0 * (
        o1 * o2 * o3 * np.sin(system.phi)
        - o1**2 * a1
        + o3**2 * a2
        + o2**2 * a3
        + 4.0 * a1 * a2 * a3
    )
    scale = 2.0 * (np.abs(a1 * a2 * a3) * 4.0 + (o1**2 + o2**2 + o3**2) * np.abs(a1) + o1 * o2 * o3)
    bad = _first_bad(np.abs(denom) <= scale / CONDITION_LIMIT)
    if bad is not None:
        raise SingularSystem("closed-form denominator vanishes", index=bad)

    return CoherenceCoefficients(
        beta_ee=1j * (o1**2 - 4.0 * a2 * a3) / denom,
        beta_bb=-1j * (o2**2 + 4.0 * a1 * a2) / denom,
        beta_eb=-(1j * o1 * o2 + 2.0 * o3 * a2 * phase) / denom,
        beta_be=-(-1j * o1 * o2 + 2.0 * o3 * a2 / phase) / denom,
    )


def determinant_polynomial(system: SystemParams, delta_p: float | None = None) -> Polynomial:
    """4 det M as a polynomial in the velocity shift kv."""
    dp = system.delta_p if delta_p is None else float(delta_p)
    g_probe = system.half_width_probe
    g_two = system.half_width_two_photon
    o1, o2, o3 = system.omega_1, system.omega_2, system.omega_3

    a1 = Polynomial([1j * dp - g_probe, 1j])
    a3 = Polynomial([1j * system.delta_b - g_probe, 1j * system.alpha_3])
    a2 = Polynomial(
        [1j * (system.delta_1 - system.delta_b) - g_two, 1j * (system.alpha_1 - system.alpha_3)]
    )
    return (
        4.0 * a1 * a2 * a3
        - o1**2 * a1
        + o3**2 * a2
        + o2**2 * a3
        + o1 * o2 * o3 * np.sin(system.phi)
    )


def singular_velocities(system: SystemParams, delta_p: float | None = None) -> np.ndarray:
    """Complex kv values where the coefficient matrix is exactly singular."""
    poly = determinant_polynomial(system, delta_p).trim()
    if poly.degree() < 1:
        return np.zeros(0, dtype=complex)
    return np.asarray(poly.roots(), dtype=complex)
