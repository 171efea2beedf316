# src/optics/group.py
"""Group index, group velocity and delay from a complex index spectrum.

Derivatives with respect to the probe detuning use central differences with
one step-doubling Richardson pass in the interior and second-order one-sided
stencils at the two edges.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Literal, Tuple

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT

from errors import GridTooCoarse
from medium import OpticalResponse, spectrum
from params import Config, MediumParams

from .index import track_refractive_index

Mode = Literal["cold", "hot"]

DEFAULT_STEP = 1e-3
RICHARDSON_RTOL = 0.01
# derivative error is also compared with this share of the largest derivative
GLOBAL_FLOOR = 1e-3
ROUNDOFF_FLOOR = 1e-9
UNIFORM_RTOL = 1e-6


def derivative(values: np.ndarray, step: float, *, check: bool = True) -> np.ndarray:
    f = np.asarray(values)
    n = f.size
    if n < 3:
        raise GridTooCoarse(f"derivative needs at least 3 points, got {n}")

    d = np.empty(n, dtype=np.result_type(f.dtype, float))
    d[1:-1] = (f[2:] - f[:-2]) / (2.0 * step)
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * step)
    d[-1] = (3.0 * f[-1] - 4.0 * f[-2] + f[-3]) / (2.0 * step)
    if n < 5:
        return d

    fine = d[2:-2].copy()
    coarse = (f[4:] - f[:-4]) / (4.0 * step)
    extrapolated = (4.0 * fine - coarse) / 3.0
    d[2:-2] = extrapolated

    if check:
        error = np.abs(extrapolated - fine)
        tol = (
            RICHARDSON_RTOL * np.abs(extrapolated)
            + RICHARDSON_RTOL * GLOBAL_FLOOR * np.max(np.abs(d))
            + ROUNDOFF_FLOOR * np.max(np.abs(f)) / step
        )
        over = np.flatnonzero(error > tol)
        if over.size:
            i = int(over[0]) + 2
            raise GridTooCoarse(
                f"derivative error estimate {error[i - 2]:.3g} exceeds tolerance at point {i}",
                index=(i,),
            )
    return d


def uniform_step(grid: np.ndarray) -> float:
    grid = np.asarray(grid, dtype=float)
    if grid.size < 2:
        raise GridTooCoarse("grid needs at least two points")
    steps = np.diff(grid)
    h = float(steps.mean())
    if h <= 0 or not np.allclose(steps, h, rtol=UNIFORM_RTOL, atol=0.0):
        raise ValueError("detuning grid must be uniform and increasing")
    return h


def frequency_orientation(medium: MediumParams) -> float:
    """d(delta_p)/d(nu) in units of 1/gamma, nu being the offset from the carrier."""
    return 1.0 if medium.group_index_convention == "literal" else -1.0


@dataclass(frozen=True)
class DispersionPoint:
    delta_p: float
    n_r: float
    n_complex: complex
    N_g: float
    v_g: float
    tau: float

    @property
    def tau_ns(self) -> float:
        return self.tau * 1e9


@dataclass(frozen=True)
class DispersionProfile:
    delta_p: np.ndarray
    n_complex: np.ndarray
    N_g: np.ndarray
    v_g: np.ndarray
    tau: np.ndarray

    @property
    def n_r(self) -> np.ndarray:
        return self.n_complex.real

    def __len__(self) -> int:
        return int(self.delta_p.size)

    def point(self, i: int) -> DispersionPoint:
        return DispersionPoint(
            delta_p=float(self.delta_p[i]),
            n_r=float(self.n_complex[i].real),
            n_complex=complex(self.n_complex[i]),
            N_g=float(self.N_g[i]),
            v_g=float(self.v_g[i]),
            tau=float(self.tau[i]),
        )

    def points(self) -> Iterator[DispersionPoint]:
        for i in range(len(self)):
            yield self.point(i)


def group_index(grid: np.ndarray, n_complex: np.ndarray, medium: MediumParams) -> DispersionProfile:
    grid = np.asarray(grid, dtype=float)
    n_complex = np.asarray(n_complex, dtype=complex)
    h = uniform_step(grid)
    dn = derivative(n_complex, h)

    sign = frequency_orientation(medium)
    n_g = np.real(n_complex + sign * (medium.omega_14 - grid) * dn)
    with np.errstate(divide="ignore"):
        v_g = np.where(n_g != 0, SPEED_OF_LIGHT / np.where(n_g != 0, n_g, 1.0), np.inf)
    tau = medium.length_L * (n_g - 1.0) / SPEED_OF_LIGHT
    return DispersionProfile(delta_p=grid, n_complex=n_complex, N_g=n_g, v_g=v_g, tau=tau)


def local_grid(center: float, step: float = DEFAULT_STEP, half_width: int = 4) -> np.ndarray:
    return center + step * np.arange(-half_width, half_width + 1, dtype=float)


def dispersion_profile(
    config: Config, grid: np.ndarray, mode: Mode = "cold"
) -> Tuple[OpticalResponse, DispersionProfile]:
    responses = spectrum(config, grid, mode)
    n = track_refractive_index(responses)
    return responses, group_index(grid, n, config.medium)


def group_index_at(
    config: Config, delta_p: float = 0.0, mode: Mode = "cold", step: float = DEFAULT_STEP
) -> DispersionPoint:
    grid = local_grid(delta_p, step)
    _, profile = dispersion_profile(config, grid, mode)
    return profile.point(grid.size // 2)


@dataclass(frozen=True)
class DispersionSlopes:
    """d Re(chi)/d(omega_p) at one detuning, per gamma, for the configured orientation."""

    delta_p: float
    chi_e: float
    chi_m: float

    @staticmethod
    def character(slope: float) -> str:
        return "normal" if slope > 0 else "anomalous"

    @property
    def electric(self) -> str:
        return self.character(self.chi_e)

    @property
    def magnetic(self) -> str:
        return self.character(self.chi_m)


def dispersion_slopes(
    config: Config, delta_p: float = 0.0, mode: Mode = "cold", step: float = DEFAULT_STEP
) -> DispersionSlopes:
    """Slopes of Re(chi_e), Re(chi_m) against probe frequency.

    Under `frequency` the probe frequency is omega_14 - delta_p, so the slope is
    minus the slope against delta_p.
    """
    grid = local_grid(delta_p, step)
    responses = spectrum(config, grid, mode)
    centre = grid.size // 2
    sign = frequency_orientation(config.medium)
    slope_e = derivative(np.real(responses.chi_e), step, check=False)[centre]
    slope_m = derivative(np.real(responses.chi_m), step, check=False)[centre]
    return DispersionSlopes(float(delta_p), float(sign * slope_e), float(sign * slope_m))
