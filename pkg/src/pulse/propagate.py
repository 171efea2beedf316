# src/pulse/propagate.py
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT

from errors import AliasingDetected
from medium import spectrum
from optics import (
    DEFAULT_STEP,
    derivative,
    dispersion_profile,
    frequency_orientation,
    local_grid,
    track_refractive_index,
)
from params import Config, MediumParams, PulseSpec

from .spectra import PulseGrid, PulseTrace, input_time_trace, to_frequency, to_time

Mode = Literal["cold", "hot"]

BAND_FLOOR = 1e-14
ALIAS_LIMIT = 1e-6
# share of samples at each end of the window treated as wrap-around zone
GUARD_FRACTION = 1 / 16


@dataclass(frozen=True)
class DispersionCoefficients:
    n_0: float
    g_vd: float  # s^2/m

    @property
    def g_vd_times_c(self) -> float:
        """c * G_vd = dN_g/d(omega), in seconds."""
        return self.g_vd * SPEED_OF_LIGHT


def coefficients_from_group_index(
    n_g: np.ndarray, step: float, medium: MediumParams
) -> DispersionCoefficients:
    n_g = np.asarray(n_g, dtype=float)
    centre = n_g.size // 2
    slope = derivative(n_g, step)[centre]
    dn_domega = frequency_orientation(medium) * slope / medium.gamma_unit
    return DispersionCoefficients(n_0=float(n_g[centre]), g_vd=float(dn_domega / SPEED_OF_LIGHT))


def dispersion_coefficients(
    config: Config, mode: Mode = "cold", step: float = DEFAULT_STEP
) -> DispersionCoefficients:
    """n_0 and G_vd at the resonance omega_0 = omega_14 (delta_p = 0)."""
    grid = local_grid(0.0, step)
    _, profile = dispersion_profile(config, grid, mode)
    return coefficients_from_group_index(profile.N_g, step, config.medium)


def predicted_peak_shift(spec: PulseSpec, coeffs: DispersionCoefficients, length: float) -> float:
    return length * (coeffs.n_0 / SPEED_OF_LIGHT + coeffs.g_vd * spec.delta)


def propagate_analytic(
    spec: PulseSpec,
    grid: PulseGrid,
    coeffs: DispersionCoefficients,
    length: float,
    omega_0: float,
) -> PulseTrace:
    """Output envelope for k = n_0 omega/c + G_vd (omega - omega_0)^2 / 2."""
    c = SPEED_OF_LIGHT
    tau2 = spec.tau_0**2
    n_0, g = coeffs.n_0, coeffs.g_vd
    x = 2j * length * c * g + c * tau2

    prefactor = spec.tau_0 * np.sqrt(c) / np.sqrt(x)
    exponent = (
        (2j * (length * n_0 - c * grid.t) - spec.delta * tau2 * c) ** 2 / (4.0 * c * x)
        - 1j * n_0 * length * omega_0 / c
        - spec.delta**2 * tau2 / 4.0
    )
    # overflow guard
    shift = max(0.0, float(np.max(exponent.real)))
    samples = prefactor * np.exp(exponent - shift)
    return PulseTrace("time", grid.t, samples, n_0=n_0, g_vd=g, log_scale=shift)


def output_spectrum(
    spec: PulseSpec,
    grid: PulseGrid,
    coeffs: DispersionCoefficients,
    length: float,
    omega_0: float,
) -> PulseTrace:
    c = SPEED_OF_LIGHT
    tau2 = spec.tau_0**2
    nu, delta = grid.nu, spec.delta
    n_0, g = coeffs.n_0, coeffs.g_vd

    x = 2j * length * c * g + c * tau2
    q1 = 2j * length * nu * c * g + c * tau2 * (nu - delta) + 2j * length * n_0
    q2 = (c * tau2 * delta - 2j * length * n_0) ** 2 / (c * x)
    exponent = -(q1**2) / (4.0 * c * x) + 0.25 * (
        -tau2 * delta**2 + q2 - 4j * omega_0 * length * n_0 / c
    )
    samples = spec.tau_0 / np.sqrt(2.0) * np.exp(exponent)
    return PulseTrace("frequency", nu, samples, n_0=n_0, g_vd=g)


def band_mask(spec: PulseSpec, grid: PulseGrid) -> np.ndarray:
    """Frequencies where the input spectrum exceeds BAND_FLOOR of its peak."""
    return np.abs(grid.nu - spec.delta) * spec.tau_0 / 2.0 <= np.sqrt(-np.log(BAND_FLOOR))


def vacuum_wavenumber(grid: PulseGrid, omega_0: float) -> np.ndarray:
    return (omega_0 + grid.nu) / SPEED_OF_LIGHT + 0j


def medium_wavenumber(
    config: Config, grid: PulseGrid, mode: Mode = "cold", band: Optional[np.ndarray] = None
) -> np.ndarray:
    """k(nu) = n omega / c from the full complex index; NaN outside `band`."""
    medium = config.medium
    mask = np.ones(grid.nu.size, dtype=bool) if band is None else np.asarray(band, dtype=bool)
    nu = grid.nu[mask]

    delta_p = frequency_orientation(medium) * nu / medium.gamma_unit
    order = np.argsort(delta_p)
    n_sorted = track_refractive_index(spectrum(config, delta_p[order], mode))
    n = np.empty_like(n_sorted)
    n[order] = n_sorted

    k = np.full(grid.nu.size, np.nan + 0j)
    k[mask] = n * (medium.carrier + nu) / SPEED_OF_LIGHT
    return k


def propagate_numeric(
    spec: PulseSpec, grid: PulseGrid, wavenumber: np.ndarray, length: float
) -> PulseTrace:
    """Input spectrum times exp(-i Re k L - Im k L), transformed back to time."""
    a_in = to_frequency(grid, input_time_trace(spec, grid).samples)

    k = np.asarray(wavenumber, dtype=complex)
    defined = np.isfinite(k)
    k = np.where(defined, k, 0.0)
    log_h = -1j * k.real * length
    if spec.include_absorption:
        log_h = log_h - k.imag * length

    shift = float(np.max(log_h.real[defined])) if np.any(defined) else 0.0
    h = np.where(defined, np.exp(log_h - shift), 0.0)
    samples = to_time(grid, a_in * h)

    power = np.abs(samples) ** 2
    guard = max(1, int(samples.size * GUARD_FRACTION))
    edge = power[:guard].sum() + power[-guard:].sum()
    if edge > ALIAS_LIMIT * power.sum():
        raise AliasingDetected(
            f"{edge / power.sum():.3g} of the output energy sits in the wrap-around zone"
        )
    return PulseTrace("time", grid.t, samples, log_scale=shift)
