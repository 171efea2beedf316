# src/pulse/spectra.py
"""Sampling grids, Fourier transforms and traces for the probe pulse.

Envelopes are kept in baseband: the carrier exp(i omega_0 t) is factored out and
nu = omega - omega_0. The continuous transform pair used throughout is

    A(nu) = 1/sqrt(2 pi) * int A(t) exp(-i nu t) dt
    A(t)  = 1/sqrt(2 pi) * int A(nu) exp(+i nu t) dnu
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np
from scipy.fft import fft, fftfreq, fftshift, ifft, ifftshift

from errors import FlatTrace, WindowTooNarrow
from params import PulseSpec

Domain = Literal["time", "frequency"]

EDGE_LEVEL = 1e-8


@dataclass(frozen=True)
class PulseGrid:
    t: np.ndarray
    nu: np.ndarray

    @property
    def dt(self) -> float:
        return float(self.t[1] - self.t[0])

    @property
    def dnu(self) -> float:
        return float(self.nu[1] - self.nu[0])


def pulse_grid(spec: PulseSpec, center: float = 0.0, extra_span: float = 0.0) -> PulseGrid:
    """Time grid of `samples` points spanning window*tau_0 + |extra_span| around `center`."""
    n = spec.samples
    span = spec.window * spec.tau_0 + abs(extra_span)
    dt = span / n
    t = center + (np.arange(n) - n // 2) * dt
    nu = 2.0 * np.pi * fftshift(fftfreq(n, dt))
    return PulseGrid(t=t, nu=nu)


def to_frequency(grid: PulseGrid, samples: np.ndarray) -> np.ndarray:
    phase = np.exp(-1j * grid.nu * grid.t[0])
    return fftshift(fft(samples)) * phase * grid.dt / np.sqrt(2.0 * np.pi)


def to_time(grid: PulseGrid, samples: np.ndarray) -> np.ndarray:
    n = grid.t.size
    shifted = ifftshift(samples * np.exp(1j * grid.nu * grid.t[0]))
    return ifft(shifted) * n * grid.dnu / np.sqrt(2.0 * np.pi)


@dataclass(frozen=True)
class PulseTrace:
    domain: Domain
    axis: np.ndarray
    samples: np.ndarray
    n_0: Optional[float] = None
    g_vd: Optional[float] = None
    # natural log of a common factor divided out of `samples`
    log_scale: float = 0.0

    def __post_init__(self) -> None:
        energy = self.energy()
        if not np.isfinite(energy) or energy <= 0:
            raise FlatTrace(f"{self.domain} trace has no finite positive energy")

    def energy(self) -> float:
        return float(np.sum(np.abs(self.samples) ** 2))

    def intensity(self) -> np.ndarray:
        """|A|^2 normalized to unit peak."""
        power = np.abs(self.samples) ** 2
        return power / power.max()

    def normalized(self) -> np.ndarray:
        """Envelope scaled to unit discrete L2 norm."""
        return self.samples / np.sqrt(self.energy())


def input_time_trace(spec: PulseSpec, grid: PulseGrid) -> PulseTrace:
    t = grid.t
    samples = np.exp(-((t / spec.tau_0) ** 2)) * np.exp(1j * spec.delta * t)
    return PulseTrace("time", t, samples)


def input_spectrum(spec: PulseSpec, grid: PulseGrid) -> PulseTrace:
    nu = grid.nu
    samples = spec.tau_0 / np.sqrt(2.0) * np.exp(-((nu - spec.delta) ** 2) * spec.tau_0**2 / 4.0)
    peak = spec.tau_0 / np.sqrt(2.0)
    edge = max(abs(samples[0]), abs(samples[-1]))
    if edge > EDGE_LEVEL * peak:
        raise WindowTooNarrow(
            f"input spectrum at the window edge is {edge / peak:.3g} of its peak (limit {EDGE_LEVEL:g})"
        )
    return PulseTrace("frequency", nu, samples)
