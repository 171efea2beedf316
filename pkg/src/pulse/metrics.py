# src/pulse/metrics.py
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import correlate

from errors import FlatTrace

from .spectra import PulseTrace

FLAT_LEVEL = 1e-12


@dataclass(frozen=True)
class PulseMetrics:
    peak_shift: float
    width_ratio: float
    distortion: float


def peak_position(trace: PulseTrace) -> float:
    """Sub-sample peak of |A|^2 from a parabola through log-intensity at the maximum."""
    power = np.abs(trace.samples) ** 2
    top = float(power.max())
    if top <= 0 or power.max() - power.min() <= FLAT_LEVEL * top:
        raise FlatTrace("intensity has no distinct peak")

    i = int(np.argmax(power))
    if i == 0 or i == power.size - 1:
        raise FlatTrace("intensity peaks at the window edge")

    y0, y1, y2 = np.log(power[i - 1 : i + 2])
    curvature = y0 - 2.0 * y1 + y2
    offset = 0.5 * (y0 - y2) / curvature if curvature < 0 else 0.0
    step = float(trace.axis[1] - trace.axis[0])
    return float(trace.axis[i] + offset * step)


def rms_width(trace: PulseTrace) -> float:
    power = np.abs(trace.samples) ** 2
    weights = power / power.sum()
    mean = np.sum(trace.axis * weights)
    return float(np.sqrt(np.sum((trace.axis - mean) ** 2 * weights)))


def pulse_metrics(trace_in: PulseTrace, trace_out: PulseTrace) -> PulseMetrics:
    if trace_in.axis.shape != trace_out.axis.shape or not np.allclose(trace_in.axis, trace_out.axis):
        raise ValueError("traces must share one grid")

    i_in = trace_in.intensity()
    i_out = trace_out.intensity()
    xcorr = correlate(i_out, i_in, mode="full", method="fft")
    similarity = float(np.max(xcorr)) / float(np.linalg.norm(i_in) * np.linalg.norm(i_out))

    return PulseMetrics(
        peak_shift=peak_position(trace_out) - peak_position(trace_in),
        width_ratio=rms_width(trace_out) / rms_width(trace_in),
        distortion=max(0.0, 1.0 - similarity),
    )
