# src/pulse/__init__.py
from .metrics import PulseMetrics, peak_position, pulse_metrics, rms_width
from .propagate import (
    DispersionCoefficients,
    band_mask,
    coefficients_from_group_index,
    dispersion_coefficients,
    medium_wavenumber,
    output_spectrum,
    predicted_peak_shift,
    propagate_analytic,
    propagate_numeric,
    vacuum_wavenumber,
)
from .spectra import (
    PulseGrid,
    PulseTrace,
    input_spectrum,
    input_time_trace,
    pulse_grid,
    to_frequency,
    to_time,
)
