# src/optics/__init__.py
from .delay import DelayRow, SweepRow, delay_table, omega3_sweep, superluminal_crossover
from .group import (
    DEFAULT_STEP,
    DispersionPoint,
    DispersionProfile,
    DispersionSlopes,
    derivative,
    dispersion_profile,
    dispersion_slopes,
    frequency_orientation,
    group_index,
    group_index_at,
    local_grid,
    uniform_step,
)
from .index import refractive_index, track_refractive_index
