# src/scenarios/__init__.py
from .calibrate import CalibrationResult, calibrate, load_stanza, write_stanza
from .presets import PRESETS, Scenario, counter_propagating, get_preset
