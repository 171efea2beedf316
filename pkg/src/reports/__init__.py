# src/reports/__init__.py
from .discrepancy import REPORT_COLUMNS, crossover_report, discrepancy_report, dispersion_report, pulse_report
from .writers import format_value, render_table, write_table
