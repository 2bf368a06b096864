"""
Experiments - 网格扫描与仿真曲面重现，输出 CSV
"""

from .csv_output import format_cell, write_csv
from .models import SweepSpec
from .reproduce import FIG1_EPS, FIG1_N, FIG2_COLUMNS, FIG2_N, FIGURE_A0, Figure, reproduce
from .sweep import SWEEP_COLUMNS, run_sweep, sweep_rows

__all__ = [
    "SweepSpec",
    "SWEEP_COLUMNS",
    "FIG2_COLUMNS",
    "FIGURE_A0",
    "FIG1_EPS",
    "FIG1_N",
    "FIG2_N",
    "Figure",
    "format_cell",
    "write_csv",
    "sweep_rows",
    "run_sweep",
    "reproduce",
]
