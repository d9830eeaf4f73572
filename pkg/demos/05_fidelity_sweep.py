"""
A full sweep
============

Every column of the sweep table at a handful of expansion rates, written
as CSV to standard output.
"""

import sys

from cosmoqc.sweep import SweepConfig, rows_to_csv, run_sweep

cfg = SweepConfig(points=5)
sys.stdout.write(rows_to_csv(run_sweep(cfg)))
