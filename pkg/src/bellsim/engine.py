"""End-to-end Monte Carlo experiment runner.

Pipeline per run: sample a batch of pairs, push each side through its
analyzer (a polarizer at the setting, or a phase modulator followed by a
prism fixed at 45 degrees), fire the detectors, time-tag every event,
then match coincidences with a greedy earliest-first pass in which each
event participates in at most one coincidence. Counting is fully
vectorized; the matcher is compiled with numba when available.

Reproducibility: a run consumes a single random stream derived from the
config seed, and sweeps derive one child stream per point from the master
seed, so results never depend on execution order or thread count.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .detection import ACCIDENTAL_COMBOS if False else None  # placeholder
