"""Angle bookkeeping.

Angles are plain floats in radians throughout the package. Polarization
settings and polarization-type hidden variables live on a period of pi
(rotating an analyzer by pi gives the same analyzer); phase differences
live on a period of 2*pi. Wherever a period matters, the carrying object
stores it explicitly, because a phase difference of pi projects to an
apparent polarization offset of pi/2 and silently mixing the two period
conventions is the classic bug here.
"""

import math

import numpy as np

POLARIZATION_PERIOD = math.pi
PHASE_PERIOD = 2.0 * math.pi


def wrap(value, period: float = POLARIZATION_PERIOD):
    """Normalize an angle (scalar or array) into the canonical range [0, period).

    Normalization is idempotent, and values differing by an exact multiple
    of the period map to the same canonical value up to float rounding.
    """
    if period <= 0.0:
        raise ValueError(f"period must be positive, got {period}")
    out = np.mod(value, period)
    # np.mod can round up to the period itself for tiny negative inputs.
    out = np.where(out >= period, out - period, out)
    if np.ndim(value) == 0:
        return float(out)
    return out


def wrap_phase(value):
    """Normalize a phase difference into [0, 2*pi)."""
    return wrap(value, PHASE_PERIOD)
