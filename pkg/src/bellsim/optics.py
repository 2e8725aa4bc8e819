"""Waveform-level model of two-component pulses, the phase modulator, and
two-channel polarizing projections.

A pulse carries a vertical and a horizontal amplitude plus the phase of
the horizontal component relative to the vertical one. The modulator adds
a configurable phase offset (the half-wave plate and the voltage-driven
cell are folded into one device). A Wollaston prism fixed at 45 degrees
projects both components onto the +-45 degree axes, where they interfere,
while a plain polarizer applies Malus's law to plane-polarized input.
Everything works at the intensity level: detectors never see the
time-domain waveform, only per-channel intensities.
"""

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

from .angles import PHASE_PERIOD, POLARIZATION_PERIOD, wrap, wrap_phase
from .errors import ConfigError, NotPlanePolarizedError

DEFAULT_FREQUENCY = 1.0

_PLANE_PHASE_TOL = 1e-9
_AMP_TOL = 1e-12
_BALANCED_AMP = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class TwoComponentPulse:
    """One emitted pulse with vertical/horizontal amplitudes and a phase offset.

    The source normalizes total intensity (amp_v**2 + amp_h**2) to at most
    one unit; optical elements only conserve or reduce it. frequency is
    carried for dispersion bookkeeping and never affects projections.
    """

    amp_v: float
    amp_h: float
    phase_diff: float = 0.0
    frequency: float = DEFAULT_FREQUENCY
    emit_time: float = 0.0

    def __post_init__(self):
        if self.amp_v < 0.0 or self.amp_h < 0.0:
            raise ConfigError("amplitudes must be nonnegative")
        if self.intensity > 1.0 + 1e-9:
            raise ConfigError(f"total intensity {self.intensity} exceeds 1")
        if self.frequency <= 0.0:
            raise ConfigError("frequency must be positive")
        if self.emit_time < 0.0:
            raise ConfigError("emit_time must be >= 0")
        object.__setattr__(self, "phase_diff", wrap_phase(self.phase_diff))

    @classmethod
    def plane_polarized(cls, angle: float, intensity: float = 1.0,
                        frequency: float = DEFAULT_FREQUENCY,
                        emit_time: float = 0.0) -> "TwoComponentPulse":
        """Pulse linearly polarized at `angle` from the vertical axis.

        A negative product of the axis components is encoded as a phase
        offset of pi, keeping both amplitudes nonnegative.
        """
        angle = wrap(angle, POLARIZATION_PERIOD)
        amp = math.sqrt(intensity)
        c, s = math.cos(angle), math.sin(angle)
        phase = 0.0 if c * s >= 0.0 else math.pi
        return cls(amp * abs(c), amp * abs(s), phase, frequency, emit_time)

    @classmethod
    def balanced(cls, phase_diff: float, frequency: float = DEFAULT_FREQUENCY,
                 emit_time: float = 0.0) -> "TwoComponentPulse":
        """Equal-amplitude pulse, both components present, unit intensity."""
        return cls(_BALANCED_AMP, _BALANCED_AMP, phase_diff, frequency, emit_time)

    @property
    def intensity(self) -> float:
        return self.amp_v * self.amp_v + self.amp_h * self.amp_h

    @property
    def is_plane_polarized(self) -> bool:
        if min(self.amp_v, self.amp_h) <= _AMP_TOL:
            return True
        d = min(self.phase_diff, abs(self.phase_diff - math.pi),
                abs(self.phase_diff - PHASE_PERIOD))
        return d <= _PLANE_PHASE_TOL

    @property
    def polarization_angle(self) -> float:
        """Polarization direction in [0, pi) for a plane-polarized pulse."""
        if self.amp_h <= _AMP_TOL:
            return 0.0
        if self.amp_v <= _AMP_TOL:
            return 0.5 * math.pi
        if not self.is_plane_polarized:
            raise NotPlanePolarizedError(
                f"pulse with phase offset {self.phase_diff:.6g} is elliptical"
            )
        base = math.atan2(self.amp_h, self.amp_v)
        if abs(self.phase_diff - math.pi) <= _PLANE_PHASE_TOL:
            return wrap(-base, POLARIZATION_PERIOD)
        return base


class ChannelIntensities(NamedTuple):
    """Per-channel output intensities of a two-channel analyzer."""

    i_plus: float
    i_minus: float

    @property
    def total(self) -> float:
        return self.i_plus + self.i_minus


def apply_modulator(pulse: TwoComponentPulse, two_a: float) -> TwoComponentPulse:
    """Shift the horizontal component's phase by two_a (mod 2*pi).

    Amplitudes and frequency are untouched, so applying shifts u then v is
    the same as applying u + v once.
    """
    return replace(pulse, phase_diff=wrap_phase(pulse.phase_diff + two_a))


def wollaston_project(pulse: TwoComponentPulse) -> ChannelIntensities:
    """Project a pulse through a two-channel prism fixed at 45 degrees.

    Both components contribute amplitude/sqrt(2) to each of the +-45
    degree outputs, where they interfere with relative phase phase_diff:

        i_plus  = (I + 2 a_v a_h cos(phase_diff)) / 2
        i_minus = (I - 2 a_v a_h cos(phase_diff)) / 2

    For the balanced pulse with phase_diff = 2a this is cos^2 a and
    sin^2 a. The two outputs always sum to the input intensity.
    """
    cross = 2.0 * pulse.amp_v * pulse.amp_h * math.cos(pulse.phase_diff)
    total = pulse.intensity
    return ChannelIntensities(0.5 * (total + cross), 0.5 * (total - cross))


def polarizer_project(pulse: TwoComponentPulse, axis: float) -> ChannelIntensities:
    """Malus-law projection of a plane-polarized pulse onto a polarizer axis.

    i_plus = I cos^2(l - axis) and i_minus = I sin^2(l - axis) where l is
    the pulse polarization direction. A genuinely two-component elliptical
    pulse is rejected unless the axis sits at 45 degrees, where the prism
    interference projection applies instead (axis 3*pi/4 swaps channels).
    """
    if pulse.is_plane_polarized:
        d = pulse.polarization_angle - axis
        i_plus = pulse.intensity * 0.5 * (1.0 + math.cos(2.0 * d))
        return ChannelIntensities(i_plus, pulse.intensity - i_plus)
    axis_mod = wrap(axis, POLARIZATION_PERIOD)
    if abs(axis_mod - 0.25 * math.pi) <= 1e-12:
        return wollaston_project(pulse)
    if abs(axis_mod - 0.75 * math.pi) <= 1e-12:
        out = wollaston_project(pulse)
        return ChannelIntensities(out.i_minus, out.i_plus)
    raise NotPlanePolarizedError(
        "polarizer behavior is only defined for plane-polarized pulses "
        f"(or a 45-degree axis); got phase offset {pulse.phase_diff:.6g} "
        f"with axis {axis:.6g}"
    )
