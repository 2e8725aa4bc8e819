"""Detector response curves and probabilistic detection of channel intensities.

A response maps incident intensity in [0, 1] to a firing probability. The
linear response is the ideal proportional detector; the threshold and
power-law families model detectors whose sensitivity collapses at low
intensity, which is what lets a purely local simulation produce
coincidence visibilities above the proportional-detector ceiling.
"""

from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError

RESPONSE_KINDS = ("linear", "threshold", "power")
SIMULTANEOUS_POLICIES = ("keep_both", "drop_both", "pick_random")


@dataclass(frozen=True)
class DetectorResponse:
    """Monotone map from incident intensity in [0, 1] to firing probability.

    linear:    g(I) = efficiency * I
    threshold: g(I) = efficiency * I where I >= threshold, else exactly 0
    power:     g(I) = efficiency * I ** exponent
    """

    kind: str = "linear"
    efficiency: float = 1.0
    threshold: float = 0.0
    exponent: float = 1.0

    def __post_init__(self):
        if self.kind not in RESPONSE_KINDS:
            raise ConfigError(f"unknown detector response kind {self.kind!r}")
        if not 0.0 < self.efficiency <= 1.0:
            raise ConfigError(f"efficiency must be in (0, 1], got {self.efficiency}")
        if not 0.0 <= self.threshold <= 1.0:
            raise ConfigError(f"threshold must be in [0, 1], got {self.threshold}")
        if self.exponent <= 0.0:
            raise ConfigError(f"exponent must be positive, got {self.exponent}")

    @classmethod
    def linear(cls, efficiency: float = 1.0) -> "DetectorResponse":
        return cls(kind="linear", efficiency=efficiency)

    @classmethod
    def thresholded(cls, threshold: float, efficiency: float = 1.0) -> "DetectorResponse":
        return cls(kind="threshold", efficiency=efficiency, threshold=threshold)

    @classmethod
    def power_law(cls, exponent: float, efficiency: float = 1.0) -> "DetectorResponse":
        return cls(kind="power", efficiency=efficiency, exponent=exponent)

    def with_efficiency(self, efficiency: float) -> "DetectorResponse":
        return replace(self, efficiency=efficiency)

    def probability(self, intensity):
        """Firing probability for a scalar or array of intensities."""
        i = np.asarray(intensity, dtype=float)
        if self.kind == "linear":
            out = self.efficiency * i
        elif self.kind == "threshold":
            out = np.where(i >= self.threshold, self.efficiency * i, 0.0)
        else:
            out = self.efficiency * np.power(i, self.exponent)
        if np.ndim(intensity) == 0:
            return float(out)
        return out


@dataclass(frozen=True)
class DetectionOutcome:
    """Firing record for the two channels of one analyzer output.

    Both channels may fire for the same pulse under a wave-intensity model;
    suppression of such double fires is a separate, explicit policy.
    """

    plus_fired: bool
    minus_fired: bool
    time_plus: float | None = None
    time_minus: float | None = None


def detect(intensities, response: DetectorResponse, rng, *, jitter_sigma: float = 0.0,
           emit_time: float = 0.0) -> DetectionOutcome:
    """Fire each channel independently with probability g(I_channel).

    Fired channels are stamped with emit_time plus Gaussian timing jitter of
    width jitter_sigma (the synchronisation knob). Draw order is fixed:
    the two firing uniforms, then a jitter normal per fired channel.
    """
    if jitter_sigma < 0.0:
        raise ConfigError("jitter_sigma must be >= 0")
    p_plus = response.probability(intensities[0])
    p_minus = response.probability(intensities[1])
    plus = bool(rng.random() < p_plus)
    minus = bool(rng.random() < p_minus)
    t_plus = t_minus = None
    if plus:
        t_plus = emit_time + (rng.normal(0.0, jitter_sigma) if jitter_sigma > 0.0 else 0.0)
    if minus:
        t_minus = emit_time + (rng.normal(0.0, jitter_sigma) if jitter_sigma > 0.0 else 0.0)
    return DetectionOutcome(plus, minus, t_plus, t_minus)


def resolve_simultaneous(outcome: DetectionOutcome, policy: str, rng=None) -> DetectionOutcome:
    """Apply an electronics policy to a double fire on one analyzer.

    keep_both passes the outcome through, drop_both discards both events
    when both channels fired, pick_random keeps exactly one with a fair
    coin. Suppressing double fires makes the recorded sample unfair even
    for a proportional detector, though the effect vanishes at low
    efficiency where double fires are rare.
    """
    if policy not in SIMULTANEOUS_POLICIES:
        raise ConfigError(f"unknown simultaneous policy {policy!r}")
    if not (outcome.plus_fired and outcome.minus_fired) or policy == "keep_both":
        return outcome
    if policy == "drop_both":
        return DetectionOutcome(False, False, None, None)
    if rng is None:
        raise ConfigError("pick_random policy needs an rng")
    if rng.random() < 0.5:
        return DetectionOutcome(True, False, outcome.time_plus, None)
    return DetectionOutcome(False, True, None, outcome.time_minus)
