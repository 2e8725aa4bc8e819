"""Random generation of correlated pulse pairs.

Two source kinds:

  cascade  both sides leave plane-polarized at the same angle, drawn from
           a hidden-variable model over a period of pi.
  pdc      both sides are balanced two-component pulses sharing a binary
           phase class (0 or pi, period 2*pi) plus an optional
           wrapped-Gaussian dispersion offset. By default the offset is
           shared between the sides (common pump origin); a flag switches
           to independent per-side offsets.

Emission times follow an exponential inter-arrival law. Generators own
their random state: one generator must not be shared across threads, but
any number of generators with distinct seeds may run concurrently.
"""

import math
from dataclasses import dataclass

import numpy as np

from .analytic import HiddenVariableModel
from .angles import PHASE_PERIOD, wrap
from .errors import ConfigError
from .optics import TwoComponentPulse

SOURCE_KINDS = ("cascade", "pdc")


@dataclass(frozen=True)
class SourceConfig:
    """Pair-source description.

    phase_class_weights gives the probabilities of phase class 0 and pi;
    (1, 0) models components always generated in phase, (0.5, 0.5) the
    even/odd split. Weights, dispersion and shared_dispersion only apply
    to the pdc kind; hidden_variable only to cascade.
    """

    kind: str
    hidden_variable: HiddenVariableModel | None = None
    phase_class_weights: tuple[float, float] = (0.5, 0.5)
    dispersion_sigma: float = 0.0
    shared_dispersion: bool = True
    pair_rate: float = 1e4
    pulse_duration: float = 0.0

    def __post_init__(self):
        if self.kind not in SOURCE_KINDS:
            raise ConfigError(f"unknown source kind {self.kind!r}")
        if self.kind == "cascade" and self.hidden_variable is None:
            raise ConfigError("cascade source needs a hidden-variable model")
        w = self.phase_class_weights
        if len(w) != 2 or w[0] < 0.0 or w[1] < 0.0 or abs(w[0] + w[1] - 1.0) > 1e-12:
            raise ConfigError(f"phase class weights must be nonnegative and sum to 1, got {w}")
        if self.dispersion_sigma < 0.0:
            raise ConfigError("dispersion_sigma must be >= 0")
        if self.pair_rate <= 0.0:
            raise ConfigError("pair_rate must be positive")
        if self.pulse_duration < 0.0:
            raise ConfigError("pulse_duration must be >= 0")

    @classmethod
    def cascade(cls, model: HiddenVariableModel, pair_rate: float = 1e4,
                pulse_duration: float = 0.0) -> "SourceConfig":
        return cls(kind="cascade", hidden_variable=model, pair_rate=pair_rate,
                   pulse_duration=pulse_duration)

    @classmethod
    def pdc(cls, phase_class_weights: tuple[float, float] = (0.5, 0.5),
            dispersion_sigma: float = 0.0, shared_dispersion: bool = True,
            pair_rate: float = 1e4, pulse_duration: float = 0.0) -> "SourceConfig":
        return cls(kind="pdc", phase_class_weights=phase_class_weights,
                   dispersion_sigma=dispersion_sigma, shared_dispersion=shared_dispersion,
                   pair_rate=pair_rate, pulse_duration=pulse_duration)


@dataclass(frozen=True)
class EmittedPair:
    """One correlated pair: two pulses, the realized hidden variable, a time."""

    side_a: TwoComponentPulse
    side_b: TwoComponentPulse
    hidden_value: float
    emit_time: float


def sample_lambda(model: HiddenVariableModel, rng, size=None):
    """Draw hidden-variable values from a model (scalar when size is None).

    Draw order per element: uniform models consume one uniform; delta none;
    binary one uniform; smeared one uniform then one normal.
    """
    scalar = size is None
    n = 1 if scalar else int(size)
    if model.kind == "uniform":
        out = rng.random(n) * model.period
    elif model.kind == "delta":
        out = np.full(n, model.lambda0)
    elif model.kind == "binary":
        out = model.lambda0 + 0.5 * model.period * (rng.random(n) < 0.5)
        out = wrap(out, model.period)
    else:
        peak = 0.5 * model.period * (rng.random(n) < 0.5)
        noise = rng.normal(0.0, model.sigma, n) if model.sigma > 0.0 else 0.0
        out = wrap(model.lambda0 + peak + noise, model.period)
    if scalar:
        return float(out[0])
    return out


@dataclass
class PairBatch:
    """Vectorized pair sample: one array entry per emitted pair.

    For a cascade source lam holds the shared polarization angle and the
    phase arrays are None; for pdc, phase_a/phase_b hold the per-side
    phase differences and phase_class the pre-dispersion class (0 or pi).
    """

    kind: str
    emit_times: np.ndarray
    hidden_values: np.ndarray
    lam: np.ndarray | None = None
    phase_a: np.ndarray | None = None
    phase_b: np.ndarray | None = None
    phase_class: np.ndarray | None = None

    @property
    def n(self) -> int:
        return len(self.emit_times)


def sample_batch(config: SourceConfig, rng, n: int) -> PairBatch:
    """Draw n pairs in one vectorized pass.

    Draw order is fixed: inter-arrival exponentials first, then the source
    draws (lambda for cascade; class uniforms, then dispersion normals for
    pdc, one per pair when shared, one per side otherwise).
    """
    if n < 0:
        raise ConfigError("pair count must be >= 0")
    times = np.cumsum(rng.exponential(1.0 / config.pair_rate, n))
    if config.kind == "cascade":
        lam = sample_lambda(config.hidden_variable, rng, n)
        return PairBatch(kind="cascade", emit_times=times, hidden_values=lam, lam=lam)

    w0 = config.phase_class_weights[0]
    classes = np.where(rng.random(n) < w0, 0.0, math.pi)
    if config.dispersion_sigma > 0.0:
        if config.shared_dispersion:
            offset_a = offset_b = rng.normal(0.0, config.dispersion_sigma, n)
        else:
            offset_a = rng.normal(0.0, config.dispersion_sigma, n)
            offset_b = rng.normal(0.0, config.dispersion_sigma, n)
        phase_a = wrap(classes + offset_a, PHASE_PERIOD)
        phase_b = wrap(classes + offset_b, PHASE_PERIOD)
        hidden = phase_a if config.shared_dispersion else classes
    else:
        phase_a = phase_b = classes
        hidden = classes
    return PairBatch(kind="pdc", emit_times=times, hidden_values=hidden,
                     phase_a=phase_a, phase_b=phase_b, phase_class=classes)


class PairSource:
    """Stateful pair generator with its own clock and random stream.

    Identical seed and config give a bit-identical pair stream. Not safe
    for concurrent use; create one source per thread instead.
    """

    def __init__(self, config: SourceConfig, seed=0):
        self.config = config
        self._rng = np.random.default_rng(seed)
        self._clock = 0.0

    def emit(self) -> EmittedPair:
        batch = sample_batch(self.config, self._rng, 1)
        t = self._clock + float(batch.emit_times[0])
        self._clock = t
        if batch.kind == "cascade":
            lam = float(batch.lam[0])
            pulse = TwoComponentPulse.plane_polarized(lam, 1.0, emit_time=t)
            return EmittedPair(pulse, pulse, lam, t)
        pa = TwoComponentPulse.balanced(float(batch.phase_a[0]), emit_time=t)
        pb = TwoComponentPulse.balanced(float(batch.phase_b[0]), emit_time=t)
        return EmittedPair(pa, pb, float(batch.hidden_values[0]), t)

    def stream(self, n: int):
        """Yield n consecutive pairs."""
        for _ in range(int(n)):
            yield self.emit()
