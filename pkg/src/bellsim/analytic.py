"""Closed-form and quadrature predictions for two-channel coincidence experiments.

Everything here is a pure function of angles, a hidden-variable
distribution, and detector response curves. The closed forms cover the
four standard regimes:

  quantum         P(a, b) = (1/2) cos^2(a - b)
  uniform local   P(a, b) = (1/8) (1 + 2 cos^2(a - b))
  fixed axis      P(a, b) = cos^2(l0 - a) cos^2(l0 - b)
  binary axes     P(a, b) = (1/2) (cos^2 a cos^2 b + sin^2 a sin^2 b)

where in the local models every pair shares a polarization-type hidden
variable distributed uniformly, as a single point mass at l0, or as two
equal point masses half a period apart. general_coincidence evaluates the
underlying integral

    P(a, b) = integral over one period of rho(l) g_a(cos^2(l-a)) g_b(cos^2(l-b))

for any model/response combination, so the closed forms above are the
special cases with proportional (Malus-law) detection, and nonlinear
responses expose the detection loophole: a response that is zero on a
whole band of hidden-variable values pushes the curve minimum below the
uniform-model floor of 1/8 and the visibility above 1/2.

All functions accept scalars or numpy arrays for the angle arguments and
are safe for concurrent use.
"""

import math
from dataclasses import dataclass

import numpy as np

from .angles import POLARIZATION_PERIOD, wrap
from .detection import DetectorResponse
from .errors import ConfigError
from .quadrature import DEFAULT_ABS_TOL, MAX_PANELS, integrate_adaptive

MODEL_KINDS = ("uniform", "delta", "binary", "smeared")

_LINEAR = DetectorResponse.linear()


def _maybe_float(x):
    return float(x) if np.ndim(x) == 0 else x


@dataclass(frozen=True)
class HiddenVariableModel:
    """Distribution of the shared per-pair hidden variable over one period.

    kind:
      uniform  no preferred orientation; density 1/period
      delta    every pair carries the same fixed value lambda0
      binary   equal point masses at lambda0 and lambda0 + period/2
      smeared  50/50 mixture of wrapped Gaussians (width sigma) at the
               two binary positions; sigma -> 0 recovers binary, large
               sigma flattens to uniform

    period is pi for polarization-type variables and 2*pi for
    phase-difference variables; it is carried explicitly because the two
    conventions must never be mixed silently.
    """

    kind: str
    lambda0: float = 0.0
    period: float = POLARIZATION_PERIOD
    sigma: float = 0.0

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ConfigError(f"unknown hidden-variable model kind {self.kind!r}")
        if self.period <= 0.0:
            raise ConfigError(f"period must be positive, got {self.period}")
        if self.sigma < 0.0:
            raise ConfigError(f"sigma must be >= 0, got {self.sigma}")
        object.__setattr__(self, "lambda0", wrap(self.lambda0, self.period))

    @classmethod
    def uniform(cls, period: float = POLARIZATION_PERIOD) -> "HiddenVariableModel":
        return cls(kind="uniform", period=period)

    @classmethod
    def delta(cls, lambda0: float, period: float = POLARIZATION_PERIOD) -> "HiddenVariableModel":
        return cls(kind="delta", lambda0=lambda0, period=period)

    @classmethod
    def binary(cls, lambda0: float = 0.0, period: float = POLARIZATION_PERIOD) -> "HiddenVariableModel":
        return cls(kind="binary", lambda0=lambda0, period=period)

    @classmethod
    def smeared(cls, sigma: float, lambda0: float = 0.0,
                period: float = POLARIZATION_PERIOD) -> "HiddenVariableModel":
        return cls(kind="smeared", lambda0=lambda0, period=period, sigma=sigma)

    def atoms(self):
        """Point masses as (position, weight) pairs, or None for continuous models.

        A smeared model with sigma == 0 degenerates to the binary atoms, so
        expectations against it never touch the quadrature path.
        """
        if self.kind == "delta":
            return [(self.lambda0, 1.0)]
        if self.kind == "binary" or (self.kind == "smeared" and self.sigma == 0.0):
            half = wrap(self.lambda0 + 0.5 * self.period, self.period)
            return [(self.lambda0, 0.5), (half, 0.5)]
        return None

    def density(self, lam):
        """Probability density over one period (continuous models only).

        The smeared density is a wrapped-Gaussian mixture; wrap images are
        summed out to 6 sigma, which bounds the truncated mass below ~2e-9.
        """
        lam = np.asarray(lam, dtype=float)
        if self.kind == "uniform":
            return np.full(lam.shape, 1.0 / self.period)
        if self.kind == "smeared" and self.sigma > 0.0:
            n_images = int(math.ceil(6.0 * self.sigma / self.period)) + 1
            shifts = np.arange(-n_images, n_images + 1) * self.period
            norm = 1.0 / (self.sigma * math.sqrt(2.0 * math.pi))
            out = np.zeros(lam.shape)
            for mu in (self.lambda0, self.lambda0 + 0.5 * self.period):
                z = (lam[..., None] - mu + shifts) / self.sigma
                out += np.exp(-0.5 * z * z).sum(axis=-1)
            return 0.5 * norm * out
        raise ConfigError(f"{self.kind} model has point masses, not a density")

    def expectation(self, f, *, abs_tol: float = DEFAULT_ABS_TOL,
                    max_panels: int = MAX_PANELS) -> float:
        """Expectation of a vectorized callable f(lambda) under this model."""
        atoms = self.atoms()
        if atoms is not None:
            return float(sum(w * float(f(np.asarray(x))) for x, w in atoms))
        return integrate_adaptive(
            lambda lam: self.density(lam) * f(lam),
            0.0,
            self.period,
            abs_tol=abs_tol,
            max_panels=max_panels,
        )


@dataclass(frozen=True)
class ChannelProbabilities:
    """The four coincidence-outcome probabilities plus the two singles."""

    p_pp: float
    p_pm: float
    p_mp: float
    p_mm: float
    s_a: float
    s_b: float

    def __post_init__(self):
        for name in ("p_pp", "p_pm", "p_mp", "p_mm", "s_a", "s_b"):
            v = getattr(self, name)
            if not -1e-12 <= v <= 1.0 + 1e-12:
                raise ConfigError(f"{name}={v} is outside [0, 1]")

    @property
    def total(self) -> float:
        return self.p_pp + self.p_pm + self.p_mp + self.p_mm


def qt_coincidence(a, b):
    """Quantum prediction for the ++ coincidence probability, (1/2) cos^2(a - b).

    Symmetric in its arguments and a function of the setting difference
    only. The double-angle form keeps the exact zeros exact in floats.
    """
    return _maybe_float(0.25 * (1.0 + np.cos(2.0 * (np.asarray(a) - np.asarray(b)))))


def blr_coincidence(a, b):
    """Uniform local-model ++ coincidence probability, (1/8) (1 + 2 cos^2(a - b)).

    This is the proportional-detection, rotationally invariant baseline:
    curve maximum 3/8, minimum 1/8, visibility exactly 1/2.
    """
    return _maybe_float(0.125 * (2.0 + np.cos(2.0 * (np.asarray(a) - np.asarray(b)))))


def crif_coincidence(a, b, lambda0):
    """Fixed-axis (complete rotational-invariance failure) ++ probability.

    Every pair carries the same polarization lambda0, so the rate is the
    plain product cos^2(lambda0 - a) cos^2(lambda0 - b): the minimum is an
    exact zero whenever either analyzer sits orthogonal to the axis, and
    the curve maximum tracks the fixed setting instead of the difference.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    fa = 0.5 * (1.0 + np.cos(2.0 * (lambda0 - a)))
    fb = 0.5 * (1.0 + np.cos(2.0 * (lambda0 - b)))
    return _maybe_float(fa * fb)


def brif_coincidence(a, b):
    """Binary-axes ++ coincidence probability, (1/2)(cos^2 a cos^2 b + sin^2 a sin^2 b).

    The average of the two fixed-axis curves half a period apart. Singles
    stay flat at 1/2, yet the coincidence curve over a is pinned to the
    absolute value of b: full visibility at b = 0, a constant 1/4 and zero
    visibility at b = pi/4. That fixed-setting sensitivity is the
    observable that separates this regime from full rotational invariance.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    return _maybe_float(0.25 * (1.0 + np.cos(2.0 * a) * np.cos(2.0 * b)))


def qt_realist_gap(a, b):
    """Difference between the quantum and binary-axes predictions.

    Equals cos a cos b sin a sin b, so qt_coincidence(a, b) ==
    brif_coincidence(a, b) + qt_realist_gap(a, b) identically; the two
    models coincide wherever either setting is a multiple of pi/2.
    """
    return _maybe_float(0.25 * np.sin(2.0 * np.asarray(a)) * np.sin(2.0 * np.asarray(b)))


def singles_rate(model: HiddenVariableModel, a, response: DetectorResponse | None = None,
                 *, abs_tol: float = DEFAULT_ABS_TOL, max_panels: int = MAX_PANELS) -> float:
    """Single-side firing probability for the + channel at setting a.

    Integrates rho(l) g(cos^2(l - a)) over one period. Uniform and binary
    models with proportional detection give exactly 1/2 independent of the
    setting; a delta model makes the singles sweep fully visible, which is
    the loudest observable signature of a preferred axis.
    """
    response = response or _LINEAR
    a = float(a)

    def f(lam):
        return response.probability(0.5 * (1.0 + np.cos(2.0 * (lam - a))))

    return model.expectation(f, abs_tol=abs_tol, max_panels=max_panels)


def general_coincidence(model: HiddenVariableModel, a, b,
                        response_a: DetectorResponse | None = None,
                        response_b: DetectorResponse | None = None,
                        *, abs_tol: float = DEFAULT_ABS_TOL,
                        max_panels: int = MAX_PANELS) -> float:
    """++ coincidence probability for any model and detector responses.

    Evaluates the integral of rho(l) g_a(cos^2(l-a)) g_b(cos^2(l-b)) by
    adaptive quadrature (point-mass models are evaluated exactly with no
    integration). With proportional responses this reproduces the closed
    forms for the uniform, fixed-axis and binary regimes to quadrature
    tolerance; with threshold responses the curve minimum can drop below
    1/8 and the visibility can reach 1 from a purely local model.
    """
    response_a = response_a or _LINEAR
    response_b = response_b or _LINEAR
    a = float(a)
    b = float(b)

    def f(lam):
        ia = 0.5 * (1.0 + np.cos(2.0 * (lam - a)))
        ib = 0.5 * (1.0 + np.cos(2.0 * (lam - b)))
        return response_a.probability(ia) * response_b.probability(ib)

    return model.expectation(f, abs_tol=abs_tol, max_panels=max_panels)


def smeared_coincidence(sigma: float, a, b, *, lambda0: float = 0.0,
                        period: float = POLARIZATION_PERIOD,
                        abs_tol: float = DEFAULT_ABS_TOL) -> float:
    """++ coincidence for the binary model smeared by dispersion of width sigma.

    sigma = 0 gives brif_coincidence exactly; as sigma grows the wrapped
    peaks flatten and the prediction converges to blr_coincidence, the
    fully rotationally invariant curve.
    """
    if sigma < 0.0:
        raise ConfigError(f"sigma must be >= 0, got {sigma}")
    model = HiddenVariableModel.smeared(sigma, lambda0=lambda0, period=period)
    return general_coincidence(model, a, b, abs_tol=abs_tol)


def channel_probabilities(model: HiddenVariableModel, a, b,
                          response_a: DetectorResponse | None = None,
                          response_b: DetectorResponse | None = None,
                          *, abs_tol: float = DEFAULT_ABS_TOL) -> ChannelProbabilities:
    """All four coincidence-outcome probabilities plus singles.

    The minus channel of an analyzer at setting x behaves as a plus
    channel at x + period/2, so the four outcomes are the ++ integral at
    the four shifted setting pairs.
    """
    response_a = response_a or _LINEAR
    response_b = response_b or _LINEAR
    a = float(a)
    b = float(b)
    shift = 0.5 * POLARIZATION_PERIOD
    return ChannelProbabilities(
        p_pp=general_coincidence(model, a, b, response_a, response_b, abs_tol=abs_tol),
        p_pm=general_coincidence(model, a, b + shift, response_a, response_b, abs_tol=abs_tol),
        p_mp=general_coincidence(model, a + shift, b, response_a, response_b, abs_tol=abs_tol),
        p_mm=general_coincidence(model, a + shift, b + shift, response_a, response_b,
                                 abs_tol=abs_tol),
        s_a=singles_rate(model, a, response_a, abs_tol=abs_tol),
        s_b=singles_rate(model, b, response_b, abs_tol=abs_tol),
    )
