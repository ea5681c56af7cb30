"""Discrete two-stage mosquito population map with a mate-finding Allee effect.

The state ``(x, y)`` holds the aquatic (larvae) and adult population sizes.
One generation step applies

    x' = beta*y^2/(gamma + y) + (1 - d0 - d1*x - alpha/(1 + x)) * x
    y' = alpha*x/(1 + x) + (1 - mu)*y

where reproduction saturates in the adult population (the Allee term with
half-saturation constant ``gamma``), larvae emerge into adults at rate
``alpha/(1 + x)``, larvae die at rate ``d0 + d1*x``, and adults die at rate
``mu``.

The analysis in this package assumes ``d1 = 0`` and the admissibility
conditions of :func:`validate_params`, under which the map sends the
nonnegative quadrant to itself.  Positive fixed points are then the positive
roots of a quadratic in ``x``; their number flips from zero to two as the
birth rate ``beta`` crosses the existence threshold :func:`nu`.  This module
evaluates the map, the threshold, the discriminant, the closed-form fixed
points, and the absorbing box that eventually traps every trajectory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

__all__ = [
    "ParameterOutOfRange",
    "Regime",
    "FixedPointKind",
    "ModelParams",
    "State",
    "ExistenceReport",
    "FixedPoint",
    "Box",
    "THRESHOLD_RTOL",
    "FP_RESIDUAL_RTOL",
    "validate_params",
    "step",
    "residual",
    "nu",
    "discriminant",
    "existence_report",
    "fixed_points",
    "omega",
]

# Relative half-width of the "at threshold" band for beta vs nu.  Exact
# equality is measure-zero in binary64, so the regime test needs a band.
THRESHOLD_RTOL = 1e-9

# A candidate fixed point (x, y) is accepted when its one-step movement is
# below this tolerance, scaled by 1 + max(|x|, |y|).
FP_RESIDUAL_RTOL = 1e-10


class ParameterOutOfRange(ValueError):
    """A model parameter violates the admissibility conditions."""


class Regime(Enum):
    """Position of the birth rate relative to the existence threshold."""

    BELOW_THRESHOLD = "BelowThreshold"
    AT_THRESHOLD = "AtThreshold"
    ABOVE_THRESHOLD = "AboveThreshold"


class FixedPointKind(Enum):
    """Which branch of the fixed-point trichotomy a point belongs to."""

    ORIGIN = "Origin"
    DOUBLE = "Double"
    LOWER = "Lower"
    UPPER = "Upper"


@dataclass(frozen=True)
class ModelParams:
    """Per-step rates of the map.

    Attributes:
        alpha: Maximum emergence rate from larvae to adults (> 0).
        beta: Birth (oviposition) rate (> 0).
        gamma: Allee half-saturation constant (> 0).
        mu: Adult death rate (in (0, 1]).
        d0: Linear larvae death rate (> 0).
        d1: Quadratic larvae death coefficient (>= 0, default 0).  Analysis
            operations require 0; only :func:`step` accepts positive values.
    """

    alpha: float
    beta: float
    gamma: float
    mu: float
    d0: float
    d1: float = 0.0

    def with_beta(self, beta: float) -> "ModelParams":
        return replace(self, beta=beta)

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "mu": self.mu,
            "d0": self.d0,
            "d1": self.d1,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "ModelParams":
        """Build from a flat key-value mapping (keys alpha..d1)."""
        known = {"alpha", "beta", "gamma", "mu", "d0", "d1"}
        unknown = set(raw) - known
        if unknown:
            raise ParameterOutOfRange(f"unknown parameter keys: {sorted(unknown)}")
        missing = {"alpha", "beta", "gamma", "mu", "d0"} - set(raw)
        if missing:
            raise ParameterOutOfRange(f"missing parameter keys: {sorted(missing)}")
        return cls(**{k: float(v) for k, v in raw.items()})


@dataclass(frozen=True)
class State:
    """A point (x, y) in the nonnegative quadrant."""

    x: float
    y: float

    def max_diff(self, other: "State") -> float:
        """Max-norm distance to another state."""
        return max(abs(self.x - other.x), abs(self.y - other.y))

    def to_dict(self) -> dict:
        return {"x": self.x, "y": self.y}


@dataclass(frozen=True)
class ExistenceReport:
    """Threshold value, discriminant, and the resulting regime."""

    nu: float
    discriminant: float
    regime: Regime

    def to_dict(self) -> dict:
        return {
            "nu": self.nu,
            "discriminant": self.discriminant,
            "regime": self.regime.value,
        }


@dataclass(frozen=True)
class FixedPoint:
    """A fixed point with its one-step residual and trichotomy kind."""

    point: State
    residual: float
    kind: FixedPointKind

    def to_dict(self) -> dict:
        return {
            "point": self.point.to_dict(),
            "residual": self.residual,
            "kind": self.kind.value,
        }


@dataclass(frozen=True)
class Box:
    """Axis-aligned rectangle [x_lo, x_hi] x [y_lo, y_hi] in the quadrant."""

    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.x_lo <= self.x_hi and 0.0 <= self.y_lo <= self.y_hi):
            raise ValueError(
                f"box bounds must satisfy 0 <= lo <= hi, got "
                f"[{self.x_lo}, {self.x_hi}] x [{self.y_lo}, {self.y_hi}]"
            )

    def contains(self, x: float, y: float, slack: float = 0.0) -> bool:
        return (
            self.x_lo - slack <= x <= self.x_hi + slack
            and self.y_lo - slack <= y <= self.y_hi + slack
        )

    def contains_state(self, z: State, slack: float = 0.0) -> bool:
        return self.contains(z.x, z.y, slack)

    def corners(self) -> tuple[State, State, State, State]:
        return (
            State(self.x_lo, self.y_lo),
            State(self.x_hi, self.y_lo),
            State(self.x_lo, self.y_hi),
            State(self.x_hi, self.y_hi),
        )

    def to_dict(self) -> dict:
        return {
            "x_lo": self.x_lo,
            "x_hi": self.x_hi,
            "y_lo": self.y_lo,
            "y_hi": self.y_hi,
        }


def _check(cond: bool, name: str) -> None:
    if not cond:
        raise ParameterOutOfRange(name)


def validate_params(p: ModelParams, analysis: bool = False) -> ModelParams:
    """Check the admissibility conditions and return ``p`` unchanged.

    The conditions are alpha > 0, beta > 0, gamma > 0, 0 < mu <= 1, d0 > 0,
    d1 >= 0, alpha + d0 <= 1, and all fields finite.  With ``analysis=True``
    additionally require d1 = 0, which every operation beyond :func:`step`
    assumes.

    Raises:
        ParameterOutOfRange: naming the violated condition.
    """
    values = (p.alpha, p.beta, p.gamma, p.mu, p.d0, p.d1)
    _check(all(math.isfinite(v) for v in values), "all parameters finite")
    _check(p.alpha > 0.0, "alpha > 0")
    _check(p.beta > 0.0, "beta > 0")
    _check(p.gamma > 0.0, "gamma > 0")
    _check(0.0 < p.mu <= 1.0, "0 < mu <= 1")
    _check(p.d0 > 0.0, "d0 > 0")
    _check(p.d1 >= 0.0, "d1 >= 0")
    _check(p.alpha + p.d0 <= 1.0, "alpha + d0 <= 1")
    if analysis:
        _check(p.d1 == 0.0, "d1 = 0 (analysis mode)")
    return p


def _step_xy(p: ModelParams, x, y):
    """One map step on raw coordinates.

    Accepts floats or numpy arrays; the expression structure is fixed so that
    scalar and vectorized evaluations agree bitwise.
    """
    x_new = p.beta * y * y / (p.gamma + y) + (1.0 - p.d0 - p.d1 * x - p.alpha / (1.0 + x)) * x
    y_new = p.alpha * x / (1.0 + x) + (1.0 - p.mu) * y
    return x_new, y_new


def step(p: ModelParams, z: State) -> State:
    """Apply one generation step to state ``z``.

    Callers are responsible for ``z`` lying in the nonnegative quadrant and
    ``p`` being admissible; under those preconditions (with d1 = 0) the image
    stays in the quadrant.
    """
    x_new, y_new = _step_xy(p, z.x, z.y)
    return State(x_new, y_new)


def residual(p: ModelParams, z: State) -> float:
    """Max-norm of the one-step movement; zero exactly at fixed points."""
    x_new, y_new = _step_xy(p, z.x, z.y)
    return max(abs(x_new - z.x), abs(y_new - z.y))


def _quadratic_coeffs(p: ModelParams) -> tuple[float, float, float]:
    """Coefficients (a, b, c) of the positive-fixed-point quadratic in x.

    Eliminating y from the fixed-point equations leaves
    a*x^2 + b*x + c = 0 with a, c > 0 under the admissibility conditions.
    """
    a = p.d0 * p.mu * (p.alpha + p.gamma * p.mu)
    b = p.mu * (p.d0 * p.gamma * p.mu + (p.alpha + p.d0) * (p.alpha + p.gamma * p.mu)) - p.alpha**2 * p.beta
    c = p.gamma * p.mu**2 * (p.alpha + p.d0)
    return a, b, c


def nu(p: ModelParams) -> float:
    """Existence threshold for positive fixed points.

    For beta below the returned value the origin is the only fixed point;
    at it a double positive fixed point appears; above it there are two.
    The threshold does not depend on beta itself.
    """
    validate_params(p, analysis=True)
    s = math.sqrt(p.d0 * p.gamma * p.mu)
    t = math.sqrt((p.alpha + p.d0) * (p.alpha + p.gamma * p.mu))
    return p.mu / p.alpha**2 * (s + t) ** 2


def discriminant(p: ModelParams) -> float:
    """Discriminant of the positive-fixed-point quadratic.

    Positive exactly when beta exceeds the threshold; zero at it.  (It is
    also positive for very small beta, where both quadratic roots are
    negative and no positive fixed point exists.)
    """
    validate_params(p, analysis=True)
    a, b, c = _quadratic_coeffs(p)
    return b * b - 4.0 * a * c


def existence_report(p: ModelParams, tol: float = THRESHOLD_RTOL) -> ExistenceReport:
    """Classify beta against the threshold with relative tolerance ``tol``."""
    validate_params(p, analysis=True)
    threshold = nu(p)
    disc = discriminant(p)
    if abs(p.beta - threshold) <= tol * threshold:
        regime = Regime.AT_THRESHOLD
    elif p.beta < threshold:
        regime = Regime.BELOW_THRESHOLD
    else:
        regime = Regime.ABOVE_THRESHOLD
    return ExistenceReport(nu=threshold, discriminant=disc, regime=regime)


def _adult_line(p: ModelParams, x: float) -> float:
    """Adult coordinate of a fixed point with larvae coordinate x."""
    return p.alpha * x / (p.mu * (1.0 + x))


def _make_fixed_point(p: ModelParams, x: float, kind: FixedPointKind) -> FixedPoint:
    z = State(x, _adult_line(p, x))
    return FixedPoint(point=z, residual=residual(p, z), kind=kind)


def fixed_points(p: ModelParams, tol: float = THRESHOLD_RTOL) -> list[FixedPoint]:
    """All fixed points in the quadrant, sorted by ascending x.

    The origin is always fixed.  Depending on the regime the list also holds
    the double point (at threshold) or the lower and upper positive points
    (above threshold).  The double point uses its dedicated closed form,
    which stays accurate where the quadratic roots nearly coincide, and the
    quadratic roots are computed cancellation-free (larger root from the
    standard formula, the other from the product of roots).
    """
    report = existence_report(p, tol)
    points = [FixedPoint(point=State(0.0, 0.0), residual=0.0, kind=FixedPointKind.ORIGIN)]
    if report.regime is Regime.AT_THRESHOLD:
        x_double = math.sqrt(
            p.gamma * p.mu * (p.alpha + p.d0) / (p.d0 * (p.alpha + p.gamma * p.mu))
        )
        points.append(_make_fixed_point(p, x_double, FixedPointKind.DOUBLE))
    elif report.regime is Regime.ABOVE_THRESHOLD:
        a, b, c = _quadratic_coeffs(p)
        # beta > nu forces b < 0, so -b + sqrt(D) adds two positives.
        half = 0.5 * (-b + math.sqrt(report.discriminant))
        x_upper = half / a
        x_lower = c / half
        points.append(_make_fixed_point(p, x_lower, FixedPointKind.LOWER))
        points.append(_make_fixed_point(p, x_upper, FixedPointKind.UPPER))
    return points


def omega(p: ModelParams) -> Box:
    """The absorbing box: forward invariant and eventually entered.

    Its upper corner is (alpha^2*beta / (mu*d0*(alpha + gamma*mu)), alpha/mu);
    the adult bound does not depend on beta, gamma, or d0.
    """
    validate_params(p, analysis=True)
    w1 = p.alpha**2 * p.beta / (p.mu * p.d0 * (p.alpha + p.gamma * p.mu))
    w2 = p.alpha / p.mu
    return Box(0.0, w1, 0.0, w2)
