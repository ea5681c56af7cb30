"""Local stability of fixed points via the characteristic quadratic.

At a fixed point the Jacobian of the map is a real 2x2 matrix whose
eigenvalues are the roots of F(lambda) = lambda^2 + B*lambda + C.  The signs
of F(1), F(-1), C - 1, and B - 2 locate both roots relative to the unit
circle without solving for them; :func:`classify_quadratic` performs that
case analysis and also returns explicitly computed roots.  The fixed-point
type (attracting, repelling, saddle, non-hyperbolic) is decided from the
computed root moduli, and the sign-based case tag is recorded alongside as
corroborating metadata.  :func:`classify_fixed_point` additionally
cross-checks the roots against eigenvalues computed directly from the
Jacobian entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .model import (
    FP_RESIDUAL_RTOL,
    FixedPoint,
    FixedPointKind,
    ModelParams,
    State,
    residual,
    validate_params,
)

__all__ = [
    "NotAFixedPoint",
    "UNIT_CIRCLE_EPS",
    "QuadraticCoeffs",
    "RootCase",
    "RootClass",
    "FixedPointType",
    "StabilityReport",
    "jacobian",
    "char_coeffs",
    "classify_quadratic",
    "classify_fixed_point",
]

# Half-width of the numeric band around the unit circle and around the zero
# crossings of the sign tests; scaled by 1 + |B| + |C| where applicable.
UNIT_CIRCLE_EPS = 1e-9


class NotAFixedPoint(ValueError):
    """The supplied point does not satisfy the fixed-point residual bound."""


@dataclass(frozen=True)
class QuadraticCoeffs:
    """Coefficients of F(lambda) = lambda^2 + B*lambda + C."""

    B: float
    C: float

    def to_dict(self) -> dict:
        return {"B": self.B, "C": self.C}


class RootCase(Enum):
    """Exhaustive placement of the two roots relative to the unit circle.

    The ``case_id`` groups the outcomes by the sign of F(1): "i.*" for
    F(1) > 0, "ii" for F(1) = 0 (one root equals 1), "iii.*" for F(1) < 0
    (one root beyond 1).
    """

    BOTH_INSIDE = ("i.1", "BothInside")
    MINUS_ONE_SIMPLE = ("i.2", "MinusOneSimple")
    ONE_IN_ONE_OUT = ("i.3", "OneInOneOut")
    BOTH_OUTSIDE = ("i.4", "BothOutside")
    COMPLEX_ON_CIRCLE = ("i.5", "ComplexOnCircle")
    DOUBLE_MINUS_ONE = ("i.6", "DoubleMinusOne")
    ONE_ROOT_AT_ONE_OTHER_INSIDE = ("ii", "OneRootAtOne-OtherInside")
    ONE_ROOT_AT_ONE_OTHER_ON_CIRCLE = ("ii", "OneRootAtOne-OtherOnCircle")
    ONE_ROOT_AT_ONE_OTHER_OUTSIDE = ("ii", "OneRootAtOne-OtherOutside")
    BEYOND_ONE_OTHER_BELOW_MINUS_ONE = ("iii.1", "RootBeyondOne-OtherBelowMinusOne")
    BEYOND_ONE_OTHER_AT_MINUS_ONE = ("iii.1", "RootBeyondOne-OtherAtMinusOne")
    BEYOND_ONE_OTHER_INSIDE = ("iii.2", "RootBeyondOne-OtherInside")

    @property
    def case_id(self) -> str:
        return self.value[0]

    @property
    def label(self) -> str:
        return self.value[1]


def _complex_dict(z: complex) -> dict:
    return {"re": z.real, "im": z.imag, "modulus": abs(z)}


@dataclass(frozen=True)
class RootClass:
    """Computed roots together with their sign-analysis case tag."""

    case_tag: RootCase
    lambda1: complex
    lambda2: complex

    def to_dict(self) -> dict:
        return {
            "case_tag": self.case_tag.case_id,
            "case_name": self.case_tag.label,
            "lambda1": _complex_dict(self.lambda1),
            "lambda2": _complex_dict(self.lambda2),
        }


class FixedPointType(Enum):
    ATTRACTING = "Attracting"
    REPELLING = "Repelling"
    SADDLE = "Saddle"
    NON_HYPERBOLIC = "NonHyperbolic"


@dataclass(frozen=True)
class StabilityReport:
    """Characteristic data and classification of one fixed point.

    ``semi_attracting`` is meaningful only for non-hyperbolic points: it is
    set when the root off the unit circle lies strictly inside.  ``note`` is
    populated when the computed type disagrees with the label the map's
    fixed-point trichotomy assigns to this kind of point.
    """

    coeffs: QuadraticCoeffs
    f_at_1: float
    f_at_minus1: float
    roots: RootClass
    fp_type: FixedPointType
    semi_attracting: bool
    note: str | None = None

    def to_dict(self) -> dict:
        return {
            "coeffs": self.coeffs.to_dict(),
            "f_at_1": self.f_at_1,
            "f_at_minus1": self.f_at_minus1,
            "roots": self.roots.to_dict(),
            "fp_type": self.fp_type.value,
            "semi_attracting": self.semi_attracting,
            "note": self.note,
        }


def jacobian(p: ModelParams, z: State) -> np.ndarray:
    """Jacobian matrix of the map (d1 = 0) at state ``z``.

    Returns:
        2x2 array [[1 - d0 - alpha/(1+x)^2, beta*y*(2*gamma+y)/(gamma+y)^2],
                   [alpha/(1+x)^2,          1 - mu]].
    """
    validate_params(p, analysis=True)
    x, y = z.x, z.y
    emergence = p.alpha / (1.0 + x) ** 2
    allee = p.beta * y * (2.0 * p.gamma + y) / (p.gamma + y) ** 2
    return np.array([[1.0 - p.d0 - emergence, allee], [emergence, 1.0 - p.mu]])


def _char_coeffs_at(p: ModelParams, x: float, y: float) -> QuadraticCoeffs:
    emergence = p.alpha / (1.0 + x) ** 2
    allee = p.beta * y * (2.0 * p.gamma + y) / (p.gamma + y) ** 2
    B = p.mu + p.d0 + emergence - 2.0
    C = 1.0 - p.mu - p.d0 - emergence + p.mu * p.d0 + emergence * (p.mu - allee)
    return QuadraticCoeffs(B=B, C=C)


def char_coeffs(p: ModelParams, fp: FixedPoint) -> QuadraticCoeffs:
    """Characteristic coefficients B, C at a fixed point.

    B equals minus the Jacobian trace and C its determinant; the closed
    forms here avoid building the matrix.
    """
    validate_params(p, analysis=True)
    return _char_coeffs_at(p, fp.point.x, fp.point.y)


def _quadratic_roots(B: float, C: float) -> tuple[complex, complex]:
    """Roots of lambda^2 + B*lambda + C, cancellation-free.

    Real roots are returned in descending order; a conjugate pair puts the
    positive imaginary part first.
    """
    disc = B * B - 4.0 * C
    if disc >= 0.0:
        s = math.sqrt(disc)
        half = -0.5 * (B + s) if B >= 0.0 else -0.5 * (B - s)
        r1 = half
        r2 = C / half if half != 0.0 else 0.0
        lo, hi = min(r1, r2), max(r1, r2)
        return complex(hi, 0.0), complex(lo, 0.0)
    im = 0.5 * math.sqrt(-disc)
    re = -0.5 * B
    return complex(re, im), complex(re, -im)


def classify_quadratic(q: QuadraticCoeffs, eps: float = UNIT_CIRCLE_EPS) -> RootClass:
    """Locate both roots of F relative to the unit circle.

    The decision uses only the signs of F(1), F(-1), C - 1, and B - 2, each
    tested against a zero band of half-width ``eps * (1 + |B| + |C|)``; the
    returned roots are computed independently by the quadratic formula.
    Exactly one case tag applies to any finite (B, C).
    """
    B, C = q.B, q.C
    band = eps * (1.0 + abs(B) + abs(C))
    f1 = 1.0 + B + C
    fm1 = 1.0 - B + C
    lam1, lam2 = _quadratic_roots(B, C)

    if abs(f1) <= band:
        # One root sits at 1; the other equals C by the product of roots.
        if abs(abs(C) - 1.0) <= band:
            case = RootCase.ONE_ROOT_AT_ONE_OTHER_ON_CIRCLE
        elif abs(C) < 1.0:
            case = RootCase.ONE_ROOT_AT_ONE_OTHER_INSIDE
        else:
            case = RootCase.ONE_ROOT_AT_ONE_OTHER_OUTSIDE
    elif f1 > 0.0:
        if abs(fm1) <= band:
            if abs(B - 2.0) <= band:
                case = RootCase.DOUBLE_MINUS_ONE
            else:
                case = RootCase.MINUS_ONE_SIMPLE
        elif fm1 < 0.0:
            case = RootCase.ONE_IN_ONE_OUT
        elif abs(C - 1.0) <= band:
            # f1 > 0 and fm1 > 0 pin -2 < B < 2, so the pair is conjugate.
            case = RootCase.COMPLEX_ON_CIRCLE
        elif C < 1.0:
            case = RootCase.BOTH_INSIDE
        else:
            case = RootCase.BOTH_OUTSIDE
    else:
        if abs(fm1) <= band:
            case = RootCase.BEYOND_ONE_OTHER_AT_MINUS_ONE
        elif fm1 < 0.0:
            case = RootCase.BEYOND_ONE_OTHER_BELOW_MINUS_ONE
        else:
            case = RootCase.BEYOND_ONE_OTHER_INSIDE
    return RootClass(case_tag=case, lambda1=lam1, lambda2=lam2)


def _type_from_moduli(m1: float, m2: float, eps: float) -> tuple[FixedPointType, bool]:
    on_circle = (abs(m1 - 1.0) <= eps, abs(m2 - 1.0) <= eps)
    if any(on_circle):
        others = [m for m, near in zip((m1, m2), on_circle) if not near]
        semi = bool(others) and all(m < 1.0 for m in others)
        return FixedPointType.NON_HYPERBOLIC, semi
    if m1 < 1.0 and m2 < 1.0:
        return FixedPointType.ATTRACTING, False
    if m1 > 1.0 and m2 > 1.0:
        return FixedPointType.REPELLING, False
    return FixedPointType.SADDLE, False


# Labels the fixed-point trichotomy for this map assigns to each kind; used
# only to flag disagreements with the computed classification.
_TRICHOTOMY_LABEL = {
    FixedPointKind.ORIGIN: FixedPointType.ATTRACTING,
    FixedPointKind.DOUBLE: FixedPointType.NON_HYPERBOLIC,
    FixedPointKind.LOWER: FixedPointType.REPELLING,
    FixedPointKind.UPPER: FixedPointType.ATTRACTING,
}


def classify_fixed_point(
    p: ModelParams, fp: FixedPoint, eps: float = UNIT_CIRCLE_EPS
) -> StabilityReport:
    """Full stability report for one fixed point.

    The type is decided by the computed root moduli (band half-width
    ``eps``); the sign-analysis case tag is recorded alongside.  The roots
    are verified against eigenvalues computed directly from the Jacobian
    entries, and a note is attached when the computed type contradicts the
    trichotomy label for this kind of point.

    Raises:
        NotAFixedPoint: if the residual bound fails at ``fp.point``.
        ArithmeticError: if the two eigenvalue routes disagree beyond 1e-8.
    """
    validate_params(p, analysis=True)
    z = fp.point
    scale = 1.0 + max(abs(z.x), abs(z.y))
    res = residual(p, z)
    if res > FP_RESIDUAL_RTOL * scale:
        raise NotAFixedPoint(
            f"residual {res:.3e} exceeds {FP_RESIDUAL_RTOL:.0e} * {scale:.3e} at ({z.x}, {z.y})"
        )

    q = char_coeffs(p, fp)
    roots = classify_quadratic(q, eps)
    f1 = 1.0 + q.B + q.C
    fm1 = 1.0 - q.B + q.C

    # Independent eigenvalue route from the Jacobian entries.
    J = jacobian(p, z)
    trace = J[0, 0] + J[1, 1]
    det = J[0, 0] * J[1, 1] - J[0, 1] * J[1, 0]
    eig1, eig2 = _quadratic_roots(-trace, det)
    mismatch = max(abs(roots.lambda1 - eig1), abs(roots.lambda2 - eig2))
    if mismatch > 1e-8:
        raise ArithmeticError(
            f"eigenvalue cross-check failed: characteristic roots "
            f"({roots.lambda1}, {roots.lambda2}) vs Jacobian ({eig1}, {eig2})"
        )

    fp_type, semi = _type_from_moduli(abs(roots.lambda1), abs(roots.lambda2), eps)
    note = None
    expected = _TRICHOTOMY_LABEL[fp.kind]
    if fp_type is not expected:
        note = (
            f"computed eigenvalue moduli give {fp_type.value} for the {fp.kind.value} "
            f"fixed point, where the map's trichotomy labels it {expected.value}; "
            f"here F(-1) = {fm1:.6g}"
        )
    return StabilityReport(
        coeffs=q,
        f_at_1=f1,
        f_at_minus1=fm1,
        roots=roots,
        fp_type=fp_type,
        semi_attracting=semi,
        note=note,
    )
