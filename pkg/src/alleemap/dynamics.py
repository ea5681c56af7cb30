"""Trajectories, invariant-set checks, convergence certificates, basins.

Everything here works inside the nonnegative quadrant with d1 = 0.  The
absorbing box of :func:`alleemap.model.omega` traps every trajectory, the
map preserves the componentwise (north-east) order, and on any invariant
box the iterated images of the two extreme corners sandwich every interior
trajectory.  :func:`corner_certificate` turns that sandwich into a checkable
proof of convergence on a box; :func:`basin_raster` labels a grid of
initial points by the fixed point their trajectories reach.

Set-membership assertions use closed sets with a small absolute slack,
because floating-point images of boundary points can undershoot by
rounding.  Sampling-based checks draw low-discrepancy (Halton) points from
a fixed default seed so that every report is reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.stats import qmc

from .model import (
    Box,
    FixedPoint,
    FixedPointKind,
    ModelParams,
    ParameterOutOfRange,
    Regime,
    State,
    _step_xy,
    existence_report,
    fixed_points,
    omega,
    validate_params,
)
from .stability import FixedPointType, classify_fixed_point

__all__ = [
    "RegimeMismatch",
    "NotInvariant",
    "MonotonicityViolated",
    "VerdictKind",
    "Verdict",
    "Trajectory",
    "RegionKind",
    "RegionSpec",
    "CheckResult",
    "AbsorptionResult",
    "CornerCertificate",
    "BasinRaster",
    "DEFAULT_TOL",
    "DEFAULT_TOL_AT_THRESHOLD",
    "DEFAULT_MAX_ITERS",
    "DEFAULT_MAX_ITERS_AT_THRESHOLD",
    "DEFAULT_SEED",
    "BOUNDARY_SLACK",
    "UNDECIDED",
    "EXAMPLE_PARAMS",
    "EXAMPLE_STARTS",
    "trajectory",
    "region",
    "check_quadrant",
    "check_invariance",
    "check_cooperative",
    "check_absorption",
    "absorbing_entry",
    "corner_certificate",
    "basin_raster",
    "convergence_verdicts_for_examples",
    "default_budgets",
]

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITERS = 100_000
# Near the threshold the positive fixed point attracts sub-geometrically
# (unit eigenvalue), so verdicts get a larger budget and a looser default
# tolerance there.
DEFAULT_TOL_AT_THRESHOLD = 1e-6
DEFAULT_MAX_ITERS_AT_THRESHOLD = 1_000_000
DEFAULT_SEED = 1729
BOUNDARY_SLACK = 1e-12

UNDECIDED = -1


class RegimeMismatch(ValueError):
    """The requested region does not exist in the current regime."""


class NotInvariant(RuntimeError):
    """The map does not send the given box into itself."""


class MonotonicityViolated(RuntimeError):
    """A corner sequence moved the wrong way; indicates invalid inputs."""


class VerdictKind(Enum):
    CONVERGED = "ConvergedTo"
    MAX_ITERS = "MaxItersReached"
    LEFT_DOMAIN = "LeftDomain"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    limit: State | None = None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "limit": self.limit.to_dict() if self.limit is not None else None,
        }


@dataclass(frozen=True)
class Trajectory:
    """Stored iterates plus the stopping verdict.

    ``points[i]`` is the ``indices[i]``-th iterate of the starting state;
    with stride 1 the stored points are consecutive iterates and reproduce
    bitwise across runs.
    """

    points: tuple[State, ...]
    indices: tuple[int, ...]
    verdict: Verdict
    iterations_used: int

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.to_dict(),
            "iterations_used": self.iterations_used,
            "stored_points": len(self.points),
        }


class RegionKind(Enum):
    OMEGA = "Omega"
    OMEGA1 = "Omega1"
    OMEGA2 = "Omega2"
    SUB1 = "Sub1"
    SUB2 = "Sub2"
    SUB3 = "Sub3"
    SUB4 = "Sub4"


@dataclass(frozen=True)
class RegionSpec:
    """A named rectangle of the phase portrait with resolved bounds."""

    kind: RegionKind
    bounds: Box
    excluded: tuple[State, ...] = ()

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "bounds": self.bounds.to_dict(),
            "excluded": [z.to_dict() for z in self.excluded],
        }


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one sampled property check."""

    name: str
    passed: bool
    samples: int
    seed: int
    witness: dict | None = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "samples": self.samples,
            "seed": self.seed,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class AbsorptionResult:
    """Entry step into the absorbing box and subsequent containment."""

    k0: int | None
    absorbed: bool
    remained: bool
    first_exit: int | None
    k_max: int

    def to_dict(self) -> dict:
        return {
            "k0": self.k0,
            "absorbed": self.absorbed,
            "remained": self.remained,
            "first_exit": self.first_exit,
            "k_max": self.k_max,
        }


@dataclass(frozen=True)
class CornerCertificate:
    """Result of the monotone corner iteration on a box.

    When ``certified`` both corner sequences met within ``tol`` and every
    trajectory started in the box converges to ``common_limit``.
    """

    box: Box
    lower_corner_limit: State
    upper_corner_limit: State
    certified: bool
    common_limit: State | None
    lower_converged: bool
    upper_converged: bool
    iterations: int
    tol: float

    def to_dict(self) -> dict:
        return {
            "box": self.box.to_dict(),
            "lower_corner_limit": self.lower_corner_limit.to_dict(),
            "upper_corner_limit": self.upper_corner_limit.to_dict(),
            "certified": self.certified,
            "common_limit": self.common_limit.to_dict() if self.common_limit else None,
            "lower_converged": self.lower_converged,
            "upper_converged": self.upper_converged,
            "iterations": self.iterations,
            "tol": self.tol,
        }


@dataclass(frozen=True, eq=False)
class BasinRaster:
    """Grid of initial points labeled by the attractor they reach.

    ``labels[j, i]`` is the attractor index for the cell center at
    ``(x_lo + (i + 0.5)*dx, y_lo + (j + 0.5)*dy)``, or ``UNDECIDED`` when
    the trajectory exhausted the budget or matched no attractor.
    """

    box: Box
    nx: int
    ny: int
    labels: np.ndarray
    attractors: tuple[FixedPoint, ...]
    max_iters: int
    tol: float

    def cell_centers(self) -> tuple[np.ndarray, np.ndarray]:
        dx = (self.box.x_hi - self.box.x_lo) / self.nx
        dy = (self.box.y_hi - self.box.y_lo) / self.ny
        xs = self.box.x_lo + (np.arange(self.nx) + 0.5) * dx
        ys = self.box.y_lo + (np.arange(self.ny) + 0.5) * dy
        return xs, ys

    def label_counts(self) -> dict[int, int]:
        values, counts = np.unique(self.labels, return_counts=True)
        return {int(v): int(c) for v, c in zip(values, counts)}

    def to_sidecar(self) -> dict:
        return {
            "box": self.box.to_dict(),
            "nx": self.nx,
            "ny": self.ny,
            "attractors": [fp.to_dict() for fp in self.attractors],
            "max_iters": self.max_iters,
            "tol": self.tol,
            "match_radius": 10.0 * self.tol,
            "undecided_label": UNDECIDED,
            "label_counts": {str(k): v for k, v in self.label_counts().items()},
        }


def _require_analysis_d1(p: ModelParams) -> None:
    if p.d1 != 0.0:
        raise ParameterOutOfRange("d1 = 0 (analysis mode)")


def _require_quadrant(z: State) -> None:
    if not (z.x >= 0.0 and z.y >= 0.0):
        raise ValueError(f"state ({z.x}, {z.y}) lies outside the nonnegative quadrant")


def default_budgets(p: ModelParams) -> tuple[int, float]:
    """(max_iters, tol) defaults adjusted for the current regime."""
    if existence_report(p).regime is Regime.AT_THRESHOLD:
        return DEFAULT_MAX_ITERS_AT_THRESHOLD, DEFAULT_TOL_AT_THRESHOLD
    return DEFAULT_MAX_ITERS, DEFAULT_TOL


def trajectory(
    p: ModelParams,
    z0: State,
    max_iters: int = DEFAULT_MAX_ITERS,
    tol: float = DEFAULT_TOL,
    store_every: int = 1,
) -> Trajectory:
    """Iterate the map from ``z0`` until stationarity or budget exhaustion.

    Convergence requires two consecutive steps of max-norm size at most
    ``tol``; the reported limit is then the iterate whose one-step movement
    met the bound.  A negative coordinate in any iterate yields the
    ``LeftDomain`` verdict, which can only happen when the admissibility
    conditions were bypassed.

    Args:
        store_every: keep every k-th iterate (the start, the final point,
            and the limit are always kept).
    """
    _require_analysis_d1(p)
    _require_quadrant(z0)
    if max_iters < 1:
        raise ValueError("max_iters must be at least 1")
    if store_every < 1:
        raise ValueError("store_every must be at least 1")

    points = [z0]
    indices = [0]
    x, y = z0.x, z0.y
    d_prev = None
    n = 0
    while n < max_iters:
        x_new, y_new = _step_xy(p, x, y)
        n += 1
        if x_new < 0.0 or y_new < 0.0:
            points.append(State(x_new, y_new))
            indices.append(n)
            return Trajectory(tuple(points), tuple(indices), Verdict(VerdictKind.LEFT_DOMAIN), n)
        d = max(abs(x_new - x), abs(y_new - y))
        if d_prev is not None and d <= tol and d_prev <= tol:
            # (x, y) is the limit; (x_new, y_new) served as its residual probe.
            if indices[-1] != n - 1:
                points.append(State(x, y))
                indices.append(n - 1)
            limit = points[-1]
            return Trajectory(tuple(points), tuple(indices), Verdict(VerdictKind.CONVERGED, limit), n - 1)
        x, y = x_new, y_new
        if n % store_every == 0:
            points.append(State(x, y))
            indices.append(n)
        d_prev = d
    if indices[-1] != n:
        points.append(State(x, y))
        indices.append(n)
    return Trajectory(tuple(points), tuple(indices), Verdict(VerdictKind.MAX_ITERS), n)


def _match_fixed_point(p: ModelParams, anchor: FixedPoint) -> None:
    for fp in fixed_points(p):
        scale = 1.0 + max(abs(fp.point.x), abs(fp.point.y))
        if fp.kind is anchor.kind and fp.point.max_diff(anchor.point) <= 1e-9 * scale:
            return
    raise RegimeMismatch(
        f"anchor ({anchor.point.x}, {anchor.point.y}) of kind {anchor.kind.value} "
        f"is not a fixed point under these parameters"
    )


def region(p: ModelParams, kind: RegionKind, anchor: FixedPoint | None = None) -> RegionSpec:
    """Resolve a named region to explicit bounds.

    ``Omega`` is the absorbing box.  ``Omega1``/``Omega2`` are the order
    intervals below and above a positive fixed-point anchor (which they
    exclude).  ``Sub1``..``Sub4`` subdivide ``Omega2`` of the lower positive
    point by the coordinates of the upper one and exist only above the
    threshold; their anchor pair is derived, so ``anchor`` is ignored.

    Raises:
        RegimeMismatch: when the kind is unavailable in the current regime
            or the anchor is not a positive fixed point.
    """
    validate_params(p, analysis=True)
    om = omega(p)
    if kind is RegionKind.OMEGA:
        return RegionSpec(kind, om)

    if kind in (RegionKind.OMEGA1, RegionKind.OMEGA2):
        if anchor is None:
            raise ValueError(f"{kind.value} requires an anchor fixed point")
        if anchor.kind is FixedPointKind.ORIGIN:
            raise RegimeMismatch("anchor must be a positive fixed point, not the origin")
        _match_fixed_point(p, anchor)
        ax, ay = anchor.point.x, anchor.point.y
        if kind is RegionKind.OMEGA1:
            return RegionSpec(kind, Box(0.0, ax, 0.0, ay), (anchor.point,))
        return RegionSpec(kind, Box(ax, om.x_hi, ay, om.y_hi), (anchor.point,))

    regime = existence_report(p).regime
    if regime is not Regime.ABOVE_THRESHOLD:
        raise RegimeMismatch(f"{kind.value} requires AboveThreshold, current regime is {regime.value}")
    fps = fixed_points(p)
    lower, upper = fps[1].point, fps[2].point
    if kind is RegionKind.SUB1:
        return RegionSpec(kind, Box(upper.x, om.x_hi, upper.y, om.y_hi))
    if kind is RegionKind.SUB2:
        return RegionSpec(kind, Box(lower.x, upper.x, upper.y, om.y_hi))
    if kind is RegionKind.SUB3:
        return RegionSpec(kind, Box(lower.x, upper.x, lower.y, upper.y), (lower,))
    if kind is RegionKind.SUB4:
        return RegionSpec(kind, Box(upper.x, om.x_hi, lower.y, upper.y))
    raise ValueError(f"unknown region kind {kind!r}")


def _halton(n: int, dim: int, seed: int) -> np.ndarray:
    return qmc.Halton(d=dim, scramble=True, seed=seed).random(n)


def _first_violation(mask: np.ndarray) -> int | None:
    bad = np.flatnonzero(mask)
    return int(bad[0]) if bad.size else None


def check_quadrant(
    p: ModelParams,
    samples: int = 100_000,
    seed: int = DEFAULT_SEED,
    box: Box | None = None,
    slack: float = BOUNDARY_SLACK,
) -> CheckResult:
    """Sampled check that one step never leaves the nonnegative quadrant.

    Draws from ``box`` (default [0, 100]^2); half the samples are biased
    toward the axes, where a violation would surface first.  Deliberately
    performs no parameter validation so that inadmissible parameters can be
    probed; with admissible ones this check cannot fail.
    """
    if box is None:
        box = Box(0.0, 100.0, 0.0, 100.0)
    if samples == 0:
        return CheckResult("quadrant-invariance", True, 0, seed)
    u = _halton(samples, 2, seed)
    half = samples // 2
    # Quartic bias concentrates the second half near the axes.
    u[half:] = u[half:] ** 4
    x = box.x_lo + u[:, 0] * (box.x_hi - box.x_lo)
    y = box.y_lo + u[:, 1] * (box.y_hi - box.y_lo)
    x_new, y_new = _step_xy(p, x, y)
    violation = (x_new < -slack) | (y_new < -slack)
    idx = _first_violation(violation)
    if idx is None:
        return CheckResult("quadrant-invariance", True, samples, seed)
    witness = {
        "point": {"x": float(x[idx]), "y": float(y[idx])},
        "image": {"x": float(x_new[idx]), "y": float(y_new[idx])},
    }
    return CheckResult("quadrant-invariance", False, samples, seed, witness)


def check_invariance(
    p: ModelParams,
    spec: RegionSpec,
    samples: int = 10_000,
    seed: int = DEFAULT_SEED,
    slack: float = BOUNDARY_SLACK,
) -> CheckResult:
    """Sampled check that the map sends a region into its closure.

    Points are drawn quasi-randomly from the region's bounds; excluded
    points are measure-zero and ignored by the sampler.
    """
    validate_params(p, analysis=True)
    name = f"region-invariance:{spec.kind.value}"
    if samples == 0:
        return CheckResult(name, True, 0, seed)
    b = spec.bounds
    u = _halton(samples, 2, seed)
    x = b.x_lo + u[:, 0] * (b.x_hi - b.x_lo)
    y = b.y_lo + u[:, 1] * (b.y_hi - b.y_lo)
    x_new, y_new = _step_xy(p, x, y)
    outside = (
        (x_new < b.x_lo - slack)
        | (x_new > b.x_hi + slack)
        | (y_new < b.y_lo - slack)
        | (y_new > b.y_hi + slack)
    )
    idx = _first_violation(outside)
    if idx is None:
        return CheckResult(name, True, samples, seed)
    witness = {
        "point": {"x": float(x[idx]), "y": float(y[idx])},
        "image": {"x": float(x_new[idx]), "y": float(y_new[idx])},
    }
    return CheckResult(name, False, samples, seed, witness)


def check_cooperative(
    p: ModelParams,
    pairs: int = 10_000,
    seed: int = DEFAULT_SEED,
    box: Box | None = None,
    slack: float = BOUNDARY_SLACK,
) -> CheckResult:
    """Sampled check that the map preserves the componentwise order.

    Draws componentwise-ordered pairs from ``box`` (default the absorbing
    box) and verifies the images stay ordered.
    """
    validate_params(p, analysis=True)
    if box is None:
        box = omega(p)
    if pairs == 0:
        return CheckResult("cooperativity", True, 0, seed)
    u = _halton(pairs, 4, seed)
    xa = box.x_lo + u[:, 0] * (box.x_hi - box.x_lo)
    ya = box.y_lo + u[:, 1] * (box.y_hi - box.y_lo)
    xb = box.x_lo + u[:, 2] * (box.x_hi - box.x_lo)
    yb = box.y_lo + u[:, 3] * (box.y_hi - box.y_lo)
    x1, x2 = np.minimum(xa, xb), np.maximum(xa, xb)
    y1, y2 = np.minimum(ya, yb), np.maximum(ya, yb)
    x1_new, y1_new = _step_xy(p, x1, y1)
    x2_new, y2_new = _step_xy(p, x2, y2)
    violation = (x1_new > x2_new + slack) | (y1_new > y2_new + slack)
    idx = _first_violation(violation)
    if idx is None:
        return CheckResult("cooperativity", True, pairs, seed)
    witness = {
        "lower": {"x": float(x1[idx]), "y": float(y1[idx])},
        "upper": {"x": float(x2[idx]), "y": float(y2[idx])},
        "lower_image": {"x": float(x1_new[idx]), "y": float(y1_new[idx])},
        "upper_image": {"x": float(x2_new[idx]), "y": float(y2_new[idx])},
    }
    return CheckResult("cooperativity", False, pairs, seed, witness)


def check_absorption(
    p: ModelParams,
    starts: int = 1_000,
    seed: int = DEFAULT_SEED,
    box: Box | None = None,
    k_max: int = 100_000,
    settle_steps: int = 1_000,
    slack: float = BOUNDARY_SLACK,
) -> CheckResult:
    """Sampled check that trajectories enter the absorbing box and stay.

    Starts are drawn from ``box`` (default [0, 50]^2).  Fails if any start
    needs more than ``k_max`` steps to enter, or leaves again within
    ``settle_steps`` further steps.
    """
    validate_params(p, analysis=True)
    if box is None:
        box = Box(0.0, 50.0, 0.0, 50.0)
    if starts == 0:
        return CheckResult("absorption", True, 0, seed)
    om = omega(p)
    u = _halton(starts, 2, seed)
    x = box.x_lo + u[:, 0] * (box.x_hi - box.x_lo)
    y = box.y_lo + u[:, 1] * (box.y_hi - box.y_lo)
    k0 = np.full(starts, -1, dtype=np.int64)

    def inside(xv, yv):
        return (
            (xv >= om.x_lo - slack)
            & (xv <= om.x_hi + slack)
            & (yv >= om.y_lo - slack)
            & (yv <= om.y_hi + slack)
        )

    k = 0
    k0[inside(x, y)] = 0
    while (k0 < 0).any() and k < k_max:
        k += 1
        x, y = _step_xy(p, x, y)
        newly = inside(x, y) & (k0 < 0)
        k0[newly] = k
        # Containment after entry is verified in the settle phase below.
        escaped = ~inside(x, y) & (k0 >= 0) & (k0 < k)
        idx = _first_violation(escaped)
        if idx is not None:
            witness = {
                "start_index": idx,
                "entered_at": int(k0[idx]),
                "left_at": k,
                "point": {"x": float(x[idx]), "y": float(y[idx])},
            }
            return CheckResult("absorption", False, starts, seed, witness)
    if (k0 < 0).any():
        idx = _first_violation(k0 < 0)
        witness = {"start_index": idx, "not_absorbed_within": k_max}
        return CheckResult("absorption", False, starts, seed, witness)
    for _ in range(settle_steps):
        x, y = _step_xy(p, x, y)
        outside = ~inside(x, y)
        idx = _first_violation(outside)
        if idx is not None:
            witness = {
                "start_index": idx,
                "point": {"x": float(x[idx]), "y": float(y[idx])},
                "phase": "settle",
            }
            return CheckResult("absorption", False, starts, seed, witness)
    return CheckResult("absorption", True, starts, seed)


def absorbing_entry(p: ModelParams, z0: State, k_max: int = 100_000) -> AbsorptionResult:
    """First entry step of one trajectory into the absorbing box.

    Returns the smallest ``k0`` with the k0-th iterate inside the box, and
    verifies containment of all later iterates up to ``k_max``.
    """
    validate_params(p, analysis=True)
    _require_quadrant(z0)
    om = omega(p)
    x, y = z0.x, z0.y
    k0 = None
    for k in range(k_max + 1):
        if om.contains(x, y, BOUNDARY_SLACK):
            if k0 is None:
                k0 = k
        elif k0 is not None:
            return AbsorptionResult(k0, True, False, k, k_max)
        if k == k_max:
            break
        x, y = _step_xy(p, x, y)
    if k0 is None:
        return AbsorptionResult(None, False, False, None, k_max)
    return AbsorptionResult(k0, True, True, None, k_max)


def _check_into_box(p: ModelParams, box: Box, slack: float, edge_samples: int) -> None:
    """Verify images of corners and sampled boundary land in the closed box."""
    ts = np.linspace(0.0, 1.0, edge_samples)
    xs = box.x_lo + ts * (box.x_hi - box.x_lo)
    ys = box.y_lo + ts * (box.y_hi - box.y_lo)
    edge_x = np.concatenate([xs, xs, np.full_like(ts, box.x_lo), np.full_like(ts, box.x_hi)])
    edge_y = np.concatenate([np.full_like(ts, box.y_lo), np.full_like(ts, box.y_hi), ys, ys])
    x_new, y_new = _step_xy(p, edge_x, edge_y)
    outside = (
        (x_new < box.x_lo - slack)
        | (x_new > box.x_hi + slack)
        | (y_new < box.y_lo - slack)
        | (y_new > box.y_hi + slack)
    )
    idx = _first_violation(outside)
    if idx is not None:
        raise NotInvariant(
            f"image of boundary point ({edge_x[idx]}, {edge_y[idx]}) lands at "
            f"({x_new[idx]}, {y_new[idx]}), outside the box"
        )


def corner_certificate(
    p: ModelParams,
    box: Box,
    max_iters: int = 20_000_000,
    tol: float = 1e-6,
    slack: float = BOUNDARY_SLACK,
    edge_samples: int = 65,
) -> CornerCertificate:
    """Certify convergence of every trajectory in ``box`` to one limit.

    First checks that the map sends the closed box into itself (corners and
    sampled boundary; by order preservation the corner check is the binding
    one).  Then iterates the lower-left and upper-right corners: the lower
    sequence is non-decreasing, the upper non-increasing, and together they
    sandwich every trajectory from the box.  The certificate is granted
    when the two sequences meet within ``tol``; their common limit is then
    the unique fixed point in the box and every trajectory converges to it.

    Raises:
        ValueError: if the box does not lie inside the absorbing box.
        NotInvariant: if some boundary image leaves the box.
        MonotonicityViolated: if a corner sequence moves the wrong way
            beyond ``slack`` (signals inadmissible parameters or a bug).
    """
    validate_params(p, analysis=True)
    om = omega(p)
    if not (om.contains(box.x_lo, box.y_lo, slack) and om.contains(box.x_hi, box.y_hi, slack)):
        raise ValueError("box must lie inside the absorbing box")
    _check_into_box(p, box, slack, edge_samples)

    al, be, ga = p.alpha, p.beta, p.gamma
    one_minus_d0 = 1.0 - p.d0
    one_minus_mu = 1.0 - p.mu
    lx, ly = box.x_lo, box.y_lo
    ux, uy = box.x_hi, box.y_hi
    # Stagnation floor: successive movements this small mean the float
    # sequences have settled even though the gap has not closed.
    floor = 1e-15 * (1.0 + box.x_hi + box.y_hi)
    stagnant = 0
    n = 0
    certified = False
    settled = False
    while n < max_iters:
        n += 1
        nlx = be * ly * ly / (ga + ly) + (one_minus_d0 - al / (1.0 + lx)) * lx
        nly = al * lx / (1.0 + lx) + one_minus_mu * ly
        nux = be * uy * uy / (ga + uy) + (one_minus_d0 - al / (1.0 + ux)) * ux
        nuy = al * ux / (1.0 + ux) + one_minus_mu * uy
        if nlx < lx - slack or nly < ly - slack:
            raise MonotonicityViolated(
                f"lower corner regressed at iteration {n}: ({lx}, {ly}) -> ({nlx}, {nly})"
            )
        if nux > ux + slack or nuy > uy + slack:
            raise MonotonicityViolated(
                f"upper corner advanced at iteration {n}: ({ux}, {uy}) -> ({nux}, {nuy})"
            )
        dl = max(abs(nlx - lx), abs(nly - ly))
        du = max(abs(nux - ux), abs(nuy - uy))
        lx, ly, ux, uy = nlx, nly, nux, nuy
        gap = max(ux - lx, uy - ly, 0.0)
        if gap <= tol:
            certified = True
            break
        if dl <= floor and du <= floor:
            stagnant += 1
            if stagnant >= 64:
                settled = True
                break
        else:
            stagnant = 0

    lower = State(lx, ly)
    upper = State(ux, uy)
    converged = certified or settled
    common = State(0.5 * (lx + ux), 0.5 * (ly + uy)) if certified else None
    return CornerCertificate(
        box=box,
        lower_corner_limit=lower,
        upper_corner_limit=upper,
        certified=certified,
        common_limit=common,
        lower_converged=converged,
        upper_converged=converged,
        iterations=n,
        tol=tol,
    )


def basin_raster(
    p: ModelParams,
    box: Box | None = None,
    nx: int = 200,
    ny: int = 200,
    max_iters: int = DEFAULT_MAX_ITERS,
    tol: float = DEFAULT_TOL,
    attractors: tuple[FixedPoint, ...] | None = None,
) -> BasinRaster:
    """Label every cell center of a grid by the fixed point it reaches.

    All cells iterate in lockstep (vectorized) with the same stopping rule
    as :func:`trajectory`, so a cell's limit is bitwise identical to the
    scalar trajectory from its center.  A converged limit is labeled with
    the nearest attractor within ``10*tol`` in max-norm; everything else is
    ``UNDECIDED``, never force-assigned.

    Args:
        attractors: candidate labels; defaults to the non-repelling fixed
            points of the current regime.
    """
    validate_params(p, analysis=True)
    if nx < 1 or ny < 1:
        raise ValueError("grid must be at least 1x1")
    if box is None:
        box = omega(p)
    if attractors is None:
        attractors = tuple(
            fp
            for fp in fixed_points(p)
            if classify_fixed_point(p, fp).fp_type is not FixedPointType.REPELLING
        )

    dx = (box.x_hi - box.x_lo) / nx
    dy = (box.y_hi - box.y_lo) / ny
    xs = box.x_lo + (np.arange(nx) + 0.5) * dx
    ys = box.y_lo + (np.arange(ny) + 0.5) * dy
    grid_x, grid_y = np.meshgrid(xs, ys)
    cur_x = grid_x.ravel().copy()
    cur_y = grid_y.ravel().copy()
    n_cells = cur_x.size
    prev_d = np.full(n_cells, np.inf)
    active = np.arange(n_cells)
    for _ in range(max_iters):
        if active.size == 0:
            break
        x_a = cur_x[active]
        y_a = cur_y[active]
        x_new, y_new = _step_xy(p, x_a, y_a)
        d = np.maximum(np.abs(x_new - x_a), np.abs(y_new - y_a))
        conv = (d <= tol) & (prev_d[active] <= tol)
        keep = ~conv
        kept = active[keep]
        cur_x[kept] = x_new[keep]
        cur_y[kept] = y_new[keep]
        prev_d[kept] = d[keep]
        active = kept

    labels = np.full(n_cells, UNDECIDED, dtype=np.int16)
    decided = np.ones(n_cells, dtype=bool)
    decided[active] = False
    radius = 10.0 * tol
    for index, fp in enumerate(attractors):
        near = (
            decided
            & (labels == UNDECIDED)
            & (np.abs(cur_x - fp.point.x) <= radius)
            & (np.abs(cur_y - fp.point.y) <= radius)
        )
        labels[near] = index
    labels = labels.reshape(ny, nx)
    labels.setflags(write=False)
    return BasinRaster(
        box=box,
        nx=nx,
        ny=ny,
        labels=labels,
        attractors=tuple(attractors),
        max_iters=max_iters,
        tol=tol,
    )


# Benchmark parameter sets used throughout the demos and tests: id 1 sits
# exactly at the existence threshold, id 2 above it.
EXAMPLE_PARAMS: dict[int, ModelParams] = {
    1: ModelParams(alpha=0.4, beta=2.25 * (2.0 + math.sqrt(3.0)), gamma=1.0, mu=0.6, d0=0.5),
    2: ModelParams(alpha=0.4, beta=9.0, gamma=1.0, mu=0.6, d0=0.5),
}

EXAMPLE_STARTS: dict[int, tuple[State, ...]] = {
    1: (State(0.1, 0.5), State(2.5, 0.1), State(0.1, 0.6), State(3.0, 0.1)),
    2: (
        State(0.1, 0.3),
        State(1.0, 0.1),
        State(0.5, 0.5),
        State(0.5, 0.66),
        State(2.0, 0.1),
        State(4.0, 0.3),
    ),
}


def convergence_verdicts_for_examples(
    p: ModelParams,
    example_id: int,
    max_iters: int | None = None,
    tol: float | None = None,
) -> list[tuple[State, Verdict]]:
    """Run the benchmark starting points of one example set.

    ``p`` must match the example's parameters.  Defaults: the threshold set
    (id 1) gets the enlarged budget of one million iterations; both use a
    tight tolerance so the reported limits sit close to the true fixed
    points.
    """
    if example_id not in EXAMPLE_PARAMS:
        raise ValueError(f"example_id must be 1 or 2, got {example_id}")
    ref = EXAMPLE_PARAMS[example_id]
    for field in ("alpha", "beta", "gamma", "mu", "d0", "d1"):
        got = getattr(p, field)
        want = getattr(ref, field)
        if abs(got - want) > 1e-12 * (1.0 + abs(want)):
            raise ValueError(f"parameter {field}={got} does not match example {example_id} ({want})")
    if max_iters is None:
        max_iters = DEFAULT_MAX_ITERS_AT_THRESHOLD if example_id == 1 else DEFAULT_MAX_ITERS
    if tol is None:
        tol = DEFAULT_TOL
    rows = []
    for z0 in EXAMPLE_STARTS[example_id]:
        traj = trajectory(p, z0, max_iters=max_iters, tol=tol, store_every=10_000)
        rows.append((z0, traj.verdict))
    return rows
