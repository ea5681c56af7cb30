"""Dynamics toolkit for a discrete two-stage population map with an Allee effect.

The package splits into three layers plus a CLI:

- :mod:`alleemap.model`: the map itself, parameter validation, existence
  threshold, closed-form fixed points, and the absorbing box.
- :mod:`alleemap.stability`: Jacobian, characteristic quadratic, unit-circle
  root classification, and fixed-point typing.
- :mod:`alleemap.dynamics`: trajectories, invariant regions, sampled
  property checks, corner-iteration convergence certificates, and basin
  rasters.
- :mod:`alleemap.cli`: the ``alleemap`` command.
"""

from .model import (
    Box,
    ExistenceReport,
    FixedPoint,
    FixedPointKind,
    ModelParams,
    ParameterOutOfRange,
    Regime,
    State,
    THRESHOLD_RTOL,
    discriminant,
    existence_report,
    fixed_points,
    nu,
    omega,
    residual,
    step,
    validate_params,
)
from .stability import (
    FixedPointType,
    NotAFixedPoint,
    QuadraticCoeffs,
    RootCase,
    RootClass,
    StabilityReport,
    UNIT_CIRCLE_EPS,
    char_coeffs,
    classify_fixed_point,
    classify_quadratic,
    jacobian,
)
from .dynamics import (
    AbsorptionResult,
    BasinRaster,
    CheckResult,
    CornerCertificate,
    DEFAULT_MAX_ITERS,
    DEFAULT_MAX_ITERS_AT_THRESHOLD,
    DEFAULT_SEED,
    DEFAULT_TOL,
    DEFAULT_TOL_AT_THRESHOLD,
    EXAMPLE_PARAMS,
    EXAMPLE_STARTS,
    MonotonicityViolated,
    NotInvariant,
    RegimeMismatch,
    RegionKind,
    RegionSpec,
    Trajectory,
    UNDECIDED,
    Verdict,
    VerdictKind,
    absorbing_entry,
    basin_raster,
    check_absorption,
    check_cooperative,
    check_invariance,
    check_quadrant,
    convergence_verdicts_for_examples,
    corner_certificate,
    region,
    trajectory,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
