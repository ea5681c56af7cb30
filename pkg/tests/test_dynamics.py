import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alleemap import (
    Box,
    FixedPointType,
    ModelParams,
    NotInvariant,
    ParameterOutOfRange,
    RegimeMismatch,
    RegionKind,
    State,
    UNDECIDED,
    VerdictKind,
    absorbing_entry,
    basin_raster,
    check_absorption,
    check_cooperative,
    check_invariance,
    check_quadrant,
    classify_fixed_point,
    convergence_verdicts_for_examples,
    corner_certificate,
    fixed_points,
    omega,
    region,
    residual,
    step,
    trajectory,
)
from alleemap.dynamics import EXAMPLE_PARAMS, EXAMPLE_STARTS

BROKEN = ModelParams(alpha=0.6, beta=9.0, gamma=1.0, mu=0.6, d0=0.5)  # alpha + d0 > 1


class TestTrajectory:
    def test_converges_to_origin(self, params_above):
        traj = trajectory(params_above, State(0.1, 0.3))
        assert traj.verdict.kind is VerdictKind.CONVERGED
        assert traj.verdict.limit.max_diff(State(0.0, 0.0)) <= 1e-8

    def test_converges_to_upper_point(self, params_above):
        traj = trajectory(params_above, State(0.5, 0.5))
        assert traj.verdict.kind is VerdictKind.CONVERGED
        assert traj.verdict.limit.max_diff(State(1.8, 3.0 / 7.0)) <= 1e-8

    def test_fixed_point_start_converges_immediately(self, params_above):
        for fp in fixed_points(params_above):
            traj = trajectory(params_above, fp.point)
            assert traj.verdict.kind is VerdictKind.CONVERGED
            assert traj.iterations_used <= 1
            assert traj.verdict.limit.max_diff(fp.point) <= 1e-12

    def test_bitwise_deterministic(self, params_above):
        a = trajectory(params_above, State(0.37, 0.11))
        b = trajectory(params_above, State(0.37, 0.11))
        assert a.points == b.points
        assert a.verdict == b.verdict

    def test_consecutive_points_are_exact_images(self, params_above):
        traj = trajectory(params_above, State(0.5, 0.5), max_iters=200, tol=0.0)
        assert traj.verdict.kind is VerdictKind.MAX_ITERS
        for prev, cur in zip(traj.points, traj.points[1:]):
            image = step(params_above, prev)
            assert image.x == cur.x and image.y == cur.y

    def test_strided_storage(self, params_above):
        traj = trajectory(params_above, State(0.5, 0.5), max_iters=100, tol=0.0, store_every=10)
        assert traj.verdict.kind is VerdictKind.MAX_ITERS
        assert traj.indices == tuple(range(0, 101, 10))
        dense = trajectory(params_above, State(0.5, 0.5), max_iters=100, tol=0.0)
        for idx, z in zip(traj.indices, traj.points):
            assert dense.points[idx] == z

    def test_converged_limit_and_last_points_within_tol(self, params_above):
        tol = 1e-10
        traj = trajectory(params_above, State(2.0, 0.1), tol=tol)
        assert traj.verdict.kind is VerdictKind.CONVERGED
        assert residual(params_above, traj.verdict.limit) <= tol
        assert traj.points[-1].max_diff(traj.points[-2]) <= tol
        assert traj.verdict.limit == traj.points[-1]
        for prev, cur in zip(traj.points, traj.points[1:]):
            assert step(params_above, prev) == cur

    def test_left_domain_with_bypassed_validation(self):
        traj = trajectory(BROKEN, State(0.1, 1e-6), max_iters=50)
        assert traj.verdict.kind is VerdictKind.LEFT_DOMAIN
        assert traj.points[-1].x < 0.0

    def test_rejects_negative_start(self, params_above):
        with pytest.raises(ValueError, match="quadrant"):
            trajectory(params_above, State(-0.1, 0.0))

    def test_rejects_quadratic_death(self):
        p = ModelParams(alpha=0.4, beta=9.0, gamma=1.0, mu=0.6, d0=0.5, d1=0.1)
        with pytest.raises(ParameterOutOfRange, match="d1"):
            trajectory(p, State(0.1, 0.1))

    def test_limits_match_fixed_points_in_hyperbolic_regimes(self, params_above, params_below):
        rng = np.random.default_rng(3)
        tol = 1e-10
        for p in (params_above, params_below):
            box = omega(p)
            fps = fixed_points(p)
            for _ in range(20):
                z0 = State(float(rng.uniform(0, box.x_hi)), float(rng.uniform(0, box.y_hi)))
                traj = trajectory(p, z0, tol=tol)
                assert traj.verdict.kind is VerdictKind.CONVERGED
                limit = traj.verdict.limit
                assert residual(p, limit) <= tol
                assert min(limit.max_diff(fp.point) for fp in fps) <= 10.0 * tol


class TestRegion:
    def test_omega_bounds(self, params_above):
        spec = region(params_above, RegionKind.OMEGA)
        assert spec.bounds.x_hi == pytest.approx(4.8, rel=1e-12)
        assert spec.bounds.y_hi == pytest.approx(2.0 / 3.0, rel=1e-12)
        assert spec.excluded == ()

    def test_lower_order_interval(self, params_above):
        anchor = fixed_points(params_above)[1]
        spec = region(params_above, RegionKind.OMEGA1, anchor)
        assert spec.bounds.x_lo == 0.0 and spec.bounds.y_lo == 0.0
        assert spec.bounds.x_hi == anchor.point.x
        assert spec.bounds.y_hi == anchor.point.y
        assert spec.excluded == (anchor.point,)

    def test_upper_order_interval(self, params_above):
        anchor = fixed_points(params_above)[1]
        om = omega(params_above)
        spec = region(params_above, RegionKind.OMEGA2, anchor)
        assert spec.bounds.x_lo == anchor.point.x
        assert spec.bounds.x_hi == om.x_hi
        assert spec.bounds.y_lo == anchor.point.y
        assert spec.bounds.y_hi == om.y_hi

    def test_subdivision_bounds(self, params_above):
        fps = fixed_points(params_above)
        lower, upper = fps[1].point, fps[2].point
        om = omega(params_above)
        sub = {kind: region(params_above, kind).bounds for kind in
               (RegionKind.SUB1, RegionKind.SUB2, RegionKind.SUB3, RegionKind.SUB4)}
        assert sub[RegionKind.SUB1] == Box(upper.x, om.x_hi, upper.y, om.y_hi)
        assert sub[RegionKind.SUB2] == Box(lower.x, upper.x, upper.y, om.y_hi)
        assert sub[RegionKind.SUB3] == Box(lower.x, upper.x, lower.y, upper.y)
        assert sub[RegionKind.SUB4] == Box(upper.x, om.x_hi, lower.y, upper.y)
        # Worked example: Sub3 = [3/5, 9/5] x [1/4, 3/7].
        assert sub[RegionKind.SUB3].x_lo == pytest.approx(0.6, abs=1e-12)
        assert sub[RegionKind.SUB3].x_hi == pytest.approx(1.8, abs=1e-12)
        assert sub[RegionKind.SUB3].y_lo == pytest.approx(0.25, abs=1e-12)
        assert sub[RegionKind.SUB3].y_hi == pytest.approx(3.0 / 7.0, abs=1e-12)

    def test_subdivision_requires_above_threshold(self, params_below, params_at):
        for p in (params_below, params_at):
            with pytest.raises(RegimeMismatch):
                region(p, RegionKind.SUB1)

    def test_origin_anchor_rejected(self, params_above):
        origin = fixed_points(params_above)[0]
        with pytest.raises(RegimeMismatch):
            region(params_above, RegionKind.OMEGA1, origin)

    def test_foreign_anchor_rejected(self, params_above, params_at):
        anchor = fixed_points(params_at)[1]
        with pytest.raises(RegimeMismatch):
            region(params_above, RegionKind.OMEGA1, anchor)

    def test_anchor_required(self, params_above):
        with pytest.raises(ValueError):
            region(params_above, RegionKind.OMEGA1)


class TestInvarianceChecks:
    def test_order_intervals_invariant_at_threshold(self, params_at):
        anchor = fixed_points(params_at)[1]
        for kind in (RegionKind.OMEGA1, RegionKind.OMEGA2):
            result = check_invariance(params_at, region(params_at, kind, anchor), samples=10_000)
            assert result.passed, result.witness

    def test_order_intervals_invariant_above_threshold(self, params_above):
        anchor = fixed_points(params_above)[1]
        for kind in (RegionKind.OMEGA1, RegionKind.OMEGA2):
            result = check_invariance(params_above, region(params_above, kind, anchor), samples=10_000)
            assert result.passed, result.witness

    def test_absorbing_box_invariant(self, params_above, params_at, params_below):
        for p in (params_above, params_at, params_below):
            result = check_invariance(p, region(p, RegionKind.OMEGA), samples=10_000)
            assert result.passed, result.witness

    def test_non_invariant_box_yields_witness(self, params_above):
        from alleemap import RegionSpec

        bogus = RegionSpec(kind=RegionKind.OMEGA, bounds=Box(2.0, 3.0, 0.0, 0.1))
        result = check_invariance(params_above, bogus, samples=1_000)
        assert not result.passed
        assert result.witness is not None
        # Adults always rebound above 0.1 from larvae in [2, 3].
        assert result.witness["image"]["y"] > 0.1

    def test_zero_samples_vacuous(self, params_above):
        result = check_invariance(params_above, region(params_above, RegionKind.OMEGA), samples=0)
        assert result.passed and result.samples == 0


class TestCooperativity:
    def test_equal_pair_maps_to_equal_images(self, params_above):
        z = State(0.7, 0.2)
        assert step(params_above, z) == step(params_above, z)

    def test_ordered_pairs_stay_ordered(self, params_above):
        result = check_cooperative(params_above, pairs=10_000)
        assert result.passed, result.witness

    def test_pairs_straddling_absorbing_box(self, params_above):
        result = check_cooperative(params_above, pairs=10_000, box=Box(0.0, 100.0, 0.0, 100.0))
        assert result.passed, result.witness

    @given(
        x1=st.floats(0.0, 50.0), y1=st.floats(0.0, 50.0),
        dx=st.floats(0.0, 50.0), dy=st.floats(0.0, 50.0),
    )
    @settings(max_examples=300, deadline=None)
    def test_order_preserved_pointwise(self, x1, y1, dx, dy):
        p = EXAMPLE_PARAMS[2]
        lo = State(x1, y1)
        hi = State(x1 + dx, y1 + dy)
        lo_img = step(p, lo)
        hi_img = step(p, hi)
        assert lo_img.x <= hi_img.x + 1e-12
        assert lo_img.y <= hi_img.y + 1e-12


class TestQuadrantCheck:
    def test_passes_for_benchmark_sets(self, params_above, params_at, params_below):
        for p in (params_above, params_at, params_below):
            result = check_quadrant(p, samples=100_000)
            assert result.passed, result.witness

    def test_broken_params_yield_witness(self):
        result = check_quadrant(BROKEN, samples=100_000)
        assert not result.passed
        w = result.witness
        assert w["image"]["x"] < 0.0 or w["image"]["y"] < 0.0

    def test_zero_samples_vacuous(self, params_above):
        result = check_quadrant(params_above, samples=0)
        assert result.passed and result.samples == 0


class TestAbsorption:
    def test_start_inside_enters_at_zero(self, params_above):
        result = absorbing_entry(params_above, State(1.0, 0.5), k_max=2_000)
        assert result.k0 == 0 and result.absorbed and result.remained

    def test_far_start_gets_absorbed(self, params_above):
        result = absorbing_entry(params_above, State(10.0, 5.0), k_max=2_000)
        assert result.absorbed and result.k0 is not None and result.k0 > 0
        assert result.remained and result.first_exit is None

    def test_bulk_absorption(self, params_above, params_at):
        for p in (params_above, params_at):
            result = check_absorption(p, starts=1_000, k_max=100_000, settle_steps=1_000)
            assert result.passed, result.witness


class TestCornerCertificate:
    def test_below_threshold_certifies_whole_box(self, params_below):
        cert = corner_certificate(params_below, omega(params_below), max_iters=100_000, tol=1e-9)
        assert cert.certified
        assert cert.common_limit.max_diff(State(0.0, 0.0)) <= 1e-8

    def test_above_threshold_refuses_whole_box(self, params_above):
        cert = corner_certificate(params_above, omega(params_above), max_iters=100_000, tol=1e-9)
        assert not cert.certified
        assert cert.lower_corner_limit.max_diff(State(0.0, 0.0)) <= 1e-6
        assert cert.upper_corner_limit.max_diff(State(1.8, 3.0 / 7.0)) <= 1e-6

    def test_threshold_upper_interval_certifies(self, params_at):
        # Coarse-tolerance variant; the tight 1e-6 run lives in acceptance.
        anchor = fixed_points(params_at)[1]
        spec = region(params_at, RegionKind.OMEGA2, anchor)
        cert = corner_certificate(params_at, spec.bounds, max_iters=200_000, tol=1e-3)
        assert cert.certified
        assert cert.common_limit.max_diff(anchor.point) <= 1e-3

    def test_degenerate_box_at_fixed_point(self, params_above):
        fp = fixed_points(params_above)[2].point
        cert = corner_certificate(params_above, Box(fp.x, fp.x, fp.y, fp.y), max_iters=10, tol=1e-9)
        assert cert.certified
        assert cert.common_limit.max_diff(fp) <= 1e-12

    def test_non_invariant_box_refused(self, params_above):
        with pytest.raises(NotInvariant):
            corner_certificate(params_above, Box(2.0, 3.0, 0.0, 0.1), max_iters=100)

    def test_box_outside_absorbing_box_rejected(self, params_above):
        with pytest.raises(ValueError, match="absorbing"):
            corner_certificate(params_above, Box(0.0, 100.0, 0.0, 100.0), max_iters=100)

    def test_corner_sequences_monotone(self, params_below):
        # Replay the first iterations through the public step map.
        box = omega(params_below)
        lo, hi = State(box.x_lo, box.y_lo), State(box.x_hi, box.y_hi)
        for _ in range(500):
            lo_next, hi_next = step(params_below, lo), step(params_below, hi)
            assert lo_next.x >= lo.x - 1e-12 and lo_next.y >= lo.y - 1e-12
            assert hi_next.x <= hi.x + 1e-12 and hi_next.y <= hi.y + 1e-12
            lo, hi = lo_next, hi_next

    @pytest.mark.parametrize("fixture", ["params_below", "params_above"])
    def test_sandwich_property(self, fixture, request):
        # Any trajectory stays order-bounded between the corner iterates,
        # both on the certified box (beta=8) and the refused one (beta=9).
        p = request.getfixturevalue(fixture)
        rng = np.random.default_rng(8)
        box = omega(p)
        for _ in range(10):
            z = State(float(rng.uniform(0, box.x_hi)), float(rng.uniform(0, box.y_hi)))
            lo, hi = State(box.x_lo, box.y_lo), State(box.x_hi, box.y_hi)
            for _ in range(500):
                z = step(p, z)
                lo = step(p, lo)
                hi = step(p, hi)
                assert lo.x - 1e-12 <= z.x <= hi.x + 1e-12
                assert lo.y - 1e-12 <= z.y <= hi.y + 1e-12


class TestBasinRaster:
    def test_single_cell_at_fixed_point(self, params_above):
        fp = fixed_points(params_above)[2]
        eps = 1e-6
        box = Box(fp.point.x - eps, fp.point.x + eps, fp.point.y - eps, fp.point.y + eps)
        raster = basin_raster(params_above, box=box, nx=1, ny=1)
        label = int(raster.labels[0, 0])
        assert raster.attractors[label].point.max_diff(fp.point) <= 1e-9

    def test_below_threshold_single_basin(self, params_below):
        raster = basin_raster(params_below, nx=50, ny=50)
        assert raster.labels.shape == (50, 50)
        origin_index = next(
            i for i, fp in enumerate(raster.attractors) if fp.point == State(0.0, 0.0)
        )
        assert (raster.labels == origin_index).all()

    def test_above_threshold_two_basins(self, params_above):
        raster = basin_raster(params_above, nx=60, ny=60)
        fps = fixed_points(params_above)
        lower, upper = fps[1].point, fps[2].point
        xs, ys = raster.cell_centers()
        X, Y = np.meshgrid(xs, ys)
        origin_idx = next(i for i, fp in enumerate(raster.attractors) if fp.point.x == 0.0)
        upper_idx = next(i for i, fp in enumerate(raster.attractors) if fp.point.x > 1.0)
        # Strict interiors; the margin keeps out centers that coincide with
        # a region boundary up to float representation.
        m = 1e-9
        inside_lower_interval = (X < lower.x - m) & (Y < lower.y - m)
        inside_open_rect = (
            (X > lower.x + m) & (X < upper.x - m) & (Y > lower.y + m) & (Y < upper.y - m)
        )
        decided = raster.labels != UNDECIDED
        assert (raster.labels[inside_lower_interval & decided] == origin_idx).all()
        assert (raster.labels[inside_open_rect & decided] == upper_idx).all()
        assert (raster.labels == origin_idx).any()
        assert (raster.labels == upper_idx).any()

    def test_labels_match_scalar_trajectories(self, params_above):
        raster = basin_raster(params_above, nx=20, ny=20, max_iters=20_000)
        xs, ys = raster.cell_centers()
        rng = np.random.default_rng(12)
        radius = 10.0 * raster.tol
        for _ in range(25):
            i = int(rng.integers(0, 20))
            j = int(rng.integers(0, 20))
            traj = trajectory(params_above, State(float(xs[i]), float(ys[j])), max_iters=20_000)
            label = int(raster.labels[j, i])
            if label == UNDECIDED:
                assert traj.verdict.kind is not VerdictKind.CONVERGED or not any(
                    traj.verdict.limit.max_diff(fp.point) <= radius for fp in raster.attractors
                )
            else:
                assert traj.verdict.kind is VerdictKind.CONVERGED
                assert traj.verdict.limit.max_diff(raster.attractors[label].point) <= radius

    def test_vectorized_step_is_bitwise_scalar(self, params_above):
        # The raster's lockstep arithmetic must reproduce scalar stepping
        # bit for bit; this is what makes raster labels trustworthy.
        from alleemap.model import _step_xy

        rng = np.random.default_rng(77)
        xs = rng.uniform(0.0, 5.0, 100)
        ys = rng.uniform(0.0, 1.0, 100)
        vx, vy = _step_xy(params_above, xs, ys)
        for i in range(100):
            out = step(params_above, State(float(xs[i]), float(ys[i])))
            assert out.x == vx[i] and out.y == vy[i]

    def test_attractors_exclude_repelling(self, params_above):
        raster = basin_raster(params_above, nx=5, ny=5, max_iters=2_000)
        for fp in raster.attractors:
            assert classify_fixed_point(params_above, fp).fp_type is not FixedPointType.REPELLING

    def test_invalid_grid(self, params_above):
        with pytest.raises(ValueError):
            basin_raster(params_above, nx=0, ny=10)


class TestExampleVerdicts:
    def test_above_threshold_example_rows(self):
        p = EXAMPLE_PARAMS[2]
        rows = convergence_verdicts_for_examples(p, 2)
        targets = [
            State(0.0, 0.0),
            State(0.0, 0.0),
            State(1.8, 3.0 / 7.0),
            State(1.8, 3.0 / 7.0),
            State(1.8, 3.0 / 7.0),
            State(1.8, 3.0 / 7.0),
        ]
        assert [z0 for z0, _ in rows] == list(EXAMPLE_STARTS[2])
        for (z0, verdict), target in zip(rows, targets):
            assert verdict.kind is VerdictKind.CONVERGED, z0
            assert verdict.limit.max_diff(target) <= 1e-8

    def test_wrong_params_rejected(self, params_below):
        with pytest.raises(ValueError, match="does not match"):
            convergence_verdicts_for_examples(params_below, 2)

    def test_unknown_example_rejected(self, params_above):
        with pytest.raises(ValueError, match="example_id"):
            convergence_verdicts_for_examples(params_above, 3)
