"""Convergence certificates from the monotone corner iteration.

Because the map preserves the componentwise order, iterating the two
extreme corners of an invariant box sandwiches every interior trajectory.
If the corner sequences meet, every start in the box provably converges to
their common limit.  Below the threshold this certifies global extinction
on the whole absorbing box; at the threshold it certifies convergence to
the semi-attracting point on its upper order interval; above the threshold
the corners split between the two attractors and certification is refused,
exactly as it must be.
"""

import math
import time

from alleemap import (
    ModelParams,
    RegionKind,
    corner_certificate,
    fixed_points,
    omega,
    region,
)

BASE = dict(alpha=0.4, gamma=1.0, mu=0.6, d0=0.5)


def show(label: str, p: ModelParams, box, max_iters: int, tol: float) -> None:
    t0 = time.time()
    cert = corner_certificate(p, box, max_iters=max_iters, tol=tol)
    dt = time.time() - t0
    print(f"{label} (tol={tol:g}, {cert.iterations} iterations, {dt:.1f}s)")
    print(f"  lower corner limit: ({cert.lower_corner_limit.x:.8f}, {cert.lower_corner_limit.y:.8f})")
    print(f"  upper corner limit: ({cert.upper_corner_limit.x:.8f}, {cert.upper_corner_limit.y:.8f})")
    if cert.certified:
        print(f"  CERTIFIED: common limit ({cert.common_limit.x:.8f}, {cert.common_limit.y:.8f})\n")
    else:
        print("  NOT certified: corner limits disagree\n")


if __name__ == "__main__":
    p_below = ModelParams(beta=8.0, **BASE)
    show("below threshold, whole absorbing box", p_below, omega(p_below), 1_000_000, 1e-9)

    p_at = ModelParams(beta=2.25 * (2.0 + math.sqrt(3.0)), **BASE)
    anchor = fixed_points(p_at)[1]
    upper_interval = region(p_at, RegionKind.OMEGA2, anchor).bounds
    # Sub-geometric approach: closing the gap to 1e-6 takes ~1.3e7 steps.
    show("at threshold, upper order interval", p_at, upper_interval, 20_000_000, 1e-6)

    p_above = ModelParams(beta=9.0, **BASE)
    show("above threshold, whole absorbing box", p_above, omega(p_above), 1_000_000, 1e-9)
