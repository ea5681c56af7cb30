"""Existence threshold and the fixed-point trichotomy.

Sweeping the birth rate beta through the threshold changes the number of
fixed points from one (extinction only) to three (extinction, a watershed
point, and a persistent population).  This script prints the closed-form
fixed points and their stability classification in all three regimes.
"""

import math

from alleemap import ModelParams, classify_fixed_point, existence_report, fixed_points, nu, omega

BASE = dict(alpha=0.4, gamma=1.0, mu=0.6, d0=0.5)
BETA_AT = 2.25 * (2.0 + math.sqrt(3.0))  # exactly the threshold for BASE


def describe(p: ModelParams) -> None:
    report = existence_report(p)
    box = omega(p)
    print(f"beta = {p.beta:.10g}")
    print(f"  threshold nu   = {report.nu:.10g}")
    print(f"  discriminant   = {report.discriminant:.6g}")
    print(f"  regime         = {report.regime.value}")
    print(f"  absorbing box  = [0, {box.x_hi:.6g}] x [0, {box.y_hi:.6g}]")
    for fp in fixed_points(p):
        stab = classify_fixed_point(p, fp)
        lam1, lam2 = stab.roots.lambda1, stab.roots.lambda2
        line = (
            f"  {fp.kind.value:>6}: ({fp.point.x:.10g}, {fp.point.y:.10g})"
            f"  type={stab.fp_type.value}"
            f"  case={stab.roots.case_tag.case_id}"
            f"  |lambda|=({abs(lam1):.4f}, {abs(lam2):.4f})"
        )
        if stab.semi_attracting:
            line += "  [semi-attracting]"
        print(line)
        if stab.note:
            print(f"          note: {stab.note}")
    print()


if __name__ == "__main__":
    print("threshold for the base rates:", nu(ModelParams(beta=1.0, **BASE)), "\n")
    for beta in (8.0, BETA_AT, 9.0):
        describe(ModelParams(beta=beta, **BASE))
