"""Benchmark trajectories in the threshold and above-threshold regimes.

Initial points on different sides of the watershed land on different fixed
points.  At the threshold the approach to the semi-attracting point is
sub-geometric, which is why that regime carries a million-step budget.
"""

from alleemap import EXAMPLE_PARAMS, EXAMPLE_STARTS, convergence_verdicts_for_examples


def show(example_id: int) -> None:
    p = EXAMPLE_PARAMS[example_id]
    print(f"example set {example_id}: beta = {p.beta:.10g}")
    rows = convergence_verdicts_for_examples(p, example_id)
    for z0, verdict in rows:
        if verdict.limit is not None:
            where = f"-> ({verdict.limit.x:.8f}, {verdict.limit.y:.8f})"
        else:
            where = ""
        print(f"  start ({z0.x:4}, {z0.y:4})  {verdict.kind.value} {where}")
    print()


if __name__ == "__main__":
    for example_id in sorted(EXAMPLE_STARTS):
        show(example_id)
