"""Saddle-node picture: positive fixed points appearing across the threshold.

Sweeping beta from below to above the threshold shows the two positive
branches being born at the threshold value and separating like the square
root of the distance to it.  The PNG written next to this script is the
resulting bifurcation diagram.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from alleemap import ModelParams, Regime, existence_report, fixed_points, nu

BASE = dict(alpha=0.4, gamma=1.0, mu=0.6, d0=0.5)

if __name__ == "__main__":
    p0 = ModelParams(beta=1.0, **BASE)
    threshold = nu(p0)
    betas = np.linspace(8.0, 9.0, 201)
    print(f"threshold nu = {threshold:.10g}")
    print("beta        regime           positive fixed points (x)")
    branches = {"lower": [], "upper": [], "beta_pos": []}
    for beta in betas:
        p = p0.with_beta(float(beta))
        report = existence_report(p)
        xs = [fp.point.x for fp in fixed_points(p) if fp.point.x > 0.0]
        if report.regime is Regime.ABOVE_THRESHOLD:
            branches["beta_pos"].append(beta)
            branches["lower"].append(min(xs))
            branches["upper"].append(max(xs))
        if abs(beta - round(beta, 1)) < 1e-9:
            print(f"{beta:6.2f}  {report.regime.value:>16}  {', '.join(f'{x:.5f}' for x in xs) or '-'}")

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(branches["beta_pos"], branches["lower"], "r--", label="watershed branch")
    ax.plot(branches["beta_pos"], branches["upper"], "b-", label="persistent branch")
    ax.axhline(0.0, color="k", lw=1.5, label="extinction")
    ax.axvline(threshold, color="gray", ls=":", label="threshold")
    ax.set_xlabel("birth rate beta")
    ax.set_ylabel("fixed-point larvae coordinate x")
    ax.set_title("positive fixed points across the existence threshold")
    ax.legend(loc="upper left")
    fig.tight_layout()
    out = "bifurcation_sweep.png"
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")
