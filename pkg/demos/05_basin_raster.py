"""Basins of attraction on a grid over the absorbing box.

Above the threshold the phase portrait splits: everything below the
watershed point dies out, everything between the watershed and the
persistent point converges to persistence, and the two mixed quadrants are
divided by the watershed's stable set.  The raster makes that picture
concrete; the PNG written next to this script shows it.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
from alleemap import ModelParams, UNDECIDED, basin_raster, fixed_points

P = ModelParams(alpha=0.4, beta=9.0, gamma=1.0, mu=0.6, d0=0.5)

if __name__ == "__main__":
    raster = basin_raster(P, nx=200, ny=200)
    counts = raster.label_counts()
    print("label counts:", counts)
    for index, fp in enumerate(raster.attractors):
        share = counts.get(index, 0) / raster.labels.size
        print(f"  {index}: {fp.kind.value:>6} ({fp.point.x:.4f}, {fp.point.y:.4f})  {share:.1%} of cells")
    undecided = counts.get(UNDECIDED, 0)
    print(f"  undecided cells: {undecided}")

    xs, ys = raster.cell_centers()
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.imshow(
        raster.labels,
        origin="lower",
        extent=(raster.box.x_lo, raster.box.x_hi, raster.box.y_lo, raster.box.y_hi),
        aspect="auto",
        cmap="Pastel1",
        interpolation="nearest",
    )
    for fp in fixed_points(P):
        ax.plot(fp.point.x, fp.point.y, "k.", markersize=10)
        ax.annotate(fp.kind.value, (fp.point.x, fp.point.y), textcoords="offset points", xytext=(6, 6))
    ax.set_xlabel("larvae x")
    ax.set_ylabel("adults y")
    ax.set_title("basins of attraction, beta above threshold")
    fig.tight_layout()
    out = "basin_above_threshold.png"
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")
