"""Command-line front end: analysis pipeline, sweeps, and plot-ready data.

Exit codes: 0 success, 1 analysis-negative (certificate refused or a
property suite failed), 2 usage or parameter-validation errors.  Every JSON
output embeds the full parameter set, tolerances, budgets, and seed, and
parses back to the same bytes when re-serialized.  CSV output uses '.' as
the decimal separator and 17 significant digits, which round-trips
binary64 exactly.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from .dynamics import (
    DEFAULT_SEED,
    NotInvariant,
    RegionKind,
    Trajectory,
    basin_raster,
    check_absorption,
    check_cooperative,
    check_invariance,
    check_quadrant,
    corner_certificate,
    default_budgets,
    region,
    trajectory,
)
from .model import (
    Box,
    ModelParams,
    ParameterOutOfRange,
    State,
    existence_report,
    fixed_points,
    omega,
    validate_params,
)
from .stability import classify_fixed_point

__all__ = ["main", "build_parser"]

_PARAM_KEYS = ("alpha", "beta", "gamma", "mu", "d0", "d1")


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _print_json(payload: dict, out: str | None = None) -> None:
    text = json.dumps(payload, indent=2)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)


@dataclass
class RunConfig:
    params: ModelParams
    tol: float
    max_iters: int
    seed: int

    def options(self, **extra) -> dict:
        out = {"tol": self.tol, "max_iters": self.max_iters, "seed": self.seed}
        out.update(extra)
        return out


def _load_params(args: argparse.Namespace) -> ModelParams:
    raw: dict = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            loaded = json.load(fh)
        if not isinstance(loaded, dict):
            raise ParameterOutOfRange("config file must hold a flat JSON object")
        raw.update(loaded)
    for key in _PARAM_KEYS:
        value = getattr(args, key)
        if value is not None:
            raw[key] = value
    raw.setdefault("d1", 0.0)
    params = ModelParams.from_dict(raw)
    return validate_params(params, analysis=params.d1 == 0.0)


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    params = _load_params(args)
    max_iters, tol = default_budgets(params)
    if args.tol is not None:
        tol = args.tol
    if args.max_iters is not None:
        max_iters = args.max_iters
    return RunConfig(params=params, tol=tol, max_iters=max_iters, seed=args.seed)


def _parse_pair(text: str, flag: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"{flag} expects two comma-separated values, got {text!r}")
    return float(parts[0]), float(parts[1])


def _parse_grid(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"--grid expects NX,NY, got {text!r}")
    nx, ny = int(parts[0]), int(parts[1])
    return nx, ny


def _parse_box(text: str) -> Box:
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError(f"--box expects x0,x1,y0,y1, got {text!r}")
    x0, x1, y0, y1 = (float(s) for s in parts)
    return Box(x0, x1, y0, y1)


def _stability_dict(p: ModelParams, fp) -> dict:
    report = classify_fixed_point(p, fp)
    merged = fp.to_dict()
    merged["stability"] = report.to_dict()
    return merged


def cmd_fixed_points(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    p = cfg.params
    report = existence_report(p)
    fps = fixed_points(p)
    payload = {
        "params": p.to_dict(),
        "options": cfg.options(),
        "existence": report.to_dict(),
        "omega": omega(p).to_dict(),
        "fixed_points": [_stability_dict(p, fp) for fp in fps],
    }
    _print_json(payload, args.out)
    return 0


def write_trajectory_csv(traj: Trajectory, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("n,x,y\n")
        for n, z in zip(traj.indices, traj.points):
            fh.write(f"{n},{_fmt(z.x)},{_fmt(z.y)}\n")


def cmd_trajectory(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    z0 = State(args.x0, args.y0)
    traj = trajectory(
        cfg.params, z0, max_iters=cfg.max_iters, tol=cfg.tol, store_every=args.store_every
    )
    out = args.out or "trajectory.csv"
    write_trajectory_csv(traj, out)
    payload = {
        "params": cfg.params.to_dict(),
        "options": cfg.options(store_every=args.store_every),
        "z0": z0.to_dict(),
        "verdict": traj.verdict.to_dict(),
        "iterations_used": traj.iterations_used,
        "csv": out,
    }
    _print_json(payload)
    return 0


def write_raster_csv(raster, path: str) -> None:
    xs, ys = raster.cell_centers()
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("x,y,label\n")
        for j in range(raster.ny):
            for i in range(raster.nx):
                fh.write(f"{_fmt(xs[i])},{_fmt(ys[j])},{int(raster.labels[j, i])}\n")


def cmd_basin(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    nx, ny = _parse_grid(args.grid)
    box = _parse_box(args.box) if args.box else None
    raster = basin_raster(
        cfg.params, box=box, nx=nx, ny=ny, max_iters=cfg.max_iters, tol=cfg.tol
    )
    prefix = args.out or "basin"
    csv_path = f"{prefix}.csv"
    sidecar_path = f"{prefix}.json"
    write_raster_csv(raster, csv_path)
    sidecar = {
        "params": cfg.params.to_dict(),
        "options": cfg.options(grid=[nx, ny]),
    }
    sidecar.update(raster.to_sidecar())
    with open(sidecar_path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(sidecar, indent=2))
    payload = dict(sidecar)
    payload["csv"] = csv_path
    payload["sidecar"] = sidecar_path
    _print_json(payload)
    return 0


def cmd_certify(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    box = _parse_box(args.box) if args.box else omega(cfg.params)
    base = {
        "params": cfg.params.to_dict(),
        "options": cfg.options(box=box.to_dict()),
    }
    try:
        cert = corner_certificate(cfg.params, box, max_iters=cfg.max_iters, tol=cfg.tol)
    except NotInvariant as exc:
        payload = dict(base)
        payload["certified"] = False
        payload["reason"] = "NotInvariant"
        payload["detail"] = str(exc)
        _print_json(payload, args.out)
        return 1
    payload = dict(base)
    payload["certificate"] = cert.to_dict()
    _print_json(payload, args.out)
    return 0 if cert.certified else 1


_SWEEP_HEADER = (
    "beta,nu,discriminant,regime,n_fixed_points,"
    "x1,y1,type1,x2,y2,type2,x3,y3,type3"
)


def _sweep_rows(p: ModelParams, betas) -> list[dict]:
    rows = []
    for beta in betas:
        pb = p.with_beta(float(beta))
        report = existence_report(pb)
        entries = []
        for fp in fixed_points(pb):
            stab = classify_fixed_point(pb, fp)
            entries.append(
                {
                    "x": fp.point.x,
                    "y": fp.point.y,
                    "kind": fp.kind.value,
                    "type": stab.fp_type.value,
                }
            )
        rows.append(
            {
                "beta": float(beta),
                "nu": report.nu,
                "discriminant": report.discriminant,
                "regime": report.regime.value,
                "fixed_points": entries,
            }
        )
    return rows


def _sweep_csv_lines(rows: list[dict]) -> list[str]:
    lines = [_SWEEP_HEADER]
    for row in rows:
        cells = [
            _fmt(row["beta"]),
            _fmt(row["nu"]),
            _fmt(row["discriminant"]),
            row["regime"],
            str(len(row["fixed_points"])),
        ]
        for slot in range(3):
            if slot < len(row["fixed_points"]):
                entry = row["fixed_points"][slot]
                cells += [_fmt(entry["x"]), _fmt(entry["y"]), entry["type"]]
            else:
                cells += ["", "", ""]
        lines.append(",".join(cells))
    return lines


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    lo, hi = _parse_pair(args.beta_range, "--beta-range")
    if args.steps < 1:
        raise ValueError("--steps must be at least 1")
    if lo <= 0.0 or hi <= 0.0 or hi < lo:
        raise ValueError("--beta-range must be positive and ordered")
    betas = np.linspace(lo, hi, args.steps)
    rows = _sweep_rows(cfg.params, betas)
    if args.format == "json":
        payload = {
            "params": cfg.params.to_dict(),
            "options": cfg.options(beta_range=[lo, hi], steps=args.steps),
            "rows": rows,
        }
        text = json.dumps(payload, indent=2)
    else:
        text = "\n".join(_sweep_csv_lines(rows))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        _print_json(
            {
                "params": cfg.params.to_dict(),
                "options": cfg.options(beta_range=[lo, hi], steps=args.steps, format=args.format),
                "rows_written": len(rows),
                "out": args.out,
            }
        )
    else:
        print(text)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    p = cfg.params
    seed = cfg.seed
    n = args.samples
    warnings = []
    if n == 0:
        warnings.append("zero samples requested; all checks pass vacuously")

    def count(default: int) -> int:
        return default if n is None else n

    checks = [
        check_quadrant(p, samples=count(100_000), seed=seed),
        check_absorption(p, starts=count(1_000), seed=seed, k_max=cfg.max_iters),
        check_invariance(p, region(p, RegionKind.OMEGA), samples=count(10_000), seed=seed),
        check_cooperative(p, pairs=count(10_000), seed=seed),
    ]
    fps = fixed_points(p)
    if len(fps) > 1:
        anchor = fps[1]
        checks.append(
            check_invariance(p, region(p, RegionKind.OMEGA1, anchor), samples=count(10_000), seed=seed)
        )
        checks.append(
            check_invariance(p, region(p, RegionKind.OMEGA2, anchor), samples=count(10_000), seed=seed)
        )
    else:
        warnings.append("no positive fixed point in this regime; Omega1/Omega2 checks skipped")
    passed = all(c.passed for c in checks)
    payload = {
        "params": p.to_dict(),
        "options": cfg.options(samples=n),
        "checks": [c.to_dict() for c in checks],
        "passed": passed,
        "warnings": warnings,
    }
    _print_json(payload, args.out)
    return 0 if passed else 1


def _add_common(sp: argparse.ArgumentParser) -> None:
    for key, help_text in (
        ("alpha", "maximum emergence rate (> 0)"),
        ("beta", "birth rate (> 0)"),
        ("gamma", "Allee half-saturation constant (> 0)"),
        ("mu", "adult death rate in (0, 1]"),
        ("d0", "linear larvae death rate (> 0)"),
        ("d1", "quadratic larvae death coefficient (default 0)"),
    ):
        sp.add_argument(f"--{key}", type=float, default=None, help=help_text)
    sp.add_argument("--tol", type=float, default=None, help="convergence tolerance (default 1e-10, 1e-6 at threshold)")
    sp.add_argument("--max-iters", dest="max_iters", type=int, default=None, help="iteration budget (default 1e5, 1e6 at threshold)")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for sampled checks")
    sp.add_argument("--out", default=None, help="output path (or prefix for basin)")
    sp.add_argument("--config", default=None, help="JSON file with parameter keys alpha..d1; explicit flags win")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="alleemap",
        description="Fixed points, stability, certificates, and basins of the discrete Allee mosquito map.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("fixed-points", help="existence report plus classified fixed points")
    _add_common(sp)
    sp.set_defaults(func=cmd_fixed_points)

    sp = sub.add_parser("trajectory", help="iterate one starting point; CSV plus verdict")
    sp.add_argument("x0", type=float, help="initial larvae population (>= 0)")
    sp.add_argument("y0", type=float, help="initial adult population (>= 0)")
    _add_common(sp)
    sp.add_argument("--store-every", dest="store_every", type=int, default=1, help="store every k-th iterate")
    sp.set_defaults(func=cmd_trajectory)

    sp = sub.add_parser("basin", help="label a grid of starts by attractor; CSV plus JSON sidecar")
    _add_common(sp)
    sp.add_argument("--grid", default="200,200", help="NX,NY cell counts")
    sp.add_argument("--box", default=None, help="x0,x1,y0,y1 raster window (default: absorbing box)")
    sp.set_defaults(func=cmd_basin)

    sp = sub.add_parser("certify", help="corner-iteration convergence certificate on a box")
    _add_common(sp)
    sp.add_argument("--box", default=None, help="x0,x1,y0,y1 (default: absorbing box)")
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("sweep", help="existence/stability table across a birth-rate range")
    _add_common(sp)
    sp.add_argument("--beta-range", dest="beta_range", required=True, help="LO,HI birth-rate range")
    sp.add_argument("--steps", type=int, default=11, help="number of rows")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("verify", help="run the sampled property suites")
    _add_common(sp)
    sp.add_argument("--samples", type=int, default=None, help="override each suite's sample count")
    sp.set_defaults(func=cmd_verify)

    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParameterOutOfRange as exc:
        print(f"parameter out of range: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
