"""Command-line front end: coefficient lookup, scenario runs, CSV exporters.

Subcommands:
    coeffs    print the (N, A, B) triple for one intensity
    solve     run a scenario, write pressure.csv / fields.csv / manifest.txt
    velocity  print a through-gap velocity profile as CSV rows on stdout
    compare   run the smooth and rough variants of a scenario and write
              difference fields plus norm metrics

Scenario presets name the reference configurations: `fig2` is the smooth
channel, `fig3`/`fig4` make the right/left half rough at intensity 2, and
`fig5` a narrow center strip.  Outputs are plain CSV meant for external
plotting tools; all runs are deterministic, so repeated invocations produce
byte-identical files.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
import time
from pathlib import Path

import numpy as np

from . import postprocess
from .coefficients import N_MAX, coefficients
from .geometry import (ConfigError, RoughnessSpec, RoughRegion, ScenarioConfig,
                       build_fields, load_config)
from .solver import ConvergenceError, solve_reynolds

EXIT_OK = 0
EXIT_NUMERICAL = 1
EXIT_INPUT = 2

PRESET_REGIONS = {
    "fig2": (),
    "fig3": (RoughRegion(0.5, 0.0, 1.0, 1.0, n=2.0),),
    "fig4": (RoughRegion(0.0, 0.0, 0.5, 1.0, n=2.0),),
    "fig5": (RoughRegion(0.45, 0.0, 0.55, 1.0, n=2.0),),
}


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _load_scenario(config_path: str | None, scenario: str | None,
                   nx: int | None, ny: int | None) -> ScenarioConfig:
    if config_path is None and scenario is None:
        raise ConfigError("either --config or --scenario is required")
    if config_path is not None:
        path = Path(config_path)
        if not path.is_file():
            raise ConfigError(f"config file not found: {config_path}")
        config = load_config(path.read_text(encoding="utf-8"))
    else:
        config = ScenarioConfig()
    replace: dict = {}
    if scenario is not None:
        replace["roughness"] = RoughnessSpec(PRESET_REGIONS[scenario])
    if nx is not None:
        replace["nx"] = nx
    if ny is not None:
        replace["ny"] = ny
    return dataclasses.replace(config, **replace) if replace else config


def _write_pressure_csv(path: Path, config: ScenarioConfig, p: np.ndarray,
                        value_name: str = "p") -> None:
    nx, ny = config.nx, config.ny
    lines = [f"# nx={nx} ny={ny}", f"x,y,{value_name}"]
    for iy in range(ny + 1):
        for ix in range(nx + 1):
            i = iy * (nx + 1) + ix
            lines.append(f"{_fmt(ix / nx)},{_fmt(iy / ny)},{_fmt(p[i])}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_fields_csv(path: Path, config: ScenarioConfig, grid, fields) -> None:
    bx, by = grid.cell_barycenters()
    lines = ["x,y,n_psi,a,b,h1"]
    for c in range(grid.n_cells):
        lines.append(",".join(_fmt(v) for v in
                              (bx[c], by[c], fields.n_psi[c], fields.a[c],
                               fields.b[c], fields.h1_bar[c])))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_manifest(path: Path, scenario: str, config: ScenarioConfig,
                    files: list[str], iterations: int, residual: float,
                    wall_time: float) -> None:
    lines = [
        f"scenario={scenario}",
        f"nx={config.nx}",
        f"ny={config.ny}",
        f"gap.kind={config.gap.kind}",
        f"gap.c0={_fmt(config.gap.c0)}",
        f"gap.c1={_fmt(config.gap.c1)}",
        f"velocity.ubx={_fmt(config.u_b[0])}",
        f"velocity.uby={_fmt(config.u_b[1])}",
        f"inlet.flux={_fmt(config.q_e)}",
        f"solver.tol={_fmt(config.tol)}",
        f"rough.regions={len(config.roughness.regions)}",
    ]
    for k, r in enumerate(config.roughness.regions, start=1):
        desc = f"n={_fmt(r.intensity())}"
        lines.append(f"rough.region.{k}={_fmt(r.x0)},{_fmt(r.y0)},"
                     f"{_fmt(r.x1)},{_fmt(r.y1)},{desc}")
    lines += [f"file={name}" for name in files]
    lines += [
        f"iterations={iterations}",
        f"residual={_fmt(residual)}",
        f"wall_time_s={wall_time:.3f}",
    ]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def cmd_coeffs(args) -> int:
    pair = coefficients(args.n)
    print(f"N={args.n:g} A={pair.a:#.6g} B={pair.b:#.6g}")
    return EXIT_OK


def cmd_solve(args) -> int:
    config = _load_scenario(args.config, args.scenario, args.nx, args.ny)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    start = time.perf_counter()
    grid, fields = build_fields(config)
    solution = solve_reynolds(config)
    wall = time.perf_counter() - start
    _write_pressure_csv(out / "pressure.csv", config, solution.p)
    _write_fields_csv(out / "fields.csv", config, grid, fields)
    files = ["pressure.csv", "fields.csv"]
    _write_manifest(out / "manifest.txt", args.scenario or "custom", config,
                    files, solution.iterations, solution.residual, wall)
    print(f"wrote {', '.join(files + ['manifest.txt'])} to {out}")
    return EXIT_OK


def cmd_velocity(args) -> int:
    config = _load_scenario(args.config, None, None, None)
    if args.nz < 8:
        raise ConfigError(f"--nz must be >= 8, got {args.nz}")
    grid, fields = build_fields(config)
    solution = solve_reynolds(config)
    grad_p = postprocess.gradient_at(solution, grid, args.x, args.y)
    cx = min(int(args.x * config.nx), config.nx - 1)
    cy = min(int(args.y * config.ny), config.ny - 1)
    cell = cy * config.nx + cx
    profile = postprocess.velocity_profile(
        fields.h1_bar[cell], fields.n_psi[cell], grad_p, config.u_b,
        z_count=args.nz)
    for z, (ux, uy) in zip(profile.z, profile.u):
        print(f"{_fmt(z)},{_fmt(ux)},{_fmt(uy)}")
    return EXIT_OK


def cmd_compare(args) -> int:
    config = _load_scenario(args.config, args.scenario, None, None)
    if not config.roughness.regions:
        raise ConfigError("compare needs a scenario with at least one rough region")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    smooth_config = dataclasses.replace(config, roughness=RoughnessSpec())
    grid, _ = build_fields(config)
    p_smooth = solve_reynolds(smooth_config)
    p_rough = solve_reynolds(config)
    report = postprocess.compare_fields(p_smooth, p_rough, grid, config.roughness)
    _write_pressure_csv(out / "pressure_smooth.csv", config, p_smooth.p)
    _write_pressure_csv(out / "pressure_rough.csv", config, p_rough.p)
    _write_pressure_csv(out / "difference.csv", config, p_rough.p - p_smooth.p,
                        value_name="dp")
    (out / "metrics.txt").write_text(
        f"l2={_fmt(report.l2)}\nlinf={_fmt(report.linf)}\n"
        f"l2_outside_rough={_fmt(report.l2_outside_rough)}\n", encoding="utf-8")
    print(f"wrote pressure_smooth.csv, pressure_rough.csv, difference.csv, "
          f"metrics.txt to {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="roughlub",
        description="Thin-film pressure solver with homogenized roughness corrections.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="print the effective coefficients at one intensity")
    p.add_argument("--n", type=float, required=True,
                   help=f"roughness intensity in [0, {N_MAX:g}]")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("solve", help="solve a scenario and export CSV fields")
    p.add_argument("--config", help="scenario config file (key = value lines)")
    p.add_argument("--scenario", choices=sorted(PRESET_REGIONS),
                   help="named roughness preset")
    p.add_argument("--nx", type=int, help="override cells in x")
    p.add_argument("--ny", type=int, help="override cells in y")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("velocity", help="print a through-gap velocity profile")
    p.add_argument("--config", required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--nz", type=int, default=64)
    p.set_defaults(func=cmd_velocity)

    p = sub.add_parser("compare", help="compare smooth vs rough pressure fields")
    p.add_argument("--config", help="scenario config file with rough regions")
    p.add_argument("--scenario", choices=sorted(PRESET_REGIONS))
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ConvergenceError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


def entry() -> None:
    raise SystemExit(main())
