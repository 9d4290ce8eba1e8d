"""Command-line runner: run one configuration, benchmark suites, list problems.

Verbs:
    pimwnn run <config-file>    solve a problem and write artifacts
    pimwnn bench <suite>        run a benchmark suite (table1..table4, all)
    pimwnn list                 show the problem registry

Artifacts are CSV files (17-significant-digit scientific floats, so reruns
are byte-identical) plus a JSON summary.  Relative output directories are
resolved under $PIMWNN_OUTPUT_ROOT when it is set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from importlib import resources
from pathlib import Path

import numpy as np

from .analysis import amplitude_spectrum, relative_l2
from .bench import SUITES, format_report, run_suite
from .geometry import BoxTime, Interval
from .pipeline import RunResult, solve_problem
from .problems import make_problem, problem_names, _OVERRIDE_KEYS
from .runconfig import ConfigError, RunConfig
from .timestepper import MarchConfig, Trajectory, march

__all__ = ["main", "run", "load_burgers_reference"]

_FMT = "%.16e"  # 17 significant digits: exact float64 round-trip


def _axis_names(geom) -> list[str]:
    if isinstance(geom, Interval):
        return ["x"]
    if isinstance(geom, BoxTime):
        if len(geom.space) == 1:
            return ["x", "t"]
        return [f"x{i}" for i in range(len(geom.space))] + ["t"]
    return ["x", "y", "z"][: len(geom.bounds)]


def _write_csv(path: Path, header: list[str], columns: list[np.ndarray]) -> None:
    data = np.column_stack(columns)
    with path.open("w") as fh:
        fh.write(",".join(header) + "\n")
        for row in data:
            fh.write(",".join(_FMT % v for v in row) + "\n")


def load_burgers_reference() -> np.ndarray:
    """Golden Burgers solution as rows (t, x, u_ref)."""
    with resources.files("pimwnn.data").joinpath("burgers_reference.csv").open("rb") as fh:
        return np.loadtxt(fh, delimiter=",", skiprows=1)


def _output_dir(config: RunConfig) -> Path:
    out = Path(config.output_dir)
    root = os.environ.get("PIMWNN_OUTPUT_ROOT")
    if root and not out.is_absolute():
        out = Path(root) / out
    out.mkdir(parents=True, exist_ok=True)
    return out


def _run_linear(config: RunConfig, out: Path) -> dict:
    spec = config.build_problem()
    result: RunResult = solve_problem(
        spec,
        ladders=config.ladders,
        n_interior=config.n_interior,
        n_boundary=config.n_boundary,
        n_initial=config.n_initial,
        strategy=config.strategy,
        seed=config.seed,
        rcond=config.rcond,
        weights=config.weights,
        eval_points=config.eval_points,
    )
    names = _axis_names(spec.geometry)
    grid_cols = [result.grid[:, a] for a in range(result.grid.shape[1])]
    numeric = result.solution.eval(result.grid)

    columns = grid_cols + [numeric]
    header = names + ["u_num"]
    if spec.exact is not None:
        columns.append(spec.exact(result.grid))
        header.append("u_exact")
    _write_csv(out / "solution.csv", header, columns)

    summary: dict = {
        "problem": spec.name,
        "n_basis": result.basis.size,
        "rows": result.system.shape[0],
        "residual_norm": result.report.residual_norm,
        "rank": result.report.rank,
        "condition_estimate": result.report.condition_estimate,
        "solve_seconds": result.report.elapsed_seconds,
        "wall_seconds": result.elapsed_seconds,
    }
    if result.error is not None:
        summary["e_l2"] = result.error.relative_l2
        summary["max_abs_error"] = result.error.max_abs
        _write_csv(
            out / "error.csv", names + ["error"], grid_cols + [result.error.pointwise]
        )
    if result.error_smooth is not None:
        summary["e_l2_smooth"] = result.error_smooth
    if isinstance(spec.geometry, BoxTime) and spec.exact is not None:
        lo, hi = spec.geometry.space[0]
        xs = np.linspace(lo, hi, 1000)
        pts = np.column_stack([xs, np.full(xs.size, spec.geometry.t_end)])
        summary["e_l2_final"] = relative_l2(result.solution.eval(pts), spec.exact(pts))
    if isinstance(spec.geometry, Interval):
        spectrum = amplitude_spectrum(numeric)
        cols = [spectrum.wavenumbers.astype(float), spectrum.amplitudes]
        header = ["wavenumber", "amplitude_num"]
        if spec.exact is not None:
            cols.append(amplitude_spectrum(spec.exact(result.grid)).amplitudes)
            header.append("amplitude_exact")
        _write_csv(out / "spectrum.csv", header, cols)
    return summary


def _run_march(config: RunConfig, out: Path) -> dict:
    spec = config.build_problem()
    d = spec.defaults
    j0, jmax = (config.ladders or d["ladders"])[0]
    cfg = MarchConfig(
        dt=config.dt if config.dt is not None else d["dt"],
        t_end=config.t_end if config.t_end is not None else d["t_end"],
        epsilon=d["epsilon"],
        picard_iters=config.picard_iters if config.picard_iters is not None else d["picard_iters"],
        j0=j0,
        jmax=jmax,
        n_interior=config.n_interior if config.n_interior is not None else d["n_interior"],
        n_boundary=config.n_boundary if config.n_boundary is not None else d["n_boundary"],
        picard_tol=config.picard_tol if config.picard_tol is not None else 1e-10,
        strategy=config.strategy or d["strategy"],
        seed=config.seed if config.seed is not None else d["seed"],
    )
    t0 = time.perf_counter()
    trajectory: Trajectory = march(spec, cfg)
    wall = time.perf_counter() - t0

    lo, hi = spec.geometry.space[0]
    xs = np.linspace(lo, hi, config.eval_points or 401)
    stride = max(1, (len(trajectory.times) - 1) // 20)
    levels = list(range(0, len(trajectory.times), stride))
    if levels[-1] != len(trajectory.times) - 1:
        levels.append(len(trajectory.times) - 1)
    t_col, x_col, u_col = [], [], []
    for i in levels:
        u = trajectory.solution_at(i).eval(xs.reshape(-1, 1))
        t_col.append(np.full(xs.size, trajectory.times[i]))
        x_col.append(xs)
        u_col.append(u)
    _write_csv(
        out / "trajectory.csv",
        ["t", "x", "u"],
        [np.concatenate(t_col), np.concatenate(x_col), np.concatenate(u_col)],
    )

    summary: dict = {
        "problem": spec.name,
        "n_basis": trajectory.basis.size,
        "steps": len(trajectory.times) - 1,
        "dt": cfg.dt,
        "picard_iters": cfg.picard_iters,
        "wall_seconds": wall,
    }
    if spec.name == "burgers":
        ref = load_burgers_reference()
        errors = {}
        for t in np.unique(ref[:, 0]):
            if t > cfg.t_end + 1e-12:
                continue
            idx = int(np.argmin(np.abs(trajectory.times - t)))
            if abs(trajectory.times[idx] - t) > cfg.dt / 2 + 1e-12:
                continue
            rows = ref[np.isclose(ref[:, 0], t)]
            u_num = trajectory.solution_at(idx).eval(rows[:, 1].reshape(-1, 1))
            errors[f"{t:g}"] = relative_l2(u_num, rows[:, 2])
        summary["e_l2_vs_reference"] = errors
        if errors:
            summary["e_l2"] = max(errors.values())
    return summary


def run(config: RunConfig) -> dict:
    """Execute one run and write artifacts; returns the summary mapping."""
    out = _output_dir(config)
    spec_is_nonlinear = make_problem(config.problem, dict(config.overrides)).nonlinear
    summary = _run_march(config, out) if spec_is_nonlinear else _run_linear(config, out)
    (out / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return summary


def _cmd_run(args) -> int:
    stage = "configuration"
    try:
        config = RunConfig.from_file(args.config)
        stage = "solve"
        summary = run(config)
    except Exception as exc:  # surface the failing stage with nonzero status
        print(f"error during {stage}: {exc}", file=sys.stderr)
        return 1
    e = summary.get("e_l2")
    e_txt = f" e_l2={e:.3e}" if isinstance(e, float) else ""
    print(f"{summary['problem']}: N={summary['n_basis']}{e_txt} -> {_output_dir(config)}")
    return 0


def _cmd_bench(args) -> int:
    try:
        results = run_suite(args.suite)
    except KeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(format_report(results))
    return 1 if any(r.row.must_pass and not r.passed for r in results) else 0


def _cmd_list(_args) -> int:
    names = problem_names()
    print(f"{len(names)} registered problems:")
    for name in names:
        spec = make_problem(name)
        print(f"- {name}: {spec.description}")
        d = spec.defaults
        ladders = " x ".join(f"(j0={a}, jmax={b})" for a, b in d["ladders"])
        counts = f"n_interior={d['n_interior']}, n_boundary={d['n_boundary']}"
        if "n_initial" in d:
            counts += f", n_initial={d['n_initial']}"
        print(f"    defaults: ladder {ladders}; {counts}; sampling={d['strategy']}")
        keys = _OVERRIDE_KEYS[name]
        if keys:
            print(f"    overrides: {', '.join(keys)}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="pimwnn",
        description="Multiresolution Shannon wavelet collocation PDE solver",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one configuration file")
    p_run.add_argument("config", help="path to a key = value configuration file")
    p_run.set_defaults(func=_cmd_run)

    p_bench = sub.add_parser("bench", help="run a benchmark suite")
    p_bench.add_argument("suite", choices=sorted(SUITES), help="suite name")
    p_bench.set_defaults(func=_cmd_bench)

    p_list = sub.add_parser("list", help="list registered problems")
    p_list.set_defaults(func=_cmd_list)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
