"""Flat key = value run configuration files.

Example::

    problem.name = diff1d
    ladder.j0 = 0
    ladder.jmax = 3
    sampling.interior = 100
    sampling.boundary = 2
    sampling.strategy = grid
    sampling.seed = 0
    output.dir = runs/diff1d

Dotted sections group keys; problem.override.* passes problem parameters;
ladder.<axis>.j0/jmax sets one axis, plain ladder.j0/jmax applies to all.
Unknown keys are rejected.  The configuration is validated against the
problem registry before any computation happens.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from .pipeline import BlockWeights
from .problems import ProblemSpec, make_problem

__all__ = ["RunConfig", "ConfigError", "parse_config_text"]


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration."""


def _parse_value(raw: str):
    raw = raw.strip()
    low = raw.lower()
    if low in ("true", "yes", "on"):
        return True
    if low in ("false", "no", "off"):
        return False
    try:
        return int(raw)
    except ValueError:
        pass
    try:
        return float(raw)
    except ValueError:
        pass
    return raw


def parse_config_text(text: str) -> dict[str, object]:
    """Parse key = value lines ('#' comments, blank lines ignored)."""
    out: dict[str, object] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, raw = stripped.split("=", 1)
        key = key.strip()
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in out:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        out[key] = _parse_value(raw)
    return out


_KNOWN_PREFIXES = (
    "problem.name",
    "problem.override.",
    "ladder.",
    "sampling.interior",
    "sampling.boundary",
    "sampling.initial",
    "sampling.strategy",
    "sampling.seed",
    "solver.rcond",
    "weights.boundary",
    "weights.initial",
    "march.dt",
    "march.t_end",
    "march.picard_iters",
    "march.picard_tol",
    "eval.points",
    "output.dir",
)


@dataclass(frozen=True)
class RunConfig:
    """Validated configuration for one run."""

    problem: str
    overrides: Mapping[str, object] = field(default_factory=dict)
    ladders: tuple[tuple[int, int], ...] | None = None
    n_interior: int | None = None
    n_boundary: int | None = None
    n_initial: int | None = None
    strategy: str | None = None
    seed: int | None = None
    rcond: float | None = None
    weights: BlockWeights = BlockWeights()
    dt: float | None = None
    t_end: float | None = None
    picard_iters: int | None = None
    picard_tol: float | None = None
    eval_points: int | None = None
    output_dir: str = "runs/out"

    def build_problem(self) -> ProblemSpec:
        return make_problem(self.problem, dict(self.overrides))

    @classmethod
    def from_mapping(cls, raw: Mapping[str, object]) -> "RunConfig":
        for key in raw:
            if not any(
                key == p or (p.endswith(".") and key.startswith(p)) for p in _KNOWN_PREFIXES
            ):
                raise ConfigError(f"unknown configuration key {key!r}")
        if "problem.name" not in raw:
            raise ConfigError("missing required key 'problem.name'")
        problem = str(raw["problem.name"])

        overrides = {
            key.removeprefix("problem.override."): value
            for key, value in raw.items()
            if key.startswith("problem.override.")
        }

        # validates the name and overrides against the registry up front
        spec = make_problem(problem, overrides)
        n_axes = len(spec.geometry.bounds)

        ladders = None
        if "ladder.j0" in raw or "ladder.jmax" in raw:
            if not ("ladder.j0" in raw and "ladder.jmax" in raw):
                raise ConfigError("ladder.j0 and ladder.jmax must be given together")
            ladders = ((int(raw["ladder.j0"]), int(raw["ladder.jmax"])),) * n_axes
        per_axis = {
            key: value
            for key, value in raw.items()
            if key.startswith("ladder.") and key.split(".")[1].isdigit()
        }
        if per_axis:
            base = list(ladders or spec.defaults["ladders"])
            for key, value in per_axis.items():
                _, axis, which = key.split(".")
                axis = int(axis)
                if axis >= n_axes:
                    raise ConfigError(f"{key!r}: problem has only {n_axes} axes")
                j0, jmax = base[axis]
                base[axis] = (int(value), jmax) if which == "j0" else (j0, int(value))
            ladders = tuple(base)

        def opt(key, cast):
            return cast(raw[key]) if key in raw else None

        def weight_value(key):
            if key not in raw:
                return None
            value = raw[key]
            if isinstance(value, str) and value.lower() == "auto":
                return None
            return float(value)

        strategy = opt("sampling.strategy", str)
        if strategy is not None and strategy not in ("grid", "random"):
            raise ConfigError(f"sampling.strategy must be grid or random, got {strategy!r}")
        rcond = raw.get("solver.rcond")
        if isinstance(rcond, str):
            if rcond.lower() != "auto":
                raise ConfigError(f"solver.rcond must be a number or 'auto', got {rcond!r}")
            rcond = None

        return cls(
            problem=problem,
            overrides=overrides,
            ladders=ladders,
            n_interior=opt("sampling.interior", int),
            n_boundary=opt("sampling.boundary", int),
            n_initial=opt("sampling.initial", int),
            strategy=strategy,
            seed=opt("sampling.seed", int),
            rcond=None if rcond is None else float(rcond),
            weights=BlockWeights(weight_value("weights.boundary"), weight_value("weights.initial")),
            dt=opt("march.dt", float),
            t_end=opt("march.t_end", float),
            picard_iters=opt("march.picard_iters", int),
            picard_tol=opt("march.picard_tol", float),
            eval_points=opt("eval.points", int),
            output_dir=str(raw.get("output.dir", "runs/out")),
        )

    @classmethod
    def from_file(cls, path: str | Path) -> "RunConfig":
        return cls.from_mapping(parse_config_text(Path(path).read_text()))
