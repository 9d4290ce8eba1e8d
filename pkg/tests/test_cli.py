"""Configuration parsing, CLI verbs, artifacts, and reproducibility."""

from __future__ import annotations

import json

import numpy as np
import pytest

from pimwnn.analysis import relative_l2
from pimwnn.cli import main
from pimwnn.runconfig import ConfigError, RunConfig, parse_config_text

DIFF1D_CFG = """
# reference configuration
problem.name = diff1d
ladder.j0 = 0
ladder.jmax = 3
sampling.interior = 100
sampling.boundary = 2
sampling.strategy = grid
sampling.seed = 0
output.dir = {out}
"""


def _write_cfg(tmp_path, body, name="run.cfg"):
    path = tmp_path / name
    path.write_text(body)
    return path


def test_parse_config_text():
    raw = parse_config_text("a.b = 1\n# comment\nc = hello\nd = 2.5\ne = true\n")
    assert raw == {"a.b": 1, "c": "hello", "d": 2.5, "e": True}
    with pytest.raises(ConfigError):
        parse_config_text("not an assignment\n")
    with pytest.raises(ConfigError):
        parse_config_text("a = 1\na = 2\n")


def test_config_validates_against_registry():
    with pytest.raises(Exception, match="nope"):
        RunConfig.from_mapping({"problem.name": "nope"})
    with pytest.raises(ConfigError):
        RunConfig.from_mapping({"problem.name": "diff1d", "bogus.key": 1})
    with pytest.raises(Exception):
        RunConfig.from_mapping({"problem.name": "diff1d", "problem.override.v": 1})


def test_per_axis_ladder_keys():
    cfg = RunConfig.from_mapping(
        {"problem.name": "adv2d", "ladder.0.jmax": 5, "ladder.1.j0": 1}
    )
    assert cfg.ladders == ((0, 5), (1, 4))


def test_run_writes_artifacts_and_summary(tmp_path):
    out = tmp_path / "out"
    cfg = _write_cfg(tmp_path, DIFF1D_CFG.format(out=out))
    assert main(["run", str(cfg)]) == 0
    for name in ("solution.csv", "error.csv", "spectrum.csv", "summary.json"):
        assert (out / name).exists()
    summary = json.loads((out / "summary.json").read_text())
    assert summary["problem"] == "diff1d"
    assert summary["n_basis"] == 21
    assert summary["e_l2"] <= 1e-3


def test_summary_integrity(tmp_path):
    # the summary error must equal the error recomputed from the emitted CSV
    out = tmp_path / "out"
    cfg = _write_cfg(tmp_path, DIFF1D_CFG.format(out=out))
    main(["run", str(cfg)])
    summary = json.loads((out / "summary.json").read_text())
    data = np.loadtxt(out / "solution.csv", delimiter=",", skiprows=1)
    recomputed = relative_l2(data[:, 1], data[:, 2])
    assert abs(recomputed - summary["e_l2"]) <= 1e-12 * summary["e_l2"]


def test_reruns_are_byte_identical(tmp_path):
    out_a = tmp_path / "a"
    out_b = tmp_path / "b"
    cfg_a = _write_cfg(tmp_path, DIFF1D_CFG.format(out=out_a), "a.cfg")
    cfg_b = _write_cfg(tmp_path, DIFF1D_CFG.format(out=out_b), "b.cfg")
    main(["run", str(cfg_a)])
    main(["run", str(cfg_b)])
    for name in ("solution.csv", "error.csv", "spectrum.csv"):
        assert (out_a / name).read_bytes() == (out_b / name).read_bytes()


def test_float_format_is_17_significant_digits(tmp_path):
    out = tmp_path / "out"
    cfg = _write_cfg(tmp_path, DIFF1D_CFG.format(out=out))
    main(["run", str(cfg)])
    line = (out / "solution.csv").read_text().splitlines()[1]
    mantissa = line.split(",")[0].split("e")[0]
    assert len(mantissa.replace("-", "").replace(".", "")) == 17


def test_unknown_problem_fails_with_name(tmp_path, capsys):
    cfg = _write_cfg(tmp_path, "problem.name = mystery_problem\n")
    assert main(["run", str(cfg)]) == 1
    assert "mystery_problem" in capsys.readouterr().err


def test_list_shows_registry(capsys):
    assert main(["list"]) == 0
    text = capsys.readouterr().out
    assert "burgers" in text
    assert "helmholtz1d" in text and "lambda = 10" in text
    assert text.startswith("13 registered problems")
    assert sum(1 for line in text.splitlines() if line.startswith("- ")) == 13


def test_output_root_env(tmp_path, monkeypatch):
    monkeypatch.setenv("PIMWNN_OUTPUT_ROOT", str(tmp_path))
    cfg = _write_cfg(tmp_path, DIFF1D_CFG.format(out="rel/dir"))
    assert main(["run", str(cfg)]) == 0
    assert (tmp_path / "rel" / "dir" / "summary.json").exists()


def test_bench_table2(capsys):
    assert main(["bench", "table2"]) == 0
    out = capsys.readouterr().out
    rows = [line for line in out.splitlines() if line.startswith("table2")]
    assert len(rows) == 3
    assert "PASS" in out and "FAIL" not in out


def test_bench_suite_row_counts():
    from pimwnn.bench import SUITES

    assert len(SUITES["table3"]) == 12  # 3 rows each for 3 equations + 3 Helmholtz
    assert len(SUITES["table2"]) == 3
    assert len(SUITES["all"]) == sum(
        len(SUITES[k]) for k in ("table1", "table2", "table3", "table4")
    )


def test_burgers_run_config_parses(tmp_path):
    # nonlinear branch config validation only (the march itself is exercised
    # in the timestepper and acceptance suites)
    cfg = RunConfig.from_mapping(
        {
            "problem.name": "burgers",
            "march.dt": 0.01,
            "march.t_end": 0.02,
            "march.picard_iters": 2,
            "sampling.interior": 200,
            "ladder.j0": 0,
            "ladder.jmax": 5,
            "output.dir": str(tmp_path / "b"),
        }
    )
    assert cfg.dt == 0.01
    assert cfg.ladders[0] == (0, 5)  # the march uses the spatial axis
