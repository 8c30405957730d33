import csv
import io
import math
import textwrap
from pathlib import Path

import pytest

from laserqhe import cli
from laserqhe.core import OptimizationScheme
from laserqhe.report import read_csv, write_csv

HOT = OptimizationScheme.FIXED_HOT

SWEEP_INI = """\
[experiment]
model = three-level
schemes = fixed-hot, fixed-cold
tau_min = 0.3
tau_max = 0.7
tau_count = 3
name = small

[engine]
omega_fixed = 2
lam = 1000
T_h = 100

[curve g1]
gamma_h = 1

[curve g0.05]
gamma_h = 0.05
"""


def write(tmp_path, text, name="sweep.ini"):
    path = tmp_path / name
    path.write_text(textwrap.dedent(text), encoding="utf-8")
    return path


def small_fig2(tmp_path, **kw):
    return cli.figure_config("fig2", tau_min=0.2, tau_max=0.8, tau_count=4,
                             out_dir=tmp_path, **kw)


def test_csv_round_trip_is_exact(tmp_path):
    results = cli.run(small_fig2(tmp_path), stream=io.StringIO())
    for (name, scheme), rows in results.items():
        path = tmp_path / f"fig2_{scheme.value}_{name}.csv"
        comments, back = read_csv(path)
        assert back == rows
        assert any(c.startswith("config_hash = ") for c in comments)
        with path.open() as fh:
            header = next(line for line in fh if not line.startswith("#"))
        assert header.strip().split(",") == [
            "tau", "eta_carnot", "eta_star", "eta_star_normalized", "p_max", "c_star",
            "bound_lower", "bound_cnca", "bound_upper", "flags"]


def test_round_trip_preserves_awkward_floats(tmp_path):
    from laserqhe.optimize import SweepRow
    row = SweepRow(0.1, 1 - 0.1, 1 / 3, math.pi, 1e-300, 2.0 ** 0.5, 0.45, 1 - 0.1 ** 0.5,
                   0.9 / 1.1, "non-operational")
    write_csv(tmp_path / "x.csv", [row])
    assert read_csv(tmp_path / "x.csv")[1] == [row]


def test_reruns_are_byte_identical_across_thread_counts(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    cli.run(small_fig2(a, svg=True), stream=io.StringIO())
    cli.run(small_fig2(b, svg=True, threads=3), stream=io.StringIO())
    files = sorted(p.name for p in a.iterdir())
    assert files == sorted(p.name for p in b.iterdir())
    assert "config.echo" in files and any(f.endswith(".svg") for f in files)
    for name in files:
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_fig2_layout_and_analytic_agreement(tmp_path):
    out = io.StringIO()
    results = cli.run(small_fig2(tmp_path), stream=out)
    assert len(results) == 4
    for rows in results.values():
        for row in rows:
            assert row.eta_carnot == 1.0 - row.tau
            assert "analytic-mismatch" not in row.flags
    assert "wrote 4 CSV file(s)" in out.getvalue()


def test_normalisation_to_a_reference_curve(tmp_path):
    config = cli.ExperimentConfig(
        experiment="custom-sweep", model="four-level", schemes=(HOT,), tau_min=0.4,
        tau_max=0.6, tau_count=2,
        engine=dict(omega_fixed=5.0, lam=1000.0, T_h=100.0, gamma_h1=1.0, gamma_h2=1.0),
        curves=[cli.Curve("p0", {"p": 0.0}), cli.Curve("p0.9", {"p": 0.9})],
        normalize="curve:p0", out_dir=tmp_path)
    results = cli.run(config, stream=io.StringIO())
    for row in results[("p0", HOT)]:
        assert row.eta_star_normalized == 1.0
    for ref, row in zip(results[("p0", HOT)], results[("p0.9", HOT)]):
        assert row.eta_star_normalized == row.eta_star / ref.eta_star


def test_validate_warnings():
    assert cli.validate(cli.figure_config("fig2")) == []
    weak_lam = cli.figure_config("fig2", lam=1.0)
    assert any("strong-coupling assumption violated" in w for w in cli.validate(weak_lam))
    config = small_fig2(Path("."))
    config.curves = [cli.Curve("hot", {"gamma_h": 20.0})]
    assert any("weak-dissipation" in w for w in cli.validate(config))


def test_config_file_sweep(tmp_path):
    path = write(tmp_path, SWEEP_INI)
    assert cli.main(["sweep", "--config", str(path), "--out-dir", str(tmp_path / "o")]) == 0
    produced = sorted(p.name for p in (tmp_path / "o").glob("*.csv"))
    assert produced == ["small_fixed-cold_g0.05.csv", "small_fixed-cold_g1.csv",
                        "small_fixed-hot_g0.05.csv", "small_fixed-hot_g1.csv"]


@pytest.mark.parametrize("bad,line", [
    ("tau_count = three", 6),
    ("tau_count = 3\ncolour = red", 7),
])
def test_config_errors_name_the_line(tmp_path, capsys, bad, line):
    path = write(tmp_path, SWEEP_INI.replace("tau_count = 3", bad))
    assert cli.main(["sweep", "--config", str(path)]) == 2
    assert f"{path}:{line}" in capsys.readouterr().err


def test_semantic_config_errors(tmp_path, capsys):
    path = write(tmp_path, SWEEP_INI.replace("tau_max = 0.7", "tau_max = 1.5"))
    assert cli.main(["sweep", "--config", str(path)]) == 2
    assert "tau grid" in capsys.readouterr().err
    path = write(tmp_path, SWEEP_INI.replace("gamma_h = 1", "gamma_hot = 1"))
    assert cli.main(["sweep", "--config", str(path)]) == 2
    assert "gamma_hot" in capsys.readouterr().err
    assert cli.main(["sweep", "--config", str(tmp_path / "missing.ini")]) == 2


def test_numerical_failure_exit_code(tmp_path, capsys):
    # at this temperature the engine cannot deliver work anywhere on the scan
    assert cli.main(["power-bounds", "--T-h", "0.001", "--out-dir", str(tmp_path)]) == 3
    err = capsys.readouterr().err
    assert "tau=0.25" in err and "gamma_h" in err


def test_bounds_and_power_bounds_commands(tmp_path, capsys):
    assert cli.main(["bounds", "--tau-count", "5", "--out-dir", str(tmp_path)]) == 0
    with (tmp_path / "bounds.csv").open() as fh:
        rows = list(csv.DictReader(line for line in fh if not line.startswith("#")))
    assert len(rows) == 5
    for r in rows:
        assert float(r["bound_lower"]) <= float(r["bound_cnca"]) <= float(r["bound_upper"])
    assert cli.main(["power-bounds", "--gamma", "1", "--tau", "0.5",
                     "--out-dir", str(tmp_path)]) == 0
    with (tmp_path / "power_bounds.csv").open() as fh:
        rows = list(csv.DictReader(line for line in fh if not line.startswith("#")))
    assert len(rows) == 2
    for r in rows:
        assert float(r["p_max_numeric"]) == pytest.approx(float(r["p_max_closed"]), rel=2e-2)


def test_echo_is_stable():
    a = cli.figure_config("fig3-highT").echo()
    b = cli.figure_config("fig3-highT").echo()
    assert a == b
    assert "units = hbar = k_B = Gamma_c = 1" in a
