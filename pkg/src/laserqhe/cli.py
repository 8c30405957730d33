"""Command-line runner reproducing the EMP figures and tables.

Subcommands::

    fig2          three-level EMP curves with the eta_C/2, CNCA, eta_C/(2-eta_C) band
    fig3-hight    four-level curves at high temperature, normalised to p = 0
    fig4-lowt     four-level curves at low temperature, normalised to eta_C/(2-eta_C)
    bounds        closed-form EMP bounds and EMP curves
    power-bounds  numeric maximum power against its closed form and limits
    sweep         custom sweep described by an INI file

Exit status is 0 on success, 2 for configuration errors and 3 for numerical
failures (the offending parameter row is printed).
"""
from __future__ import annotations

import argparse
import configparser
import math
import re
import sys
from dataclasses import MISSING, dataclass, field, fields
from pathlib import Path
from typing import Sequence

import numpy as np

from . import analytics
from .core import OptimizationScheme, gamma_p
from .errors import DomainError, NoOperatingPoint, SweepPointError
from .optimize import FourLevel, SweepRow, ThreeLevel, maximize_power, sweep_emp
from .report import config_hash, format_value, write_csv, write_svg, write_table

__all__ = ["Curve", "ExperimentConfig", "ConfigError", "validate", "run",
           "load_config", "figure_config", "main"]

MODELS = {"three-level": ThreeLevel, "four-level": FourLevel}
EXPERIMENTS = ("fig2", "fig3-highT", "fig4-lowT", "bounds-table", "power-bounds",
               "custom-sweep")
OVERRIDE_EXTRA = ("delta_gamma_h",)


class ConfigError(Exception):
    """Invalid configuration; the message names the offending line or field."""


@dataclass(frozen=True)
class Curve:
    name: str
    override: dict = field(default_factory=dict)


@dataclass
class ExperimentConfig:
    """Everything needed to reproduce one experiment.

    ``engine`` holds the template fields shared by all curves (rates and
    frequencies in units of Gamma_c); each curve overrides some of them.
    ``normalize`` is ``none``, ``upper-bound`` or ``curve:<name>``.
    """

    experiment: str
    model: str
    schemes: tuple
    tau_min: float
    tau_max: float
    tau_count: int
    engine: dict
    curves: list
    normalize: str = "none"
    name: str = ""
    out_dir: Path = Path(".")
    svg: bool = False
    threads: int = 1
    tolerance: float = 1e-2

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}")
        if self.model not in MODELS:
            raise ConfigError(f"model must be one of {sorted(MODELS)}, got {self.model!r}")
        if not self.schemes:
            raise ConfigError("at least one scheme is required")
        if self.tau_count < 1:
            raise ConfigError("tau_count must be >= 1")
        if not 0.0 < self.tau_min <= self.tau_max < 1.0:
            raise ConfigError("tau grid must satisfy 0 < tau_min <= tau_max < 1")
        if self.tau_count > 1 and self.tau_min == self.tau_max:
            raise ConfigError("tau_min == tau_max needs tau_count = 1")
        if not self.curves:
            raise ConfigError("at least one curve is required")
        names = [c.name for c in self.curves]
        if len(set(names)) != len(names):
            raise ConfigError("curve names must be unique")
        for c in self.curves:
            if not re.fullmatch(r"[A-Za-z0-9_.+=-]+", c.name):
                raise ConfigError(f"curve name {c.name!r} may only use letters, digits and _.+=-")
        norm = self.normalize
        if not (norm in ("none", "upper-bound") or
                (norm.startswith("curve:") and norm[6:] in names)):
            raise ConfigError(f"normalize must be none, upper-bound or curve:<name>, got {norm!r}")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")
        if not self.tolerance > 0:
            raise ConfigError("tolerance must be > 0")
        allowed = {f.name for f in fields(MODELS[self.model])}
        for key in self.engine:
            if key not in allowed:
                raise ConfigError(f"unknown engine field {key!r} for {self.model}")
        for c in self.curves:
            for key in c.override:
                if key not in allowed and not (key in OVERRIDE_EXTRA and self.model == "four-level"):
                    raise ConfigError(f"curve {c.name!r}: unknown field {key!r}")
        missing = [f.name for f in fields(MODELS[self.model])
                   if f.default is MISSING and f.name not in self.engine
                   and not all(f.name in c.override for c in self.curves)]
        if missing:
            raise ConfigError(f"engine is missing required fields {missing}")
        for c in self.curves:
            for scheme in self.schemes:
                try:
                    self.curve_engine(c).params(scheme, self.tau_min, 1.0 + 1e-3)
                except DomainError as exc:
                    raise ConfigError(f"curve {c.name!r}: {exc}") from None

    @property
    def prefix(self) -> str:
        return self.name or self.experiment.lower()

    def tau_grid(self) -> np.ndarray:
        return np.linspace(self.tau_min, self.tau_max, self.tau_count)

    def curve_engine(self, curve: Curve):
        override = dict(curve.override)
        delta = override.pop("delta_gamma_h", None)
        engine = MODELS[self.model](**{**self.engine, **override})
        return engine if delta is None else engine.with_rate_asymmetry(delta)

    def echo(self) -> list[str]:
        """Canonical description; its hash identifies the output files."""
        lines = [
            f"experiment = {self.experiment}",
            f"model = {self.model}",
            f"schemes = {', '.join(s.value for s in self.schemes)}",
            f"tau_grid = linspace({format_value(self.tau_min)}, "
            f"{format_value(self.tau_max)}, {self.tau_count})",
            f"normalize = {self.normalize}",
            f"tolerance = {format_value(self.tolerance)}",
        ]
        for key in sorted(self.engine):
            lines.append(f"engine.{key} = {format_value(float(self.engine[key]))}")
        for c in self.curves:
            items = ", ".join(f"{k}={format_value(float(v))}" for k, v in sorted(c.override.items()))
            lines.append(f"curve.{c.name} = {items}")
        lines.append("units = hbar = k_B = Gamma_c = 1")
        return lines


BOTH = (OptimizationScheme.FIXED_HOT, OptimizationScheme.FIXED_COLD)


def _coherence_curves() -> list[Curve]:
    curves = [Curve(f"p{p:g}", {"p": p}) for p in (0.9, 0.0, -0.9)]
    for gap in (0.0, 0.1):
        for delta in (0.01, -0.01):
            curves.append(Curve(f"d{gap:g}_dg{delta:+g}",
                                {"p": 0.9, "half_gap": gap, "delta_gamma_h": delta}))
    return curves


def figure_config(experiment: str, **kw) -> ExperimentConfig:
    """Defaults for the figure subcommands (all in units of Gamma_c).

    High temperature: ``T_h = 100``, ``lam = 1000``; the fixed frequency is 2
    for the three-level curves (small enough that ``omega/T_h`` corrections
    stay below 1%) and 5 for the four-level curves (large enough that the
    split pair with ``Delta = 0.1`` keeps lasing down to ``eta_C = 0.1``).
    Low temperature: ``T_h = 0.1``, ``lam = 10``, ``omega_fixed = 1``.
    """
    if experiment == "fig2":
        base = dict(experiment="fig2", model="three-level", schemes=BOTH,
                    tau_min=0.02, tau_max=0.98, tau_count=50,
                    engine=dict(omega_fixed=2.0, lam=1000.0, T_h=100.0, gamma_h=1.0),
                    curves=[Curve("gamma1", {"gamma_h": 1.0}),
                            Curve("gamma0.05", {"gamma_h": 0.05})])
    elif experiment == "fig3-highT":
        base = dict(experiment="fig3-highT", model="four-level", schemes=BOTH,
                    tau_min=0.1, tau_max=0.9, tau_count=17,
                    engine=dict(omega_fixed=5.0, lam=1000.0, T_h=100.0,
                                gamma_h1=1.0, gamma_h2=1.0),
                    curves=_coherence_curves(), normalize="curve:p0")
    elif experiment == "fig4-lowT":
        base = dict(experiment="fig4-lowT", model="four-level", schemes=BOTH,
                    tau_min=0.05, tau_max=0.95, tau_count=19,
                    engine=dict(omega_fixed=1.0, lam=10.0, T_h=0.1,
                                gamma_h1=1.0, gamma_h2=1.0),
                    curves=_coherence_curves(), normalize="upper-bound")
    else:
        raise ConfigError(f"no figure defaults for {experiment!r}")
    engine_kw = {k: kw.pop(k) for k in list(kw) if k in ("omega_fixed", "lam", "T_h")}
    base["engine"].update({k: v for k, v in engine_kw.items() if v is not None})
    base.update({k: v for k, v in kw.items() if v is not None})
    return ExperimentConfig(**base)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def _rates(engine) -> tuple[float, list[float]]:
    if isinstance(engine, ThreeLevel):
        return engine.gamma_c, [engine.gamma_h]
    return engine.gamma_c, [engine.gamma_h1, engine.gamma_h2]


def validate(config: ExperimentConfig) -> list[str]:
    """Regime checks; returns human-readable warnings (never raises).

    * at high temperature (``omega_fixed < T_h``) ``lam`` should exceed every
      bath rate by at least a factor 10 for the strong-driving closed forms
      the results are compared against;
    * every hot rate should stay below ``omega_h`` (weak dissipation).  The
      smallest ``omega_h`` of a sweep is ``omega_fixed``.
    """
    warnings = []
    seen = set()
    for curve in config.curves:
        engine = config.curve_engine(curve)
        gamma_c, hot = _rates(engine)
        biggest = max(hot + [gamma_c])
        high_t = _is_high_temperature(engine)
        if high_t and engine.lam < 10.0 * biggest and "lam" not in seen:
            seen.add("lam")
            warnings.append(
                f"strong-coupling assumption violated: lam={engine.lam:g} is not >> "
                f"Gamma={biggest:g} (curve {curve.name})")
        omega_h = engine.omega_fixed - getattr(engine, "half_gap", 0.0)
        if max(hot) >= omega_h and "weak" not in seen:
            seen.add("weak")
            warnings.append(
                f"weak-dissipation regime violated: Gamma_h={max(hot):g} >= "
                f"omega_h={omega_h:g} (curve {curve.name})")
    return warnings


# ---------------------------------------------------------------------------
# Running
# ---------------------------------------------------------------------------

def _is_high_temperature(engine) -> bool:
    return engine.omega_fixed < engine.T_h


def _reference_gamma(engine) -> float | None:
    """Coupling ratio entering the high-temperature closed form, if it applies."""
    if not _is_high_temperature(engine):
        return None
    if isinstance(engine, ThreeLevel):
        return engine.gamma_h / engine.gamma_c
    if engine.half_gap != 0.0:
        return None
    return gamma_p(engine.gamma_h1, engine.gamma_h2, engine.p, engine.gamma_c)


def _normalise(config: ExperimentConfig, results: dict) -> None:
    for (name, scheme), rows in results.items():
        for k, row in enumerate(rows):
            if config.normalize == "none":
                ref = 1.0
            elif config.normalize == "upper-bound":
                ref = row.bound_upper
            else:
                ref = results[(config.normalize[6:], scheme)][k].eta_star
            row.eta_star_normalized = row.eta_star / ref if ref != 0.0 else math.nan


def _flag_analytic(config: ExperimentConfig, curve: Curve, scheme, rows) -> float | None:
    gamma = _reference_gamma(config.curve_engine(curve))
    if gamma is None:
        return None
    worst = 0.0
    for row in rows:
        if "non-operational" in row.flags:
            continue
        ref = analytics.emp_closed_form(row.tau, gamma, scheme)
        dev = abs(row.eta_star - ref) / ref
        worst = max(worst, dev)
        if dev > config.tolerance:
            row.flags = ";".join(f for f in (row.flags, "analytic-mismatch") if f)
    return worst


def run(config: ExperimentConfig, stream=None) -> dict:
    """Run all curves of a sweep experiment and write the output files.

    Returns ``{(curve name, scheme): rows}``.  Files are written only after
    every row has been computed.
    """
    stream = stream or sys.stdout
    taus = config.tau_grid()
    results, deviations = {}, {}
    for scheme in config.schemes:
        for curve in config.curves:
            try:
                rows = sweep_emp(config.curve_engine(curve), scheme, taus,
                                 threads=config.threads)[0]
            except SweepPointError as exc:
                raise SweepPointError(exc.tau, {"curve": curve.name, "scheme": scheme.value,
                                                **curve.override}, exc.cause) from exc
            results[(curve.name, scheme)] = rows
            deviations[(curve.name, scheme)] = _flag_analytic(config, curve, scheme, rows)
    _normalise(config, results)

    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    echo = config.echo()
    digest = config_hash("\n".join(echo))
    header = echo + [f"config_hash = {digest}"]
    (out / "config.echo").write_text("\n".join(header) + "\n", encoding="utf-8")
    for (name, scheme), rows in results.items():
        write_csv(out / f"{config.prefix}_{scheme.value}_{name}.csv", rows,
                  header + [f"curve = {name}", f"scheme = {scheme.value}"])
    if config.svg:
        for scheme in config.schemes:
            series = [(name, [r.eta_carnot for r in rows], [r.eta_star_normalized for r in rows])
                      for (name, s), rows in results.items() if s is scheme]
            if config.normalize == "none":
                first = results[(config.curves[0].name, scheme)]
                xs = [r.eta_carnot for r in first]
                series += [("eta_C/2", xs, [r.bound_lower for r in first]),
                           ("eta_CA", xs, [r.bound_cnca for r in first]),
                           ("eta_C/(2-eta_C)", xs, [r.bound_upper for r in first])]
            ylabel = "eta*" if config.normalize == "none" else "eta* (normalised)"
            write_svg(out / f"{config.prefix}_{scheme.value}.svg",
                      f"{config.prefix} ({scheme.value})", series, ylabel=ylabel)

    stream.write(f"{'curve':<16}{'scheme':<12}{'points':>7}{'operating':>10}"
                 f"{'eta*_min':>12}{'eta*_max':>12}{'max_rel_dev':>13}\n")
    for (name, scheme), rows in results.items():
        ok = [r.eta_star for r in rows if "non-operational" not in r.flags]
        dev = deviations[(name, scheme)]
        stream.write(f"{name:<16}{scheme.value:<12}{len(rows):>7}{len(ok):>10}"
                     f"{(min(ok) if ok else math.nan):>12.6f}"
                     f"{(max(ok) if ok else math.nan):>12.6f}"
                     f"{('-' if dev is None else format(dev, '.2e')):>13}\n")
    stream.write(f"wrote {len(results)} CSV file(s) to {out} (config hash {digest})\n")
    return results


def run_bounds(tau_grid, gammas, out_dir: Path, svg: bool = False, stream=None) -> Path:
    """Closed-form band ``eta_C/2 <= eta_CA <= eta_C/(2-eta_C)`` with EMP curves."""
    stream = stream or sys.stdout
    columns = ["tau", "eta_carnot", "bound_lower", "bound_cnca", "bound_upper"]
    for g in gammas:
        columns += [f"emp_fixed_hot_g{g:g}", f"emp_fixed_cold_g{g:g}"]
    rows = []
    for tau in tau_grid:
        b = analytics.emp_bounds(tau)
        row = [float(tau), 1.0 - float(tau), b.lower, b.cnca, b.upper]
        for g in gammas:
            row += [analytics.emp_fixed_hot(tau, g), analytics.emp_fixed_cold(tau, g)]
        rows.append(row)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    echo = ["experiment = bounds-table", f"gammas = {', '.join(format_value(float(g)) for g in gammas)}",
            f"tau_grid = {len(rows)} points in [{format_value(float(tau_grid[0]))}, "
            f"{format_value(float(tau_grid[-1]))}]"]
    path = out / "bounds.csv"
    write_table(path, columns, rows, echo + [f"config_hash = {config_hash(chr(10).join(echo))}"])
    if svg:
        xs = [r[1] for r in rows]
        series = [(name, xs, [r[i] for r in rows]) for i, name in enumerate(columns) if i >= 2]
        write_svg(out / "bounds.svg", "EMP bounds", series)
    stream.write(f"wrote {path} ({len(rows)} rows)\n")
    return path


def run_power_bounds(taus, gammas, engine: ThreeLevel, out_dir: Path, stream=None) -> Path:
    """Numeric maximum power, nondimensionalised by ``Gamma_c omega_fixed``,
    against the closed-form maximum and its small/large-gamma limits."""
    stream = stream or sys.stdout
    columns = ["scheme", "gamma", "tau", "p_max_numeric", "p_max_closed",
               "limit_small_gamma", "limit_large_gamma", "between_limits"]
    rows = []
    for scheme in BOTH:
        for g in gammas:
            eng = ThreeLevel(engine.omega_fixed, engine.lam, g * engine.gamma_c, engine.T_h,
                             engine.gamma_c)
            for tau in taus:
                try:
                    p = maximize_power(eng, scheme, tau).p_max
                except NoOperatingPoint as exc:
                    raise SweepPointError(tau, {"gamma_h": g, "scheme": scheme.value}, exc) from exc
                numeric = p / (engine.gamma_c * engine.omega_fixed)
                lo, hi = analytics.power_bounds_highT(tau, g, scheme)
                inside = min(lo, hi) < numeric < max(lo, hi)
                rows.append([scheme.value, float(g), float(tau), numeric,
                             analytics.power_max_highT(tau, g, scheme), lo, hi, str(inside)])
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    echo = ["experiment = power-bounds", f"engine = {engine!r}"]
    path = out / "power_bounds.csv"
    write_table(path, columns, rows, echo + [f"config_hash = {config_hash(chr(10).join(echo))}"])
    stream.write(f"{'scheme':<12}{'gamma':>7}{'tau':>6}{'numeric':>12}{'closed':>12}"
                 f"{'small-g':>12}{'large-g':>12}\n")
    for r in rows:
        stream.write(f"{r[0]:<12}{r[1]:>7g}{r[2]:>6g}{r[3]:>12.6f}{r[4]:>12.6f}"
                     f"{r[5]:>12.6f}{r[6]:>12.6f}\n")
    stream.write(f"wrote {path}\n")
    return path


# ---------------------------------------------------------------------------
# INI configuration
# ---------------------------------------------------------------------------

def _key_lines(text: str) -> dict:
    section, where = None, {}
    for n, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        m = re.fullmatch(r"\[(.+)\]", s)
        if m:
            section = m.group(1).strip()
        elif section and s and s[0] not in "#;":
            key = re.split(r"[=:]", s, maxsplit=1)[0].strip()
            where[(section, key)] = n
    return where


def load_config(path: Path, **runtime) -> ExperimentConfig:
    """Read an INI sweep description.

    ``[experiment]`` holds ``model``, ``schemes``, ``tau_min``, ``tau_max``,
    ``tau_count`` and optionally ``normalize`` and ``name``; ``[engine]``
    the template fields; every ``[curve <name>]`` section one curve's
    overrides.  Errors name the file and line.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read ({exc.strerror})") from None
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str  # field names are case-sensitive (T_h)
    try:
        parser.read_string(text, source=str(path))
    except configparser.Error as exc:
        raise ConfigError(str(exc).replace("\n", " ")) from None
    where = _key_lines(text)

    def loc(section, key):
        line = where.get((section, key))
        return f"{path}:{line}" if line else f"{path} [{section}]"

    def number(section, key, value, kind=float):
        try:
            return kind(value)
        except ValueError:
            raise ConfigError(f"{loc(section, key)}: field {key!r} expects "
                              f"{kind.__name__}, got {value!r}") from None

    for required in ("experiment", "engine"):
        if not parser.has_section(required):
            raise ConfigError(f"{path}: missing section [{required}]")
    exp = parser["experiment"]
    known = {"model", "schemes", "tau_min", "tau_max", "tau_count", "normalize", "name"}
    for key in exp:
        if key not in known:
            raise ConfigError(f"{loc('experiment', key)}: unknown field {key!r}")
    for key in ("model", "tau_min", "tau_max", "tau_count"):
        if key not in exp:
            raise ConfigError(f"{path} [experiment]: missing field {key!r}")
    try:
        schemes = tuple(OptimizationScheme(s.strip())
                        for s in exp.get("schemes", "fixed-hot, fixed-cold").split(","))
    except ValueError as exc:
        raise ConfigError(f"{loc('experiment', 'schemes')}: {exc}") from None
    engine = {k: number("engine", k, v) for k, v in parser["engine"].items()}
    curves = []
    for section in parser.sections():
        if section.startswith("curve"):
            name = section[5:].strip()
            if not name:
                raise ConfigError(f"{path}: curve section needs a name, e.g. [curve p0]")
            curves.append(Curve(name, {k: number(section, k, v)
                                       for k, v in parser[section].items()}))
        elif section not in ("experiment", "engine"):
            raise ConfigError(f"{path}: unknown section [{section}]")
    if not curves:
        curves = [Curve("base", {})]
    grid = dict(tau_min=number("experiment", "tau_min", exp["tau_min"]),
                tau_max=number("experiment", "tau_max", exp["tau_max"]),
                tau_count=number("experiment", "tau_count", exp["tau_count"], int))
    try:
        return ExperimentConfig(
            experiment="custom-sweep", model=exp["model"].strip(), schemes=schemes,
            engine=engine, curves=curves, normalize=exp.get("normalize", "none").strip(),
            name=exp.get("name", "sweep").strip(), **grid, **runtime)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from None


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def _grid_args(p, lo, hi, n):
    p.add_argument("--tau-min", type=float, default=lo)
    p.add_argument("--tau-max", type=float, default=hi)
    p.add_argument("--tau-count", type=int, default=n)


def _physics_args(p):
    p.add_argument("--omega-fixed", type=float, help="fixed transition frequency")
    p.add_argument("--lam", type=float, help="laser coupling")
    p.add_argument("--T-h", dest="T_h", type=float, help="hot-bath temperature")


def _global_args(p, defaults: bool):
    def d(value):
        return value if defaults else argparse.SUPPRESS

    p.add_argument("--out-dir", type=Path, default=d(Path(".")), help="output directory")
    p.add_argument("--svg", action="store_true", default=d(False), help="also write SVG plots")
    p.add_argument("--threads", type=int, default=d(1), help="worker threads for sweeps")
    p.add_argument("--tolerance", type=float, default=d(1e-2),
                   help="relative tolerance of the closed-form cross-check")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="laserqhe", description="Efficiency at maximum power of laser quantum heat engines "
                                     "(units: hbar = k_B = Gamma_c = 1).")
    _global_args(parser, defaults=True)
    # the global flags are also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    _global_args(common, defaults=False)
    sub = parser.add_subparsers(dest="command", required=True)

    for name, exp in (("fig2", "fig2"), ("fig3-hight", "fig3-highT"), ("fig4-lowt", "fig4-lowT")):
        p = sub.add_parser(name, parents=[common], help=f"reproduce {exp}")
        d = figure_config(exp)
        _grid_args(p, d.tau_min, d.tau_max, d.tau_count)
        _physics_args(p)
        p.set_defaults(experiment=exp)

    p = sub.add_parser("bounds", parents=[common], help="closed-form EMP bounds table")
    _grid_args(p, 0.02, 0.98, 49)
    p.add_argument("--gamma", type=float, nargs="+", default=[0.05, 1.0])

    p = sub.add_parser("power-bounds", parents=[common], help="maximum power versus its limits")
    p.add_argument("--gamma", type=float, nargs="+", default=[0.1, 1.0, 10.0])
    p.add_argument("--tau", type=float, nargs="+", default=[0.25, 0.5, 0.75])
    _physics_args(p)

    p = sub.add_parser("sweep", parents=[common], help="custom sweep from an INI file")
    p.add_argument("--config", type=Path, required=True)
    return parser


def _print_warnings(config, stream):
    for w in validate(config):
        stream.write(f"warning: {w}\n")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    runtime = dict(out_dir=args.out_dir, svg=args.svg, threads=args.threads,
                   tolerance=args.tolerance)
    try:
        if args.command == "bounds":
            if not (0 < args.tau_min <= args.tau_max <= 1 and args.tau_count >= 1):
                raise ConfigError("tau grid must satisfy 0 < tau_min <= tau_max <= 1")
            if any(not g >= 0 for g in args.gamma):
                raise ConfigError("gamma values must be >= 0")
            run_bounds(np.linspace(args.tau_min, args.tau_max, args.tau_count),
                       args.gamma, args.out_dir, args.svg)
            return 0
        if args.command == "power-bounds":
            if any(not 0 < t < 1 for t in args.tau) or any(not g > 0 for g in args.gamma):
                raise ConfigError("need 0 < tau < 1 and gamma > 0")
            engine = ThreeLevel(args.omega_fixed or 2.0, args.lam or 1000.0, 1.0,
                                args.T_h or 100.0)
            run_power_bounds(args.tau, args.gamma, engine, args.out_dir)
            return 0
        if args.command == "sweep":
            config = load_config(args.config, **runtime)
        else:
            config = figure_config(args.experiment, tau_min=args.tau_min,
                                   tau_max=args.tau_max, tau_count=args.tau_count,
                                   omega_fixed=args.omega_fixed, lam=args.lam,
                                   T_h=args.T_h, **runtime)
        _print_warnings(config, sys.stderr)
        run(config)
        return 0
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 2
    except SweepPointError as exc:
        sys.stderr.write(f"numerical failure at tau={exc.tau!r}, parameters {exc.override!r}: "
                         f"{type(exc.cause).__name__}: {exc.cause}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
