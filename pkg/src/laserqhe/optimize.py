"""Maximisation of steady-state output power over the frequency ratio.

An engine *template* fixes everything except the two transition frequencies
and the cold-bath temperature: the scheme decides which frequency is held at
``omega_fixed`` and the temperature ratio ``tau`` sets ``T_c = tau * T_h``.
The search variable is ``c = omega_h / omega_c``.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields, replace
from typing import Callable, Mapping, Sequence, Union

import numpy as np

from .analytics import emp_bounds
from .coherent import observables4, output_power4, steady_state4
from .core import EngineParams3, EngineParams4, OptimizationScheme
from .errors import DomainError, NoOperatingPoint, QheError, SweepPointError, UndefinedObservable
from .ssd import observables3, output_power3, steady_state3

__all__ = [
    "ThreeLevel",
    "FourLevel",
    "EmpResult",
    "SweepRow",
    "golden_section_max",
    "maximize_power",
    "sweep_emp",
]

SEARCH_EPS = 1e-6
SCAN_POINTS = 64
LOW_T_SCAN_FACTOR = 50.0
_PLATEAU = 1e-14
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ThreeLevel:
    """Three-level engine template."""

    omega_fixed: float
    lam: float
    gamma_h: float
    T_h: float
    gamma_c: float = 1.0
    detuning: float = 0.0

    def params(self, scheme: OptimizationScheme, tau: float, c: float) -> EngineParams3:
        omega_h, omega_c = scheme.frequencies(self.omega_fixed, c)
        return EngineParams3(omega_h, omega_c, self.lam, self.gamma_h, self.gamma_c,
                             self.T_h, tau * self.T_h, self.detuning)

    def observables(self, scheme, tau, c):
        p = self.params(scheme, tau, c)
        return observables3(p, steady_state3(p))


@dataclass(frozen=True)
class FourLevel:
    """Four-level engine template (``half_gap`` is the level splitting Delta)."""

    omega_fixed: float
    lam: float
    gamma_h1: float
    gamma_h2: float
    T_h: float
    gamma_c: float = 1.0
    half_gap: float = 0.0
    p: float = 0.0
    gamma_12: float = 0.0

    def params(self, scheme: OptimizationScheme, tau: float, c: float) -> EngineParams4:
        omega_h, omega_c = scheme.frequencies(self.omega_fixed, c)
        return EngineParams4(omega_h, omega_c, self.lam, self.gamma_h1, self.gamma_h2,
                             self.gamma_c, self.T_h, tau * self.T_h, self.half_gap,
                             self.p, self.gamma_12)

    def observables(self, scheme, tau, c):
        p = self.params(scheme, tau, c)
        return observables4(p, steady_state4(p))

    def with_rate_asymmetry(self, delta: float) -> "FourLevel":
        """Split the hot rates as ``mean +/- delta * gamma_c / 2``.

        ``delta`` is ``(Gamma_h1 - Gamma_h2) / Gamma_c``; the mean rate is
        kept.
        """
        mean = 0.5 * (self.gamma_h1 + self.gamma_h2)
        half = 0.5 * delta * self.gamma_c
        return replace(self, gamma_h1=mean + half, gamma_h2=mean - half)


Engine = Union[ThreeLevel, FourLevel]


def _power_out(engine: Engine, scheme, tau, c) -> float:
    p = engine.params(scheme, tau, c)
    if isinstance(engine, ThreeLevel):
        return output_power3(p)
    return output_power4(p)


@dataclass(frozen=True)
class EmpResult:
    """Outcome of a power maximisation.

    ``p_max`` is the output power (positive for an operating engine) and
    ``eta_star`` the efficiency ``-P/Q_h`` evaluated at ``c_star``.
    """

    c_star: float
    p_max: float
    eta_star: float
    converged: bool
    evaluations: int


def golden_section_max(f: Callable[[float], float], lo: float, hi: float,
                       n_scan: int = SCAN_POINTS, rtol: float = 1e-10,
                       geometric: bool = False):
    """Maximise ``f`` on ``[lo, hi]``.

    A scan of ``n_scan`` points, uniform or (``geometric=True``, for
    ``lo > 0``) uniform in ``log x``, locates the best sample (the
    smallest abscissa wins among samples within 1e-14 of the best value);
    its neighbours bracket the maximum, which golden-section search refines
    until the bracket is narrower than ``rtol * x``.

    Returns ``(x_best, f_best, evaluations, scan_max)`` where ``scan_max`` is
    the best value seen on the coarse scan.
    """
    xs = np.geomspace(lo, hi, n_scan) if geometric else np.linspace(lo, hi, n_scan)
    values = np.array([f(float(x)) for x in xs])
    evaluations = n_scan
    scan_max = float(values.max())
    k = int(np.flatnonzero(values >= scan_max - _PLATEAU)[0])
    a = float(xs[max(k - 1, 0)])
    b = float(xs[min(k + 1, n_scan - 1)])
    best_x, best_f = float(xs[k]), float(values[k])

    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    evaluations += 2
    while b - a > rtol * abs(0.5 * (a + b)):
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
        evaluations += 1
    for x, fx in ((x1, f1), (x2, f2)):
        if fx > best_f:
            best_x, best_f = x, fx
    return best_x, best_f, evaluations, scan_max


def _is_low_temperature(engine: Engine) -> bool:
    return engine.omega_fixed > engine.T_h


def maximize_power(engine: Engine, scheme: OptimizationScheme, tau: float,
                   extended_scan: bool | None = None) -> EmpResult:
    """Maximise output power over ``c`` and report the EMP.

    The search covers ``(1 + eps, 1/tau - eps)``, the window in which the
    high-temperature power is positive.  At low temperature
    (``omega_fixed > T_h``, or when ``extended_scan`` is true) the coarse
    scan extends to ``50/tau`` because the threshold need not sit at
    ``c = 1/tau`` there; that wider scan is spaced geometrically so the
    peak, which stays near ``c = 1`` while power decays like
    ``exp(-alpha c)``, is still resolved.

    Raises
    ------
    NoOperatingPoint
        When there is no temperature gradient, or when the best power found
        is not positive or its efficiency is undefined.  The exception's
        ``result`` carries the non-converged :class:`EmpResult` if a search
        was made.
    """
    scheme = OptimizationScheme(scheme)
    tau = float(tau)
    if not 0.0 < tau <= 1.0:
        raise DomainError(f"tau must lie in (0, 1], got {tau!r}")
    lo, hi = 1.0 + SEARCH_EPS, 1.0 / tau - SEARCH_EPS
    if extended_scan is None:
        extended_scan = _is_low_temperature(engine)
    if extended_scan:
        hi = LOW_T_SCAN_FACTOR / tau
    if not hi > lo:
        raise NoOperatingPoint(f"no operating window at tau={tau!r}")

    c_star, p_max, evaluations, _ = golden_section_max(
        lambda c: _power_out(engine, scheme, tau, c), lo, hi, geometric=extended_scan)

    eta = 0.0
    operating = p_max > 0.0
    if operating:
        try:
            obs = engine.observables(scheme, tau, c_star)
            eta = obs.efficiency
        except UndefinedObservable:
            operating = False
        else:
            operating = obs.power_out > 0.0 and eta > 0.0
    result = EmpResult(c_star, p_max, eta if operating else 0.0, operating, evaluations)
    if not operating:
        raise NoOperatingPoint(
            f"engine does not deliver work at tau={tau!r} (best power {p_max:.3e})",
            result=result)
    return result


@dataclass
class SweepRow:
    """One point of an EMP curve."""

    tau: float
    eta_carnot: float
    eta_star: float
    eta_star_normalized: float
    p_max: float
    c_star: float
    bound_lower: float
    bound_cnca: float
    bound_upper: float
    flags: str = ""

    @classmethod
    def field_names(cls) -> list[str]:
        return [f.name for f in fields(cls)]


def _apply_override(engine: Engine, override: Mapping[str, float]) -> Engine:
    override = dict(override)
    delta = override.pop("delta_gamma_h", None)
    if override:
        engine = replace(engine, **override)
    if delta is not None:
        if not isinstance(engine, FourLevel):
            raise DomainError("delta_gamma_h applies to the four-level engine only")
        engine = engine.with_rate_asymmetry(delta)
    return engine


def _row(engine: Engine, scheme, tau: float) -> SweepRow:
    bounds = emp_bounds(tau)
    try:
        res = maximize_power(engine, scheme, tau)
        flags = ""
    except NoOperatingPoint as exc:
        res = exc.result or EmpResult(math.nan, 0.0, 0.0, False, 0)
        flags = "non-operational"
    return SweepRow(tau=tau, eta_carnot=1.0 - tau, eta_star=res.eta_star,
                    eta_star_normalized=res.eta_star, p_max=res.p_max,
                    c_star=res.c_star, bound_lower=bounds.lower,
                    bound_cnca=bounds.cnca, bound_upper=bounds.upper, flags=flags)


def sweep_emp(engine: Engine, scheme: OptimizationScheme, tau_grid: Sequence[float],
              overrides: Sequence[Mapping[str, float]] | None = None,
              threads: int = 1) -> list[list[SweepRow]]:
    """EMP curves over ``tau_grid``, one per override.

    Each override is a mapping of template field names (``gamma_h``, ``p``,
    ``half_gap``, ...) to values; the key ``delta_gamma_h`` splits the hot
    rates of a four-level template.  Non-operational points are kept with
    ``eta_star = 0`` and the flag ``non-operational``.  ``eta_star_normalized``
    equals ``eta_star`` here; callers rescale it per figure convention.

    Rows are independent; with ``threads > 1`` they are evaluated in a
    thread pool and merged back by index, so the output does not depend on
    the thread count.

    Raises
    ------
    SweepPointError
        Wrapping any numerical failure, with the offending ``tau`` and
        override attached.
    """
    scheme = OptimizationScheme(scheme)
    taus = [float(t) for t in tau_grid]
    for t in taus:
        if not 0.0 < t < 1.0:
            raise DomainError(f"tau grid values must lie in (0, 1), got {t!r}")
    overrides = list(overrides) if overrides else [{}]
    engines = [_apply_override(engine, o) for o in overrides]
    jobs = [(i, j) for i in range(len(engines)) for j in range(len(taus))]

    def work(job):
        i, j = job
        try:
            return _row(engines[i], scheme, taus[j])
        except QheError as exc:
            raise SweepPointError(taus[j], overrides[i], exc) from exc

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(work, jobs))
    else:
        rows = [work(job) for job in jobs]
    n = len(taus)
    return [rows[i * n:(i + 1) * n] for i in range(len(engines))]
