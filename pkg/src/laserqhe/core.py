"""Shared parameter types, Bose occupations and Lambert-W helpers.

Natural units throughout: hbar = k_B = 1 and the cold-bath rate Gamma_c is
the unit of rate (and therefore of frequency and temperature).  The ground
state energy is fixed to zero, so transition frequencies coincide with the
excited-state energies.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "DomainError",
    "EngineParams3",
    "EngineParams4",
    "ReducedParams",
    "OptimizationScheme",
    "bose_occupation",
    "occupations_hot_pair",
    "gamma_p",
    "lambert_w0",
    "product_log_exp",
]

_EPS = 2.220446049250313e-16


def _require_positive(**values):
    for name, value in values.items():
        if not value > 0 or not math.isfinite(value):
            raise DomainError(f"{name} must be finite and > 0, got {value!r}")


@dataclass(frozen=True)
class EngineParams3:
    """Three-level (Scovil--Schulz-DuBois) engine.

    ``omega_h`` and ``omega_c`` are the |1>-|g> and |0>-|g> transition
    frequencies, ``lam`` the laser coupling, ``gamma_h``/``gamma_c`` the bath
    rates and ``T_h``/``T_c`` the bath temperatures.  ``detuning`` is the
    laser detuning entering the |1>-|0> coherence.
    """

    omega_h: float
    omega_c: float
    lam: float
    gamma_h: float
    gamma_c: float
    T_h: float
    T_c: float
    detuning: float = 0.0

    def __post_init__(self):
        _require_positive(
            omega_h=self.omega_h,
            omega_c=self.omega_c,
            lam=self.lam,
            gamma_h=self.gamma_h,
            gamma_c=self.gamma_c,
            T_h=self.T_h,
            T_c=self.T_c,
        )
        if not math.isfinite(self.detuning):
            raise DomainError("detuning must be finite")

    @property
    def is_engine(self) -> bool:
        """True when the lasing transition |1>-|0> has positive frequency."""
        return self.omega_h > self.omega_c

    @property
    def weak_dissipation(self) -> bool:
        return self.gamma_h < self.omega_h and self.gamma_c < self.omega_c

    def occupations(self) -> tuple[float, float]:
        return (bose_occupation(self.omega_h, self.T_h),
                bose_occupation(self.omega_c, self.T_c))


@dataclass(frozen=True)
class EngineParams4:
    """Four-level engine with two near-degenerate upper states |1>, |2>.

    The upper states sit at ``omega_h +/- half_gap``; the laser is tuned to
    the midpoint.  ``p`` is the dipole alignment factor of the two hot
    transitions and ``gamma_12`` an optional pure dephasing of rho_12.
    """

    omega_h: float
    omega_c: float
    lam: float
    gamma_h1: float
    gamma_h2: float
    gamma_c: float
    T_h: float
    T_c: float
    half_gap: float = 0.0
    p: float = 0.0
    gamma_12: float = 0.0

    def __post_init__(self):
        _require_positive(
            omega_h=self.omega_h,
            omega_c=self.omega_c,
            lam=self.lam,
            gamma_c=self.gamma_c,
            T_h=self.T_h,
            T_c=self.T_c,
        )
        # one hot rate may vanish (reduces to the three-level engine)
        if not (self.gamma_h1 >= 0 and self.gamma_h2 >= 0
                and self.gamma_h1 + self.gamma_h2 > 0):
            raise DomainError("hot rates must be >= 0 and not both zero")
        if not -1.0 <= self.p <= 1.0:
            raise DomainError(f"p must lie in [-1, 1], got {self.p!r}")
        if not self.half_gap >= 0:
            raise DomainError("half_gap must be >= 0")
        if not self.gamma_12 >= 0:
            raise DomainError("gamma_12 must be >= 0")
        if not self.omega_h - self.half_gap > 0:
            raise DomainError("omega_h - half_gap must be > 0")

    @property
    def gamma_p(self) -> float:
        return gamma_p(self.gamma_h1, self.gamma_h2, self.p, self.gamma_c)

    @property
    def is_engine(self) -> bool:
        return self.omega_h - self.half_gap > self.omega_c

    @property
    def weak_dissipation(self) -> bool:
        return (max(self.gamma_h1, self.gamma_h2) < self.omega_h - self.half_gap
                and self.gamma_c < self.omega_c)


@dataclass(frozen=True)
class ReducedParams:
    """Dimensionless description: temperature ratio, frequency ratio and
    hot/cold coupling ratios."""

    tau: float
    c: float
    gamma: float
    gamma_p: float | None = None

    def __post_init__(self):
        if not 0 < self.tau <= 1:
            raise DomainError("tau must lie in (0, 1]")
        if not self.c > 1:
            raise DomainError("c must be > 1")
        if not self.gamma >= 0:
            raise DomainError("gamma must be >= 0")
        if self.gamma_p is not None and not self.gamma_p >= 0:
            raise DomainError("gamma_p must be >= 0")

    @property
    def eta_carnot(self) -> float:
        return 1.0 - self.tau


class OptimizationScheme(enum.Enum):
    """Which transition frequency is held fixed while the ratio ``c`` varies.

    FIXED_HOT keeps ``omega_h`` and sets ``omega_c = omega_h / c``;
    FIXED_COLD keeps ``omega_c`` and sets ``omega_h = c * omega_c``.
    """

    FIXED_HOT = "fixed-hot"
    FIXED_COLD = "fixed-cold"

    def frequencies(self, omega_fixed: float, c: float) -> tuple[float, float]:
        """``(omega_h, omega_c)`` for frequency ratio ``c = omega_h / omega_c``."""
        if self is OptimizationScheme.FIXED_HOT:
            return omega_fixed, omega_fixed / c
        return c * omega_fixed, omega_fixed


def bose_occupation(omega: float, T: float) -> float:
    """Mean thermal occupation ``1/(exp(omega/T) - 1)``.

    ``expm1`` keeps the high-temperature end accurate; the low-temperature
    end decays through ``exp(-x)`` and underflows cleanly to 0.
    """
    _require_positive(omega=omega, T=T)
    x = omega / T
    if x > 700.0:
        # expm1 would overflow; exp(-x) is exact to rounding here
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def occupations_hot_pair(params: EngineParams4) -> tuple[float, float]:
    """Hot-bath occupations of the upper (|1>) and lower (|2>) excited state."""
    n1 = bose_occupation(params.omega_h + params.half_gap, params.T_h)
    n2 = bose_occupation(params.omega_h - params.half_gap, params.T_h)
    return n1, n2


def gamma_p(gamma_h1: float, gamma_h2: float, p: float, gamma_c: float) -> float:
    """Coherence-weighted hot/cold coupling ratio of the four-level engine."""
    if not -1.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [-1, 1], got {p!r}")
    if gamma_h1 < 0 or gamma_h2 < 0:
        raise DomainError("hot rates must be >= 0")
    _require_positive(gamma_c=gamma_c)
    value = (gamma_h1 + gamma_h2 + 2.0 * p * math.sqrt(gamma_h1 * gamma_h2)) / (2.0 * gamma_c)
    # p = -1 with equal rates cancels exactly in theory; clip rounding noise
    return max(value, 0.0)


def _halley_w(w: float, x: float, max_iter: int = 50) -> float:
    for _ in range(max_iter):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        if wp1 == 0.0:
            break
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        if denom == 0.0:
            break
        step = f / denom
        w -= step
        if abs(step) < 1e-14 * (1.0 + abs(w)):
            break
    return w


def _halley_log(w: float, log_x: float, max_iter: int = 50) -> float:
    # Halley on f(w) = w + ln w - log_x, valid for w > 0
    for _ in range(max_iter):
        f = w + math.log(w) - log_x
        d1 = 1.0 + 1.0 / w
        d2 = -1.0 / (w * w)
        step = f / (d1 - 0.5 * f * d2 / d1)
        w_new = w - step
        if w_new <= 0.0:
            w_new = 0.5 * w
        w = w_new
        if abs(step) < 1e-14 * (1.0 + abs(w)):
            break
    return w


def lambert_w0(x: float) -> float:
    """Principal branch of the Lambert W function for real ``x >= -1/e``.

    Halley iteration from a branch-aware seed: a branch-point series near
    ``-1/e``, ``log1p`` for moderate arguments and the logarithmic
    asymptote for large ones.  Large arguments iterate on ``w + ln w = ln x``
    so that ``exp(w)`` never overflows.
    """
    x = float(x)
    if math.isnan(x):
        raise DomainError("lambert_w0 of NaN")
    if x == math.inf:
        return math.inf
    q = math.e * x + 1.0
    if q < 0.0:
        if q > -4 * _EPS:
            return -1.0
        raise DomainError(f"lambert_w0 requires x >= -1/e, got {x!r}")
    if x == 0.0:
        return 0.0
    if q <= 2 * _EPS:
        return -1.0
    if x < -0.32:
        r = math.sqrt(2.0 * q)
        w = -1.0 + r - r * r / 3.0 + 11.0 / 72.0 * r ** 3
        return _halley_w(w, x)
    if x <= math.e:
        return _halley_w(math.log1p(x), x)
    l1 = math.log(x)
    l2 = math.log(l1)
    return _halley_log(l1 - l2 + l2 / l1, l1)


def product_log_exp(z: float) -> float:
    """Solve ``w * exp(w) = exp(z)`` for ``w``, i.e. ``W0(exp(z))``.

    Equivalent to ``w + ln w = z`` with ``w > 0``; evaluated in that form for
    ``z > 1`` so arbitrarily large ``z`` never overflows.
    """
    z = float(z)
    if not math.isfinite(z):
        if z == math.inf:
            return math.inf
        if z == -math.inf:
            return 0.0
        raise DomainError("product_log_exp of NaN")
    if z <= 1.0:
        if z < -40.0:
            # W(x) = x - x**2 + ... with x < 5e-18
            return math.exp(z)
        return lambert_w0(math.exp(z))
    w = z - math.log(z) if z > math.e else 1.0 + 0.5 * (z - 1.0)
    return _halley_log(w, z)
