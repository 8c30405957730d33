"""Closed-form efficiency-at-maximum-power (EMP) and power results.

All quantities are dimensionless.  ``tau = T_c / T_h`` is the temperature
ratio, ``gamma = Gamma_h / Gamma_c`` the hot-to-cold coupling ratio (or its
coherent counterpart ``gamma_p`` for the four-level engine) and ``c`` the
frequency ratio ``omega_h / omega_c``.

High-temperature results are the strong-driving, ``k_B T >> hbar omega``
limit of the laser engines; the low-temperature EMP expressions assume
Boltzmann-suppressed occupations ``n = exp(-alpha)``.

Sign conventions follow the textbook formulas.  ``power_highT`` is positive
while the engine delivers work, the low-temperature ``power_lowT`` is
negative (it is ``P`` itself, not ``-P``), and ``power_max_highT`` always
returns the magnitude of the maximum.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .core import OptimizationScheme, product_log_exp
from .errors import DomainError

__all__ = [
    "EmpBounds",
    "Regime",
    "Model",
    "carnot",
    "cnca",
    "emp_fixed_hot",
    "emp_fixed_cold",
    "emp_closed_form",
    "emp_bounds",
    "emp_asymptotics",
    "emp_lowT_fixed_hot",
    "emp_lowT_fixed_cold",
    "power_highT",
    "argmax_c_highT",
    "power_max_highT",
    "power_bounds_highT",
    "power_lowT",
    "power_ratio_lowT",
    "power_ratio_highT_small_gamma",
]


class Regime(enum.Enum):
    SMALL_GAMMA = "small-gamma"
    LARGE_GAMMA = "large-gamma"


class Model(enum.Enum):
    THREE_LEVEL = "three-level"
    FOUR_LEVEL = "four-level"


def _check_tau(tau: float, open_right: bool = False) -> float:
    tau = float(tau)
    ok = 0.0 < tau < 1.0 if open_right else 0.0 < tau <= 1.0
    if not ok:
        bound = "(0, 1)" if open_right else "(0, 1]"
        raise DomainError(f"tau must lie in {bound}, got {tau!r}")
    return tau


def _check_gamma(gamma: float, name: str = "gamma") -> float:
    gamma = float(gamma)
    if not gamma >= 0.0:  # also rejects NaN
        raise DomainError(f"{name} must be >= 0, got {gamma!r}")
    return gamma


def _check_positive(value: float, name: str) -> float:
    value = float(value)
    if not (value > 0.0 and math.isfinite(value)):
        raise DomainError(f"{name} must be finite and > 0, got {value!r}")
    return value


def carnot(tau: float) -> float:
    """Carnot efficiency ``1 - tau``."""
    return 1.0 - _check_tau(tau)


def cnca(tau: float) -> float:
    """Chambadal-Novikov-Curzon-Ahlborn efficiency ``1 - sqrt(tau)``."""
    return 1.0 - math.sqrt(_check_tau(tau))


# ---------------------------------------------------------------------------
# High-temperature EMP
# ---------------------------------------------------------------------------

def emp_fixed_hot(tau: float, gamma: float) -> float:
    """EMP when ``omega_h`` is held fixed and ``omega_c`` optimised.

    The textbook form ``[tau + gamma - sqrt(tau (1+gamma)(tau+gamma))]/gamma``
    is 0/0 at ``gamma -> 0``.  Multiplying through by the conjugate gives

        (tau + gamma)(1 - tau) / (tau + gamma + sqrt(tau (1+gamma)(tau+gamma)))

    which is free of cancellation for every ``gamma >= 0`` and has the limits
    ``(1 - tau)/2`` at ``gamma = 0`` and ``1 - sqrt(tau)`` at ``gamma = inf``.
    """
    tau = _check_tau(tau)
    gamma = _check_gamma(gamma)
    if math.isinf(gamma):
        return 1.0 - math.sqrt(tau)
    s = math.sqrt(tau * (1.0 + gamma) * (tau + gamma))
    return (tau + gamma) * (1.0 - tau) / (tau + gamma + s)


def emp_fixed_cold(tau: float, gamma: float) -> float:
    """EMP when ``omega_c`` is held fixed and ``omega_h`` optimised.

    Evaluates ``1 - tau / (sqrt((1+gamma)(tau+gamma)) - gamma)`` in the
    rationalised form ``1 - tau (sqrt(...) + gamma) / (tau + gamma (1+tau))``;
    the limits are ``1 - sqrt(tau)`` at ``gamma = 0`` and
    ``(1 - tau)/(1 + tau)`` at ``gamma = inf``.
    """
    tau = _check_tau(tau)
    gamma = _check_gamma(gamma)
    if math.isinf(gamma):
        return (1.0 - tau) / (1.0 + tau)
    s = math.sqrt((1.0 + gamma) * (tau + gamma))
    return 1.0 - tau * (s + gamma) / (tau + gamma * (1.0 + tau))


def emp_closed_form(tau: float, gamma: float, scheme: OptimizationScheme) -> float:
    """Dispatch to :func:`emp_fixed_hot` or :func:`emp_fixed_cold`."""
    if scheme is OptimizationScheme.FIXED_HOT:
        return emp_fixed_hot(tau, gamma)
    return emp_fixed_cold(tau, gamma)


@dataclass(frozen=True)
class EmpBounds:
    """The band containing every high-temperature EMP.

    ``lower = eta_C/2`` bounds the fixed-hot EMP from below, ``cnca``
    separates the fixed-hot and fixed-cold families and
    ``upper = eta_C/(2 - eta_C)`` bounds the fixed-cold EMP from above.
    """

    lower: float
    cnca: float
    upper: float

    def __iter__(self):
        return iter((self.lower, self.cnca, self.upper))


def emp_bounds(tau: float) -> EmpBounds:
    tau = _check_tau(tau)
    return EmpBounds((1.0 - tau) / 2.0, 1.0 - math.sqrt(tau), (1.0 - tau) / (1.0 + tau))


def emp_asymptotics(tau: float, gamma_p: float, regime: Regime,
                    scheme: OptimizationScheme) -> float:
    """First-order expansions of the EMP in small or large ``gamma_p``.

    The expansions are naturally written in ``r**2 = 2 gamma_p``:

    ============  ==========================================================
    small, hot    ``(1-tau)/2 + (1-tau)**2 r**2 / (16 tau)``
    small, cold   ``1 - sqrt(tau) + (1-sqrt(tau))**2 r**2 / (4 sqrt(tau))``
    large, hot    ``1 - sqrt(tau) - sqrt(tau) (1-sqrt(tau))**2 / r**2``
    large, cold   ``(1-tau)/(1+tau) - tau (1-tau)**2 / (r**2 (1+tau)**2)``
    ============  ==========================================================

    Each agrees with the exact formulas to first order in ``gamma_p`` (or
    ``1/gamma_p``).  At ``gamma_p = inf`` in the large regime the leading
    term is returned.
    """
    tau = _check_tau(tau, open_right=True)
    gamma_p = _check_gamma(gamma_p, "gamma_p")
    regime = Regime(regime)
    scheme = OptimizationScheme(scheme)
    r2 = 2.0 * gamma_p
    st = math.sqrt(tau)
    if regime is Regime.SMALL_GAMMA:
        if math.isinf(gamma_p):
            raise DomainError("small-gamma expansion needs finite gamma_p")
        if scheme is OptimizationScheme.FIXED_HOT:
            return (1.0 - tau) / 2.0 + (1.0 - tau) ** 2 * r2 / (16.0 * tau)
        return 1.0 - st + (1.0 - st) ** 2 / (4.0 * st) * r2
    if gamma_p == 0.0:
        raise DomainError("large-gamma expansion needs gamma_p > 0")
    inv = 0.0 if math.isinf(gamma_p) else 1.0 / r2
    if scheme is OptimizationScheme.FIXED_HOT:
        return 1.0 - st - st * (1.0 - st) ** 2 * inv
    return (1.0 - tau) / (1.0 + tau) - tau * (1.0 - tau) ** 2 * inv / (1.0 + tau) ** 2


# ---------------------------------------------------------------------------
# Low-temperature EMP
# ---------------------------------------------------------------------------

def emp_lowT_fixed_hot(tau: float, alpha_h: float) -> float:
    """Low-temperature EMP at fixed ``omega_h`` with ``alpha_h = omega_h/T_h``.

    ``(tau/alpha_h) (W0(exp(1 + alpha_h (1-tau)/tau)) - 1)``; independent of
    the coupling ratio.
    """
    tau = _check_tau(tau)
    alpha_h = _check_positive(alpha_h, "alpha_h")
    z = 1.0 + alpha_h * (1.0 - tau) / tau
    return tau / alpha_h * (product_log_exp(z) - 1.0)


def emp_lowT_fixed_cold(tau: float, alpha_c: float) -> float:
    """Low-temperature EMP at fixed ``omega_c`` with ``alpha_c = omega_c/T_c``.

    ``1 - alpha_c tau / (1 + alpha_c tau - W0(exp(1 - alpha_c (1-tau))))``.
    """
    tau = _check_tau(tau)
    alpha_c = _check_positive(alpha_c, "alpha_c")
    w = product_log_exp(1.0 - alpha_c * (1.0 - tau))
    at = alpha_c * tau
    return 1.0 - at / (1.0 + at - w)


# ---------------------------------------------------------------------------
# Power
# ---------------------------------------------------------------------------

def power_highT(tau: float, gamma: float, c: float, scheme: OptimizationScheme) -> float:
    """High-temperature power in units of ``hbar Gamma_c omega_fixed``.

    ``-2 (1-c)(1-c tau) gamma / (3 c (gamma + c tau))`` at fixed ``omega_h``
    and the same without the ``1/c`` at fixed ``omega_c``.  Positive on the
    operating window ``1 < c < 1/tau``.
    """
    tau = _check_tau(tau)
    gamma = _check_gamma(gamma)
    c = _check_positive(c, "c")
    value = -2.0 * (1.0 - c) * (1.0 - c * tau) * gamma / (3.0 * (gamma + c * tau))
    if OptimizationScheme(scheme) is OptimizationScheme.FIXED_HOT:
        value /= c
    return value


def argmax_c_highT(tau: float, gamma: float, scheme: OptimizationScheme) -> float:
    """Frequency ratio maximising :func:`power_highT`: ``1/(1 - eta*)``."""
    return 1.0 / (1.0 - emp_closed_form(tau, gamma, OptimizationScheme(scheme)))


def power_max_highT(tau: float, gamma: float, scheme: OptimizationScheme) -> float:
    """Magnitude of the maximum of :func:`power_highT` over ``c``.

    Written without differences of nearly equal terms::

        fixed hot:  (2/3) gamma (1-tau)**2
                    / (gamma (1+tau) + 2 tau + 2 sqrt(tau (1+gamma)(tau+gamma)))
        fixed cold: (2 gamma / 3) (sqrt(1+gamma) - sqrt(tau+gamma))**2 / tau
    """
    tau = _check_tau(tau)
    gamma = _check_gamma(gamma)
    if math.isinf(gamma):
        raise DomainError("maximum power needs finite gamma")
    if OptimizationScheme(scheme) is OptimizationScheme.FIXED_HOT:
        s = math.sqrt(tau * (1.0 + gamma) * (tau + gamma))
        return 2.0 * gamma * (1.0 - tau) ** 2 / (
            3.0 * (gamma * (1.0 + tau) + 2.0 * tau + 2.0 * s))
    diff = (1.0 - tau) / (math.sqrt(1.0 + gamma) + math.sqrt(tau + gamma))
    return 2.0 * gamma * diff * diff / (3.0 * tau)


def power_bounds_highT(tau: float, gamma: float,
                       scheme: OptimizationScheme) -> tuple[float, float]:
    """``(lower, upper)`` limiting values of the maximum power.

    fixed hot:  ``(gamma (1-tau)**2 / (6 tau), (2/3)(1-sqrt(tau))**2)``;
    fixed cold: ``((2 gamma/3)(1-sqrt(tau))**2 / tau, (1-tau)**2 / (6 tau))``.

    These are the small- and large-``gamma`` asymptotes of
    :func:`power_max_highT`; the maximum power approaches each of them but
    in general lies below both.
    """
    tau = _check_tau(tau)
    gamma = _check_gamma(gamma)
    st = math.sqrt(tau)
    if OptimizationScheme(scheme) is OptimizationScheme.FIXED_HOT:
        return gamma * (1.0 - tau) ** 2 / (6.0 * tau), 2.0 / 3.0 * (1.0 - st) ** 2
    return 2.0 * gamma / 3.0 * (1.0 - st) ** 2 / tau, (1.0 - tau) ** 2 / (6.0 * tau)


def power_lowT(omega_h: float, omega_c: float, n_h: float, n_c: float,
               gamma_or_gamma_p: float, model: Model) -> float:
    """Low-temperature power ``P`` (negative while delivering work).

    Three-level: ``-(2 gamma/(1+gamma)) (omega_h - omega_c)(n_h - n_c)``.
    Four-level:  ``-(2 gamma_p/(1+gamma_p)) (omega_h - omega_c)(n_h - n_c)``.
    The coherent engine pumps through its bright state with rate
    ``gamma_p``, so both share the same prefactor form.
    """
    for name, n in (("n_h", n_h), ("n_c", n_c)):
        if not 0.0 <= n < 1.0:
            raise DomainError(f"{name} must lie in [0, 1) at low temperature, got {n!r}")
    g = _check_gamma(gamma_or_gamma_p)
    if math.isinf(g):
        raise DomainError("coupling ratio must be finite")
    Model(model)
    return -(2.0 * g / (1.0 + g)) * (omega_h - omega_c) * (n_h - n_c)


def power_ratio_lowT(gamma: float, p: float) -> float:
    """Optimised four-level to three-level power ratio at low temperature.

    ``(gamma + 1)/(gamma + 1/(1+p))`` for equal hot rates; it tends to 0 at
    ``p = -1`` where the bright state decouples from the hot bath.
    """
    gamma = _check_positive(gamma, "gamma")
    if not -1.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [-1, 1], got {p!r}")
    if p == -1.0:
        return 0.0
    return (gamma + 1.0) / (gamma + 1.0 / (1.0 + p))


def power_ratio_highT_small_gamma(gamma: float, gamma_p: float) -> float:
    """High-temperature, small-coupling power ratio ``3 gamma_p / (4 gamma)``.

    The four-level maximum power carries an overall factor 3/4 relative to
    the three-level one and is linear in its coupling ratio when that ratio
    is small.  For ``p = 1`` and equal rates, ``gamma_p = 2 gamma`` and the
    ratio is 3/2.
    """
    gamma = _check_positive(gamma, "gamma")
    gamma_p = _check_gamma(gamma_p, "gamma_p")
    return 3.0 * gamma_p / (4.0 * gamma)
