"""Four-level engine with noise-induced coherence between |1> and |2>.

Real 10-vector layout::

    (rho_11, rho_22, rho_00, rho_gg,
     Re rho_12, Im rho_12, Re rho_10, Im rho_10, Re rho_20, Im rho_20)

The laser sits midway between the two upper levels, so in the rotating
frame |1> and |2> are detuned by +half_gap and -half_gap from |0>.  The hot
bath acts through a correlated dissipator whose cross terms carry
``p * sqrt(gamma_h1 * gamma_h2)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import _linalg
from .core import EngineParams4, bose_occupation, occupations_hot_pair
from .errors import EfficiencyUndefined, XiUndefined
from .ssd import Observables

__all__ = [
    "DensityMatrix4",
    "CoherentObservables",
    "build_generator4",
    "steady_state4",
    "evolve4",
    "observables4",
    "output_power4",
]

I11, I22, I00, IGG, R12, M12, R10, M10, R20, M20 = range(10)
POPULATIONS = (I11, I22, I00, IGG)
TRACE4 = np.array([1.0, 1.0, 1.0, 1.0, 0, 0, 0, 0, 0, 0])


@dataclass(frozen=True)
class DensityMatrix4:
    rho_11: float
    rho_22: float
    rho_00: float
    rho_gg: float
    rho_12: complex
    rho_10: complex
    rho_20: complex

    @property
    def trace(self) -> float:
        return self.rho_11 + self.rho_22 + self.rho_00 + self.rho_gg

    def to_vector(self) -> np.ndarray:
        return np.array([
            self.rho_11, self.rho_22, self.rho_00, self.rho_gg,
            self.rho_12.real, self.rho_12.imag,
            self.rho_10.real, self.rho_10.imag,
            self.rho_20.real, self.rho_20.imag,
        ])

    @classmethod
    def from_vector(cls, v) -> "DensityMatrix4":
        return cls(
            float(v[I11]), float(v[I22]), float(v[I00]), float(v[IGG]),
            complex(v[R12], v[M12]), complex(v[R10], v[M10]), complex(v[R20], v[M20]),
        )

    @classmethod
    def maximally_mixed(cls) -> "DensityMatrix4":
        return cls(0.25, 0.25, 0.25, 0.25, 0j, 0j, 0j)

    def to_matrix(self) -> np.ndarray:
        """Full 4x4 matrix in the basis (|1>, |2>, |0>, |g>)."""
        rho = np.diag([self.rho_11, self.rho_22, self.rho_00, self.rho_gg]).astype(complex)
        for (i, j), value in {(0, 1): self.rho_12, (0, 2): self.rho_10,
                              (1, 2): self.rho_20}.items():
            rho[i, j] = value
            rho[j, i] = value.conjugate()
        return rho


@dataclass(frozen=True)
class CoherentObservables(Observables):
    """Observables of the four-level engine.

    ``xi`` is the asymmetry of the two lasing currents and ``efficiency_q``
    the closed form ``1 - omega_c / (omega_h + half_gap * xi)``.
    """

    xi: float = 0.0
    efficiency_q: float = 0.0


def build_generator4(params: EngineParams4) -> np.ndarray:
    """Rotating-frame generator on the real 10-vector representation."""
    n1, n2 = occupations_hot_pair(params)
    n_c = bose_occupation(params.omega_c, params.T_c)
    lam, d = params.lam, params.half_gap
    g1, g2, gc = params.gamma_h1, params.gamma_h2, params.gamma_c
    x = params.p * math.sqrt(g1 * g2)
    cold_decay = gc * (n_c + 1.0)
    g12 = g1 * (n1 + 1.0) + g2 * (n2 + 1.0) + params.gamma_12
    g10 = cold_decay + g1 * (n1 + 1.0)
    g20 = cold_decay + g2 * (n2 + 1.0)

    L = np.zeros((10, 10))
    L[I11, [I11, IGG, M10, R12]] = [-2 * g1 * (n1 + 1), 2 * g1 * n1, -2 * lam,
                                    -2 * x * (n2 + 1)]
    L[I22, [I22, IGG, M20, R12]] = [-2 * g2 * (n2 + 1), 2 * g2 * n2, -2 * lam,
                                    -2 * x * (n1 + 1)]
    L[I00, [I00, IGG, M10, M20]] = [-2 * gc * (n_c + 1), 2 * gc * n_c, 2 * lam, 2 * lam]
    L[IGG] = -(L[I11] + L[I22] + L[I00])

    L[R12, [R12, M12, M10, M20]] = [-g12, 2 * d, -lam, -lam]
    L[R12, [I11, I22, IGG]] = [-x * (n1 + 1), -x * (n2 + 1), x * (n1 + n2)]
    L[M12, [M12, R12, R10, R20]] = [-g12, -2 * d, lam, -lam]

    L[R10, [R10, M10, M12, R20]] = [-g10, d, -lam, -x * (n2 + 1)]
    L[M10, [M10, R10, I11, I00, R12, M20]] = [-g10, -d, lam, -lam, lam, -x * (n2 + 1)]
    L[R20, [R20, M20, M12, R10]] = [-g20, -d, lam, -x * (n1 + 1)]
    L[M20, [M20, R20, I22, I00, R12, M10]] = [-g20, d, lam, -lam, lam, -x * (n1 + 1)]
    return L


def _cross_direction(params: EngineParams4) -> np.ndarray:
    # the generator is affine in p; this is dL/dp
    return build_generator4(replace(params, p=1.0)) - build_generator4(replace(params, p=0.0))


def steady_state4(params: EngineParams4) -> DensityMatrix4:
    """Stationary state of the four-level engine.

    For equal hot rates with ``|p| = 1`` and no splitting or dephasing, one
    combination of |1> and |2> decouples from both the bath and the laser and
    the kernel is two-dimensional.  The state returned there is the limit
    approached from ``|p| < 1``.
    """
    L = build_generator4(params)
    v = _linalg.solve_steady(L, TRACE4, IGG, perturbation=_cross_direction(params))
    return DensityMatrix4.from_vector(v)


def evolve4(params: EngineParams4, rho0: DensityMatrix4, t_final: float,
            dt: float) -> DensityMatrix4:
    v = _linalg.rk4_propagate(build_generator4(params), rho0.to_vector(), t_final, dt)
    return DensityMatrix4.from_vector(v)


def _power4(params: EngineParams4, rho: DensityMatrix4) -> float:
    w10 = params.omega_h + params.half_gap - params.omega_c
    w20 = params.omega_h - params.half_gap - params.omega_c
    return -2.0 * params.lam * (w10 * rho.rho_10.imag + w20 * rho.rho_20.imag)


def observables4(params: EngineParams4, rho: DensityMatrix4) -> CoherentObservables:
    """Power, bath heat currents, efficiency and asymmetry factor at ``rho``."""
    n1, n2 = occupations_hot_pair(params)
    n_c = bose_occupation(params.omega_c, params.T_c)
    g1, g2 = params.gamma_h1, params.gamma_h2
    x = params.p * math.sqrt(g1 * g2)
    re12 = rho.rho_12.real

    terms1 = (-2 * g1 * (n1 + 1) * rho.rho_11, 2 * g1 * n1 * rho.rho_gg,
              -2 * x * (n2 + 1) * re12)
    terms2 = (-2 * g2 * (n2 + 1) * rho.rho_22, 2 * g2 * n2 * rho.rho_gg,
              -2 * x * (n1 + 1) * re12)
    w1 = params.omega_h + params.half_gap
    w2 = params.omega_h - params.half_gap
    heat_hot = w1 * sum(terms1) + w2 * sum(terms2)
    heat_cold = params.omega_c * -2.0 * params.gamma_c * (
        (n_c + 1.0) * rho.rho_00 - n_c * rho.rho_gg)
    power = _power4(params, rho)

    eps = np.finfo(float).eps
    noise = 64 * eps * (w1 * sum(map(abs, terms1)) + w2 * sum(map(abs, terms2)))
    if abs(heat_hot) <= noise:
        raise EfficiencyUndefined("hot heat flux vanishes")
    y10, y20 = rho.rho_10.imag, rho.rho_20.imag
    denom = y10 + y20
    if abs(denom) <= 64 * eps * (abs(y10) + abs(y20)):
        raise XiUndefined("lasing currents cancel; xi has no value")
    xi = (y10 - y20) / denom
    eta_q = 1.0 - params.omega_c / (params.omega_h + params.half_gap * xi)
    return CoherentObservables(power, heat_hot, heat_cold, -power / heat_hot, xi, eta_q)


def output_power4(params: EngineParams4) -> float:
    """Steady-state output power ``-P_Q``."""
    return -_power4(params, steady_state4(params))
