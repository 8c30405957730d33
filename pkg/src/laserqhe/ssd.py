"""Three-level Scovil--Schulz-DuBois laser engine.

The density matrix is carried as the real 5-vector
``(rho_11, rho_00, rho_gg, Re rho_10, Im rho_10)``; coherences with the
ground state are decoupled and vanish in steady state.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _linalg
from .core import EngineParams3
from .errors import EfficiencyUndefined

__all__ = [
    "DensityMatrix3",
    "Observables",
    "build_generator3",
    "steady_state3",
    "evolve3",
    "observables3",
    "output_power3",
]

I11, I00, IGG, IRE, IIM = range(5)
TRACE3 = np.array([1.0, 1.0, 1.0, 0.0, 0.0])


@dataclass(frozen=True)
class DensityMatrix3:
    rho_11: float
    rho_00: float
    rho_gg: float
    rho_10: complex

    @property
    def rho_01(self) -> complex:
        return self.rho_10.conjugate()

    @property
    def trace(self) -> float:
        return self.rho_11 + self.rho_00 + self.rho_gg

    def to_vector(self) -> np.ndarray:
        return np.array([self.rho_11, self.rho_00, self.rho_gg,
                         self.rho_10.real, self.rho_10.imag])

    @classmethod
    def from_vector(cls, v) -> "DensityMatrix3":
        return cls(float(v[I11]), float(v[I00]), float(v[IGG]), complex(v[IRE], v[IIM]))

    @classmethod
    def maximally_mixed(cls) -> "DensityMatrix3":
        return cls(1 / 3, 1 / 3, 1 / 3, 0j)

    def to_matrix(self) -> np.ndarray:
        """Full 3x3 matrix in the basis (|1>, |0>, |g>)."""
        rho = np.zeros((3, 3), dtype=complex)
        rho[0, 0], rho[1, 1], rho[2, 2] = self.rho_11, self.rho_00, self.rho_gg
        rho[0, 1] = self.rho_10
        rho[1, 0] = self.rho_01
        return rho


@dataclass(frozen=True)
class Observables:
    """Energy currents at a state.

    ``power`` follows ``P = -i Tr([H0, V] rho)`` and is negative while the
    engine delivers work; ``power_out`` is its negation.  Heat currents are
    positive when flowing into the working medium.
    """

    power: float
    heat_hot: float
    heat_cold: float
    efficiency: float

    @property
    def power_out(self) -> float:
        return -self.power


def build_generator3(params: EngineParams3) -> np.ndarray:
    """Rotating-frame generator on the real 5-vector representation."""
    n_h, n_c = params.occupations()
    lam, delta = params.lam, params.detuning
    gh, gc = params.gamma_h, params.gamma_c
    decay = gh * (n_h + 1.0) + gc * (n_c + 1.0)

    L = np.zeros((5, 5))
    L[I11, I11] = -2.0 * gh * (n_h + 1.0)
    L[I11, IGG] = 2.0 * gh * n_h
    L[I11, IIM] = -2.0 * lam
    L[I00, I00] = -2.0 * gc * (n_c + 1.0)
    L[I00, IGG] = 2.0 * gc * n_c
    L[I00, IIM] = 2.0 * lam
    L[IGG] = -(L[I11] + L[I00])
    L[IRE, IRE] = -decay
    L[IRE, IIM] = delta
    L[IIM, IRE] = -delta
    L[IIM, IIM] = -decay
    L[IIM, I11] = lam
    L[IIM, I00] = -lam
    return L


def steady_state3(params: EngineParams3) -> DensityMatrix3:
    """Stationary state, with the rho_gg equation traded for normalisation."""
    v = _linalg.solve_steady(build_generator3(params), TRACE3, IGG)
    return DensityMatrix3.from_vector(v)


def evolve3(params: EngineParams3, rho0: DensityMatrix3, t_final: float,
            dt: float) -> DensityMatrix3:
    """Fixed-step RK4 evolution; a reference path independent of the solve."""
    v = _linalg.rk4_propagate(build_generator3(params), rho0.to_vector(), t_final, dt)
    return DensityMatrix3.from_vector(v)


def _bath_flows(params: EngineParams3, rho: DensityMatrix3):
    n_h, n_c = params.occupations()
    # population gained by |1> (|0>) from the hot (cold) bath
    hot = -2.0 * params.gamma_h * ((n_h + 1.0) * rho.rho_11 - n_h * rho.rho_gg)
    cold = -2.0 * params.gamma_c * ((n_c + 1.0) * rho.rho_00 - n_c * rho.rho_gg)
    noise = 64 * np.finfo(float).eps * 2.0 * params.gamma_h * (2.0 * n_h + 1.0)
    return hot, cold, noise


def _power3(params: EngineParams3, rho: DensityMatrix3) -> float:
    return -2.0 * params.lam * (params.omega_h - params.omega_c) * rho.rho_10.imag


def observables3(params: EngineParams3, rho: DensityMatrix3) -> Observables:
    """Power, bath heat currents and efficiency ``-P/Q_h`` at ``rho``.

    Heat currents are traces of the bath dissipators against ``H0`` and so
    remain meaningful away from steady state.
    """
    hot, cold, noise = _bath_flows(params, rho)
    power = _power3(params, rho)
    heat_hot = params.omega_h * hot
    heat_cold = params.omega_c * cold
    if abs(hot) <= noise:
        raise EfficiencyUndefined("hot heat flux vanishes")
    return Observables(power, heat_hot, heat_cold, -power / heat_hot)


def output_power3(params: EngineParams3) -> float:
    """Steady-state output power ``-P`` (positive for engine operation)."""
    return -_power3(params, steady_state3(params))
