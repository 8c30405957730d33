"""Efficiency at maximum power of laser quantum heat engines.

Steady states of the three-level (maser) engine and of the four-level engine
with noise-induced coherence, closed-form EMP results, a power maximiser
over the frequency ratio, and a command-line runner for parameter sweeps.

Units throughout: ``hbar = k_B = 1`` and the cold-bath rate ``Gamma_c = 1``.
"""
from .analytics import EmpBounds, emp_bounds, emp_fixed_cold, emp_fixed_hot
from .coherent import DensityMatrix4, observables4, output_power4, steady_state4
from .core import EngineParams3, EngineParams4, OptimizationScheme
from .errors import (DomainError, EfficiencyUndefined, NoOperatingPoint, QheError,
                     SingularGenerator, StepTooLarge, SweepPointError, XiUndefined)
from .optimize import EmpResult, FourLevel, SweepRow, ThreeLevel, maximize_power, sweep_emp
from .ssd import DensityMatrix3, observables3, output_power3, steady_state3

__version__ = "0.1.0"

__all__ = [
    "DensityMatrix3", "DensityMatrix4", "DomainError", "EfficiencyUndefined",
    "EmpBounds", "EmpResult", "EngineParams3", "EngineParams4", "FourLevel",
    "NoOperatingPoint", "OptimizationScheme", "QheError", "SingularGenerator",
    "StepTooLarge", "SweepPointError", "SweepRow", "ThreeLevel", "XiUndefined",
    "emp_bounds", "emp_fixed_cold", "emp_fixed_hot", "maximize_power",
    "observables3", "observables4", "output_power3", "output_power4",
    "steady_state3", "steady_state4", "sweep_emp",
]
