import itertools
import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

import oracles
from laserqhe import _linalg
from laserqhe.coherent import (DensityMatrix4, build_generator4, evolve4, observables4,
                               output_power4, steady_state4)
from laserqhe.core import EngineParams3, EngineParams4, OptimizationScheme
from laserqhe.errors import EfficiencyUndefined, XiUndefined
from laserqhe.optimize import FourLevel, maximize_power
from laserqhe.ssd import build_generator3, observables3, steady_state3


def params4(omega_h, ratio, lam, g1, g2, k, tau, gap_frac, p, g12):
    T_h = k * omega_h
    return EngineParams4(omega_h, omega_h * ratio, lam, g1, g2, 1.0, T_h, tau * T_h,
                         gap_frac * omega_h * (1.0 - ratio), p, g12)


engine4 = st.builds(
    params4,
    st.floats(0.5, 20.0), st.floats(0.1, 0.9), st.floats(0.5, 50.0),
    st.floats(0.05, 5.0), st.floats(0.05, 5.0), st.floats(1.0, 50.0),
    st.floats(0.05, 0.95), st.floats(0.0, 0.4), st.floats(-0.95, 0.95),
    st.floats(0.0, 1.0),
)

FIG3 = EngineParams4(5.0, 2.5, 1000.0, 1.0, 1.0, 1.0, 100.0, 50.0, 0.0, 0.9)


def as_vector(m):
    return DensityMatrix4(m[0, 0].real, m[1, 1].real, m[2, 2].real, m[3, 3].real,
                          m[0, 1], m[0, 2], m[1, 2]).to_vector()


def minors_ok(m, tol=1e-8):
    for i, j in itertools.combinations(range(4), 2):
        if m[i, i].real * m[j, j].real < abs(m[i, j]) ** 2 - tol:
            return False
    return True


def test_population_block_conserves_trace():
    L = build_generator4(FIG3)
    assert np.allclose(L[:4].sum(axis=0), 0.0, atol=1e-12)


@given(engine4)
def test_generator_matches_superoperator(p):
    rng = np.random.default_rng(1)
    A = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = A @ A.conj().T
    rho /= np.trace(rho)
    want = as_vector(oracles.apply(oracles.superop4(p), rho))
    got = build_generator4(p) @ as_vector(rho)
    assert np.allclose(got, want, rtol=1e-12, atol=1e-12 * np.abs(want).max())


@settings(max_examples=25)
@given(engine4)
def test_steady_state_invariants_and_oracle(p):
    rho = steady_state4(p)
    m = rho.to_matrix()
    assert rho.trace == pytest.approx(1.0, abs=1e-10)
    assert np.allclose(m, m.conj().T)
    pops = np.diag(m).real
    assert pops.min() >= -1e-10 and pops.max() <= 1 + 1e-10
    assert minors_ok(m)
    ref, _ = oracles.steady_state(oracles.superop4(p), 4)
    assert np.allclose(m, ref, atol=1e-9)


@given(engine4)
def test_first_law_and_closed_form_efficiency(p):
    rho = steady_state4(p)
    try:
        obs = observables4(p, rho)
    except (EfficiencyUndefined, XiUndefined):
        assume(False)
    scale = max(abs(obs.power), abs(obs.heat_hot), 1e-30)
    # the hot flux is a difference of terms of size Gamma * n * omega; when it
    # is far smaller, round-off in rho alone exceeds the 1e-10 comparison
    n1 = 1.0 / math.expm1((p.omega_h + p.half_gap) / p.T_h)
    assume(abs(obs.heat_hot) > 1e-4 * (p.gamma_h1 + p.gamma_h2) * (n1 + 1) * p.omega_h)
    assert abs(obs.power + obs.heat_hot + obs.heat_cold) <= 1e-9 * scale
    assert obs.efficiency_q == pytest.approx(obs.efficiency, rel=1e-10, abs=1e-12)


@settings(max_examples=25)
@given(engine4)
def test_power_and_heat_against_operator_traces(p):
    rho = steady_state4(p)
    m = rho.to_matrix()
    try:
        obs = observables4(p, rho)
    except (EfficiencyUndefined, XiUndefined):
        assume(False)
    H0 = oracles.energies4(p)
    assert obs.power == pytest.approx(oracles.power(H0, oracles.laser4(p), m),
                                      rel=1e-9, abs=1e-12)
    assert obs.heat_hot == pytest.approx(oracles.heat(H0, oracles.hot_super4(p), m),
                                         rel=1e-9, abs=1e-12)


def test_reduces_to_three_level_generator():
    p4 = EngineParams4(3.0, 1.0, 2.0, 0.7, 0.0, 1.0, 5.0, 2.0)
    p3 = EngineParams3(3.0, 1.0, 2.0, 0.7, 1.0, 5.0, 2.0)
    L4 = build_generator4(p4)
    # 4-level indices of (rho_11, rho_00, rho_gg, Re rho_10, Im rho_10)
    idx = [0, 2, 3, 6, 7]
    L3 = build_generator3(p3)
    assert np.allclose(L4[np.ix_(idx, idx)], L3, atol=1e-14)


def test_no_drive_gives_thermal_state():
    p = EngineParams4(2.0, 1.0, 1e-300, 1.0, 0.5, 1.0, 3.0, 1.0, 0.1, 0.0)
    rho = steady_state4(p)
    n1 = 1.0 / math.expm1(2.1 / 3.0)
    n2 = 1.0 / math.expm1(1.9 / 3.0)
    n_c = 1.0 / math.expm1(1.0 / 1.0)
    assert rho.rho_11 / rho.rho_gg == pytest.approx(n1 / (n1 + 1), rel=1e-10)
    assert rho.rho_22 / rho.rho_gg == pytest.approx(n2 / (n2 + 1), rel=1e-10)
    assert rho.rho_00 / rho.rho_gg == pytest.approx(n_c / (n_c + 1), rel=1e-10)
    assert max(abs(rho.rho_12), abs(rho.rho_10), abs(rho.rho_20)) < 1e-12


@pytest.mark.parametrize("T_h", [100.0, 1.0])
def test_depends_on_rates_only_through_gamma_p(T_h):
    a = EngineParams4(2.0, 1.25, 1000.0, 1.0, 1.0, 1.0, T_h, T_h / 2, 0.0, 0.0)
    b = EngineParams4(2.0, 1.25, 1000.0, 0.5, 0.5, 1.0, T_h, T_h / 2, 0.0, 1.0)
    assert a.gamma_p == b.gamma_p == 1.0
    assert output_power4(a) == pytest.approx(output_power4(b), rel=1e-6)


def test_equal_rates_without_coherence_match_three_level_efficiency():
    p4 = EngineParams4(2.0, 1.25, 1000.0, 1.0, 1.0, 1.0, 100.0, 50.0)
    p3 = EngineParams3(2.0, 1.25, 1000.0, 1.0, 1.0, 100.0, 50.0)
    e4 = observables4(p4, steady_state4(p4)).efficiency
    e3 = observables3(p3, steady_state3(p3)).efficiency
    assert e4 == pytest.approx(e3, rel=1e-10)


def test_degenerate_rate_swap_is_symmetric():
    a = EngineParams4(5.0, 3.0, 1000.0, 1.005, 0.995, 1.0, 100.0, 50.0, 0.0, 0.9)
    b = replace(a, gamma_h1=a.gamma_h2, gamma_h2=a.gamma_h1)
    oa = observables4(a, steady_state4(a))
    ob = observables4(b, steady_state4(b))
    for name in ("power", "heat_hot", "heat_cold", "efficiency"):
        assert getattr(oa, name) == pytest.approx(getattr(ob, name), rel=1e-9)


def test_split_levels_break_the_swap_symmetry():
    engine = FourLevel(5.0, 1000.0, 1.0, 1.0, 100.0, half_gap=0.1, p=0.9)
    plus = maximize_power(engine.with_rate_asymmetry(0.01), OptimizationScheme.FIXED_HOT, 0.85)
    minus = maximize_power(engine.with_rate_asymmetry(-0.01), OptimizationScheme.FIXED_HOT, 0.85)
    assert abs(plus.eta_star - minus.eta_star) >= 1e-6 * plus.eta_star


def test_degenerate_efficiency_ignores_xi():
    p = EngineParams4(5.0, 2.5, 30.0, 1.3, 0.4, 1.0, 10.0, 4.0, 0.0, 0.5)
    obs = observables4(p, steady_state4(p))
    assert obs.efficiency_q == pytest.approx(1.0 - 2.5 / 5.0, rel=1e-10)


def test_symmetric_coherences_give_zero_xi():
    p = EngineParams4(5.0, 2.5, 30.0, 1.0, 1.0, 1.0, 10.0, 4.0, 0.2, 0.5)
    rho = DensityMatrix4(0.2, 0.2, 0.2, 0.4, 0j, 0.01 - 0.02j, 0.01 - 0.02j)
    assert observables4(p, rho).xi == 0.0


def test_cancelling_currents_raise_xi_undefined():
    p = EngineParams4(5.0, 2.5, 30.0, 1.0, 1.0, 1.0, 10.0, 4.0, 0.2, 0.5)
    rho = DensityMatrix4(0.3, 0.1, 0.2, 0.4, 0j, 0.02j, -0.02j)
    with pytest.raises(XiUndefined):
        observables4(p, rho)


def test_vanishing_hot_flux_raises():
    p = EngineParams4(5.0, 2.5, 30.0, 1.0, 1.0, 1.0, 10.0, 4.0)
    n = 1.0 / math.expm1(0.5)
    # each upper level in detailed balance with |g>
    rg = 1.0 / (1.0 + 2 * n / (n + 1))
    r1 = rg * n / (n + 1)
    rho = DensityMatrix4(r1, r1, 0.0, rg, 0j, 0j, 0j)
    with pytest.raises(EfficiencyUndefined):
        observables4(p, rho)


def test_evolve_with_zero_time_is_identity():
    rho0 = DensityMatrix4.maximally_mixed()
    assert evolve4(FIG3, rho0, 0.0, 1e-6) == rho0


def test_rk4_oracle_on_random_parameter_sets():
    rng = np.random.default_rng(4242)
    for _ in range(100):
        T_h = rng.uniform(0.5, 50.0)
        omega_h = rng.uniform(1.5, 10.0)
        p = EngineParams4(omega_h, 1.0, rng.uniform(0.2, 5.0), rng.uniform(0.2, 2.0),
                          rng.uniform(0.2, 2.0), 1.0, T_h, T_h * rng.uniform(0.05, 0.95),
                          rng.uniform(0.0, 0.4), rng.uniform(-0.8, 0.8))
        L = build_generator4(p)
        gap = np.sort(-np.linalg.eigvals(L).real)[1]
        dt = 0.1 / _linalg.rate_scale(L)
        rho = evolve4(p, DensityMatrix4.maximally_mixed(), 40.0 / gap, dt)
        assert np.allclose(rho.to_vector(), steady_state4(p).to_vector(), atol=1e-8)
        assert rho.trace == pytest.approx(1.0, abs=1e-9)


def test_high_temperature_state_matches_rk4():
    L = build_generator4(FIG3)
    dt = 0.1 / _linalg.rate_scale(L)
    gap = np.sort(-np.linalg.eigvals(L).real)[1]
    v = _linalg.rk4_propagate(L, DensityMatrix4.maximally_mixed().to_vector(), 40.0 / gap, dt)
    assert np.allclose(v, steady_state4(FIG3).to_vector(), atol=1e-8)
