"""Potential definition, parameter validation, and the index maps."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ncosc.model import (
    PotentialParams,
    QuantumNumbers,
    angular_k,
    angular_lambda,
    angular_mode,
    effective_ell,
    potential_cartesian,
    potential_spherical,
    radial_mode,
)

COUPLED = PotentialParams(alpha=1.0, beta=0.5, gamma=2.0)


def test_params_defaults_are_free_oscillator():
    p = PotentialParams()
    assert (p.hbar, p.mu, p.omega, p.v0) == (1.0, 1.0, 1.0, 0.0)
    assert (p.alpha, p.beta, p.gamma) == (0.0, 0.0, 0.0)


def test_params_validation_messages():
    with pytest.raises(ValueError, match="hbar must be positive"):
        PotentialParams(hbar=0.0)
    with pytest.raises(ValueError, match="mu must be positive"):
        PotentialParams(mu=-1.0)
    with pytest.raises(ValueError, match="omega must be positive"):
        PotentialParams(omega=0.0)
    with pytest.raises(ValueError, match="gamma must exceed -1/4"):
        PotentialParams(gamma=-0.3)
    # the boundary itself is excluded
    with pytest.raises(ValueError, match="gamma must exceed -1/4"):
        PotentialParams(gamma=-0.25)
    PotentialParams(gamma=-0.2499)  # just inside is fine


def test_quantum_number_validation():
    with pytest.raises(ValueError, match="n must be >= 0"):
        QuantumNumbers(-1, 0, 0)
    with pytest.raises(ValueError, match="n_theta must be >= 0"):
        QuantumNumbers(0, -2, 0)
    assert QuantumNumbers(0, 0, -3).m == -3  # m may be negative


def test_potential_value_by_hand():
    # V = -v0 + mu w^2 r^2/2 + (hbar^2/2 mu r^2)(alpha + beta cot^2 + gamma/cos^2)
    p = PotentialParams(v0=0.7, alpha=1.0, beta=0.5, gamma=2.0, omega=1.3, mu=0.8, hbar=1.1)
    r, th = 1.3, 0.7
    c = p.hbar**2 / (2 * p.mu * r**2)
    want = (
        -0.7
        + 0.5 * p.mu * p.omega**2 * r**2
        + c * (1.0 + 0.5 * math.cos(th) ** 2 / math.sin(th) ** 2 + 2.0 / math.cos(th) ** 2)
    )
    assert potential_spherical(p, r, th) == pytest.approx(want, rel=1e-15)


def test_potential_domain():
    with pytest.raises(ValueError, match="r > 0"):
        potential_spherical(COUPLED, 0.0, 0.5)
    with pytest.raises(ValueError, match="theta"):
        potential_spherical(COUPLED, 1.0, math.pi / 2)
    with pytest.raises(ValueError, match="theta"):
        potential_spherical(COUPLED, 1.0, 0.0)


@given(r=st.floats(0.05, 8.0), theta=st.floats(0.05, math.pi / 2 - 0.05))
@settings(max_examples=300, deadline=None)
def test_cartesian_and_spherical_forms_agree(r, theta):
    p = PotentialParams(v0=0.3, alpha=1.7, beta=0.4, gamma=1.1, omega=0.9, mu=1.2, hbar=0.8)
    phi = 0.83
    x = r * math.sin(theta) * math.cos(phi)
    y = r * math.sin(theta) * math.sin(phi)
    z = r * math.cos(theta)
    vs = potential_spherical(p, r, theta)
    vc = potential_cartesian(p, x, y, z)
    assert vc == pytest.approx(vs, rel=1e-12, abs=1e-12)


def test_cartesian_singular_axis_guards():
    with pytest.raises(ValueError, match="x\\^2\\+y\\^2 > 0"):
        potential_cartesian(COUPLED, 0.0, 0.0, 1.0)
    with pytest.raises(ValueError, match="z != 0"):
        potential_cartesian(COUPLED, 1.0, 0.0, 0.0)
    # with the angular couplings off, on-axis points are regular
    free = PotentialParams(alpha=1.0)
    assert potential_cartesian(free, 0.0, 0.0, 2.0) == pytest.approx(2.0 + 1.0 / 8.0)


def test_index_maps_by_hand():
    # lambda = sqrt(beta + m^2), k = sqrt(gamma + 1/4)
    assert angular_lambda(COUPLED, 0) == pytest.approx(math.sqrt(0.5), rel=1e-15)
    assert angular_lambda(COUPLED, 2) == pytest.approx(math.sqrt(4.5), rel=1e-15)
    assert angular_lambda(COUPLED, -2) == angular_lambda(COUPLED, 2)
    assert angular_k(COUPLED) == pytest.approx(1.5, rel=1e-15)
    base = 1.5 + math.sqrt(0.5) + 1.0
    want = math.sqrt(base * base + 0.5) - 0.5
    assert effective_ell(COUPLED, 0, 0) == pytest.approx(want, rel=1e-15)


def test_index_maps_collapse_at_zero_couplings():
    # ell_tilde must come out integer: 2 n_theta + |m| + 1
    p = PotentialParams()
    for n_theta in range(4):
        for m in range(-3, 4):
            assert effective_ell(p, n_theta, m) == 2 * n_theta + abs(m) + 1


def test_inadmissible_sectors_raise():
    with pytest.raises(ValueError, match="beta \\+ m\\^2"):
        angular_lambda(PotentialParams(beta=-2.0), 1)
    with pytest.raises(ValueError, match="fall-to-center"):
        effective_ell(PotentialParams(alpha=-7.0), 0, 0)
    # alpha - beta in (-(k+lam+1)^2, 0.25 - (k+lam+1)^2] lands ell_tilde < 0
    with pytest.raises(ValueError, match="not normalizable"):
        effective_ell(PotentialParams(alpha=-2.1), 0, 0)


def test_angular_mode_eigenvalue():
    # eps = (hbar^2/2 mu)(2 n_theta + k + lam + 1)^2
    mode = angular_mode(COUPLED, 2, 1)
    s = 2 * 2 + 1.5 + math.sqrt(1.5) + 1
    assert mode.eps == pytest.approx(0.5 * s * s, rel=1e-15)
    assert mode.lam == pytest.approx(math.sqrt(1.5), rel=1e-15)
    assert mode.k == 1.5
    mode_scaled = angular_mode(PotentialParams(hbar=2.0, mu=0.5, alpha=1.0, beta=0.5, gamma=2.0), 2, 1)
    assert mode_scaled.eps == pytest.approx(4.0 * s * s, rel=1e-15)


def test_radial_mode_energy_scaling():
    ell = effective_ell(COUPLED, 1, 1)
    for hbar, omega, v0 in [(1.0, 1.0, 0.0), (2.0, 0.7, 1.5)]:
        p = PotentialParams(hbar=hbar, mu=1.0, omega=omega, v0=v0, alpha=1.0, beta=0.5, gamma=2.0)
        mode = radial_mode(p, 2, 1, 1)
        assert mode.energy == pytest.approx((4 + ell + 1.5) * hbar * omega - v0, rel=1e-14)
        assert mode.ell_tilde == pytest.approx(ell, rel=1e-14)


@given(m=st.integers(-6, 6), n_theta=st.integers(0, 5))
@settings(max_examples=200, deadline=None)
def test_ell_is_even_in_m_and_monotone_in_ntheta(m, n_theta):
    ell = effective_ell(COUPLED, n_theta, m)
    assert ell == effective_ell(COUPLED, n_theta, -m)
    assert effective_ell(COUPLED, n_theta + 1, m) > ell
