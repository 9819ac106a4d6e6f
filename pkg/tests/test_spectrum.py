import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from larmor import spectrum as sp
from larmor.errors import (
    NonFiniteInput,
    NonPositiveMass,
    OutsideExpansionDomain,
    SingularExpansion,
    SingularPoint,
    SuperluminalVelocity,
)
from larmor.quantities import PhysicalConstants, load_registry

etas = st.floats(0, 1e3)
deltas = st.floats(-1e3, 1e3)

# reference values below were computed with mpmath at 40 digits


def test_free_particle_at_rest():
    r = sp.eigenvalues_analytic(0.0, 0.0)
    assert (r.e_plus_up, r.e_plus_down, r.e_minus_up, r.e_minus_down) == (1, 1, -1, -1)
    assert r.splitting == 0


def test_rest_frame_levels():
    r = sp.eigenvalues_analytic(0.0, 0.5)
    assert (r.e_plus_up, r.e_plus_down, r.e_minus_up, r.e_minus_down) == (1.5, 0.5, -1.5, -0.5)
    assert r.splitting == 1.0


def test_moving_levels():
    r = sp.eigenvalues_analytic(1.0, 0.5)
    assert r.e_plus_up == pytest.approx(1.8027756377319946, rel=1e-15)
    assert r.e_plus_down == pytest.approx(1.1180339887498949, rel=1e-15)
    assert r.splitting == pytest.approx(0.6847416489820998, rel=1e-14)


@pytest.mark.parametrize("delta", [1.0, 1.5, 7.0, 1e3])
def test_plateau_is_exactly_two(delta):
    assert sp.spin_splitting(0.0, delta) == 2.0


def test_splitting_examples():
    assert sp.spin_splitting(3.7, 0.0) == 0.0
    assert sp.spin_splitting(0.1, 0.5) == pytest.approx(0.9934276864780123, rel=1e-14)


def test_rationalised_and_difference_forms_agree():
    for delta in (0.1, 0.5, 2.0, 30.0):
        for eta in np.linspace(5 * (1 + delta), 20 * (1 + delta), 31):
            a = sp._splitting_naive(eta, delta)
            b = sp._splitting_rationalised(eta, delta)
            assert abs(a - b) <= 1e-12 * abs(b)


def test_tiny_delta_keeps_relative_accuracy():
    # the difference of square roots would cancel to 0 here
    delta = 6.418684440195858e-17
    assert sp.spin_splitting(0.1, delta) == pytest.approx(2 * delta / math.sqrt(1.01), rel=1e-14)


def test_si_massless_vanishes():
    assert sp.spin_splitting_si(3.0, -2.0, 5.0, 0.0) == 0.0


def test_si_examples():
    rest = 1.5e-10
    assert sp.spin_splitting_si(0.0, 0.0, 0.5 * rest, rest) == pytest.approx(rest, rel=1e-15)
    assert sp.spin_splitting_si(rest, 0.0, 0.5 * rest, rest) == pytest.approx(0.6847416489820998 * rest, rel=1e-14)


def test_nonrelativistic_splitting():
    assert sp.splitting_nonrel(0, 0, 3.0, 4.0) == 0
    assert sp.splitting_nonrel(0.0, -1.0, 0.0, 1.0) == 2.0
    # below the rest energy the relativistic splitting at rest reduces to it
    d, mu, e, b = 1e-3, -2e-3, 50.0, 7.0
    rest = 1.0
    delta = d * e - mu * b
    assert abs(delta) < rest
    assert sp.spin_splitting_si(0.0, 0.0, delta, rest) == pytest.approx(sp.splitting_nonrel(d, mu, e, b), rel=1e-14)


def test_derivative_examples():
    assert sp.splitting_derivative(0.0, 0.5) == 0.0
    assert sp.splitting_derivative(1.0, 0.5) == pytest.approx(-0.3397269947746868, rel=1e-14)
    with pytest.raises(SingularPoint):
        sp.splitting_derivative(0.0, 1.0)


@given(st.floats(0.05, 50), st.floats(-20, 20))
def test_derivative_matches_central_difference(eta, delta):
    h = 1e-6
    fd = (sp.spin_splitting(eta + h, delta) - sp.spin_splitting(eta - h, delta)) / (2 * h)
    an = sp.splitting_derivative(eta, delta)
    assert fd == pytest.approx(an, rel=1e-6, abs=1e-9 * abs(sp.spin_splitting(eta, delta)) + 1e-15)
    if delta >= 0:
        assert an <= 0


def test_splitting_at_rest():
    assert sp.splitting_at_rest(0.3) == pytest.approx(0.6, abs=1e-16)
    assert sp.splitting_at_rest(5.0) == 2.0
    assert sp.splitting_at_rest(1.0) == 2.0
    assert sp.splitting_at_rest(-3.0) == -2.0


def test_limits():
    nat = sp.relativistic_limits(1.0, PhysicalConstants(1.0, 1.0, 1.0))
    assert (nat.max_splitting, nat.max_larmor, nat.min_wavelength) == (2.0, 2.0, 0.5)
    assert sp.natural_limits().min_wavelength == 1 / sp.natural_limits().max_larmor
    reg = load_registry()
    m = reg.particle("neutron").mass
    c, hbar = reg.constants.c, reg.constants.hbar
    lim = sp.relativistic_limits(m, reg.constants)
    assert lim.min_wavelength * m * c / hbar == pytest.approx(0.5, abs=1e-12)
    assert lim.min_wavelength == pytest.approx(lim.compton_wavelength / 2, rel=1e-15)
    assert lim.max_larmor == pytest.approx(2.86e24, rel=2e-3)
    assert lim.max_larmor == pytest.approx(2.8549023188472919e24, rel=1e-12)
    with pytest.raises(NonPositiveMass):
        sp.relativistic_limits(0.0, reg.constants)


def test_kinematics():
    k = sp.kinematics_of(0.0)
    assert (k.gamma, k.p_tilde) == (1.0, 0.0)
    k = sp.kinematics_of(0.6)
    assert k.gamma == pytest.approx(1.25, rel=1e-15)
    assert k.p_tilde == pytest.approx(0.75, rel=1e-15)
    k = sp.kinematics_of(0.999)
    assert k.gamma == pytest.approx(22.366272042129222, rel=1e-12)
    assert k.p_tilde == pytest.approx(22.343905770087092, rel=1e-12)
    for v in (1.0, -1.0, 1.5):
        with pytest.raises(SuperluminalVelocity):
            sp.kinematics_of(v)


@given(st.floats(0, 0.999), st.floats(0, 0.999))
def test_momentum_monotone_in_speed(a, b):
    lo, hi = sorted((a, b))
    assert sp.kinematics_of(lo).p_tilde <= sp.kinematics_of(hi).p_tilde


def test_eta_of_velocity():
    assert sp.eta_of_velocity(sp.kinematics_of(0.0), 0.0) == 0.0
    k = sp.kinematics_of(0.6)
    assert sp.eta_of_velocity(k, 0.0) == pytest.approx(0.75, rel=1e-15)
    assert sp.eta_of_velocity(k, 0.0, exact=False) == pytest.approx(0.75, rel=1e-15)
    assert sp.eta_of_velocity(k, 0.1) == pytest.approx(0.7566372975210778, rel=1e-14)
    assert sp.eta_of_velocity(k, 0.1, exact=False) == pytest.approx(0.75, rel=1e-15)


def test_lowspeed_examples():
    assert sp.splitting_lowspeed(0.0, 0.5) == 1.0
    approx = sp.splitting_lowspeed(0.1, 0.5)
    assert approx == pytest.approx(0.9933333333333333, rel=1e-15)
    assert sp.spin_splitting(0.1, 0.5) - approx == pytest.approx(9.435314467901075e-05, rel=1e-9)
    with pytest.raises(OutsideExpansionDomain):
        sp.splitting_lowspeed(0.5, 0.999)
    with pytest.raises(SingularExpansion):
        sp.splitting_lowspeed(0.0, 1.0)
    with pytest.raises(SingularExpansion):
        sp.splitting_lowspeed(0.0, -1.0)


def test_lowspeed_above_threshold_departs_from_two():
    # for delta > 1 the rest value is 2 and the curvature is 1/(delta^2 - 1)
    assert sp.splitting_lowspeed(0.05, 3.0) == pytest.approx(2 - 0.0025 / 8, rel=1e-15)
    assert abs(sp.splitting_lowspeed(0.05, 3.0) - sp.spin_splitting(0.05, 3.0)) < 1e-7


def test_highspeed_examples():
    assert sp.splitting_highspeed(100.0, 0.5) == 0.01
    assert sp.spin_splitting(100.0, 0.5) == pytest.approx(0.009999375071083742, rel=1e-14)
    assert abs(sp.splitting_highspeed(1000.0, 0.5) - sp.spin_splitting(1000.0, 0.5)) < 1e-9
    with pytest.raises(OutsideExpansionDomain):
        sp.splitting_highspeed(1.0, 0.5)


def test_redshift_examples():
    r = sp.larmor_redshift(0.0, 0.5)
    assert (r.ratio, r.shift) == (1.0, 0.0)
    r = sp.larmor_redshift(0.1, 0.0)
    assert r.ratio == pytest.approx(0.994949494949495, rel=1e-15)
    assert r.shift == r.ratio - 1
    with pytest.raises(SingularExpansion):
        sp.larmor_redshift(0.01, 1.0)
    with pytest.raises(OutsideExpansionDomain):
        sp.larmor_redshift(0.5, 0.5)
    with pytest.raises(SuperluminalVelocity):
        sp.larmor_redshift(1.0, 0.5)


def test_doppler_reference():
    assert sp.doppler_reference(0.0) == (1.0, 1.0)
    nonrel, rel = sp.doppler_reference(0.1)
    assert nonrel == 0.9
    assert rel == pytest.approx(0.9045340337332909, rel=1e-15)
    v = 1 - 1e-12
    nonrel, rel = sp.doppler_reference(v)
    assert nonrel < 1e-11
    assert rel == pytest.approx(math.sqrt((1 - v) / (1 + v)), rel=1e-6)
    with pytest.raises(SuperluminalVelocity):
        sp.doppler_reference(1.0)


def test_non_finite_inputs():
    with pytest.raises(NonFiniteInput):
        sp.spin_splitting(float("nan"), 0.5)
    with pytest.raises(NonFiniteInput):
        sp.eigenvalues_analytic(1.0, float("inf"))
    with pytest.raises(NonFiniteInput):
        sp.spin_splitting_si(1.0, 0.0, float("nan"), 1.0)


@given(etas, deltas)
def test_bound_and_oddness(eta, delta):
    s = sp.spin_splitting(eta, delta)
    assert abs(s) <= 2 + 1e-12
    assert sp.spin_splitting(eta, -delta) == -s


@given(etas, deltas)
def test_spectrum_invariants(eta, delta):
    r = sp.eigenvalues_analytic(eta, delta)
    assert r.e_plus_up == -r.e_minus_up
    assert r.e_plus_down == -r.e_minus_down
    assert (r.e_plus_up + r.e_minus_up) + (r.e_plus_down + r.e_minus_down) == 0
    assert r.e_plus_up - r.e_plus_down == -(r.e_minus_up - r.e_minus_down)
    assert r.splitting == sp.spin_splitting(eta, delta)
    assert r.splitting == pytest.approx(r.e_plus_up - r.e_plus_down, abs=4e-16 * r.e_plus_up)


@given(st.floats(0, 0.999999), deltas)
def test_plateau_and_linear_region(delta01, delta):
    assert sp.spin_splitting(0.0, delta01) == 2 * delta01
    if abs(delta) >= 1:
        assert sp.spin_splitting(0.0, delta) == math.copysign(2.0, delta)


@given(st.floats(1e-6, 1e3), st.floats(1e-6, 1e3))
def test_strictly_decreasing_in_eta(delta, eta):
    before, after = sp.spin_splitting(eta, delta), sp.spin_splitting(eta * 1.01, delta)
    assert after <= before
    # strict wherever the expected drop is resolvable in double precision
    if abs(sp.splitting_derivative(eta, delta)) * 0.01 * eta > 1e-13 * before:
        assert after < before


@given(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3), st.floats(-1e3, 1e3),
       st.floats(1e-3, 1e3))
def test_si_is_scale_invariant(cp, cpi, delta, rest):
    eta = math.hypot(cp, cpi) / rest
    natural = sp.spin_splitting(eta, delta / rest)
    assert sp.spin_splitting_si(cp, cpi, delta, rest) == pytest.approx(natural * rest, rel=1e-12, abs=1e-300)


@pytest.mark.parametrize("eta", [1e-1, 1e-2])
def test_lowspeed_remainder_is_quartic(eta):
    def err(x):
        return abs(sp.splitting_lowspeed(x, 0.5) - sp.spin_splitting(x, 0.5))
    assert 12 <= err(eta) / err(eta / 2) <= 20


@pytest.mark.parametrize("eta", [1e2, 1e3])
def test_highspeed_remainder_is_cubic(eta):
    def err(x):
        return abs(sp.splitting_highspeed(x, 0.5) - sp.spin_splitting(x, 0.5))
    assert 1 / 10 <= err(2 * eta) / err(eta) <= 1 / 6


@given(st.floats(0, 0.15), st.floats(-0.5, 0.5).filter(lambda d: abs(d) > 1e-6))
def test_redshift_is_lowspeed_over_rest(v, delta):
    eta = sp.kinematics_of(v).p_tilde
    if not sp.lowspeed_applicable(eta, delta):
        return
    ratio = sp.larmor_redshift(v, delta).ratio
    assert ratio <= 1
    assert abs(ratio - sp.splitting_lowspeed(eta, delta) / sp.splitting_at_rest(delta)) <= 1e-14
