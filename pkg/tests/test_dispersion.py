import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncphase import dispersion
from ncphase.dispersion import (
    ExtendedPhasePoint,
    ParticleSpec,
    SphericalState,
    angular_f,
    angular_g_printed,
    eta_from_shift,
    extended_hamiltonian,
    group_velocity,
    lorentz_boost,
    on_shell_point,
    phi_coefficient,
    reduce_on_shell,
    relative_energy_shift,
    spherical_dispersion,
    theta_coefficient,
)
from ncphase.errors import NegativeDiscriminant, SuperluminalBoost, UndefinedVelocity, ZeroMass
from ncphase.grb import eta_from_energy
from ncphase.symplectic import NCParams, skew_pattern

UNIT = ParticleSpec(mass=1.0, c=1.0)
PHOTON = ParticleSpec(mass=0.0, c=1.0)

finite = st.floats(-10, 10, allow_nan=False)


def random_spherical(rng, transverse=True):
    return SphericalState(
        r=rng.uniform(0, 20),
        theta=rng.uniform(0, np.pi),
        phi=rng.uniform(0, 2 * np.pi),
        p_r=rng.normal() * 5,
        p_theta=rng.normal() * 5 if transverse else 0.0,
        p_phi=rng.normal() * 5 if transverse else 0.0,
    )


def test_rest_particle_on_shell():
    point = ExtendedPhasePoint(0.0, [0.3, 0.1], 1.0, [0.0, 0.0])
    assert extended_hamiltonian(point, UNIT) == 0.0


def test_moving_particle_on_shell():
    point = ExtendedPhasePoint(0.0, [5.0, -2.0], np.sqrt(2.0), [1.0, 0.0])
    assert extended_hamiltonian(point, UNIT) == pytest.approx(0.0, abs=1e-15)


def test_shifted_hamiltonian_arithmetic():
    point = ExtendedPhasePoint(0.0, [0.0, 1.0], 0.0, [1.0, 0.0])
    # eta/2hbar = 0.2 -> shift (0.2, 0)
    assert extended_hamiltonian(point, UNIT, NCParams(0.0, 0.4, 1.0)) == pytest.approx(1.22)


def test_massless_hamiltonian_rejected():
    with pytest.raises(ZeroMass):
        extended_hamiltonian(ExtendedPhasePoint(0, [0, 0], 1, [1, 0]), PHOTON)


def test_reduce_examples():
    assert reduce_on_shell([0, 0], [0, 0], ParticleSpec(1.0, 3.0), NCParams(0, 0.7, 1)) == 9.0
    assert reduce_on_shell([1, 2, 3], [0, 3, 4], ParticleSpec(0.0, 2.0)) == 10.0
    assert reduce_on_shell([0, 1], [1, 0], PHOTON, NCParams(0, 0.4, 1)) == pytest.approx(1.2)


def test_theta_does_not_enter():
    x, p = [0.3, -0.8, 1.0], [1.0, 0.5, -0.2]
    a = reduce_on_shell(x, p, UNIT, NCParams(0.0, 0.4, 1.0))
    b = reduce_on_shell(x, p, UNIT, NCParams(0.9, 0.4, 1.0))
    assert a == b


@settings(max_examples=200, deadline=None)
@given(st.lists(finite, min_size=2, max_size=2), st.lists(finite, min_size=2, max_size=2),
       st.floats(0.0, 2.0), st.floats(0.1, 5.0), st.floats(0.2, 3.0))
def test_reduction_solves_hamiltonian_constraint(x, p, eta, mass, c):
    spec = ParticleSpec(mass, c)
    params = NCParams(0.0, eta, 1.0)
    point = on_shell_point(x, p, spec, params)
    # H1 is a difference of terms of size ~E^2/2mc^2
    scale = point.H**2 / (2 * mass * c**2) + 0.5 * mass * c**2
    assert abs(extended_hamiltonian(point, spec, params)) <= 1e-12 * scale


@settings(max_examples=100, deadline=None)
@given(st.lists(finite, min_size=3, max_size=3), st.floats(0.0, 5.0), st.floats(0.1, 3.0))
def test_commutative_limit_of_dispersion(p, mass, c):
    spec = ParticleSpec(mass, c)
    p = np.array(p)
    e = reduce_on_shell([1.0, 2.0, 3.0], p, spec, NCParams(0.0, 0.0, 1.0))
    assert e**2 == pytest.approx(p @ p * c**2 + mass**2 * c**4, rel=1e-14, abs=1e-300)


def test_group_velocity_commutative_photon():
    v = group_velocity([4.0, 1.0], [2.5, 0.0], ParticleSpec(0.0, 3.0))
    np.testing.assert_allclose(v, [3.0, 0.0])


def test_massless_speed_is_c(rng):
    for _ in range(500):
        n = rng.choice([2, 3])
        x, p = rng.normal(size=(2, n)) * 10
        params = NCParams(rng.uniform(0, 1), rng.uniform(0, 0.8), 1.0)
        spec = ParticleSpec(0.0, rng.uniform(0.5, 3))
        v = group_velocity(x, p, spec, params)
        assert np.linalg.norm(v) / spec.c == pytest.approx(1.0, abs=1e-12)


def test_group_velocity_batch_matches_single(rng):
    x, p = rng.normal(size=(2, 50, 3))
    params = NCParams(0.0, 0.5, 1.0)
    batch = group_velocity(x, p, UNIT, params)
    for i in (0, 17, 49):
        np.testing.assert_allclose(batch[i], group_velocity(x[i], p[i], UNIT, params), rtol=1e-15)


def test_group_velocity_is_momentum_gradient(rng):
    params = NCParams(0.2, 0.6, 1.0)
    for spec in (UNIT, ParticleSpec(0.0, 2.0)):
        for _ in range(20):
            x, p = rng.normal(size=(2, 3)) * 2
            h = 1e-6 * max(1.0, np.linalg.norm(p))
            fd = np.array([
                (reduce_on_shell(x, p + h * e, spec, params) - reduce_on_shell(x, p - h * e, spec, params)) / (2 * h)
                for e in np.eye(3)
            ])
            np.testing.assert_allclose(group_velocity(x, p, spec, params), fd, rtol=1e-6, atol=1e-8)


def test_undefined_velocity_at_zero_energy():
    # shifted momentum vanishes: p = -(eta/2hbar) eps x
    with pytest.raises(UndefinedVelocity):
        group_velocity([0.0, 1.0], [-0.2, 0.0], PHOTON, NCParams(0.0, 0.4, 1.0))


# -- spherical forms -------------------------------------------------------------

def test_angular_functions_at_pole():
    for phi in np.linspace(0, 2 * np.pi, 17, endpoint=False):
        assert angular_f(0.0, phi) == 1.0
    assert angular_g_printed(0.0, 0.0) == 1.0
    assert phi_coefficient(0.0, 0.0) == 1.0


def test_angular_f_is_skew_norm(rng):
    u = skew_pattern(3)
    for _ in range(100):
        s = random_spherical(rng)
        x, _ = s.to_cartesian()
        ux = u @ x
        assert ux @ ux == pytest.approx(2 * s.r**2 * angular_f(s.theta, s.phi), rel=1e-12, abs=1e-12)


def test_cross_term_coefficients_are_projections(rng):
    u = skew_pattern(3)
    for _ in range(100):
        s = random_spherical(rng)
        r_hat, theta_hat, phi_hat = s.unit_vectors()
        assert theta_hat @ u @ r_hat == pytest.approx(theta_coefficient(s.theta, s.phi), abs=1e-14)
        assert phi_hat @ u @ r_hat == pytest.approx(phi_coefficient(s.theta, s.phi), abs=1e-14)


def test_printed_g_differs_from_projection_off_the_pole():
    # the printed g carries an extra sin(phi)
    th, ph = 0.7, 1.9
    assert angular_g_printed(th, ph) - phi_coefficient(th, ph) == pytest.approx(np.sin(ph))


@pytest.mark.parametrize("mode", ["radial", "full"])
def test_spherical_matches_cartesian(mode, rng):
    params = NCParams(0.1, 0.35, 1.3)
    for _ in range(200):
        s = random_spherical(rng, transverse=(mode == "full"))
        x, p = s.to_cartesian()
        cart = reduce_on_shell(x, p, PHOTON, params)
        sph = spherical_dispersion(s, params, mode, c=1.0)
        assert sph.energy == pytest.approx(cart, rel=1e-10)


def test_printed_full_formula_disagrees_with_cartesian():
    # literal printed assignment: p_phi (sin + cos) + p_theta g
    params = NCParams(0.0, 0.5, 1.0)
    s = SphericalState(3.0, 0.7, 1.9, 1.0, 0.8, -0.6)
    x, p = s.to_cartesian()
    cart = reduce_on_shell(x, p, PHOTON, params)
    b = params.eta / (2 * params.hbar)
    e2 = s.momentum**2 + 2 * b * s.r * (b * s.r * angular_f(s.theta, s.phi)
                                        + s.p_phi * (np.sin(s.phi) + np.cos(s.phi))
                                        + s.p_theta * angular_g_printed(s.theta, s.phi))
    assert abs(np.sqrt(e2) - cart) / cart > 1e-2


def test_spherical_returns_f_and_g():
    out = spherical_dispersion(SphericalState(2.0, 0.0, 0.0, 1.0), NCParams(0, 0.1, 1), "radial")
    assert (out.f, out.g) == (1.0, 1.0)
    assert out.energy == pytest.approx(np.sqrt(1 + 0.01 / 2 * 4))


def test_radial_mode_rejects_transverse_momentum():
    with pytest.raises(ValueError):
        spherical_dispersion(SphericalState(1.0, 0.5, 0.5, 1.0, 0.1, 0.0), NCParams(0, 0.1, 1), "radial")
    with pytest.raises(ValueError):
        spherical_dispersion(SphericalState(1.0, 0.5, 0.5, 1.0), NCParams(0, 0.1, 1), "sideways")


def test_negative_discriminant_reported(monkeypatch):
    monkeypatch.setattr(dispersion, "angular_f", lambda th, ph: -10.0)
    with pytest.raises(NegativeDiscriminant):
        spherical_dispersion(SphericalState(1.0, 0.5, 0.5, 0.1), NCParams(0, 1.0, 1.0), "radial")


def test_spherical_state_validation():
    with pytest.raises(ValueError):
        SphericalState(-1.0, 0.1, 0.1)
    with pytest.raises(ValueError):
        SphericalState(1.0, 4.0, 0.1)
    with pytest.raises(ValueError):
        SphericalState(1.0, 0.1, 2 * np.pi)


# -- energy shift ------------------------------------------------------------------

def test_energy_shift_vanishes_without_eta():
    assert relative_energy_shift(1e25, 1.0, NCParams(0.3, 0.0, 1.0)) == 0.0


def test_energy_shift_value():
    # eta c r / (2 hbar E) = 1e-3
    c, hbar, r, energy = 3.0, 2.0, 5.0, 7.0
    eta = 1e-3 * 2 * hbar * energy / (c * r)
    assert relative_energy_shift(r, energy, NCParams(0, eta, hbar), c) == pytest.approx(1e-6, rel=1e-12)


def test_energy_shift_inverse(rng):
    for _ in range(50):
        eta, r, energy, hbar, c = rng.uniform(0.1, 5, 5)
        shift = relative_energy_shift(r, energy, NCParams(0, eta, hbar), c)
        assert eta_from_shift(shift, r, energy, hbar, c) == pytest.approx(eta, rel=1e-12)
        # same bound through the fluence route with dE = shift * E
        assert eta_from_energy(energy, shift * energy, r, hbar, c) == pytest.approx(eta, rel=1e-12)


def test_radial_expansion_leading_order():
    # radial momentum has no cross term, so E ~ c p (1 + f shift)
    params = NCParams(0, 1e-4, 1.0)
    s = SphericalState(2.0, 0.4, 1.1, 3.0)
    exact = spherical_dispersion(s, params, "radial").energy
    shift = relative_energy_shift(s.r, s.p_r, params)
    assert exact / s.p_r - 1 == pytest.approx(angular_f(s.theta, s.phi) * shift, rel=1e-6)


# -- boosts ----------------------------------------------------------------------------

def test_zero_boost_is_identity():
    pt = ExtendedPhasePoint(1.0, [1.0, 2.0, 3.0], 5.0, [0.1, 0.2, 0.3])
    out = lorentz_boost(pt, [0, 0, 0], UNIT)
    assert out.t == pt.t and out.H == pt.H
    np.testing.assert_array_equal(out.x, pt.x)
    np.testing.assert_array_equal(out.p, pt.p)


def test_boost_composition_along_axis():
    pt = ExtendedPhasePoint(0.3, [1.0, 0.0, 0.0], 2.0, [0.5, 0.0, 0.0])
    a = lorentz_boost(lorentz_boost(pt, [0.3, 0, 0], UNIT), [0.4, 0, 0], UNIT)
    b = lorentz_boost(pt, [(0.3 + 0.4) / (1 + 0.12), 0, 0], UNIT)
    assert a.t == pytest.approx(b.t) and a.H == pytest.approx(b.H)
    np.testing.assert_allclose(a.x, b.x)


def test_commutative_hamiltonian_boost_invariant(rng):
    spec = ParticleSpec(1.3, 2.0)
    for _ in range(100):
        pt = on_shell_point(rng.normal(size=3), rng.normal(size=3) * 3, spec, t=rng.normal())
        beta = rng.normal(size=3)
        beta *= rng.uniform(0, 0.9) / np.linalg.norm(beta)
        before = extended_hamiltonian(pt, spec)
        # off-shell too: shift H so H1 != 0
        off = ExtendedPhasePoint(pt.t, pt.x, 1.7 * pt.H, pt.p)
        for point in (pt, off):
            h0 = extended_hamiltonian(point, spec)
            h1 = extended_hamiltonian(lorentz_boost(point, beta, spec), spec)
            scale = point.H**2 / (2 * spec.mass * spec.c**2) + 0.5 * spec.mass * spec.c**2
            assert abs(h1 - h0) <= 1e-10 * scale
        assert abs(before) < 1e-12 * pt.H**2


def test_nc_hamiltonian_not_boost_invariant(rng):
    spec = ParticleSpec(1.0, 1.0)
    params = NCParams(0.0, 0.5, 1.0)
    pt = on_shell_point([1.0, -2.0, 0.5], [0.3, 0.1, -0.4], spec, params, t=0.7)
    h0 = extended_hamiltonian(pt, spec, params)
    h1 = extended_hamiltonian(lorentz_boost(pt, [0.3, -0.2, 0.4], spec), spec, params)
    assert abs(h1 - h0) > 1e-3


def test_superluminal_boost_rejected():
    pt = ExtendedPhasePoint(0.0, [0, 0], 1.0, [0, 0])
    with pytest.raises(SuperluminalBoost):
        lorentz_boost(pt, [0.8, 0.6], UNIT)
