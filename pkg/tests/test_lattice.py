import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relloc import ComplexField, Lattice, make_lattice
from relloc.errors import RepresentationError
from relloc.lattice import (MOMENTUM, POSITION, gradient_apply, omega_apply, to_momentum,
                            to_position)
from relloc.seeds import exponential, exponential_transform

from conftest import random_values


# -- construction -------------------------------------------------------------

def test_line1d_spacings():
    lat = make_lattice("line1d", 64, 2 * np.pi)
    assert lat.dx == pytest.approx(2 * np.pi / 64, rel=1e-15)
    assert lat.dk == pytest.approx(1.0, rel=1e-15)


def test_radial_samples_at_half_integers():
    lat = make_lattice("radial3d", 256, 40.0)
    np.testing.assert_allclose(lat.axis, lat.dx * (np.arange(256) + 0.5), rtol=0, atol=1e-14)
    assert lat.axis[0] > 0 and lat.axis[-1] < lat.box_length


def test_cartesian_shape_and_dk():
    lat = make_lattice("cartesian3d", 32, 20.0)
    assert lat.shape == (32, 32, 32)
    assert lat.dk == pytest.approx(2 * np.pi / 20)


@pytest.mark.parametrize("mode", ["line1d", "cartesian3d"])
def test_periodic_reciprocity(mode):
    lat = Lattice(mode, 128, 17.3)
    assert abs(lat.dx * lat.dk * lat.points - 2 * np.pi) < 1e-12


def test_radial_reciprocity():
    lat = Lattice("radial3d", 128, 17.3)
    assert abs(lat.dx * lat.dk * lat.points - np.pi) < 1e-12


@pytest.mark.parametrize("points", [0, 16, 48, 100, 31.5])
def test_rejects_bad_points(points):
    with pytest.raises(ValueError):
        make_lattice("line1d", points, 10.0)


@pytest.mark.parametrize("length", [0.0, -1.0, float("nan")])
def test_rejects_bad_box(length):
    with pytest.raises(ValueError):
        make_lattice("line1d", 64, length)


def test_rejects_unknown_mode():
    with pytest.raises(ValueError):
        make_lattice("polar2d", 64, 10.0)


def test_doubled_keeps_spacing():
    lat = Lattice("radial3d", 64, 8.0)
    d = lat.doubled()
    assert d.dx == lat.dx and d.points == 128


# -- transforms ---------------------------------------------------------------

def test_parseval_and_round_trip(small_lattice, rng):
    f = ComplexField(small_lattice, POSITION, random_values(rng, small_lattice.shape))
    g = to_momentum(f)
    assert g.rep == MOMENTUM
    assert abs(g.norm() - f.norm()) < 1e-12 * f.norm()
    back = to_position(g)
    assert (back - f).norm() < 1e-12 * f.norm()


@settings(max_examples=25, deadline=None)
@given(a=st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
       b=st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
       seed=st.integers(0, 2**32 - 1))
def test_transform_linearity(a, b, seed):
    lat = Lattice("radial3d", 64, 10.0)
    rng = np.random.default_rng(seed)
    f = ComplexField(lat, POSITION, random_values(rng, lat.shape))
    g = ComplexField(lat, POSITION, random_values(rng, lat.shape))
    lhs = to_momentum(a * f + b * g).values
    rhs = a * to_momentum(f).values + b * to_momentum(g).values
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * (1 + np.max(np.abs(rhs)))


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), mode=st.sampled_from(["line1d", "radial3d"]))
def test_parseval_property(seed, mode):
    lat = Lattice(mode, 128, 15.0)
    f = ComplexField(lat, POSITION, random_values(np.random.default_rng(seed), lat.shape))
    assert abs(to_momentum(f).norm() / f.norm() - 1) < 1e-12


def test_representation_mismatch():
    lat = Lattice("line1d", 64, 10.0)
    f = ComplexField(lat, POSITION, np.ones(64))
    with pytest.raises(RepresentationError):
        to_position(f)
    with pytest.raises(RepresentationError):
        to_momentum(to_momentum(f))


def test_gaussian_self_dual_line():
    lat = Lattice("line1d", 256, 40.0)
    g = to_momentum(ComplexField.from_function(lat, lambda x: np.exp(-x**2 / 2)))
    np.testing.assert_allclose(g.values, np.exp(-lat.kaxis**2 / 2), rtol=0, atol=1e-13)


def test_gaussian_self_dual_radial():
    lat = Lattice("radial3d", 512, 20.0)
    g = to_momentum(ComplexField.from_function(lat, lambda r: np.exp(-r**2 / 2)))
    np.testing.assert_allclose(g.values, np.exp(-lat.kaxis**2 / 2), rtol=0, atol=1e-12)


def test_gaussian_self_dual_cartesian():
    lat = Lattice("cartesian3d", 32, 16.0)
    g = to_momentum(ComplexField.from_function(lat, lambda r: np.exp(-r**2 / 2)))
    # aliasing floor exp(-k_nyq^2 / 2) ~ 3e-9 on this grid
    np.testing.assert_allclose(g.values, np.exp(-lat.kabs**2 / 2), rtol=0, atol=1e-8)


def test_exponential_pair_k0_value():
    assert exponential_transform(0.0, 1.0) == pytest.approx(8 * np.pi / (2 * np.pi) ** 1.5, rel=1e-15)
    assert exponential_transform(0.0, 1.0) == pytest.approx(1.5958, abs=1e-4)


def test_exponential_pair_radial_coarse():
    # the acceptance suite runs this at 4096 points; 1024 is a quick smoke check
    lat = Lattice("radial3d", 1024, 40.0)
    F = to_momentum(ComplexField(lat, POSITION, exponential(lat.axis, 1.0))).values.real
    sel = lat.kaxis <= 10
    rel = np.abs(F[sel] / exponential_transform(lat.kaxis[sel], 1.0) - 1)
    assert rel.max() < 1e-4


# -- omega and gradient -------------------------------------------------------

def _momentum_field(lat, rng):
    return ComplexField(lat, MOMENTUM, random_values(rng, lat.shape))


def test_omega_at_zero_and_compton():
    lat = Lattice("line1d", 64, 2 * np.pi)  # dk = 1
    f = ComplexField(lat, MOMENTUM, np.ones(64))
    w = omega_apply(f, 1, 1.0).values
    assert w[0] == pytest.approx(1.0)
    assert w[1] == pytest.approx(np.sqrt(2.0), rel=1e-15)


def test_omega_inverse_pair(small_lattice, rng):
    f = _momentum_field(small_lattice, rng)
    g = omega_apply(omega_apply(f, -1, 1.3), 1, 1.3)
    assert np.max(np.abs(g.values - f.values)) < 1e-14 * np.max(np.abs(f.values))


def test_omega_square_and_root(small_lattice, rng):
    f = _momentum_field(small_lattice, rng)
    twice = omega_apply(omega_apply(f, 1, 0.7), 1, 0.7)
    np.testing.assert_allclose(omega_apply(f, 2, 0.7).values, twice.values, rtol=1e-14)
    half = omega_apply(omega_apply(f, 0.5, 0.7), 0.5, 0.7)
    np.testing.assert_allclose(omega_apply(f, 1, 0.7).values, half.values, rtol=1e-14)


def test_omega_errors():
    lat = Lattice("line1d", 64, 10.0)
    with pytest.raises(RepresentationError):
        omega_apply(ComplexField(lat, POSITION, np.ones(64)), 1, 1.0)
    with pytest.raises(ValueError):
        omega_apply(ComplexField(lat, MOMENTUM, np.ones(64)), 3, 1.0)
    with pytest.raises(ValueError):
        omega_apply(ComplexField(lat, MOMENTUM, np.ones(64)), 1, -1.0)


def test_gradient_plane_wave():
    lat = Lattice("cartesian3d", 32, 10.0)
    vals = np.zeros(lat.shape, complex)
    vals[2, 31, 5] = 1.0
    grads = gradient_apply(ComplexField(lat, MOMENTUM, vals))
    k = [lat.kaxis[2], lat.kaxis[31], lat.kaxis[5]]
    for g, kj in zip(grads, k):
        assert g.values[2, 31, 5] == pytest.approx(1j * kj)
        assert np.count_nonzero(g.values) <= 1


def test_gradient_constant_is_zero():
    lat = Lattice("line1d", 64, 10.0)
    g = gradient_apply(to_momentum(ComplexField(lat, POSITION, np.full(64, 2.5))))[0]
    assert np.max(np.abs(to_position(g).values)) < 1e-13


def test_gradient_gaussian_line():
    lat = Lattice("line1d", 256, 40.0)
    f = ComplexField.from_function(lat, lambda x: np.exp(-x**2 / 2))
    d = to_position(gradient_apply(to_momentum(f))[0]).values
    x = lat.axis
    assert np.max(np.abs(d - (-x * np.exp(-x**2 / 2)))) < 1e-10


def test_gradient_gaussian_radial():
    lat = Lattice("radial3d", 512, 20.0)
    f = ComplexField.from_function(lat, lambda r: np.exp(-r**2 / 2))
    d = gradient_apply(to_momentum(f))[0]
    assert d.rep == POSITION
    r = lat.axis
    assert np.max(np.abs(d.values - (-r * np.exp(-r**2 / 2)))) < 1e-10


def test_gradient_needs_momentum():
    lat = Lattice("line1d", 64, 10.0)
    with pytest.raises(RepresentationError):
        gradient_apply(ComplexField(lat, POSITION, np.ones(64)))


# -- field container ----------------------------------------------------------

def test_field_is_immutable():
    lat = Lattice("line1d", 64, 10.0)
    f = ComplexField(lat, POSITION, np.ones(64))
    with pytest.raises(ValueError):
        f.values[0] = 2.0


def test_field_mismatch():
    a = ComplexField(Lattice("line1d", 64, 10.0), POSITION, np.ones(64))
    b = ComplexField(Lattice("line1d", 64, 11.0), POSITION, np.ones(64))
    with pytest.raises(RepresentationError):
        a + b
    with pytest.raises(ValueError):
        ComplexField(Lattice("line1d", 64, 10.0), POSITION, np.ones(32))
    with pytest.raises(ValueError):
        ComplexField(Lattice("line1d", 64, 10.0), "spectral", np.ones(64))


def test_inner_product_consistent(small_lattice, rng):
    f = ComplexField(small_lattice, POSITION, random_values(rng, small_lattice.shape))
    g = ComplexField(small_lattice, POSITION, random_values(rng, small_lattice.shape))
    ip_x = f.inner(g)
    ip_k = to_momentum(f).inner(to_momentum(g))
    assert abs(ip_x - ip_k) < 1e-11 * f.norm() * g.norm()
    assert f.inner(f).real == pytest.approx(f.norm() ** 2, rel=1e-13)
