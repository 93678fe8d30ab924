import json
from pathlib import Path

import numpy as np
import pytest

from relloc import ComplexField, Lattice, PhysicalParams
from relloc import kleingordon as kg
from relloc.errors import BoxEdgeError, NegativeFrequencyError
from relloc.lattice import POSITION, forward_array, inverse_array
from relloc.seeds import bump

M = PhysicalParams(1.0)
ORACLE = json.loads((Path(__file__).parent / "fixtures" / "oracle.json").read_text())


def _bump_state(lat, R=1.0):
    psi0 = ComplexField.from_function(lat, lambda r: bump(r, R))
    return kg.normalize_energy(kg.positive_frequency_completion(psi0, M))


@pytest.fixture(scope="module")
def radial():
    return Lattice("radial3d", 2048, 32.0)


def test_completion_pair_accepted(radial):
    psi0 = ComplexField.from_function(radial, lambda r: bump(r, 1.0))
    w = radial.omega(1.0)
    dpsi = inverse_array(radial, -1j * w * forward_array(radial, psi0.values))
    amp, res = kg.pair_residual(radial, 1.0, psi0.values, dpsi)
    assert res < 1e-10
    st = kg.from_position_pair(psi0, ComplexField(radial, POSITION, dpsi), M)
    np.testing.assert_allclose(st.fields(0.0)[0], psi0.values, atol=1e-13)


def test_negative_frequency_rejected(radial):
    psi0 = ComplexField.from_function(radial, lambda r: bump(r, 1.0))
    w = radial.omega(1.0)
    dpsi = inverse_array(radial, +1j * w * forward_array(radial, psi0.values))
    with pytest.raises(NegativeFrequencyError):
        kg.from_position_pair(psi0, ComplexField(radial, POSITION, dpsi), M)


def test_plane_wave_pair_single_mode():
    lat = Lattice("line1d", 64, 2 * np.pi)
    k0 = lat.kaxis[3]
    x = lat.axis
    psi = np.exp(1j * k0 * x)
    dpsi = -1j * np.sqrt(k0**2 + 1) * psi
    st = kg.from_position_pair(ComplexField(lat, POSITION, psi), ComplexField(lat, POSITION, dpsi), M)
    mags = np.abs(st.amplitude)
    assert np.argmax(mags) == 3
    assert np.sum(mags > 1e-10 * mags.max()) == 1


def test_pair_must_be_positions(radial):
    f = ComplexField.from_function(radial, lambda r: bump(r, 1.0))
    from relloc.lattice import to_momentum
    with pytest.raises(ValueError):
        kg.from_position_pair(to_momentum(f), f, M)


def test_evolve_identity_and_group_law(radial):
    st = _bump_state(radial)
    assert kg.evolve_kg(st, 0.0) is st
    a = kg.evolve_kg(kg.evolve_kg(st, 1.3), 2.2).amplitude
    b = kg.evolve_kg(st, 3.5).amplitude
    assert np.max(np.abs(a - b)) < 1e-12 * np.max(np.abs(b))


def test_single_mode_full_period():
    lat = Lattice("line1d", 64, 20.0)
    amp = np.zeros(64, complex)
    amp[5] = 1.0
    st = kg.KGState(lat, amp, M)
    T = 2 * np.pi / lat.omega(1.0)[5]
    assert abs(kg.evolve_kg(st, T).amplitude[5] - 1.0) < 1e-12


def test_energy_conserved(radial):
    st = _bump_state(radial)
    for t in [0.0, 1.0, 5.0, 10.0]:
        assert abs(kg.total_energy(st, t) - 1.0) < 1e-9
    assert st.total_energy_spectral() == pytest.approx(1.0, abs=1e-12)


def test_energy_density_nonnegative(radial):
    st = _bump_state(radial)
    for t in [0.0, 3.0]:
        assert np.all(kg.energy_density_array(st, t) >= 0)


def test_plane_wave_energy_uniform():
    lat = Lattice("cartesian3d", 32, 10.0)
    amp = np.zeros(lat.shape, complex)
    amp[2, 5, 30] = 0.3 + 0.1j
    st = kg.KGState(lat, amp, M)
    T = kg.energy_density_array(st, 0.4)
    assert np.ptp(T) < 1e-12 * T.mean()
    rc = kg.charge_density_array(st, 0.4)
    assert np.all(rc > 0) and np.ptp(rc) < 1e-12 * rc.mean()
    psi = st.fields(0.4)[0]
    np.testing.assert_allclose(rc, lat.omega(1.0)[2, 5, 30] * np.abs(psi) ** 2, rtol=1e-12)


def test_normalize_energy_projective(radial):
    psi0 = ComplexField.from_function(radial, lambda r: bump(r, 1.0))
    st = kg.positive_frequency_completion(psi0, M)
    a = kg.normalize_energy(st)
    b = kg.normalize_energy(kg.KGState(radial, 3 * st.amplitude, M))
    c = kg.normalize_energy(a)
    assert np.max(np.abs(a.amplitude - b.amplitude)) < 1e-12 * np.max(np.abs(a.amplitude))
    assert np.max(np.abs(a.amplitude - c.amplitude)) < 1e-12 * np.max(np.abs(a.amplitude))
    with pytest.raises(ValueError):
        kg.normalize_energy(kg.KGState(radial, np.zeros(radial.shape), M))


def test_normalize_random_state(rng):
    lat = Lattice("line1d", 256, 40.0)
    amp = (rng.standard_normal(256) + 1j * rng.standard_normal(256)) * np.exp(-lat.kaxis**2)
    st = kg.normalize_energy(kg.KGState(lat, amp, M))
    assert abs(kg.total_energy(st) - 1) < 1e-9


def test_charge_conserved_and_negative():
    lat = Lattice("line1d", 4096, 64.0)
    amp = kg.gaussian_packet(lat, 0.2, 0.5) + kg.gaussian_packet(lat, 5.0, 0.25)
    st = kg.normalize_energy(kg.KGState(lat, amp, M))
    assert abs(kg.total_charge(st, 0.0) - kg.total_charge(st, 7.0)) < 1e-10
    rc = kg.charge_density(st).pointwise
    assert rc.min() < 0 and -rc.min() > 1e-6 * np.abs(rc).max()


def test_single_slow_packet_charge_positive():
    lat = Lattice("line1d", 1024, 64.0)
    st = kg.normalize_energy(kg.KGState(lat, kg.gaussian_packet(lat, 0.0, 0.3), M))
    rc = kg.charge_density_array(st)
    # only round-off in the far field may dip below zero
    assert rc.min() > -1e-14 * rc.max()


def test_gaussian_packet_unit_norm():
    lat = Lattice("cartesian3d", 32, 16.0)
    a = kg.gaussian_packet(lat, 1.0, 0.7, weight=2.0)
    from relloc.lattice import integrate
    assert integrate(np.abs(a) ** 2, lat.momentum_measure) == pytest.approx(4.0, rel=1e-12)


def test_n_ball_kg(radial):
    st = _bump_state(radial)
    assert kg.n_ball_kg(st, 0.0) == 0.0
    assert kg.n_ball_kg(st, 31.0) >= 1 - 1e-6
    with pytest.raises(BoxEdgeError):
        kg.n_ball_kg(st, 33.0)
    with pytest.raises(ValueError):
        kg.n_ball_kg(kg.KGState(radial, st.amplitude, M), 1.0)


def test_n_ball_kg_oracle_fixture():
    fx = ORACLE["kg_n_ball_exp"]
    lat = Lattice("radial3d", fx["points"], fx["box_length"])
    st = kg.normalize_energy(kg.positive_frequency_completion(
        ComplexField.from_function(lat, lambda r: np.exp(-r)), M))
    assert kg.n_ball_kg(st, fx["radius"]) == pytest.approx(fx["value"], abs=1e-7)


def test_amplitude_shape_check():
    with pytest.raises(ValueError):
        kg.KGState(Lattice("line1d", 64, 10.0), np.zeros(32), M)
