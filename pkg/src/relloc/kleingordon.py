"""Positive-frequency Klein-Gordon states.

A state is the momentum amplitude ``psi_hat(k)`` with

    psi(r, t)    = F^-1[ psi_hat / omega * exp(-i omega t) ]
    dpsi/dt(r,t) = F^-1[ -i psi_hat * exp(-i omega t) ]

so ``psi_hat`` is the transform of ``i dpsi/dt`` at t = 0 and
``psi_hat / omega`` the transform of ``psi``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NegativeFrequencyError
from .lattice import (MOMENTUM, POSITION, ComplexField, Lattice, PhysicalParams,
                      forward_array, gradient_position, integrate, inverse_array)
from .profiles import DensityProfile, shell_profile

ENERGY_TOL = 1e-9
PAIR_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class KGState:
    lattice: Lattice
    amplitude: np.ndarray = field(repr=False)
    params: PhysicalParams
    energy_normalized: bool = False

    def __post_init__(self):
        a = np.array(self.amplitude, dtype=np.complex128)
        if a.shape != self.lattice.shape:
            raise ValueError(f"amplitude shape {a.shape} does not match lattice {self.lattice.shape}")
        a.setflags(write=False)
        object.__setattr__(self, "amplitude", a)

    @property
    def mass(self) -> float:
        return self.params.mass

    @property
    def field(self) -> ComplexField:
        return ComplexField(self.lattice, MOMENTUM, self.amplitude)

    def fields(self, t: float = 0.0):
        """(psi, dpsi/dt, [grad components]) in position space at time t."""
        lat = self.lattice
        w = lat.omega(self.mass)
        a = self.amplitude if t == 0 else self.amplitude * np.exp(-1j * w * t)
        psi = inverse_array(lat, a / w)
        dpsi = inverse_array(lat, -1j * a)
        grad = gradient_position(lat, a / w)
        return psi, dpsi, grad

    def total_energy_spectral(self) -> float:
        """Integral of T evaluated in momentum space: 2 ||psi_hat||^2."""
        return 2.0 * integrate(np.abs(self.amplitude) ** 2, self.lattice.momentum_measure)


def from_momentum(lattice: Lattice, params: PhysicalParams, amplitude) -> KGState:
    return KGState(lattice, amplitude, params)


def pair_residual(lattice: Lattice, mass: float, psi0, dpsi0) -> tuple[np.ndarray, float]:
    """psi_hat from i dpsi/dt, and the relative mismatch against omega * F[psi]."""
    a = forward_array(lattice, 1j * np.asarray(dpsi0, dtype=np.complex128))
    b = lattice.omega(mass) * forward_array(lattice, np.asarray(psi0, dtype=np.complex128))
    meas = lattice.momentum_measure
    num = integrate(np.abs(a - b) ** 2, meas)
    den = max(integrate(np.abs(a) ** 2, meas), integrate(np.abs(b) ** 2, meas))
    return a, (0.0 if den == 0 else float(np.sqrt(num / den)))


def from_position_pair(psi0: ComplexField, dpsi0: ComplexField, params: PhysicalParams,
                       tol: float = PAIR_TOL) -> KGState:
    """Build a state from (psi, dpsi/dt) at t = 0.

    Raises NegativeFrequencyError when the pair is not a positive-frequency
    solution (relative residual above ``tol``).
    """
    if psi0.rep != POSITION or dpsi0.rep != POSITION:
        raise ValueError("initial data must be in the position representation")
    if psi0.lattice != dpsi0.lattice:
        raise ValueError("initial data live on different lattices")
    amp, res = pair_residual(psi0.lattice, params.mass, psi0.values, dpsi0.values)
    if res > tol:
        raise NegativeFrequencyError(
            f"pair residual {res:.3e} exceeds {tol:.1e}: data has negative-frequency content")
    return KGState(psi0.lattice, amp, params)


def positive_frequency_completion(psi0: ComplexField, params: PhysicalParams) -> KGState:
    """State with the given psi(., 0) and dpsi/dt = -i sqrt(-lap + m^2) psi."""
    if psi0.rep != POSITION:
        raise ValueError("psi0 must be in the position representation")
    lat = psi0.lattice
    return KGState(lat, lat.omega(params.mass) * forward_array(lat, psi0.values), params)


def evolve_kg(state: KGState, t: float) -> KGState:
    if t == 0:
        return state
    phase = np.exp(-1j * state.lattice.omega(state.mass) * t)
    return KGState(state.lattice, state.amplitude * phase, state.params, state.energy_normalized)


def energy_density_array(state: KGState, t: float = 0.0) -> np.ndarray:
    psi, dpsi, grad = state.fields(t)
    m2 = state.mass**2
    T = dpsi.real**2 + dpsi.imag**2 + m2 * (psi.real**2 + psi.imag**2)
    for g in grad:
        T += g.real**2 + g.imag**2
    return T


def energy_density(state: KGState, t: float = 0.0, keep_pointwise: bool = True) -> DensityProfile:
    """T = |grad psi|^2 + |dpsi/dt|^2 + m^2 |psi|^2 and its shell profile."""
    return shell_profile(state.lattice, energy_density_array(state, t), t, keep_pointwise)


def total_energy(state: KGState, t: float = 0.0) -> float:
    return integrate(energy_density_array(state, t), state.lattice.position_measure)


def charge_density_array(state: KGState, t: float = 0.0) -> np.ndarray:
    psi, dpsi, _ = state.fields(t)
    # (i/2)(psi* dpsi - psi dpsi*) = -Im(psi* dpsi)
    return -(np.conj(psi) * dpsi).imag


def charge_density(state: KGState, t: float = 0.0) -> DensityProfile:
    """Signed charge density rho_c; the profile keeps the pointwise values."""
    return shell_profile(state.lattice, charge_density_array(state, t), t, keep_pointwise=True)


def total_charge(state: KGState, t: float = 0.0) -> float:
    return integrate(charge_density_array(state, t), state.lattice.position_measure)


def normalize_energy(state: KGState) -> KGState:
    """Rescale so that the position-space integral of T at t = 0 is one."""
    e = total_energy(state, 0.0)
    if not e > 0:
        raise ValueError("cannot energy-normalize a zero state")
    out = KGState(state.lattice, state.amplitude / np.sqrt(e), state.params)
    # one refinement step keeps the integral at 1 to round-off
    e2 = total_energy(out, 0.0)
    return KGState(state.lattice, out.amplitude / np.sqrt(e2), state.params, energy_normalized=True)


def n_ball_kg(state: KGState, radius: float, t: float = 0.0) -> float:
    """Fraction of the energy inside B_r at time t."""
    if not state.energy_normalized:
        raise ValueError("n_ball_kg needs an energy-normalized state")
    if radius < 0:
        raise ValueError("radius must be non-negative")
    if radius == 0:
        return 0.0
    prof = energy_density(state, t, keep_pointwise=False)
    prof._check_radius(radius)
    return min(1.0, max(0.0, prof.ball(radius)))


def gaussian_packet(lattice: Lattice, center_k: float, width_k: float, weight: float = 1.0) -> np.ndarray:
    """Momentum amplitude of a Gaussian packet centred on k along the lattice's first axis."""
    k = lattice.kvec[0] if lattice.mode != "radial3d" else lattice.kaxis
    k = np.broadcast_to(k, lattice.shape)
    g = np.exp(-0.5 * ((k - center_k) / width_k) ** 2).astype(np.complex128)
    if lattice.mode == "cartesian3d":
        kx, ky, kz = lattice.kvec
        g = g * np.exp(-0.5 * (ky**2 + kz**2) / width_k**2)
    n = np.sqrt(integrate(np.abs(g) ** 2, lattice.momentum_measure))
    return weight * g / n
