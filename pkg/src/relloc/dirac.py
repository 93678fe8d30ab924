"""Positive-energy free Dirac states.

Spinors are carried in momentum space in the Dirac-Pauli representation,
``alpha_j = [[0, s_j], [s_j, 0]]`` and ``beta = diag(1, 1, -1, -1)``.

On a ``radial3d`` lattice a spinor stands for the spin-up s-wave partial
wave: upper part ``f(k) chi_up`` and lower part ``g(k) (sigma.k_hat) chi_up``.
It is stored as the 4-spinor ``(f, 0, g, 0)`` evaluated in the frame where
``k`` points along z, so the same 4x4 projector applies unchanged. The
position density of that partial wave is spherically symmetric,
``rho(r) = |f(r)|^2 + |g(r)|^2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import kernels
from .errors import RepresentationError
from .lattice import (MOMENTUM, POSITION, ComplexField, Lattice, PhysicalParams,
                      forward_array, gradient_position, inverse_array)
from .profiles import DensityProfile, shell_profile
from .seeds import bump

SIGMA = np.array([
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=np.complex128)
BETA = np.diag([1.0, 1.0, -1.0, -1.0]).astype(np.complex128)
ALPHA = np.zeros((3, 4, 4), dtype=np.complex128)
for _j in range(3):
    ALPHA[_j, :2, 2:] = SIGMA[_j]
    ALPHA[_j, 2:, :2] = SIGMA[_j]

POSITIVE_TOL = 1e-10
NORM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class ProjectorKernel:
    """Lambda_+(k) = (omega + alpha.k + beta m) / (2 omega) on every lattice momentum."""

    lattice: Lattice
    mass: float

    @cached_property
    def _flat_k(self):
        shape = self.lattice.shape
        return tuple(np.ascontiguousarray(np.broadcast_to(c, shape).ravel(), dtype=np.float64)
                     for c in self.lattice.kvec)

    def apply(self, components: np.ndarray, t: float = 0.0) -> np.ndarray:
        """Lambda_+ psi, multiplied by exp(-i omega t) when ``t`` is nonzero."""
        shape = self.lattice.shape
        comps = np.asarray(components)
        if comps.shape != (4,) + shape:
            raise ValueError(f"spinor shape {comps.shape} does not match lattice {shape}")
        flat = np.ascontiguousarray(comps.reshape(4, -1), dtype=np.complex128)
        out = kernels.projector_apply(*self._flat_k, float(self.mass), flat, float(t))
        return np.asarray(out).reshape((4,) + shape)

    def hamiltonian(self) -> np.ndarray:
        """H(k) = alpha.k + beta m as an (n, 4, 4) stack."""
        kx, ky, kz = self._flat_k
        h = (kx[:, None, None] * ALPHA[0] + ky[:, None, None] * ALPHA[1]
             + kz[:, None, None] * ALPHA[2])
        return h + self.mass * BETA

    def omega(self) -> np.ndarray:
        kx, ky, kz = self._flat_k
        return np.sqrt(kx * kx + ky * ky + kz * kz + self.mass**2)

    def matrices(self) -> np.ndarray:
        """Materialised (n, 4, 4) stack of Lambda_+(k)."""
        w = self.omega()[:, None, None]
        return (w * np.eye(4) + self.hamiltonian()) / (2.0 * w)


def build_projector(lattice: Lattice, mass: float) -> ProjectorKernel:
    PhysicalParams(mass)
    return ProjectorKernel(lattice, float(mass))


@dataclass(frozen=True, eq=False)
class SpinorState:
    lattice: Lattice
    components: np.ndarray = field(repr=False)
    params: PhysicalParams
    positive: bool = False
    normalized: bool = False

    def __post_init__(self):
        lat = self.lattice
        c = np.array(self.components, dtype=np.complex128)
        if c.shape != (4,) + lat.shape:
            raise ValueError(f"spinor must have shape {(4,) + lat.shape}, got {c.shape}")
        if lat.mode == "radial3d" and (np.any(c[1] != 0) or np.any(c[3] != 0)):
            raise ValueError("radial3d spinors hold the spin-up s-wave: components 2 and 4 must vanish")
        c.setflags(write=False)
        object.__setattr__(self, "components", c)
        if self.positive and projector_residual(self) > POSITIVE_TOL:
            raise ValueError("state flagged positive-energy is not invariant under Lambda_+")
        if self.normalized and abs(self.norm() ** 2 - 1.0) > NORM_TOL:
            raise ValueError("state flagged normalized does not have unit norm")

    @property
    def mass(self) -> float:
        return self.params.mass

    def component(self, i: int) -> ComplexField:
        return ComplexField(self.lattice, MOMENTUM, self.components[i])

    def norm(self) -> float:
        w = np.broadcast_to(self.lattice.momentum_measure, self.lattice.shape)
        return float(np.sqrt(np.sum(np.ravel(np.abs(self.components) ** 2 * w))))

    def evolve(self, t: float) -> "SpinorState":
        """Exact evolution on h_+: multiply by exp(-i omega(k) t)."""
        if not self.positive:
            raise ValueError("phase evolution is exact only for positive-energy states")
        phase = np.exp(-1j * self.lattice.omega(self.mass) * t)
        return SpinorState(self.lattice, self.components * phase, self.params,
                           positive=True, normalized=self.normalized)

    def position_components(self, t: float = 0.0) -> list[np.ndarray]:
        """Position-space components at time ``t``.

        Periodic lattices give the four spinor components. radial3d gives the
        two radial amplitudes ``[f(r), g(r)]`` whose squares add to the density.
        """
        if not self.positive:
            raise ValueError("time evolution requires a positive-energy state")
        lat = self.lattice
        comps = build_projector(lat, self.mass).apply(self.components, t) if t else self.components
        if lat.mode == "radial3d":
            f = inverse_array(lat, comps[0])
            # lower = -i sigma.grad Q chi with Q the transform of g(k)/k
            g = gradient_position(lat, comps[2] / lat.kaxis)[0]
            return [f, g]
        return [inverse_array(lat, c) for c in comps]


def spinor_from_position(lattice: Lattice, params: PhysicalParams, components) -> SpinorState:
    """Transform four position-space components into a momentum-space spinor.

    For radial3d only the first component (spin-up upper s-wave) may be set.
    """
    comps = [np.asarray(c, dtype=np.complex128) for c in components]
    if len(comps) != 4:
        raise ValueError("need four spinor components")
    if lattice.mode == "radial3d" and any(np.any(c != 0) for c in comps[1:]):
        raise ValueError("radial3d seeds may only populate the upper spin-up component")
    mom = np.stack([forward_array(lattice, c) if np.any(c != 0) else np.zeros(lattice.shape, complex)
                    for c in comps])
    return SpinorState(lattice, mom, params)


def bump_seed(lattice: Lattice, params: PhysicalParams, radius: float) -> SpinorState:
    """Compactly supported spin-up seed: the C-infinity bump placed in psi_1."""
    zero = np.zeros(lattice.shape)
    return spinor_from_position(lattice, params, [bump(lattice.radius, radius), zero, zero, zero])


def project_positive(spinor: SpinorState, kernel: ProjectorKernel | None = None,
                     renormalize: bool = False) -> SpinorState:
    if kernel is None:
        kernel = build_projector(spinor.lattice, spinor.mass)
    if kernel.lattice != spinor.lattice:
        raise ValueError("projector kernel and spinor live on different lattices")
    if kernel.mass != spinor.mass:
        raise ValueError("projector kernel and spinor have different masses")
    out = kernel.apply(spinor.components)
    if spinor.lattice.mode == "radial3d":
        # components 2 and 4 stay zero analytically; drop signed zeros
        out[1] = 0.0
        out[3] = 0.0
    if renormalize:
        n = float(np.sqrt(np.sum(np.ravel(np.abs(out) ** 2 * np.broadcast_to(
            spinor.lattice.momentum_measure, spinor.lattice.shape)))))
        if n == 0:
            raise ValueError("projection of the seed vanished")
        out = out / n
    return SpinorState(spinor.lattice, out, spinor.params, positive=True, normalized=renormalize)


def _sigma_dot_k(lat: Lattice, a: np.ndarray, b: np.ndarray):
    kx, ky, kz = lat.kvec
    return kz * a + (kx - 1j * ky) * b, (kx + 1j * ky) * a - kz * b


def lower_from_upper(upper: tuple[ComplexField, ComplexField], lattice: Lattice,
                     mass: float) -> tuple[ComplexField, ComplexField]:
    """(psi_3, psi_4) = (sigma.k) / (sqrt(m^2 + k^2) + m) (psi_1, psi_2)."""
    u1, u2 = upper
    for u in (u1, u2):
        if u.rep != MOMENTUM:
            raise RepresentationError("lower_from_upper needs momentum-representation fields")
        if u.lattice != lattice:
            raise ValueError("upper components are not on the given lattice")
    denom = lattice.omega(mass) + mass
    l1, l2 = _sigma_dot_k(lattice, u1.values, u2.values)
    return ComplexField(lattice, MOMENTUM, l1 / denom), ComplexField(lattice, MOMENTUM, l2 / denom)


def constraint_residual(spinor: SpinorState) -> float:
    """Max deviation of the lower pair from (sigma.k)/(omega + m) times the upper pair,
    relative to the largest component magnitude."""
    c = spinor.components
    l3, l4 = lower_from_upper((spinor.component(0), spinor.component(1)), spinor.lattice, spinor.mass)
    scale = np.max(np.abs(c))
    if scale == 0:
        return 0.0
    return float(max(np.max(np.abs(c[2] - l3.values)), np.max(np.abs(c[3] - l4.values))) / scale)


def projector_residual(spinor: SpinorState) -> float:
    """||Lambda_+ psi - psi|| / ||psi||."""
    kern = build_projector(spinor.lattice, spinor.mass)
    diff = kern.apply(spinor.components) - spinor.components
    w = np.broadcast_to(spinor.lattice.momentum_measure, spinor.lattice.shape)
    num = np.sum(np.ravel(np.abs(diff) ** 2 * w))
    den = np.sum(np.ravel(np.abs(spinor.components) ** 2 * w))
    return 0.0 if den == 0 else float(np.sqrt(num / den))


def dirac_density(spinor: SpinorState, t: float = 0.0, require_normalized: bool = False,
                  keep_pointwise: bool = True) -> DensityProfile:
    """rho(r, t) = sum_i |psi_i(r, t)|^2, with its shell profile."""
    if require_normalized and not spinor.normalized:
        raise ValueError("probability interpretation requested for an unnormalized spinor")
    comps = spinor.position_components(t)
    rho = np.zeros(spinor.lattice.shape)
    for c in comps:
        rho += c.real**2 + c.imag**2
    return shell_profile(spinor.lattice, rho, t, keep_pointwise=keep_pointwise)


def n_ball_dirac(spinor: SpinorState, radius: float, t: float = 0.0) -> float:
    """Probability of finding the particle inside the ball B_r at time t."""
    if not spinor.normalized:
        raise ValueError("n_ball_dirac needs a normalized positive-energy spinor")
    if radius <= 0:
        if radius == 0:
            return 0.0
        raise ValueError("radius must be non-negative")
    prof = dirac_density(spinor, t, keep_pointwise=False)
    prof._check_radius(radius)
    return min(1.0, max(0.0, prof.ball(radius)))


def plane_wave_spinor(lattice: Lattice, params: PhysicalParams, mode_index, spin: int = 0) -> SpinorState:
    """Positive-energy spinor concentrated on a single lattice momentum.

    ``mode_index`` indexes the momentum grid (an int for 1D, a 3-tuple for
    cartesian3d). The spinor is the normalised positive-energy eigenvector
    with upper part along spin ``spin`` (0 up, 1 down).
    """
    idx = (mode_index,) if np.ndim(mode_index) == 0 else tuple(mode_index)
    comps = np.zeros((4,) + lattice.shape, dtype=np.complex128)
    comps[(spin,) + idx] = 1.0
    kern = build_projector(lattice, params.mass)
    proj = kern.apply(comps)
    meas = np.broadcast_to(lattice.momentum_measure, lattice.shape)[idx]
    proj /= np.sqrt(np.sum(np.abs(proj[(slice(None),) + idx]) ** 2) * meas)
    if lattice.mode == "radial3d":
        proj[1] = 0.0
        proj[3] = 0.0
    return SpinorState(lattice, proj, params, positive=True, normalized=True)


__all__ = [
    "ALPHA", "BETA", "SIGMA", "POSITION", "ProjectorKernel", "SpinorState", "build_projector",
    "bump_seed", "constraint_residual", "dirac_density", "lower_from_upper", "n_ball_dirac",
    "plane_wave_spinor", "project_positive", "projector_residual", "spinor_from_position",
]
