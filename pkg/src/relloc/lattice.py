"""Grids, complex fields and the unitary spectral transforms.

Three lattice modes are supported:

``line1d``
    Periodic line of length ``L`` with points ``x_j = -L/2 + j dx``.
``cartesian3d``
    Periodic cube, the ``line1d`` axis on each of x, y, z.
``radial3d``
    Spherically symmetric scalars on the half-offset radial grid
    ``r_j = (j + 1/2) dx`` covering ``(0, L)``. The transform is the
    spherical sine-kernel transform, discretised as a DST-IV so that the
    momentum grid is ``k_m = (m + 1/2) pi / L``.

All transforms use the symmetric convention

    psi(k) = (2 pi)^(-d/2) \\int exp(-i k.r) psi(r) d^d r

and are unitary with respect to the continuum measures (``dx``, ``dx^3``,
``4 pi r^2 dr`` and their momentum-space counterparts).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.fft as sfft

from .errors import RepresentationError

MODES = ("line1d", "radial3d", "cartesian3d")
POSITION = "position"
MOMENTUM = "momentum"

_SQRT_2PI = np.sqrt(2.0 * np.pi)


@dataclass(frozen=True)
class PhysicalParams:
    """Particle mass in units where hbar = c = 1."""

    mass: float = 1.0

    def __post_init__(self):
        if not np.isfinite(self.mass) or self.mass <= 0:
            raise ValueError(f"mass must be positive, got {self.mass!r}")

    @property
    def compton_wavelength(self) -> float:
        return 1.0 / self.mass


@dataclass(frozen=True)
class Lattice:
    mode: str
    points: int
    box_length: float

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown lattice mode {self.mode!r}; expected one of {MODES}")
        n = int(self.points)
        if n != self.points or n < 32 or n & (n - 1):
            raise ValueError(f"points must be a power of two >= 32, got {self.points!r}")
        if not np.isfinite(self.box_length) or self.box_length <= 0:
            raise ValueError(f"box length must be positive, got {self.box_length!r}")
        object.__setattr__(self, "points", n)
        object.__setattr__(self, "box_length", float(self.box_length))

    @property
    def dx(self) -> float:
        return self.box_length / self.points

    @property
    def dk(self) -> float:
        if self.mode == "radial3d":
            return np.pi / self.box_length
        return 2.0 * np.pi / self.box_length

    @property
    def ndim(self) -> int:
        return 1 if self.mode == "line1d" else 3

    @property
    def shape(self) -> tuple[int, ...]:
        if self.mode == "cartesian3d":
            return (self.points,) * 3
        return (self.points,)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    @property
    def r_max(self) -> float:
        """Largest radius free of wrap-around (half box) or reflection (radial edge)."""
        if self.mode == "radial3d":
            return self.box_length
        return 0.5 * self.box_length

    def doubled(self) -> "Lattice":
        """Same spacing, twice the box."""
        return Lattice(self.mode, 2 * self.points, 2.0 * self.box_length)

    def refined(self, factor: int) -> "Lattice":
        """Same box, ``factor`` times more points per axis."""
        return Lattice(self.mode, self.points * int(factor), self.box_length)

    # -- coordinates -------------------------------------------------------

    @cached_property
    def axis(self) -> np.ndarray:
        """1D position samples (x for periodic modes, r for radial)."""
        j = np.arange(self.points)
        if self.mode == "radial3d":
            return (j + 0.5) * self.dx
        return -0.5 * self.box_length + j * self.dx

    @cached_property
    def kaxis(self) -> np.ndarray:
        """1D momentum samples in transform order."""
        if self.mode == "radial3d":
            return (np.arange(self.points) + 0.5) * self.dk
        return 2.0 * np.pi * sfft.fftfreq(self.points, d=self.dx)

    @cached_property
    def _parity(self) -> np.ndarray:
        # exp(i k L/2) = (-1)^n on the periodic momentum grid
        n = np.rint(sfft.fftfreq(self.points) * self.points).astype(np.int64)
        return np.where(n % 2 == 0, 1.0, -1.0)

    @cached_property
    def coords(self) -> tuple[np.ndarray, ...]:
        """Position coordinates, broadcastable to ``shape``."""
        a = self.axis
        if self.mode == "cartesian3d":
            return (a[:, None, None], a[None, :, None], a[None, None, :])
        return (a,)

    @cached_property
    def kvec(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(kx, ky, kz) broadcastable to ``shape``.

        line1d puts its momentum on x. radial3d reports ``|k|`` on z, the
        frame used by the s-wave spinor reduction.
        """
        k = self.kaxis
        zero = np.zeros(1)
        if self.mode == "cartesian3d":
            return (k[:, None, None], k[None, :, None], k[None, None, :])
        if self.mode == "line1d":
            return (k, zero, zero)
        return (zero, zero, k)

    @cached_property
    def radius(self) -> np.ndarray:
        if self.mode == "cartesian3d":
            x, y, z = self.coords
            return np.sqrt(x * x + y * y + z * z)
        return np.abs(self.axis)

    @cached_property
    def kabs(self) -> np.ndarray:
        if self.mode == "cartesian3d":
            kx, ky, kz = self.kvec
            return np.sqrt(kx * kx + ky * ky + kz * kz)
        return np.abs(self.kaxis)

    @cached_property
    def position_measure(self) -> np.ndarray | float:
        if self.mode == "radial3d":
            r = self.axis
            return 4.0 * np.pi * r * r * self.dx
        return self.dx**self.ndim

    @cached_property
    def momentum_measure(self) -> np.ndarray | float:
        if self.mode == "radial3d":
            k = self.kaxis
            return 4.0 * np.pi * k * k * self.dk
        return self.dk**self.ndim

    def omega(self, mass: float) -> np.ndarray:
        """Positive branch sqrt(k^2 + m^2) on the momentum grid."""
        k = self.kabs
        return np.sqrt(k * k + mass * mass)


def integrate(values: np.ndarray, measure) -> float:
    """Quadrature with a fixed pairwise summation order."""
    w = np.broadcast_to(measure, np.shape(values))
    return float(np.sum(np.ravel(values * w)))


@dataclass(frozen=True, eq=False)
class ComplexField:
    lattice: Lattice
    rep: str
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.rep not in (POSITION, MOMENTUM):
            raise ValueError(f"representation must be position or momentum, got {self.rep!r}")
        v = np.array(self.values, dtype=np.complex128)
        if v.shape != self.lattice.shape:
            raise ValueError(f"field shape {v.shape} does not match lattice {self.lattice.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_function(cls, lattice: Lattice, func, rep: str = POSITION) -> "ComplexField":
        """Sample ``func`` (of the radius, or of x for line1d) on the grid."""
        arg = lattice.axis if lattice.mode == "line1d" else lattice.radius
        if rep == MOMENTUM:
            arg = lattice.kaxis if lattice.mode == "line1d" else lattice.kabs
        return cls(lattice, rep, func(arg))

    def _new(self, values) -> "ComplexField":
        return ComplexField(self.lattice, self.rep, values)

    def _check(self, other: "ComplexField"):
        if other.lattice != self.lattice or other.rep != self.rep:
            raise RepresentationError("fields live on different lattices or representations")

    def __add__(self, other):
        self._check(other)
        return self._new(self.values + other.values)

    def __sub__(self, other):
        self._check(other)
        return self._new(self.values - other.values)

    def __mul__(self, scalar):
        return self._new(self.values * complex(scalar))

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.values)

    @property
    def measure(self):
        lat = self.lattice
        return lat.position_measure if self.rep == POSITION else lat.momentum_measure

    def norm(self) -> float:
        return np.sqrt(integrate(np.abs(self.values) ** 2, self.measure))

    def inner(self, other: "ComplexField") -> complex:
        self._check(other)
        w = np.broadcast_to(self.measure, self.values.shape)
        return complex(np.sum(np.ravel(np.conj(self.values) * other.values * w)))


# -- transforms ---------------------------------------------------------------

def _radial_forward(lat: Lattice, f: np.ndarray) -> np.ndarray:
    r, k = lat.axis, lat.kaxis
    # scipy's unnormalised DST-IV carries a factor 2
    return np.sqrt(2.0 / np.pi) * lat.dx * sfft.dst(r * f, type=4) / (2.0 * k)


def _radial_inverse(lat: Lattice, g: np.ndarray) -> np.ndarray:
    r, k = lat.axis, lat.kaxis
    return np.sqrt(2.0 / np.pi) * lat.dk * sfft.dst(k * g, type=4) / (2.0 * r)


def _radial_derivative(lat: Lattice, g: np.ndarray) -> np.ndarray:
    """d/dr of the position field whose radial transform is ``g``."""
    r, k = lat.axis, lat.kaxis
    psi = _radial_inverse(lat, g)
    # u = r psi, u' = sqrt(2/pi) \int k^2 g cos(kr) dk
    du = np.sqrt(2.0 / np.pi) * lat.dk * sfft.dct(k * k * g, type=4) / 2.0
    return (du - psi) / r


def _periodic_forward(lat: Lattice, f: np.ndarray) -> np.ndarray:
    scale = (lat.dx / _SQRT_2PI) ** lat.ndim
    out = sfft.fftn(f) * scale
    return _apply_parity(lat, out)


def _periodic_inverse(lat: Lattice, g: np.ndarray) -> np.ndarray:
    scale = (lat.dk / _SQRT_2PI) ** lat.ndim * lat.size
    return sfft.ifftn(_apply_parity(lat, g)) * scale


def _apply_parity(lat: Lattice, a: np.ndarray) -> np.ndarray:
    s = lat._parity
    if lat.mode == "cartesian3d":
        return a * s[:, None, None] * s[None, :, None] * s[None, None, :]
    return a * s


def forward_array(lat: Lattice, values: np.ndarray) -> np.ndarray:
    """Position samples -> momentum samples (raw arrays)."""
    if lat.mode == "radial3d":
        return _radial_forward(lat, values)
    return _periodic_forward(lat, values)


def inverse_array(lat: Lattice, values: np.ndarray) -> np.ndarray:
    """Momentum samples -> position samples (raw arrays)."""
    if lat.mode == "radial3d":
        return _radial_inverse(lat, values)
    return _periodic_inverse(lat, values)


def to_momentum(f: ComplexField) -> ComplexField:
    if f.rep != POSITION:
        raise RepresentationError("to_momentum expects a position-representation field")
    return ComplexField(f.lattice, MOMENTUM, forward_array(f.lattice, f.values))


def to_position(f: ComplexField) -> ComplexField:
    if f.rep != MOMENTUM:
        raise RepresentationError("to_position expects a momentum-representation field")
    return ComplexField(f.lattice, POSITION, inverse_array(f.lattice, f.values))


def _require_momentum(f: ComplexField, op: str):
    if f.rep != MOMENTUM:
        raise RepresentationError(f"{op} needs a momentum-representation field")


OMEGA_POWERS = (-1.0, 0.5, 1.0, 2.0)


def omega_apply(f: ComplexField, power: float, mass: float) -> ComplexField:
    """Multiply by omega(k)^power with omega = +sqrt(k^2 + m^2)."""
    _require_momentum(f, "omega_apply")
    if float(power) not in OMEGA_POWERS:
        raise ValueError(f"power must be one of {OMEGA_POWERS}, got {power!r}")
    PhysicalParams(mass)
    w = f.lattice.omega(mass)
    if power == 1:
        factor = w
    elif power == 2:
        factor = w * w
    elif power == -1:
        factor = 1.0 / w
    else:
        factor = np.sqrt(w)
    return ComplexField(f.lattice, MOMENTUM, f.values * factor)


def gradient_apply(f: ComplexField) -> list[ComplexField]:
    """Spectral gradient.

    Periodic modes return one momentum-space field ``i k_j f`` per axis.
    radial3d returns a single *position*-space field holding ``d f / d r``,
    which is all ``|grad f|^2`` needs for a spherically symmetric scalar.
    """
    _require_momentum(f, "gradient_apply")
    lat = f.lattice
    if lat.mode == "radial3d":
        return [ComplexField(lat, POSITION, _radial_derivative(lat, f.values))]
    comps = lat.kvec[: lat.ndim]
    return [ComplexField(lat, MOMENTUM, 1j * kj * f.values) for kj in comps]


def gradient_position(lat: Lattice, values: np.ndarray) -> list[np.ndarray]:
    """Position-space gradient components of the momentum array ``values``."""
    if lat.mode == "radial3d":
        return [_radial_derivative(lat, values)]
    return [_periodic_inverse(lat, 1j * kj * values) for kj in lat.kvec[: lat.ndim]]


def make_lattice(mode: str, points: int, box_length: float) -> Lattice:
    return Lattice(mode, points, box_length)
