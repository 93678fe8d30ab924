"""Radial density profiles with shell binning and ball integrals."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import BoxEdgeError
from .lattice import Lattice, integrate


@dataclass(frozen=True, eq=False)
class DensityProfile:
    """A real density reduced to radial shells.

    ``shell`` is the density per unit radius (``4 pi r^2 rho`` for a
    spherically symmetric 3D density), ``mass`` the integral over each bin,
    ``edges`` the bin boundaries in radius.
    """

    t: float
    r: np.ndarray
    shell: np.ndarray
    mass: np.ndarray
    edges: np.ndarray
    bin_count: np.ndarray
    dx: float
    r_max: float
    mode: str
    pointwise: np.ndarray | None = field(default=None, repr=False)

    @property
    def total(self) -> float:
        return float(np.sum(self.mass))

    def _check_radius(self, radius: float):
        if radius < 0:
            raise ValueError("radius must be non-negative")
        if radius > self.r_max * (1 + 1e-12):
            raise BoxEdgeError(f"radius {radius} exceeds the usable box radius {self.r_max}")

    def ball(self, radius: float) -> float:
        """Integral of the density over the ball of the given radius."""
        self._check_radius(radius)
        cum = np.concatenate([[0.0], np.cumsum(self.mass)])
        return float(np.interp(radius, self.edges, cum))

    def exterior(self, radius) -> np.ndarray | float:
        """Integral outside the ball, summed from the far end to avoid cancellation."""
        rr = np.atleast_1d(np.asarray(radius, dtype=float))
        for x in rr:
            self._check_radius(float(x))
        tail = np.concatenate([np.cumsum(self.mass[::-1])[::-1], [0.0]])
        out = np.interp(rr, self.edges, tail)
        return float(out[0]) if np.ndim(radius) == 0 else out

    def normalized(self) -> "DensityProfile":
        tot = self.total
        return DensityProfile(
            self.t, self.r, self.shell / tot, self.mass / tot, self.edges,
            self.bin_count, self.dx, self.r_max, self.mode,
            None if self.pointwise is None else self.pointwise / tot,
        )


def shell_profile(lat: Lattice, density: np.ndarray, t: float = 0.0,
                  keep_pointwise: bool = False) -> DensityProfile:
    """Bin a pointwise density on ``lat`` into radial shells of width ``dx``."""
    density = np.asarray(density, dtype=np.float64)
    if density.shape != lat.shape:
        raise ValueError("density shape does not match lattice")
    dx = lat.dx
    if lat.mode == "radial3d":
        r = lat.axis
        mass = density * lat.position_measure
        edges = np.arange(lat.points + 1) * dx
        return DensityProfile(
            t, r, mass / dx, mass, edges, np.ones(lat.points, dtype=np.int64),
            dx, lat.r_max, lat.mode, density.copy() if keep_pointwise else None,
        )

    rad = lat.radius if lat.mode == "cartesian3d" else np.abs(lat.axis)
    rad = np.broadcast_to(rad, lat.shape).ravel()
    if lat.mode == "line1d":
        # samples sit on multiples of dx: bin j collects |x| = j dx
        bins = np.rint(rad / dx).astype(np.int64)
        nb = int(bins.max()) + 1
        edges = np.concatenate([[0.0], (np.arange(nb) + 0.5) * dx])
    else:
        bins = np.floor(rad / dx).astype(np.int64)
        nb = int(bins.max()) + 1
        edges = np.arange(nb + 1) * dx
    cell = dx**lat.ndim
    sums, counts = kernels.shell_sums(np.ascontiguousarray(density.ravel()), bins, nb)
    rsum, _ = kernels.shell_sums(np.ascontiguousarray(rad), bins, nb)
    filled = counts > 0
    rbar = np.where(filled, rsum / np.maximum(counts, 1), 0.5 * (edges[:-1] + edges[1:]))
    mass = sums * cell
    if lat.mode == "line1d":
        shell = mass / dx
    else:
        # mean density times the continuum shell area; smoother than raw bin mass
        shell = np.where(filled, 4.0 * np.pi * rbar**2 * sums / np.maximum(counts, 1), 0.0)
    return DensityProfile(
        t, rbar, shell, mass, edges, counts, dx, lat.r_max, lat.mode,
        density.copy() if keep_pointwise else None,
    )


def total_integral(lat: Lattice, density: np.ndarray) -> float:
    return integrate(density, lat.position_measure)
