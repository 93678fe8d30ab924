"""Tail-rate regression, the H1 localization predicate, and front probes."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import BoxEdgeError, NumericalFloorError
from .lattice import POSITION, ComplexField, forward_array, inverse_array
from .profiles import DensityProfile, shell_profile

HARD_FLOOR = 1e-250
SOFT_FLOOR = 1e-30
MIN_BINS = 10
PREFACTORS = ("none", "r2", "power")


@dataclass(frozen=True)
class TailFit:
    """Exponential tail fit of a shell density, rho_shell ~ A^2 exp(-2 gamma r).

    ``gamma_eff`` is the estimate selected by ``prefactor``; the three
    variants are kept alongside. ``power_exponent`` is the fitted algebraic
    exponent p in rho_shell ~ r^p exp(-2 gamma r) when ``prefactor="power"``.
    """

    gamma_eff: float
    amplitude: float
    window: tuple[float, float]
    residual_rms: float
    n_bins: int
    prefactor: str
    gamma_plain: float
    gamma_r2: float
    gamma_power: float
    power_exponent: float
    half_window_gammas: tuple[float, float]
    non_exponential: bool
    box_doubling_deviation: float | None = None

    def with_box_doubling(self, other: "TailFit") -> "TailFit":
        dev = abs(other.gamma_eff - self.gamma_eff) / abs(self.gamma_eff)
        return replace(self, box_doubling_deviation=float(dev))


def default_window(mass: float = 1.0) -> tuple[float, float]:
    return (6.0 / mass, 12.0 / mass)


def _check_window(profile: DensityProfile, window) -> tuple[float, float]:
    ra, rb = (float(w) for w in window)
    if not (0 <= ra < rb):
        raise ValueError(f"window must satisfy 0 <= r_a < r_b, got {window}")
    if rb > profile.r_max - 2 * profile.dx + 1e-12:
        raise BoxEdgeError(f"window end {rb} beyond usable radius {profile.r_max - 2 * profile.dx}")
    return ra, rb


def _select_bins(profile: DensityProfile, ra: float, rb: float):
    sel = (profile.r >= ra) & (profile.r <= rb) & (profile.bin_count > 0)
    r = profile.r[sel]
    y = profile.shell[sel]
    w = np.sqrt(profile.bin_count[sel].astype(float))
    if r.size < MIN_BINS:
        raise ValueError(f"only {r.size} bins in window [{ra}, {rb}]; need {MIN_BINS}")
    if np.any(~np.isfinite(y)) or np.any(y <= 0):
        raise NumericalFloorError("non-positive or non-finite density in fit window")
    if np.any(y < HARD_FLOOR):
        raise NumericalFloorError(f"density below the hard floor {HARD_FLOOR:g} in fit window")
    low = y < SOFT_FLOOR
    if np.any(low):
        warnings.warn(f"{int(low.sum())} bins below {SOFT_FLOOR:g} excluded from tail fit",
                      RuntimeWarning, stacklevel=3)
        r, y, w = r[~low], y[~low], w[~low]
        if r.size < MIN_BINS:
            raise NumericalFloorError(f"fewer than {MIN_BINS} bins above the density floor")
    return r, y, w


def _wlstsq(columns, y, w):
    A = np.column_stack(columns) * w[:, None]
    coef, *_ = np.linalg.lstsq(A, y * w, rcond=None)
    resid = (np.column_stack(columns) @ coef - y)
    return coef, resid


def _loglinear(r, logy, w):
    coef, resid = _wlstsq([np.ones_like(r), r], logy, w)
    return coef, resid


def fit_tail(profile: DensityProfile, window=None, mass: float = 1.0,
             prefactor: str = "r2") -> TailFit:
    """Least-squares line through log(shell density) over ``window``.

    prefactor
        ``"none"`` fits log(rho_shell); ``"r2"`` fits log(rho_shell / r^2);
        ``"power"`` adds a free log(r) term to absorb any algebraic prefactor.
    """
    if prefactor not in PREFACTORS:
        raise ValueError(f"prefactor must be one of {PREFACTORS}")
    ra, rb = _check_window(profile, window if window is not None else default_window(mass))
    r, y, w = _select_bins(profile, ra, rb)
    logy = np.log(y)

    c_plain, res_plain = _loglinear(r, logy, w)
    c_r2, res_r2 = _loglinear(r, logy - 2 * np.log(r), w)
    c_pow, res_pow = _wlstsq([np.ones_like(r), r, np.log(r)], logy, w)
    gammas = {"none": -c_plain[1] / 2, "r2": -c_r2[1] / 2, "power": -c_pow[1] / 2}
    chosen = {"none": (c_plain, res_plain), "r2": (c_r2, res_r2), "power": (c_pow, res_pow)}
    coef, resid = chosen[prefactor]

    # curvature diagnostic on the two half windows (log-linear in the r2 frame)
    half = r.size // 2
    base = logy if prefactor == "none" else logy - 2 * np.log(r)
    s1 = -_loglinear(r[:half], base[:half], w[:half])[0][1] / 2
    s2 = -_loglinear(r[half:], base[half:], w[half:])[0][1] / 2
    non_exp = abs(s2 - s1) > 0.2 * abs(0.5 * (s1 + s2))

    return TailFit(
        gamma_eff=float(gammas[prefactor]),
        amplitude=float(np.exp(coef[0] / 2)),
        window=(ra, rb),
        residual_rms=float(np.sqrt(np.mean(resid**2))),
        n_bins=int(r.size),
        prefactor=prefactor,
        gamma_plain=float(gammas["none"]),
        gamma_r2=float(gammas["r2"]),
        gamma_power=float(gammas["power"]),
        power_exponent=float(c_pow[2]),
        half_window_gammas=(float(s1), float(s2)),
        non_exponential=bool(non_exp),
    )


@dataclass(frozen=True)
class H1Result:
    localized: bool
    gamma_required: float
    amplitude_max: float
    amplitude_needed: float
    worst_log_margin: float
    radii: np.ndarray = field(repr=False)
    exterior: np.ndarray = field(repr=False)
    bound: np.ndarray = field(repr=False)

    def __bool__(self):
        return self.localized


def h1_localized(profile: DensityProfile, gamma_required: float, amplitude_max: float | None = None,
                 window=None, mass: float = 1.0) -> H1Result:
    """Check P_out(R) <= A^2 exp(-2 gamma R) at every bin edge R in the window.

    With ``amplitude_max=None`` the amplitude is anchored at the window start,
    so the test asks whether the exterior probability falls at least as fast
    as exp(-2 gamma R) across the window.
    """
    ra, rb = _check_window(profile, window if window is not None else default_window(mass))
    edges = profile.edges
    R = edges[(edges >= ra) & (edges <= rb)]
    if R.size < 2:
        raise ValueError("window holds fewer than two bin edges")
    total = profile.total
    if not total > 0:
        raise NumericalFloorError("profile has no mass")
    p_out = np.asarray(profile.exterior(R)) / total
    g = float(gamma_required)
    if amplitude_max is None:
        amp2 = p_out[0] * np.exp(2 * g * R[0])
    else:
        amp2 = float(amplitude_max) ** 2
    bound = amp2 * np.exp(-2 * g * R)
    ok = p_out <= bound * (1 + 1e-12)
    with np.errstate(divide="ignore", invalid="ignore"):
        margin = np.where(p_out > 0, np.log(bound) - np.log(p_out), np.inf)
    needed = float(np.sqrt(np.max(p_out * np.exp(2 * g * R))))
    return H1Result(bool(np.all(ok)), g, float(np.sqrt(amp2)), needed, float(np.min(margin)), R, p_out, bound)


@dataclass(frozen=True)
class FrontReport:
    threshold: float
    times: np.ndarray
    front_radius: np.ndarray
    speeds: np.ndarray
    dx: float
    radii: np.ndarray = field(default_factory=lambda: np.zeros(0))
    exterior: np.ndarray = field(default_factory=lambda: np.zeros((0, 0)))
    initial_exterior_beyond_front: float = float("nan")
    light_cone: np.ndarray | None = None
    exterior_outside_cone: np.ndarray | None = None
    probe_density: np.ndarray | None = None

    def displacement(self) -> np.ndarray:
        return self.front_radius - self.front_radius[0]


def _central_speeds(t: np.ndarray, r: np.ndarray) -> np.ndarray:
    if t.size < 2:
        return np.zeros_like(t)
    return np.gradient(r, t)


def front_radius(profile: DensityProfile, eps: float) -> float:
    """Largest radius where the normalised shell density is >= eps (log-interpolated)."""
    p = profile.normalized()
    inside = p.r <= p.r_max - 2 * p.dx
    y = np.where(inside, p.shell, 0.0)
    idx = np.flatnonzero(y >= eps)
    if idx.size == 0:
        raise NumericalFloorError(f"no shell density reaches eps={eps:g}")
    i = int(idx[-1])
    last = int(np.flatnonzero(inside)[-1])
    if i >= last:
        raise BoxEdgeError("front radius undefined: threshold crossing reaches the box edge")
    y0, y1 = y[i], y[i + 1]
    if y1 <= 0:
        return float(p.r[i])
    frac = np.log(y0 / eps) / np.log(y0 / y1)
    return float(p.r[i] + frac * (p.r[i + 1] - p.r[i]))


def causality_probe(evaluate, radii, times, eps: float) -> FrontReport:
    """Track the eps-level front of the densities ``evaluate(t)`` over ``times``.

    This is threshold kinematics only: the front of a state with a
    pre-existing exponential tail can move without any signal propagating.
    """
    if not (1e-12 < eps < 1e-2):
        if eps <= 1e-12:
            raise NumericalFloorError(f"eps={eps:g} is at or below the numerical floor 1e-12")
        raise ValueError(f"eps must lie in (1e-12, 1e-2), got {eps}")
    times = np.asarray(times, dtype=float)
    if times.size == 0 or np.any(np.diff(times) <= 0):
        raise ValueError("times must be non-empty and strictly increasing")
    radii = np.asarray(radii, dtype=float)
    fronts, ext = [], []
    first = None
    dx = None
    for t in times:
        prof = evaluate(float(t))
        dx = prof.dx
        fr = front_radius(prof, eps)
        fronts.append(fr)
        tot = prof.total
        ext.append(np.asarray(prof.exterior(radii)) / tot if radii.size else np.zeros(0))
        if first is None:
            first = float(prof.exterior(fr)) / tot
    fronts = np.asarray(fronts)
    return FrontReport(
        threshold=float(eps), times=times, front_radius=fronts,
        speeds=_central_speeds(times, fronts), dx=float(dx), radii=radii,
        exterior=np.asarray(ext), initial_exterior_beyond_front=first,
    )


def support_radius(field_: ComplexField) -> float:
    """Largest sample radius where the field is nonzero (exact zeros only)."""
    lat = field_.lattice
    rad = np.broadcast_to(lat.radius, lat.shape)
    nz = field_.values != 0
    if not np.any(nz):
        raise ValueError("field is identically zero")
    return float(np.max(rad[nz]))


def nw_probe(amplitude0: ComplexField, times, mass: float = 1.0, probe_radii=None,
             eps: float = SOFT_FLOOR) -> FrontReport:
    """Free evolution of an unconstrained amplitude under exp(-i omega t).

    Reports the density |a(r, t)|^2 outside the light cone of the initial
    support, r > R_support + t.
    """
    if amplitude0.rep != POSITION:
        raise ValueError("nw_probe needs a position-space amplitude")
    lat = amplitude0.lattice
    times = np.asarray(times, dtype=float)
    if times.size == 0 or np.any(np.diff(times) <= 0) or times[0] < 0:
        raise ValueError("times must be non-negative and strictly increasing")
    rs = support_radius(amplitude0)
    if rs >= 0.5 * lat.r_max:
        raise ValueError(f"amplitude is not compact on this box (support reaches r={rs:.3g})")
    if times[-1] + rs >= lat.r_max - 2 * lat.dx:
        raise BoxEdgeError("light cone leaves the box within the requested times")
    probe = np.asarray(probe_radii if probe_radii is not None else [], dtype=float)
    a_hat = forward_array(lat, amplitude0.values)
    w = lat.omega(mass)
    cone, outside, probe_vals, fronts = [], [], [], []
    rad = np.broadcast_to(lat.radius, lat.shape)
    for t in times:
        if t == 0:
            a = np.asarray(amplitude0.values)
        else:
            a = inverse_array(lat, a_hat * np.exp(-1j * w * t))
        dens = a.real**2 + a.imag**2
        rc = rs + t
        cone.append(rc)
        prof = shell_profile(lat, dens, t)
        outside.append(float(np.sum(prof.mass[prof.edges[:-1] >= rc])))
        if probe.size:
            if lat.mode == "cartesian3d":
                raise ValueError("probe radii are supported on line1d and radial3d lattices")
            if lat.mode == "line1d":
                probe_vals.append(np.interp(probe, rad[lat.axis >= 0], dens[lat.axis >= 0]))
            else:
                probe_vals.append(np.interp(probe, lat.axis, dens))
        above = np.flatnonzero((prof.shell >= eps) & (prof.r <= prof.r_max - 2 * prof.dx))
        fronts.append(float(prof.r[above[-1]]) if above.size else float("nan"))
    times_arr = np.asarray(times)
    fronts = np.asarray(fronts)
    return FrontReport(
        threshold=float(eps), times=times_arr, front_radius=fronts,
        speeds=_central_speeds(times_arr, fronts), dx=lat.dx,
        light_cone=np.asarray(cone), exterior_outside_cone=np.asarray(outside),
        radii=probe, probe_density=np.asarray(probe_vals) if probe.size else None,
    )
