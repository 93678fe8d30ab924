"""Named experiments: JSON-style configs in, scalar results, checks and tables out."""
from __future__ import annotations

import copy
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import analysis, dirac
from . import kleingordon as kg
from . import seeds
from .errors import ConfigError
from .lattice import MODES, ComplexField, Lattice, PhysicalParams, forward_array, inverse_array

SCHEMA_VERSION = 1


@dataclass
class LatticeSpec:
    mode: str
    points: int
    box_length: float

    def build(self, scale: int = 1) -> Lattice:
        try:
            return Lattice(self.mode, int(self.points) * int(scale), float(self.box_length))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc


@dataclass
class ExperimentConfig:
    experiment: str
    lattice: LatticeSpec
    mass: float = 1.0
    seed: dict = field(default_factory=dict)
    window: list | None = None
    epsilon: float | None = None
    times: list = field(default_factory=list)
    fit_prefactor: str = "r2"
    options: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    output_dir: str | None = None
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        data = copy.deepcopy(data)
        version = data.get("schema_version", SCHEMA_VERSION)
        if version != SCHEMA_VERSION:
            raise ConfigError(f"unsupported schema_version {version!r} (expected {SCHEMA_VERSION})")
        name = data.get("experiment")
        if name not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {name!r}; known: {sorted(EXPERIMENTS)}")
        # fill anything missing from the experiment's defaults
        merged = default_config(name).to_dict()
        unknown = set(data) - set(merged)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        for key, val in data.items():
            if key == "lattice":
                if not isinstance(val, dict) or set(val) - {"mode", "points", "box_length"}:
                    raise ConfigError("lattice must be an object with mode, points, box_length")
                merged["lattice"].update(val)
            else:
                merged[key] = val
        merged["lattice"] = LatticeSpec(**merged["lattice"])
        cfg = cls(**merged)
        cfg.check()
        return cfg

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc

    def check(self):
        if self.lattice.mode not in MODES:
            raise ConfigError(f"unknown lattice mode {self.lattice.mode!r}")
        self.lattice.build()
        if not (isinstance(self.mass, (int, float)) and self.mass > 0 and math.isfinite(self.mass)):
            raise ConfigError("mass must be a positive number")
        if self.window is not None:
            if len(self.window) != 2 or not 0 <= self.window[0] < self.window[1]:
                raise ConfigError("window must be [r_a, r_b] with 0 <= r_a < r_b")
        if self.epsilon is not None and not self.epsilon > 0:
            raise ConfigError("epsilon must be positive")
        if any(t < 0 for t in self.times) or any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise ConfigError("times must be non-negative and strictly increasing")
        if self.fit_prefactor not in analysis.PREFACTORS:
            raise ConfigError(f"fit_prefactor must be one of {analysis.PREFACTORS}")
        for key in ("radius", "rate", "width", "amplitude"):
            if key in self.seed and not self.seed[key] > 0:
                raise ConfigError(f"seed {key} must be positive")
        if any(r <= 0 for r in self.seed.get("radii", [])):
            raise ConfigError("seed radii must be positive")


@dataclass
class Check:
    name: str
    value: object
    op: str
    tolerance: object
    passed: bool

    @classmethod
    def make(cls, name, value, op, tol):
        ok = {
            "<": lambda v, t: v < t,
            "<=": lambda v, t: v <= t,
            ">": lambda v, t: v > t,
            "==": lambda v, t: v == t,
            "in": lambda v, t: t[0] <= v <= t[1],
        }[op](value, tol)
        return cls(name, _plain(value), op, _plain(tol), bool(ok))


@dataclass
class ExperimentResult:
    scalars: dict
    checks: list
    tables: dict  # file stem -> (header, rows)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _plain(x):
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return [_plain(v) for v in x.tolist()]
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating, float)):
        return float(x)
    return x


PROFILE_HEADER = ("t", "r", "value", "bin_count")


def _profile_rows(profile, r_limit=None):
    lim = profile.r_max if r_limit is None else r_limit
    sel = profile.r <= lim
    return [(profile.t, r, v, int(c)) for r, v, c in
            zip(profile.r[sel], profile.shell[sel], profile.bin_count[sel])]


def _window(cfg: ExperimentConfig):
    return tuple(cfg.window) if cfg.window is not None else analysis.default_window(cfg.mass)


# -- experiments --------------------------------------------------------------

def run_fourier_pair(cfg: ExperimentConfig, lat: Lattice) -> ExperimentResult:
    rate = float(cfg.seed.get("rate", 1.0))
    amp = float(cfg.seed.get("amplitude", 1.0))
    if lat.mode != "radial3d":
        raise ConfigError("fourier-pair runs on a radial3d lattice")
    kmax = float(cfg.options.get("k_max", 10.0)) * rate
    f = seeds.exponential(lat.axis, rate, amp)
    F = forward_array(lat, f).real
    k = lat.kaxis
    exact = seeds.exponential_transform(k, rate, amp)
    sel = k <= kmax
    rel = np.abs(F[sel] / exact[sel] - 1.0)
    tol = cfg.tolerances.get("max_rel_error", 1e-6)
    k0 = float(seeds.exponential_transform(0.0, rate, amp))
    scalars = {"max_rel_error": float(rel.max()), "k_max": kmax, "n_modes": int(sel.sum()),
               "closed_form_k0": k0, "numeric_smallest_k": float(F[0]), "smallest_k": float(k[0])}
    rows = [(kk, a, b, e) for kk, a, b, e in zip(k[sel], F[sel], exact[sel], rel)]
    prof_rows = [(0.0, r, 4 * np.pi * r * r * v, 1) for r, v in zip(lat.axis, f)]
    return ExperimentResult(
        scalars,
        [Check.make("max relative error vs closed form", rel.max(), "<", tol)],
        {"transform": (("k", "numeric", "closed_form", "rel_error"), rows),
         "profiles": (PROFILE_HEADER, prof_rows)},
    )


def _tail_study(cfg, lat, build_profile, label):
    params = PhysicalParams(cfg.mass)
    radii = cfg.seed.get("radii", [cfg.seed.get("radius", 1.0 / cfg.mass)])
    window = _window(cfg)
    band = cfg.tolerances.get("gamma_band", [0.8 * cfg.mass, 1.2 * cfg.mass])
    box_tol = cfg.tolerances.get("box_doubling", 0.05)
    spread_tol = cfg.tolerances.get("spread", 0.10)
    fits, tables, per_seed, checks = [], {}, {}, []
    for R in radii:
        prof, extra = build_profile(lat, params, R)
        fit = analysis.fit_tail(prof, window, cfg.mass, cfg.fit_prefactor)
        prof2, _ = build_profile(lat.doubled(), params, R)
        fit = fit.with_box_doubling(analysis.fit_tail(prof2, window, cfg.mass, cfg.fit_prefactor))
        fits.append(fit)
        tables[f"profiles_R{R:g}"] = (PROFILE_HEADER, _profile_rows(prof, 2 * window[1]))
        per_seed[f"{R:g}"] = {**_plain(asdict(fit)), **extra}
        checks.append(Check.make(f"{label} gamma_eff R={R:g}", fit.gamma_eff, "in", band))
        checks.append(Check.make(f"{label} box-doubling deviation R={R:g}",
                                 fit.box_doubling_deviation, "<", box_tol))
    g = np.array([f.gamma_eff for f in fits])
    spread = float((g.max() - g.min()) / g.mean()) if g.size > 1 else 0.0
    if g.size > 1:
        checks.append(Check.make(f"{label} mutual spread of gamma_eff", spread, "<", spread_tol))
    return {"seeds": per_seed, "spread": spread, "window": list(window),
            "prefactor": cfg.fit_prefactor}, checks, tables


def _dirac_profile(lat, params, R):
    s = dirac.project_positive(dirac.bump_seed(lat, params, R), renormalize=True)
    return dirac.dirac_density(s, 0.0, keep_pointwise=False), {
        "constraint_residual": dirac.constraint_residual(s)}


def _kg_profile(lat, params, R):
    psi0 = ComplexField.from_function(lat, lambda r: seeds.bump(r, R))
    st = kg.normalize_energy(kg.positive_frequency_completion(psi0, params))
    return kg.energy_density(st, 0.0, keep_pointwise=False), {}


def run_dirac_delocalization(cfg, lat):
    scalars, checks, tables = _tail_study(cfg, lat, _dirac_profile, "dirac")
    params = PhysicalParams(cfg.mass)
    g_req = float(cfg.options.get("gamma_required", 1.5)) * cfg.mass
    r_ball = float(cfg.options.get("n_ball_radius", 10.0)) / cfg.mass
    ctol = cfg.tolerances.get("constraint", 1e-10)
    h1 = {}
    for key, seed in scalars["seeds"].items():
        s = dirac.project_positive(dirac.bump_seed(lat, params, float(key)), renormalize=True)
        prof = dirac.dirac_density(s, 0.0, keep_pointwise=False)
        res = analysis.h1_localized(prof, g_req, window=_window(cfg), mass=cfg.mass)
        seed["n_ball"] = dirac.n_ball_dirac(s, r_ball)
        seed["h1_localized"] = res.localized
        seed["h1_amplitude_needed"] = res.amplitude_needed
        h1[key] = res.localized
        checks.append(Check.make(f"constraint residual R={key}", seed["constraint_residual"], "<", ctol))
        checks.append(Check.make(f"h1_localized(gamma={g_req:g}) R={key}", res.localized, "==", False))
    scalars.update({"gamma_required": g_req, "n_ball_radius": r_ball})
    return ExperimentResult(scalars, checks, tables)


def run_kg_delocalization(cfg, lat):
    scalars, checks, tables = _tail_study(cfg, lat, _kg_profile, "kg")
    rate_tol = cfg.tolerances.get("energy_rate_max", 2.4 * cfg.mass)
    for key, seed in scalars["seeds"].items():
        # T is quadratic in psi: its own decay rate is twice the amplitude rate
        seed["decay_rate_T"] = 2.0 * seed["gamma_eff"]
        checks.append(Check.make(f"T decay rate R={key}", seed["decay_rate_T"], "<", rate_tol))
    return ExperimentResult(scalars, checks, tables)


def _kg_seed_state(cfg, lat):
    params = PhysicalParams(cfg.mass)
    prof = cfg.seed.get("profile", "bump")
    if prof == "bump":
        func = lambda r: seeds.bump(r, cfg.seed.get("radius", 1.0 / cfg.mass))  # noqa: E731
    elif prof == "gaussian":
        func = lambda r: seeds.gaussian(r, cfg.seed.get("width", 1.0 / cfg.mass))  # noqa: E731
    else:
        raise ConfigError(f"unsupported seed profile {prof!r} for this experiment")
    psi0 = ComplexField.from_function(lat, func)
    return kg.normalize_energy(kg.positive_frequency_completion(psi0, params))


def run_kg_energy_conservation(cfg, lat):
    st = _kg_seed_state(cfg, lat)
    times = [float(t) / cfg.mass for t in cfg.times]
    energies = [kg.total_energy(st, t) for t in times]
    charges = [kg.total_charge(st, t) for t in times]
    dev = max(abs(e - 1.0) for e in energies)
    qdev = max(abs(q - charges[0]) for q in charges)
    rows = []
    for t in times:
        rows += _profile_rows(kg.energy_density(st, t, keep_pointwise=False))
    return ExperimentResult(
        {"times": times, "energy": energies, "charge": charges,
         "max_energy_deviation": dev, "max_charge_drift": qdev,
         "spectral_energy": st.total_energy_spectral()},
        [Check.make("max |integral T - 1|", dev, "<", cfg.tolerances.get("energy", 1e-9)),
         Check.make("charge drift", qdev, "<", cfg.tolerances.get("charge", 1e-10))],
        {"profiles": (PROFILE_HEADER, rows)},
    )


def run_kg_charge_negativity(cfg, lat):
    params = PhysicalParams(cfg.mass)
    packets = cfg.options.get("packets")
    if not packets:
        raise ConfigError("kg-charge-negativity needs options.packets")
    amp = np.zeros(lat.shape, dtype=complex)
    for p in packets:
        amp = amp + kg.gaussian_packet(lat, p["k"] * cfg.mass, p["width"] * cfg.mass, p.get("weight", 1.0))
    st = kg.normalize_energy(kg.KGState(lat, amp, params))
    t_q = float(cfg.options.get("charge_check_time", 7.0)) / cfg.mass
    rows, mins = [], []
    for t in cfg.times or [0.0]:
        rc = kg.charge_density_array(st, float(t))
        mins.append((float(rc.min()), float(np.abs(rc).max())))
        coord = lat.axis if lat.mode != "cartesian3d" else np.broadcast_to(lat.radius, lat.shape).ravel()
        rows += [(float(t), x, v, 1) for x, v in zip(coord, rc.ravel())]
    rmin, peak = mins[0]
    ratio = -rmin / peak
    q0, q1 = kg.total_charge(st, 0.0), kg.total_charge(st, t_q)
    return ExperimentResult(
        {"min_charge_density": rmin, "peak_abs_charge_density": peak, "negativity_ratio": ratio,
         "total_charge": q0, "charge_drift": abs(q1 - q0), "packets": packets},
        [Check.make("min rho_c", rmin, "<", 0.0),
         Check.make("|min rho_c| / peak |rho_c|", ratio, ">", cfg.tolerances.get("min_ratio", 1e-6)),
         Check.make("charge drift", abs(q1 - q0), "<", cfg.tolerances.get("charge", 1e-10))],
        {"charge_density": (("t", "x", "value", "bin_count"), rows)},
    )


def run_h1_check(cfg, lat):
    params = PhysicalParams(cfg.mass)
    R = float(cfg.seed.get("radius", 1.0 / cfg.mass))
    window = _window(cfg)
    expect = cfg.options.get("expected", {"1.5": False, "0.5": True})
    s = dirac.project_positive(dirac.bump_seed(lat, params, R), renormalize=True)
    prof_d = dirac.dirac_density(s, 0.0, keep_pointwise=False)
    psi0 = ComplexField.from_function(lat, lambda r: seeds.bump(r, R))
    st = kg.normalize_energy(kg.positive_frequency_completion(psi0, params))
    prof_k = kg.energy_density(st, 0.0, keep_pointwise=False)
    # exactly compact reference: the unprojected seed's own density
    seed_dens = np.abs(seeds.bump(np.broadcast_to(lat.radius, lat.shape), R)) ** 2
    from .profiles import shell_profile
    prof_c = shell_profile(lat, seed_dens)
    scalars, checks = {"observables": {}}, []
    for name, prof in (("dirac", prof_d), ("kg_energy", prof_k), ("compact", prof_c)):
        out = {}
        for g_str, want in expect.items():
            g = float(g_str) * cfg.mass
            res = analysis.h1_localized(prof, g, window=window, mass=cfg.mass)
            out[g_str] = {"localized": res.localized, "amplitude_needed": res.amplitude_needed,
                          "worst_log_margin": res.worst_log_margin}
            target = True if name == "compact" else bool(want)
            checks.append(Check.make(f"{name} h1_localized(gamma={g:g})", res.localized, "==", target))
        scalars["observables"][name] = out
    return ExperimentResult(
        scalars, checks,
        {"profiles_dirac": (PROFILE_HEADER, _profile_rows(prof_d, 2 * window[1])),
         "profiles_kg": (PROFILE_HEADER, _profile_rows(prof_k, 2 * window[1]))},
    )


def run_causality(cfg, lat):
    eps = cfg.epsilon if cfg.epsilon is not None else 1e-6
    times = [float(t) / cfg.mass for t in cfg.times]
    radii = [float(r) / cfg.mass for r in cfg.options.get("radii", [6.0, 8.0, 10.0])]
    factor = int(cfg.options.get("resolution_check_factor", 2))

    def probe(lattice):
        st = _kg_seed_state(cfg, lattice)
        return analysis.causality_probe(lambda t: kg.energy_density(st, t, keep_pointwise=False),
                                        radii, times, eps)

    rep = probe(lat)
    rep_fine = probe(lat.refined(factor))
    disp = rep.displacement()
    excess = float(np.max(disp - np.asarray(rep.times)))
    res_dev = float(np.max(np.abs(rep.front_radius - rep_fine.front_radius)))
    rows = list(zip(rep.times, rep.front_radius, rep.speeds))
    return ExperimentResult(
        {"epsilon": eps, "times": rep.times, "front_radius": rep.front_radius,
         "speeds": rep.speeds, "exterior_radii": rep.radii, "exterior": rep.exterior,
         "initial_exterior_beyond_front": rep.initial_exterior_beyond_front,
         "resolution_deviation": res_dev, "dx": rep.dx, "max_excess_over_light_speed": excess},
        [Check.make("max (front displacement - t)", excess, "<", 2 * rep.dx),
         Check.make("front radius resolution deviation", res_dev, "<", lat.dx),
         Check.make("initial exterior beyond front", rep.initial_exterior_beyond_front, ">", 0.0)],
        {"fronts": (("t", "front_radius", "speed"), rows)},
    )


def run_nw_contrast(cfg, lat):
    R = float(cfg.seed.get("radius", 1.0 / cfg.mass))
    offsets = [float(o) / cfg.mass for o in cfg.options.get("probe_offsets", [0.5, 1.0, 1.5])]
    times = [float(t) / cfg.mass for t in cfg.times]
    a0 = ComplexField.from_function(lat, lambda r: seeds.bump(r, R))
    rs = analysis.support_radius(a0)
    rep = analysis.nw_probe(a0, times, cfg.mass, probe_radii=[rs + o for o in offsets])
    floor = cfg.tolerances.get("floor", 1e-30)
    checks = [Check.make("exterior density at t=0", float(rep.exterior_outside_cone[0]), "==", 0.0)]
    for i, t in enumerate(times):
        if t == 0:
            continue
        dens = rep.probe_density[i]
        checks.append(Check.make(f"probe density r=R+{offsets[0]:g} t={t:g}", float(dens[0]), ">", floor))
        checks.append(Check.make(f"exterior mass outside light cone t={t:g}",
                                 float(rep.exterior_outside_cone[i]), ">", floor))
        checks.append(Check.make(f"tail monotone in r t={t:g}", bool(np.all(np.diff(dens) < 0)), "==", True))
    rows = []
    for i, t in enumerate(times):
        rows += [(t, r, float(v), 1) for r, v in zip(rep.radii, rep.probe_density[i])]
    return ExperimentResult(
        {"support_radius": rs, "times": times, "light_cone": rep.light_cone,
         "exterior_outside_cone": rep.exterior_outside_cone, "probe_radii": rep.radii,
         "probe_density": rep.probe_density},
        checks, {"probes": (PROFILE_HEADER, rows)},
    )


def run_plane_wave_dispersion(cfg, lat):
    params = PhysicalParams(cfg.mass)
    t = float(cfg.times[-1] if cfg.times else 10.0) / cfg.mass
    errs = {}
    for kk in cfg.options.get("k_values", [0.0, 1.0, 5.0]):
        k0 = kk * cfg.mass
        n = k0 / lat.dk
        if abs(n - round(n)) > 1e-9:
            raise ConfigError(f"k={k0} is not on the lattice (dk={lat.dk})")
        amp = np.zeros(lat.shape, dtype=complex)
        idx = int(round(n)) % lat.points
        amp[(idx,) * lat.ndim if lat.mode == "cartesian3d" else idx] = 1.0
        st = kg.KGState(lat, amp, params)
        psi0 = st.fields(0.0)[0]
        psit = kg.evolve_kg(st, t).fields(0.0)[0]
        w = math.sqrt(k0 * k0 + cfg.mass**2)
        dphi = np.angle(psit / psi0 * np.exp(1j * w * t))
        errs[f"{kk:g}"] = float(np.max(np.abs(dphi)))
    worst = max(errs.values())
    return ExperimentResult({"t": t, "phase_error": errs},
                            [Check.make("max phase error", worst, "<", cfg.tolerances.get("phase", 1e-10))],
                            {})


EXPERIMENTS = {
    "fourier-pair": run_fourier_pair,
    "dirac-delocalization": run_dirac_delocalization,
    "kg-delocalization": run_kg_delocalization,
    "kg-energy-conservation": run_kg_energy_conservation,
    "kg-charge-negativity": run_kg_charge_negativity,
    "h1-check": run_h1_check,
    "causality": run_causality,
    "nw-contrast": run_nw_contrast,
    "plane-wave-dispersion": run_plane_wave_dispersion,
}

_TAIL_EXPERIMENTS = {"dirac-delocalization", "kg-delocalization", "h1-check", "causality"}

_DEFAULTS = {
    "fourier-pair": dict(
        lattice=dict(mode="radial3d", points=4096, box_length=40.0),
        seed={"profile": "exponential", "rate": 1.0, "amplitude": 1.0},
        options={"k_max": 10.0}, tolerances={"max_rel_error": 1e-6}),
    "dirac-delocalization": dict(
        lattice=dict(mode="radial3d", points=16384, box_length=32.0),
        seed={"profile": "bump", "radii": [0.5, 1.0, 2.0]}, window=[6.0, 12.0],
        fit_prefactor="power", options={"gamma_required": 1.5, "n_ball_radius": 10.0},
        tolerances={"gamma_band": [0.8, 1.2], "spread": 0.10, "box_doubling": 0.05,
                    "constraint": 1e-10}),
    "kg-delocalization": dict(
        lattice=dict(mode="radial3d", points=16384, box_length=32.0),
        seed={"profile": "bump", "radii": [0.5, 1.0, 2.0]}, window=[6.0, 12.0],
        fit_prefactor="power",
        tolerances={"gamma_band": [0.8, 1.2], "spread": 0.10, "box_doubling": 0.05,
                    "energy_rate_max": 2.4}),
    "kg-energy-conservation": dict(
        lattice=dict(mode="radial3d", points=4096, box_length=32.0),
        seed={"profile": "bump", "radius": 1.0}, times=[0.0, 1.0, 5.0, 10.0],
        tolerances={"energy": 1e-9, "charge": 1e-10}),
    "kg-charge-negativity": dict(
        lattice=dict(mode="line1d", points=4096, box_length=64.0),
        times=[0.0],
        options={"packets": [{"k": 0.2, "width": 0.5, "weight": 1.0},
                             {"k": 5.0, "width": 0.25, "weight": 1.0}],
                 "charge_check_time": 7.0},
        tolerances={"min_ratio": 1e-6, "charge": 1e-10}),
    "h1-check": dict(
        lattice=dict(mode="radial3d", points=16384, box_length=32.0),
        seed={"profile": "bump", "radius": 1.0}, window=[6.0, 12.0],
        options={"expected": {"1.5": False, "0.5": True}}),
    "causality": dict(
        lattice=dict(mode="radial3d", points=4096, box_length=32.0),
        seed={"profile": "gaussian", "width": 1.0}, epsilon=1e-6,
        times=[0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0],
        options={"radii": [6.0, 8.0, 10.0], "resolution_check_factor": 2}),
    "nw-contrast": dict(
        lattice=dict(mode="radial3d", points=4096, box_length=32.0),
        seed={"profile": "bump", "radius": 1.0}, times=[0.0, 0.1, 0.5, 1.0],
        options={"probe_offsets": [0.5, 1.0, 1.5]}, tolerances={"floor": 1e-30}),
    "plane-wave-dispersion": dict(
        lattice=dict(mode="line1d", points=512, box_length=16 * math.pi),
        times=[10.0], options={"k_values": [0.0, 1.0, 5.0]}, tolerances={"phase": 1e-10}),
}


def default_config(name: str) -> ExperimentConfig:
    if name not in _DEFAULTS:
        raise ConfigError(f"unknown experiment {name!r}; known: {sorted(_DEFAULTS)}")
    d = copy.deepcopy(_DEFAULTS[name])
    d["lattice"] = LatticeSpec(**d["lattice"])
    return ExperimentConfig(experiment=name, **d)


def validate(cfg: ExperimentConfig, resolution_scale: int = 1) -> list[str]:
    """Resolution and geometry warnings; computes nothing."""
    warnings = []
    lat = cfg.lattice.build(resolution_scale)
    lam = 1.0 / cfg.mass
    if lat.dk > cfg.mass / 8 * (1 + 1e-12):
        warnings.append(f"dk = {lat.dk:.4g} > m/8 = {cfg.mass / 8:.4g}: branch-point region under-resolved")
    if cfg.experiment in _TAIL_EXPERIMENTS or cfg.window is not None:
        ra, rb = _window(cfg)
        if rb > lat.r_max - 2 * lat.dx:
            warnings.append(f"window [{ra:g}, {rb:g}] infeasible: usable radius is "
                            f"{lat.r_max - 2 * lat.dx:.4g}")
        if lat.box_length < 32 * lam * (1 - 1e-12):
            warnings.append(f"box length {lat.box_length:g} < 32 Compton wavelengths")
    if cfg.experiment == "fourier-pair":
        rate = float(cfg.seed.get("rate", 1.0))
        if lat.box_length < 40.0 / rate * (1 - 1e-12):
            warnings.append(f"box length {lat.box_length:g} < 40/gamma: transform truncation dominates")
    return warnings


def run_experiment(cfg: ExperimentConfig, resolution_scale: int = 1) -> ExperimentResult:
    lat = cfg.lattice.build(resolution_scale)
    return EXPERIMENTS[cfg.experiment](cfg, lat)
