"""Scenario configuration, parameter sweeps and figure-of-merit tables.

A scenario is an INI document (see ``configs/`` for examples). Angles are
given in degrees and converted to radians on load.
"""

from __future__ import annotations

import configparser
import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from . import eikonal, hom
from .earthmodel import EarthModel
from .geometry import MAX_EXTENT, make_loop
from .relativity import MetricPerturbation, local_frame

KINDS = ("common_path", "dual_arm")
SWEEP_VARIABLES = {
    "common_path": ("colatitude", "alpha", "area"),
    "dual_arm": ("colatitude", "alpha", "beta", "area"),
}
ANGLE_VARIABLES = ("colatitude", "alpha", "beta")
EARTH_FIELDS = tuple(f.name for f in fields(EarthModel))


class ConfigError(ValueError):
    """Raised with every problem found in a scenario, not just the first."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("invalid scenario:\n  " + "\n  ".join(self.errors))


@dataclass
class SweepSpec:
    variable: str = "alpha"
    start: float = 0.0
    stop: float = 2 * math.pi
    steps: int = 73

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


@dataclass
class ScenarioConfig:
    kind: str = "common_path"
    colatitude: float = math.pi / 4
    alpha: float = 0.0
    beta: float = 0.0
    area: float = 1e6
    long_arm: float = 1000.0
    short_arm: float = 1000.0
    loop_segments: int = 64
    route: str = "closed_form"
    spectral_width: float = 1e13
    visibility: float = 1.0
    jitter_sigma: float = 0.0
    jitter_mode: str = "analytic"
    jitter_samples: int = 100_000
    scan_points: int = 401
    sweep: SweepSpec = field(default_factory=SweepSpec)
    earth: dict = field(default_factory=dict)
    output_path: str = "sweep.csv"
    seed: int = 0

    def earth_model(self) -> EarthModel:
        return EarthModel(**self.earth)

    def with_value(self, variable: str, value: float) -> "ScenarioConfig":
        """Copy with one swept parameter replaced."""
        if variable == "area" and self.kind == "dual_arm":
            return replace(self, long_arm=value / self.short_arm)
        return replace(self, **{variable: value})


def _is_int(x) -> bool:
    return isinstance(x, (int, np.integer)) and not isinstance(x, bool)


def _finite(x) -> bool:
    return isinstance(x, (int, float, np.floating, np.integer)) and math.isfinite(x)


def validate(cfg: ScenarioConfig) -> None:
    """Raise :class:`ConfigError` listing every violated constraint."""
    errors = []

    def need(ok, message):
        if not ok:
            errors.append(message)

    need(cfg.kind in KINDS, f"kind: expected one of {KINDS}, got {cfg.kind!r}")
    need(_finite(cfg.colatitude) and 0 <= cfg.colatitude <= math.pi, "colatitude: must lie in [0, 180] degrees")
    need(_finite(cfg.alpha), "alpha: must be finite")
    need(_finite(cfg.beta), "beta: must be finite")
    need(_finite(cfg.area) and cfg.area > 0, "area: must be positive")
    need(_finite(cfg.long_arm) and cfg.long_arm > 0, "long_arm: must be positive")
    need(_finite(cfg.short_arm) and cfg.short_arm > 0, "short_arm: must be positive")
    need(_is_int(cfg.loop_segments) and cfg.loop_segments >= 3, "loop_segments: must be an integer >= 3")
    need(cfg.route in ("closed_form", "numeric"), "route: must be 'closed_form' or 'numeric'")
    need(_finite(cfg.spectral_width) and cfg.spectral_width > 0, "spectral_width: must be positive")
    need(_finite(cfg.visibility) and 0 <= cfg.visibility <= 1, "visibility: must lie in [0, 1]")
    need(_finite(cfg.jitter_sigma) and cfg.jitter_sigma >= 0, "jitter_sigma: must be non-negative")
    need(cfg.jitter_mode in ("analytic", "montecarlo"), "jitter_mode: must be 'analytic' or 'montecarlo'")
    need(_is_int(cfg.jitter_samples) and cfg.jitter_samples >= 1, "jitter_samples: must be an integer >= 1")
    need(
        _is_int(cfg.scan_points) and cfg.scan_points >= 3 and cfg.scan_points % 2 == 1,
        "scan_points: must be an odd integer >= 3",
    )
    need(_is_int(cfg.seed), "seed: must be an integer")
    need(isinstance(cfg.output_path, str) and cfg.output_path != "", "output_path: must be a non-empty path")

    sw = cfg.sweep
    allowed = SWEEP_VARIABLES.get(cfg.kind, ())
    need(sw.variable in allowed, f"sweep.variable: expected one of {allowed}, got {sw.variable!r}")
    need(_is_int(sw.steps) and sw.steps >= 1, "sweep.steps: must be an integer >= 1")
    finite_range = _finite(sw.start) and _finite(sw.stop)
    need(finite_range, "sweep.start/stop: must be finite")
    if finite_range and sw.variable == "colatitude":
        need(0 <= min(sw.start, sw.stop) and max(sw.start, sw.stop) <= math.pi,
             "sweep: colatitude range must lie in [0, 180] degrees")
    if finite_range and sw.variable == "area":
        need(min(sw.start, sw.stop) > 0, "sweep: area range must be positive")

    bad_earth = sorted(set(cfg.earth) - set(EARTH_FIELDS))
    need(not bad_earth, f"earth: unknown constants {bad_earth}")
    if not bad_earth:
        try:
            cfg.earth_model()
        except (TypeError, ValueError) as exc:
            errors.append(f"earth: {exc}")

    if cfg.route == "numeric" and not errors:
        errors.extend(_extent_errors(cfg))
    if errors:
        raise ConfigError(errors)


def _extent_errors(cfg: ScenarioConfig):
    """Numeric route only: paths must fit inside the local-frame validity region."""
    areas = [cfg.area]
    if cfg.sweep.variable == "area":
        areas = [cfg.sweep.start, cfg.sweep.stop]
    if cfg.kind == "common_path":
        n = cfg.loop_segments
        radius = math.sqrt(2 * max(areas) / (n * math.sin(2 * math.pi / n)))
        if radius >= MAX_EXTENT:
            return [f"area: loop radius {radius:.3g} m exceeds {MAX_EXTENT:g} m"]
    else:
        long_arm = cfg.long_arm
        if cfg.sweep.variable == "area":
            long_arm = max(areas) / cfg.short_arm
        if long_arm + cfg.short_arm >= MAX_EXTENT:
            return [f"long_arm/short_arm: interferometer larger than {MAX_EXTENT:g} m"]
    return []


# -- loading -----------------------------------------------------------------

_SCENARIO_KEYS = {
    "kind": str,
    "colatitude_deg": float,
    "alpha_deg": float,
    "beta_deg": float,
    "area_m2": float,
    "long_arm_m": float,
    "short_arm_m": float,
    "loop_segments": int,
    "route": str,
}
_HOM_KEYS = {
    "spectral_width_rad_s": float,
    "visibility": float,
    "jitter_sigma_s": float,
    "jitter_mode": str,
    "jitter_samples": int,
    "scan_points": int,
}
_SWEEP_KEYS = {"variable": str, "start": float, "stop": float, "steps": int}
_OUTPUT_KEYS = {"path": str, "seed": int}
_SECTIONS = {
    "scenario": _SCENARIO_KEYS,
    "hom": _HOM_KEYS,
    "sweep": _SWEEP_KEYS,
    "output": _OUTPUT_KEYS,
    "earth": {name: float for name in EARTH_FIELDS},
}


def _convert(raw: str, kind):
    if kind is int:
        value = float(raw)
        if not value.is_integer():
            raise ValueError(f"expected an integer, got {raw!r}")
        return int(value)
    return kind(raw)


def parse_config(text: str, latitude: bool = False) -> ScenarioConfig:
    """Parse and validate an INI scenario.

    With ``latitude=True`` the ``colatitude_deg`` entry and a colatitude
    sweep are read as geographic latitudes and converted.
    """
    parser = configparser.ConfigParser(interpolation=None)
    errors = []
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError([f"syntax: {exc}"]) from exc

    values = {}
    for section in parser.sections():
        if section not in _SECTIONS:
            errors.append(f"[{section}]: unknown section")
            continue
        schema = _SECTIONS[section]
        for key, raw in parser.items(section):
            if key not in schema:
                errors.append(f"{section}.{key}: unknown key")
                continue
            try:
                values[(section, key)] = _convert(raw.strip(), schema[key])
            except ValueError:
                errors.append(f"{section}.{key}: cannot parse {raw!r} as {schema[key].__name__}")
    if errors:
        raise ConfigError(errors)

    def angle(value):
        if latitude:
            value = 90.0 - value
        return math.radians(value)

    cfg = ScenarioConfig()
    get = values.get
    cfg.kind = get(("scenario", "kind"), cfg.kind)
    if ("scenario", "colatitude_deg") in values:
        cfg.colatitude = angle(values[("scenario", "colatitude_deg")])
    cfg.alpha = math.radians(get(("scenario", "alpha_deg"), math.degrees(cfg.alpha)))
    cfg.beta = math.radians(get(("scenario", "beta_deg"), math.degrees(cfg.beta)))
    cfg.area = get(("scenario", "area_m2"), cfg.area)
    cfg.long_arm = get(("scenario", "long_arm_m"), cfg.long_arm)
    cfg.short_arm = get(("scenario", "short_arm_m"), cfg.short_arm)
    cfg.loop_segments = get(("scenario", "loop_segments"), cfg.loop_segments)
    cfg.route = get(("scenario", "route"), cfg.route)
    cfg.spectral_width = get(("hom", "spectral_width_rad_s"), cfg.spectral_width)
    cfg.visibility = get(("hom", "visibility"), cfg.visibility)
    cfg.jitter_sigma = get(("hom", "jitter_sigma_s"), cfg.jitter_sigma)
    cfg.jitter_mode = get(("hom", "jitter_mode"), cfg.jitter_mode)
    cfg.jitter_samples = get(("hom", "jitter_samples"), cfg.jitter_samples)
    cfg.scan_points = get(("hom", "scan_points"), cfg.scan_points)
    cfg.output_path = get(("output", "path"), cfg.output_path)
    cfg.seed = get(("output", "seed"), cfg.seed)
    cfg.earth = {key: value for (section, key), value in values.items() if section == "earth"}

    sw = SweepSpec()
    sw.variable = get(("sweep", "variable"), sw.variable)
    sw.steps = get(("sweep", "steps"), sw.steps)
    if sw.variable in ANGLE_VARIABLES:
        start = get(("sweep", "start"), 0.0)
        stop = get(("sweep", "stop"), 360.0)
        if sw.variable == "colatitude":
            sw.start, sw.stop = angle(start), angle(stop)
        else:
            sw.start, sw.stop = math.radians(start), math.radians(stop)
    else:
        sw.start = get(("sweep", "start"), cfg.area)
        sw.stop = get(("sweep", "stop"), cfg.area)
    cfg.sweep = sw
    validate(cfg)
    return cfg


def load_config(path, latitude: bool = False) -> ScenarioConfig:
    return parse_config(Path(path).read_text(), latitude=latitude)


# -- running -----------------------------------------------------------------

DELAY_COLUMNS = tuple(f"{name}_s" for name in eikonal.DelayBreakdown.TERMS)
FLOAT_FORMAT = "{:.16e}"


@dataclass
class SweepResult:
    variable: str
    header: list
    rows: list


def _sweep_column(variable: str) -> str:
    return f"{variable}_deg" if variable in ANGLE_VARIABLES else f"{variable}_m2"


def _numeric_common_path(cfg: ScenarioConfig, model: EarthModel) -> eikonal.DelayBreakdown:
    frame = local_frame(model, cfg.colatitude)
    loop = make_loop(cfg.area, cfg.alpha, cfg.loop_segments)
    rot = frame.rotation
    c = model.light_speed

    def delay(rotation):
        return eikonal.loop_delay(MetricPerturbation(frame.accel, rotation, c), loop)

    # the integrand is linear in h, so each rotation piece can be run alone;
    # the acceleration part cancels between the two traversal directions
    return eikonal.DelayBreakdown(
        sagnac=delay(rot.earth_spin),
        geodetic=delay(rot.geodetic + rot.thomas),
        lense_thirring=delay(rot.lense_thirring),
    )


def delay_breakdown(cfg: ScenarioConfig, model: EarthModel | None = None) -> eikonal.DelayBreakdown:
    model = model or cfg.earth_model()
    if cfg.kind == "common_path":
        if cfg.route == "numeric":
            return _numeric_common_path(cfg, model)
        return eikonal.sagnac_gr_delay(model, cfg.colatitude, cfg.alpha, cfg.area)
    if cfg.route == "numeric":
        return eikonal.dual_arm_delay_numeric(
            model, cfg.colatitude, cfg.alpha, cfg.beta, cfg.long_arm, cfg.short_arm
        )
    return eikonal.dual_arm_delay(model, cfg.colatitude, cfg.alpha, cfg.beta, cfg.long_arm, cfg.short_arm)


def row_seed(seed: int, index: int) -> int:
    """Independent per-row seed so rows can run in any order."""
    return int(np.random.SeedSequence([seed, index]).generate_state(1)[0])


def _evaluate(cfg: ScenarioConfig, model: EarthModel, index: int, value: float) -> list:
    point = cfg.with_value(cfg.sweep.variable, value)
    breakdown = delay_breakdown(point, model)
    shift = breakdown.total
    sigma = cfg.spectral_width
    window = 5.0 / sigma + 2.0 * abs(shift)
    curve = hom.dip_curve(shift, sigma, cfg.visibility, window, cfg.scan_points, cfg.jitter_sigma)
    jitter = hom.JitterModel(shift, cfg.jitter_sigma, row_seed(cfg.seed, index))
    pc = hom.dip_with_jitter(jitter, sigma, cfg.visibility, cfg.jitter_mode, cfg.jitter_samples)
    shown = math.degrees(value) if cfg.sweep.variable in ANGLE_VARIABLES else value
    return [
        shown,
        *breakdown.as_dict().values(),
        shift,
        shift * model.light_speed,
        curve.refined_minimum(),
        pc.probability,
        int(hom.is_resolvable(shift, cfg.jitter_sigma)),
    ]


def run_scenario(cfg: ScenarioConfig, threads: int = 1) -> SweepResult:
    validate(cfg)
    model = cfg.earth_model()
    values = cfg.sweep.values()
    header = [
        _sweep_column(cfg.sweep.variable),
        *DELAY_COLUMNS,
        "delay_total_s",
        "c_delay_m",
        "dip_minimum_s",
        "pc_zero_scan",
        "resolvable",
    ]
    jobs = list(enumerate(values))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda job: _evaluate(cfg, model, *job), jobs))
    else:
        rows = [_evaluate(cfg, model, i, v) for i, v in jobs]
    return SweepResult(cfg.sweep.variable, header, rows)


# -- figures of merit --------------------------------------------------------

ORIENTATION_STEPS = 361


def _spread(delays) -> tuple:
    mags = np.abs(np.asarray(delays))
    return float(mags.max()), float(mags.min())


def run_estimates(cfg: ScenarioConfig) -> SweepResult:
    """Delay per unit area for each effect at the configured colatitude.

    The spread is the largest minus the smallest delay *magnitude* over
    interferometer orientations: loop tilt in [0, pi] and dual-arm tilts
    alpha, beta in [0, pi/2].
    """
    validate(cfg)
    model = cfg.earth_model()
    area = cfg.long_arm * cfg.short_arm if cfg.kind == "dual_arm" else cfg.area
    theta = cfg.colatitude

    tilts = np.linspace(0.0, np.pi, ORIENTATION_STEPS)
    loop = [eikonal.sagnac_gr_delay(model, theta, a, area) for a in tilts]
    sag = _spread([b.sagnac for b in loop])
    gr = _spread([b.gr for b in loop])

    quarter = np.linspace(0.0, np.pi / 2, 91)
    arm = np.sqrt(area)
    dual = [eikonal.dual_arm_delay(model, theta, a, b, arm, arm) for a in quarter for b in quarter]
    grav = _spread([b.gravitational for b in dual])
    cent = _spread([b.centrifugal for b in dual])

    rows = []
    for name, (hi, lo) in (("sagnac", sag), ("gr", gr), ("gravitational", grav), ("centrifugal", cent)):
        rows.append([name, eikonal.figure_of_merit(hi, lo, area), hi, lo, area, math.degrees(theta)])
    header = ["effect", "figure_of_merit_s_per_km2", "delay_max_s", "delay_min_s", "area_m2", "colatitude_deg"]
    return SweepResult("effect", header, rows)


# -- output ------------------------------------------------------------------


def format_cell(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, int, np.integer)):
        return str(int(value))
    return FLOAT_FORMAT.format(float(value) + 0.0)


def write_csv(result: SweepResult, path) -> Path:
    path = Path(path)
    if path.parent != Path(""):
        path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(result.header)
        for row in result.rows:
            writer.writerow([format_cell(v) for v in row])
    return path


def read_csv(path) -> tuple:
    """Header and rows of a CSV written by :func:`write_csv`; numbers as floats."""
    with Path(path).open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = []
        for raw in reader:
            row = []
            for cell in raw:
                try:
                    row.append(float(cell))
                except ValueError:
                    row.append(cell)
            rows.append(row)
    return header, rows
