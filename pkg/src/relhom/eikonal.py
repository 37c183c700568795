"""Weak-field eikonal phase along polyline paths and the resulting delays.

Sign convention: the phase is ``S = k_mu x^mu`` with signature (-, +, +, +),
so the first-order perturbation obeys ``k . d(dS) = +1/2 h_mn k^m k^n`` and
``dS / omega`` is the arrival-time lag of the ray. A positive delay between
two paths means the first one arrives later. This reproduces both the
co-rotating Sagnac lag and the dual-arm gravitational sign.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad_vec

from .earthmodel import EarthModel
from .geometry import CommonPathLoop, DualArmGeometry, Polyline, make_dual_arm
from .relativity import (
    MetricPerturbation,
    centrifugal_acceleration,
    gravity_acceleration,
)

KM2 = 1e6  # m^2 per km^2


@dataclass(frozen=True)
class EikonalResult:
    phase_shift: float
    time_delay: float
    per_segment: list = field(default_factory=list)


@dataclass(frozen=True)
class DelayBreakdown:
    """Delay split by physical origin, in seconds."""

    sagnac: float = 0.0
    geodetic: float = 0.0
    lense_thirring: float = 0.0
    gravitational: float = 0.0
    centrifugal: float = 0.0

    TERMS = ("sagnac", "geodetic", "lense_thirring", "gravitational", "centrifugal")

    @property
    def gr(self) -> float:
        return self.geodetic + self.lense_thirring

    @property
    def total(self) -> float:
        return sum(getattr(self, name) for name in self.TERMS)

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in self.TERMS}


def _segment_integrand(metric: MetricPerturbation, start, step, k0):
    length = np.linalg.norm(step)
    k = k0 * np.concatenate([[1.0], step / length])
    dx = np.concatenate([[length], step])

    def integrand(s):
        return 0.5 * k @ metric(start + s * step) @ dx

    return integrand


def phase_along_path(
    metric: MetricPerturbation,
    path: Polyline,
    mean_frequency: float,
    direction: str = "forward",
    method: str = "exact",
) -> EikonalResult:
    """Integrate the eikonal perturbation along a polyline.

    The ray is null, so ``dx^0 = |dx|`` and ``k^mu = (omega/c)(1, t)`` on
    each straight segment with tangent ``t``. The proper-frame metric is
    linear in position, which makes the midpoint rule exact per segment
    (``method="exact"``). ``method="adaptive"`` integrates each segment with
    adaptive Gauss-Kronrod quadrature for metrics that are not linear.
    """
    if not mean_frequency > 0:
        raise ValueError("mean_frequency must be positive")
    if direction not in ("forward", "reverse"):
        raise ValueError(f"direction must be 'forward' or 'reverse', got {direction!r}")
    if method not in ("exact", "adaptive"):
        raise ValueError(f"unknown method {method!r}")
    if direction == "reverse":
        path = path.reversed()
    k0 = mean_frequency / metric.light_speed

    contributions = []
    for a, b in path.segments():
        step = b - a
        if np.linalg.norm(step) == 0:
            raise ValueError("degenerate segment")
        f = _segment_integrand(metric, a, step, k0)
        if method == "exact":
            contributions.append(float(f(0.5)))
        else:
            value, _ = quad_vec(f, 0.0, 1.0, epsabs=0.0, epsrel=1e-13)
            contributions.append(float(value))
    phase = float(np.sum(contributions))
    return EikonalResult(phase, phase / mean_frequency, contributions)


def loop_delay(metric: MetricPerturbation, loop: CommonPathLoop, mean_frequency: float = 1e15) -> float:
    """Counter-propagation delay: right-handed lag minus left-handed lag."""
    if not loop.path.closed:
        raise ValueError("loop_delay needs a closed path")
    fwd = phase_along_path(metric, loop.path, mean_frequency, "forward")
    rev = phase_along_path(metric, loop.path, mean_frequency, "reverse")
    return fwd.time_delay - rev.time_delay


def sagnac_gr_delay(model: EarthModel, colatitude: float, tilt: float, area: float) -> DelayBreakdown:
    """Closed-form common-path delay split into Sagnac, geodetic, Lense-Thirring.

    The relativistic pieces are 4 w'_rel . A / c^2 evaluated from the
    rotation-rate decomposition; the geodetic piece includes the
    gravitational half of the Thomas term (together they give the 2GM/c^2R
    coefficient).
    """
    if not area > 0:
        raise ValueError("area must be positive")
    if not (0.0 <= colatitude <= np.pi):
        raise ValueError("colatitude must lie in [0, pi]")
    c2 = model.light_speed**2
    base = 4.0 * model.spin_rate * area / c2
    st, ct = np.sin(colatitude), np.cos(colatitude)
    sa, ca = np.sin(tilt), np.cos(tilt)
    geo_coeff = 2.0 * model.grav_const * model.mass / (c2 * model.radius)
    lt_coeff = model.grav_const * model.moment_of_inertia / (c2 * model.radius**3)
    return DelayBreakdown(
        sagnac=base * np.cos(colatitude - tilt),
        geodetic=-base * geo_coeff * st * sa,
        lense_thirring=-base * lt_coeff * (2.0 * ct * ca - st * sa),
    )


SEGMENTS = ("BA", "CB", "CD", "DA")


def dual_arm_segment_phases(
    metric: MetricPerturbation, geom: DualArmGeometry, mean_frequency: float
) -> dict:
    """Phase accrued on each arm, traversed along A->B->C and C->D->A."""
    c = geom.corners
    legs = {"BA": (c["A"], c["B"]), "CB": (c["B"], c["C"]), "CD": (c["C"], c["D"]), "DA": (c["D"], c["A"])}
    return {
        name: phase_along_path(metric, Polyline(np.vstack(ends)), mean_frequency).phase_shift
        for name, ends in legs.items()
    }


def _path_difference(phases: dict, mean_frequency: float) -> float:
    abc = phases["BA"] + phases["CB"]
    cda = phases["CD"] + phases["DA"]
    return (abc - cda) / mean_frequency


def dual_arm_delay(model: EarthModel, colatitude: float, alpha: float, beta: float, l: float, d: float) -> DelayBreakdown:
    """Closed-form delay of path ABC relative to CDA from uniform accelerations."""
    if not (l > 0 and d > 0):
        raise ValueError("arm lengths must be positive")
    if not (0.0 <= colatitude <= np.pi):
        raise ValueError("colatitude must lie in [0, pi]")
    c3 = model.light_speed**3
    area = l * d
    st, ct = np.sin(colatitude), np.cos(colatitude)
    sa, ca, cb = np.sin(alpha), np.cos(alpha), np.cos(beta)
    return DelayBreakdown(
        gravitational=model.surface_gravity * area / c3 * cb * (ca - sa),
        centrifugal=model.centrifugal_magnitude * area / c3 * st * (st * cb * (ca - sa) + ct * (ca + sa)),
    )


def dual_arm_delay_numeric(
    model: EarthModel,
    colatitude: float,
    alpha: float,
    beta: float,
    l: float,
    d: float,
    mean_frequency: float = 1e15,
) -> DelayBreakdown:
    """Same split as :func:`dual_arm_delay`, by integrating each arm."""
    geom = make_dual_arm(l, d, alpha, beta)
    c = model.light_speed
    zero = np.zeros(3)
    grav = MetricPerturbation(gravity_acceleration(model), zero, c)
    cent = MetricPerturbation(centrifugal_acceleration(model, colatitude), zero, c)
    return DelayBreakdown(
        gravitational=_path_difference(dual_arm_segment_phases(grav, geom, mean_frequency), mean_frequency),
        centrifugal=_path_difference(dual_arm_segment_phases(cent, geom, mean_frequency), mean_frequency),
    )


def figure_of_merit(delay_max: float, delay_min: float, area: float) -> float:
    """Delay spread per unit area, in s/km^2 (``area`` in m^2)."""
    if not area > 0:
        raise ValueError("area must be positive")
    return (delay_max - delay_min) / (area / KM2)
