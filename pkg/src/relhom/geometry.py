"""Interferometer paths in the observer's local east/north/up frame."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# Paths must stay deep inside the region where the linear metric holds
# (size << c^2/g ~ 1 light-year); this is a conservative hard gate.
MAX_EXTENT = 1e5


@dataclass(frozen=True)
class Polyline:
    vertices: np.ndarray
    closed: bool = False

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 3:
            raise ValueError("vertices must be an (n, 3) array")
        min_count = 3 if self.closed else 2
        if len(v) < min_count:
            raise ValueError(f"need at least {min_count} vertices, got {len(v)}")
        if not np.all(np.isfinite(v)):
            raise ValueError("vertices must be finite")
        steps = np.diff(self._ring(v), axis=0)
        if np.any(np.linalg.norm(steps, axis=1) == 0):
            raise ValueError("consecutive vertices must be distinct")
        if np.max(np.linalg.norm(v, axis=1)) >= MAX_EXTENT:
            raise ValueError(f"path leaves the |x| < {MAX_EXTENT:g} m validity region")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    def _ring(self, v):
        return np.vstack([v, v[:1]]) if self.closed else v

    def segments(self):
        """(start, end) vertex pairs in traversal order."""
        pts = self._ring(self.vertices)
        return list(zip(pts[:-1], pts[1:]))

    def reversed(self) -> "Polyline":
        return Polyline(self.vertices[::-1].copy(), self.closed)

    @property
    def length(self) -> float:
        return float(sum(np.linalg.norm(b - a) for a, b in self.segments()))

    @property
    def areal_vector(self) -> np.ndarray:
        """Half the summed cross products of consecutive vertices.

        Each component is summed with ``math.fsum`` so the result does not
        depend on traversal order: reversing the path negates it bitwise.
        """
        if not self.closed:
            raise ValueError("areal vector is defined only for closed paths")
        v = self.vertices
        terms = np.cross(v, np.roll(v, -1, axis=0))
        return 0.5 * np.array([math.fsum(col) for col in terms.T])


def areal_direction(tilt: float) -> np.ndarray:
    """Unit normal tilted by ``tilt`` from the vertical toward north."""
    return np.array([0.0, np.sin(tilt), np.cos(tilt)])


@dataclass(frozen=True)
class CommonPathLoop:
    area: float
    tilt: float
    path: Polyline

    @property
    def areal_vector(self) -> np.ndarray:
        return self.area * areal_direction(self.tilt)


def make_loop(area: float, tilt: float, segments: int = 64, inscribed: bool = False) -> CommonPathLoop:
    """Regular polygon centred on the origin, counter-clockwise about its normal.

    By default the circumradius is chosen so the polygon encloses exactly
    ``area``. With ``inscribed=True`` the vertices lie on the circle of area
    ``area`` instead, so the polygon area approaches it as segments**-2.
    """
    if not area > 0:
        raise ValueError(f"area must be positive, got {area!r}")
    if int(segments) != segments or segments < 3:
        raise ValueError(f"segments must be an integer >= 3, got {segments!r}")
    n = int(segments)
    if inscribed:
        radius = np.sqrt(area / np.pi)
    else:
        radius = np.sqrt(2.0 * area / (n * np.sin(2.0 * np.pi / n)))
    normal = areal_direction(tilt)
    u = np.array([1.0, 0.0, 0.0])
    w = np.cross(normal, u)
    phi = 2.0 * np.pi * np.arange(n) / n
    verts = radius * (np.outer(np.cos(phi), u) + np.outer(np.sin(phi), w))
    return CommonPathLoop(area=float(area), tilt=float(tilt), path=Polyline(verts, closed=True))


def arm_directions(alpha: float, beta: float):
    """Unit vectors along the short (BA, CD) and long (DA, CB) arms."""
    sa, ca, sb, cb = np.sin(alpha), np.cos(alpha), np.sin(beta), np.cos(beta)
    short = np.array([sa * sb, ca, sa * cb])
    long = np.array([ca * sb, -sa, ca * cb])
    return short, long


@dataclass(frozen=True)
class DualArmGeometry:
    long_arm: float
    short_arm: float
    tilt_alpha: float
    tilt_beta: float
    corners: dict = field(repr=False)

    @property
    def area(self) -> float:
        return self.long_arm * self.short_arm

    @property
    def path_abc(self) -> Polyline:
        c = self.corners
        return Polyline(np.vstack([c["A"], c["B"], c["C"]]))

    @property
    def path_cda(self) -> Polyline:
        c = self.corners
        return Polyline(np.vstack([c["C"], c["D"], c["A"]]))


def make_dual_arm(l: float, d: float, alpha: float, beta: float) -> DualArmGeometry:
    """Parallelogram A-B-C-D with A at the origin.

    The short arm (length ``d``) runs A->B and D->C, the long arm
    (length ``l``) runs A->D and B->C.
    """
    if not (l > 0 and d > 0):
        raise ValueError(f"arm lengths must be positive, got l={l!r}, d={d!r}")
    short, long = arm_directions(alpha, beta)
    a = np.zeros(3)
    b = d * short
    dd = l * long
    corners = {"A": a, "B": b, "C": b + dd, "D": dd}
    geom = DualArmGeometry(float(l), float(d), float(alpha), float(beta), corners)
    # builds the polylines once to apply their validation
    geom.path_abc, geom.path_cda
    return geom


def fiber_loop_area(fiber_length: float, loop_radius: float) -> float:
    """Effective enclosed area of a wound fibre coil, l r / 2."""
    if not (fiber_length > 0 and loop_radius > 0):
        raise ValueError("fiber length and loop radius must be positive")
    return 0.5 * fiber_length * loop_radius
