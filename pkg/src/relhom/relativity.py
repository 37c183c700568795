"""Proper-reference-frame quantities for an observer fixed on the Earth.

The local triad is east/north/up: x points along increasing longitude,
y points north along the meridian (toward the spin axis, i.e. along
-e_theta) and z is the outward radial normal. The observer's angle
``colatitude`` is the polar angle measured from the spin axis.

In this triad the spin axis is ``(0, sin(colat), cos(colat))``, the areal
vector ``A (e_r cos(a) - e_theta sin(a))`` reads ``A (0, sin a, cos a)`` and
the centrifugal acceleration ``w^2 R sin(colat) e_rho`` reads
``w^2 R sin(colat) (0, -cos(colat), sin(colat))``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .earthmodel import (
    SPIN_AXIS,
    EarthModel,
    gravitomagnetic_curl,
    newtonian_potential,
    potential_gradient,
)


def _check_colatitude(colatitude: float) -> None:
    if not (0.0 <= colatitude <= np.pi):
        raise ValueError(f"colatitude must lie in [0, pi], got {colatitude!r}")


def latitude_to_colatitude(latitude: float) -> float:
    return 0.5 * np.pi - latitude


def local_triad(colatitude: float) -> np.ndarray:
    """Rows are the local east, north, up unit vectors in Earth-centred axes.

    The observer sits at longitude zero, so ``triad @ v`` maps an
    Earth-centred vector into local components.
    """
    _check_colatitude(colatitude)
    s, c = np.sin(colatitude), np.cos(colatitude)
    east = np.array([0.0, 1.0, 0.0])
    north = np.array([-c, 0.0, s])
    up = np.array([s, 0.0, c])
    return np.vstack([east, north, up])


def observer_position(model: EarthModel, colatitude: float) -> np.ndarray:
    """Earth-centred position of the observer (longitude zero)."""
    _check_colatitude(colatitude)
    return model.radius * np.array([np.sin(colatitude), 0.0, np.cos(colatitude)])


@dataclass(frozen=True)
class RotationDecomposition:
    earth_spin: np.ndarray
    thomas: np.ndarray
    geodetic: np.ndarray
    lense_thirring: np.ndarray

    @property
    def total(self) -> np.ndarray:
        return self.earth_spin + self.thomas + self.geodetic + self.lense_thirring

    @property
    def relativistic(self) -> np.ndarray:
        """Geodetic plus Lense-Thirring pieces."""
        return self.geodetic + self.lense_thirring


@dataclass(frozen=True)
class LocalFrame:
    colatitude: float
    gravity: np.ndarray
    centrifugal: np.ndarray
    rotation: RotationDecomposition
    model: EarthModel

    @property
    def accel(self) -> np.ndarray:
        return self.gravity + self.centrifugal


def gravity_acceleration(model: EarthModel) -> np.ndarray:
    """Pure-gravity part of the measured acceleration, (0, 0, g)."""
    return np.array([0.0, 0.0, model.surface_gravity])


def centrifugal_acceleration(model: EarthModel, colatitude: float) -> np.ndarray:
    _check_colatitude(colatitude)
    s, c = np.sin(colatitude), np.cos(colatitude)
    return model.centrifugal_magnitude * s * np.array([0.0, -c, s])


def proper_acceleration(model: EarthModel, colatitude: float) -> np.ndarray:
    """Measured acceleration: centrifugal part plus (0, 0, g).

    Both pieces enter with the same sign, matching the combined
    gravitational + centrifugal delay of the dual-arm analysis.
    """
    return gravity_acceleration(model) + centrifugal_acceleration(model, colatitude)


def proper_rotation_rate(model: EarthModel, colatitude: float) -> RotationDecomposition:
    """Rotation rate measured by gyroscopes fixed on the surface.

    Terms are expressed in the local east/north/up triad. Only the
    gravitational half of the Thomas term is kept; the v x (centrifugal)
    half is three orders smaller than the other corrections and dropped.
    """
    triad = local_triad(colatitude)
    c2 = model.light_speed**2
    pos = observer_position(model, colatitude)
    omega = model.spin_rate * SPIN_AXIS
    v = np.cross(omega, pos)
    grad_u = potential_gradient(model, pos)
    u = newtonian_potential(model, model.radius)

    earth_spin = omega * (1.0 + 0.5 * np.dot(v, v) / c2 + u / c2)
    thomas = 0.5 * np.cross(v, -grad_u) / c2
    geodetic = -1.5 * np.cross(v, grad_u) / c2
    lense_thirring = -2.0 * gravitomagnetic_curl(model, pos) / c2
    return RotationDecomposition(
        earth_spin=triad @ earth_spin,
        thomas=triad @ thomas,
        geodetic=triad @ geodetic,
        lense_thirring=triad @ lense_thirring,
    )


def local_frame(model: EarthModel, colatitude: float) -> LocalFrame:
    return LocalFrame(
        colatitude=colatitude,
        gravity=gravity_acceleration(model),
        centrifugal=centrifugal_acceleration(model, colatitude),
        rotation=proper_rotation_rate(model, colatitude),
        model=model,
    )


@dataclass(frozen=True)
class MetricPerturbation:
    """Linear proper-frame metric perturbation around the observer.

    With x0 = c t::

        h_00 = -2 (accel . x) / c^2,  h_0i = (rotation x x)_i / c,  h_ij = 0
    """

    acceleration: np.ndarray
    rotation: np.ndarray
    light_speed: float

    def __call__(self, position) -> np.ndarray:
        x = np.asarray(position, dtype=float)
        c = self.light_speed
        h = np.zeros((4, 4))
        h[0, 0] = -2.0 * np.dot(self.acceleration, x) / c**2
        h0i = np.cross(self.rotation, x) / c
        h[0, 1:] = h0i
        h[1:, 0] = h0i
        return h

    @classmethod
    def flat(cls, light_speed: float) -> "MetricPerturbation":
        return cls(np.zeros(3), np.zeros(3), light_speed)


def local_metric(frame: LocalFrame) -> MetricPerturbation:
    return MetricPerturbation(
        acceleration=np.array(frame.accel, dtype=float),
        rotation=np.array(frame.rotation.total, dtype=float),
        light_speed=frame.model.light_speed,
    )
