"""Constants and potentials of a rigidly rotating spherical Earth.

Everything is SI. Vectors passed to the potential functions are expressed in
an Earth-centred frame whose third axis is the spin axis.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace

import numpy as np

SPIN_AXIS = np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True)
class EarthModel:
    grav_const: float = 6.674e-11
    mass: float = 5.972e24
    radius: float = 6.371e6
    moment_of_inertia: float = 0.3307 * 5.972e24 * 6.371e6**2
    spin_rate: float = 7.2921e-5
    surface_gravity: float = 9.8
    light_speed: float = 2.99792458e8

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not np.isfinite(value) or value <= 0:
                raise ValueError(f"{f.name} must be finite and positive, got {value!r}")
        if self.schwarzschild_radius / self.radius >= 1e-6:
            raise ValueError("body is too compact for the weak-field expansion")
        if self.moment_of_inertia >= 0.4 * self.mass * self.radius**2 * 1.01:
            raise ValueError("moment of inertia exceeds the uniform-sphere bound")

    @property
    def schwarzschild_radius(self) -> float:
        return 2.0 * self.grav_const * self.mass / self.light_speed**2

    @property
    def angular_momentum(self) -> np.ndarray:
        return self.moment_of_inertia * self.spin_rate * SPIN_AXIS

    @property
    def centrifugal_magnitude(self) -> float:
        """omega^2 R, the centrifugal acceleration at the equator."""
        return self.spin_rate**2 * self.radius

    def with_overrides(self, **kwargs) -> "EarthModel":
        return replace(self, **kwargs)


def default_earth() -> EarthModel:
    return EarthModel()


def newtonian_potential(model: EarthModel, r: float) -> float:
    """GM/r in m^2/s^2 (positive-sign convention)."""
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r!r}")
    return model.grav_const * model.mass / r


def newtonian_potential_over_c2(model: EarthModel, r: float) -> float:
    return newtonian_potential(model, r) / model.light_speed**2


def potential_gradient(model: EarthModel, position) -> np.ndarray:
    """Gradient of U = GM/r; points toward the centre."""
    x = np.asarray(position, dtype=float)
    r = np.linalg.norm(x)
    if r == 0:
        raise ValueError("potential gradient undefined at the origin")
    return -model.grav_const * model.mass * x / r**3


def gravitomagnetic_potential(model: EarthModel, position) -> np.ndarray:
    """G (J x r) / (2 r^3), in m^3/s^3.

    The factor G is kept inside so that g_0i = -4 V_i / c^3 in SI; the
    geometric-unit form J x r / 2r^3 is recovered with G = c = 1.
    """
    x = np.asarray(position, dtype=float)
    r = np.linalg.norm(x)
    if r == 0:
        raise ValueError("gravitomagnetic potential undefined at the origin")
    return model.grav_const * np.cross(model.angular_momentum, x) / (2.0 * r**3)


def gravitomagnetic_curl(model: EarthModel, position) -> np.ndarray:
    """Analytic curl of :func:`gravitomagnetic_potential` (dipole field)."""
    x = np.asarray(position, dtype=float)
    r = np.linalg.norm(x)
    if r == 0:
        raise ValueError("gravitomagnetic field undefined at the origin")
    n = x / r
    J = model.angular_momentum
    return model.grav_const * (3.0 * np.dot(J, n) * n - J) / (2.0 * r**3)
