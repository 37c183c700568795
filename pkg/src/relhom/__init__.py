"""Relativistic time delays in earthbound interferometers and their Hong-Ou-Mandel signature."""

from .earthmodel import EarthModel, default_earth
from .eikonal import DelayBreakdown, dual_arm_delay, loop_delay, phase_along_path, sagnac_gr_delay
from .geometry import fiber_loop_area, make_dual_arm, make_loop
from .hom import coincidence_ideal, coincidence_overlap, dip_curve, dip_with_jitter
from .relativity import local_frame, local_metric, proper_acceleration, proper_rotation_rate

__all__ = [
    "EarthModel",
    "default_earth",
    "DelayBreakdown",
    "dual_arm_delay",
    "loop_delay",
    "phase_along_path",
    "sagnac_gr_delay",
    "fiber_loop_area",
    "make_dual_arm",
    "make_loop",
    "coincidence_ideal",
    "coincidence_overlap",
    "dip_curve",
    "dip_with_jitter",
    "local_frame",
    "local_metric",
    "proper_acceleration",
    "proper_rotation_rate",
]
