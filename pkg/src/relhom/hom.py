"""Hong-Ou-Mandel coincidence probabilities for delayed single photons.

Spectral-width convention: ``spectral_width`` (sigma) is the width of the
Gaussian *amplitude*, f(nu) ~ exp(-(nu - nu0)^2 / (2 sigma^2)). With this
choice the overlap of two identical wavepackets reproduces the closed form
p_c = (1 - V exp(-dt^2 sigma^2 / 2)) / 2; the intensity |f|^2 then has
standard deviation sigma / sqrt(2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NORM_RTOL = 1e-8


def _check_visibility(visibility):
    if not (0.0 <= visibility <= 1.0):
        raise ValueError(f"visibility must lie in [0, 1], got {visibility!r}")


def _check_width(spectral_width):
    if not spectral_width > 0:
        raise ValueError(f"spectral_width must be positive, got {spectral_width!r}")


@dataclass(frozen=True)
class SpectralAmplitude:
    frequencies: np.ndarray
    amplitudes: np.ndarray

    def __post_init__(self):
        nu = np.asarray(self.frequencies, dtype=float)
        amp = np.asarray(self.amplitudes, dtype=complex)
        if nu.ndim != 1 or nu.shape != amp.shape or len(nu) < 2:
            raise ValueError("frequencies and amplitudes must be matching 1-D arrays")
        steps = np.diff(nu)
        if np.any(steps <= 0):
            raise ValueError("frequency grid must be strictly increasing")
        if not np.allclose(steps, steps[0], rtol=1e-9, atol=0):
            raise ValueError("frequency grid must be uniform")
        norm = np.sum(np.abs(amp) ** 2) * steps[0]
        if abs(norm - 1.0) > NORM_RTOL:
            raise ValueError(f"wavepacket is not normalised (sum |f|^2 dnu = {norm!r})")
        object.__setattr__(self, "frequencies", nu)
        object.__setattr__(self, "amplitudes", amp)

    @property
    def spacing(self) -> float:
        return float(self.frequencies[1] - self.frequencies[0])


def frequency_grid(center: float, spectral_width: float, points: int = 4096, halfspan: float = 8.0) -> np.ndarray:
    """Uniform grid over center +/- halfspan * spectral_width."""
    _check_width(spectral_width)
    return np.linspace(center - halfspan * spectral_width, center + halfspan * spectral_width, points)


def gaussian_wavepacket(center: float, spectral_width: float, grid=None, points: int = 4096) -> SpectralAmplitude:
    if grid is None:
        grid = frequency_grid(center, spectral_width, points)
    _check_width(spectral_width)
    nu = np.asarray(grid, dtype=float)
    amp = np.exp(-((nu - center) ** 2) / (2.0 * spectral_width**2)).astype(complex)
    amp /= np.sqrt(np.sum(np.abs(amp) ** 2) * (nu[1] - nu[0]))
    return SpectralAmplitude(nu, amp)


def coincidence_ideal(delay, spectral_width: float, visibility: float = 1.0):
    """(1 - V exp(-delay^2 sigma^2 / 2)) / 2; vectorised over ``delay``."""
    _check_width(spectral_width)
    _check_visibility(visibility)
    dt = np.asarray(delay, dtype=float)
    p = 0.5 * (1.0 - visibility * np.exp(-0.5 * dt**2 * spectral_width**2))
    return float(p) if p.ndim == 0 else p


def spectral_overlap(f: SpectralAmplitude, g: SpectralAmplitude, delay: float) -> complex:
    """Discrete sum of conj(f) g exp(-i nu delay) dnu over the shared grid."""
    if f.frequencies.shape != g.frequencies.shape or not np.array_equal(f.frequencies, g.frequencies):
        raise ValueError("wavepackets must share the same frequency grid")
    nu = f.frequencies
    return complex(np.sum(np.conj(f.amplitudes) * g.amplitudes * np.exp(-1j * nu * delay)) * f.spacing)


def coincidence_overlap(f: SpectralAmplitude, g: SpectralAmplitude, delay: float) -> float:
    """Coincidence probability for independent photons in wavepackets f and g.

    Delaying mode a by ``delay`` and mixing on a 50/50 beamsplitter, the
    projection onto one photon per output port gives
    ``p_c = (1 - |<f| exp(-i nu delay) |g>|^2) / 2``.
    """
    overlap = spectral_overlap(f, g, delay)
    return 0.5 * (1.0 - abs(overlap) ** 2)


@dataclass(frozen=True)
class JitterModel:
    mean_shift: float
    jitter_sigma: float
    seed: int = 0

    def __post_init__(self):
        if not self.jitter_sigma >= 0:
            raise ValueError(f"jitter_sigma must be non-negative, got {self.jitter_sigma!r}")

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


@dataclass(frozen=True)
class JitterPoint:
    probability: float
    std_error: float = 0.0


def jittered_parameters(spectral_width: float, visibility: float, jitter_sigma: float):
    """Effective (visibility, width) after averaging over Gaussian delay noise."""
    k = 1.0 + (spectral_width * jitter_sigma) ** 2
    return visibility / np.sqrt(k), spectral_width / np.sqrt(k)


def dip_with_jitter(
    model: JitterModel,
    spectral_width: float,
    visibility: float = 1.0,
    mode: str = "analytic",
    samples: int = 100_000,
) -> JitterPoint:
    """Coincidence probability when the delay fluctuates as N(mean_shift, jitter^2)."""
    _check_width(spectral_width)
    _check_visibility(visibility)
    if mode == "analytic":
        v_eff, s_eff = jittered_parameters(spectral_width, visibility, model.jitter_sigma)
        return JitterPoint(coincidence_ideal(model.mean_shift, s_eff, v_eff))
    if mode != "montecarlo":
        raise ValueError(f"mode must be 'analytic' or 'montecarlo', got {mode!r}")
    if int(samples) != samples or samples < 1:
        raise ValueError(f"samples must be a positive integer, got {samples!r}")
    delays = model.rng().normal(model.mean_shift, model.jitter_sigma, int(samples))
    p = coincidence_ideal(delays, spectral_width, visibility)
    stderr = float(np.std(p, ddof=1) / np.sqrt(samples)) if samples > 1 else float("inf")
    return JitterPoint(float(np.mean(p)), stderr)


def visibility_from_extremes(p_max: float, p_min: float) -> float:
    """(p_max - p_min) / p_max, consistent with p_c = (1 - V e^...)/2."""
    if not (0.0 <= p_min <= p_max <= 0.5):
        raise ValueError("need 0 <= p_min <= p_max <= 1/2")
    if p_max == 0:
        raise ValueError("p_max must be positive")
    return (p_max - p_min) / p_max


def visibility_min_denominator(p_max: float, p_min: float) -> float:
    """(p_max - p_min) / p_min. Kept for comparison; it does not invert the dip formula."""
    if not (0.0 <= p_min <= p_max <= 0.5):
        raise ValueError("need 0 <= p_min <= p_max <= 1/2")
    if p_min == 0:
        raise ValueError("p_min must be positive")
    return (p_max - p_min) / p_min


def is_resolvable(shift: float, jitter_sigma: float) -> bool:
    """A dip shift is resolvable when it exceeds the delay jitter."""
    return abs(shift) > jitter_sigma


@dataclass(frozen=True)
class DipCurve:
    delays: np.ndarray
    probabilities: np.ndarray
    visibility: float
    spectral_width: float

    @property
    def argmin(self) -> int:
        return int(np.argmin(self.probabilities))

    @property
    def minimum_delay(self) -> float:
        return float(self.delays[self.argmin])

    def refined_minimum(self) -> float:
        """Vertex of the parabola through the lowest sample and its neighbours."""
        i = self.argmin
        if i == 0 or i == len(self.delays) - 1:
            return self.minimum_delay
        y0, y1, y2 = self.probabilities[i - 1 : i + 2]
        denom = y0 - 2.0 * y1 + y2
        if denom <= 0:
            return self.minimum_delay
        h = self.delays[i + 1] - self.delays[i]
        return float(self.delays[i] + 0.5 * h * (y0 - y2) / denom)


def dip_curve(
    delay_center: float,
    spectral_width: float,
    visibility: float = 1.0,
    window_halfwidth: float | None = None,
    points: int = 201,
    jitter_sigma: float = 0.0,
) -> DipCurve:
    """Sample the dip on a scan grid symmetric about zero.

    The dip minimum sits at ``delay_center``. Jitter, if given, is folded in
    analytically.
    """
    _check_width(spectral_width)
    _check_visibility(visibility)
    if int(points) != points or points < 3 or points % 2 == 0:
        raise ValueError(f"points must be an odd integer >= 3, got {points!r}")
    if window_halfwidth is None:
        window_halfwidth = 5.0 / spectral_width
    if not window_halfwidth > 0:
        raise ValueError("window_halfwidth must be positive")
    scan = np.linspace(-window_halfwidth, window_halfwidth, int(points))
    v_eff, s_eff = jittered_parameters(spectral_width, visibility, jitter_sigma)
    probs = coincidence_ideal(scan - delay_center, s_eff, v_eff)
    return DipCurve(scan, probs, float(visibility), float(spectral_width))
