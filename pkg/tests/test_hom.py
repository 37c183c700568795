import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relhom.earthmodel import default_earth
from relhom.eikonal import sagnac_gr_delay
from relhom.hom import (
    JitterModel,
    SpectralAmplitude,
    coincidence_ideal,
    coincidence_overlap,
    dip_curve,
    dip_with_jitter,
    frequency_grid,
    gaussian_wavepacket,
    is_resolvable,
    jittered_parameters,
    spectral_overlap,
    visibility_from_extremes,
    visibility_min_denominator,
)

SIGMA = 1e13
NU0 = 2.4e15


@pytest.fixture(scope="module")
def packet():
    return gaussian_wavepacket(NU0, SIGMA)


# ----------------------------------------------------------------- closed form


def test_ideal_examples():
    assert coincidence_ideal(0.0, SIGMA) == 0.0
    assert coincidence_ideal(1e-9, SIGMA) == 0.5
    assert coincidence_ideal(math.sqrt(2) / SIGMA, SIGMA) == pytest.approx(0.31606027941427883, abs=1e-15)
    assert coincidence_ideal(0.0, SIGMA, 0.8) == pytest.approx(0.1, abs=1e-16)


def test_ideal_is_vectorised():
    dt = np.linspace(-1e-12, 1e-12, 11)
    out = coincidence_ideal(dt, SIGMA)
    assert out.shape == dt.shape
    assert out[5] == 0.0


@pytest.mark.parametrize("v", [-0.1, 1.5])
def test_ideal_rejects_bad_visibility(v):
    with pytest.raises(ValueError):
        coincidence_ideal(0.0, SIGMA, v)


def test_ideal_rejects_bad_width():
    with pytest.raises(ValueError):
        coincidence_ideal(0.0, 0.0)


# -------------------------------------------------------- wavepacket overlap


def test_identical_photons_bunch(packet):
    assert coincidence_overlap(packet, packet, 0.0) == pytest.approx(0.0, abs=1e-12)


def test_disjoint_supports_are_distinguishable():
    grid = np.linspace(0.0, 100.0, 201)
    step = grid[1] - grid[0]
    low = np.where(grid < 40, 1.0, 0.0)
    high = np.where(grid > 60, 1.0, 0.0)
    f = SpectralAmplitude(grid, low / np.sqrt(np.sum(low**2) * step))
    g = SpectralAmplitude(grid, high / np.sqrt(np.sum(high**2) * step))
    for dt in (-3.0, 0.0, 0.25, 17.0):
        assert coincidence_overlap(f, g, dt) == 0.5


@pytest.mark.invariant
def test_overlap_matches_closed_form(packet):
    # analytic Gaussian overlap: |<f|e^{-i nu dt}|f>|^2 = exp(-dt^2 sigma^2 / 2)
    delays = np.linspace(-5 / SIGMA, 5 / SIGMA, 201)
    numeric = np.array([coincidence_overlap(packet, packet, dt) for dt in delays])
    oracle = 0.5 * (1 - np.exp(-0.5 * delays**2 * SIGMA**2))
    assert np.max(np.abs(numeric - oracle)) < 1e-6


def test_overlap_of_shifted_gaussians():
    # offset Gaussians: |overlap| = exp(-d^2 / (4 sigma^2)) exp(-dt^2 sigma^2 / 4)
    grid = frequency_grid(NU0, SIGMA, 8192, halfspan=12)
    f = gaussian_wavepacket(NU0, SIGMA, grid)
    g = gaussian_wavepacket(NU0 + 1.5 * SIGMA, SIGMA, grid)
    expected = math.exp(-(1.5**2) / 4)
    assert abs(spectral_overlap(f, g, 0.0)) == pytest.approx(expected, rel=1e-9)
    assert abs(spectral_overlap(f, g, 2e-13)) == pytest.approx(expected * math.exp(-0.25 * (2e-13 * SIGMA) ** 2), rel=1e-9)


@pytest.mark.invariant
@settings(deadline=None, max_examples=30)
@given(st.floats(-5 / SIGMA, 5 / SIGMA), st.floats(-2.0, 2.0), st.floats(0.5, 1.5))
def test_swap_symmetry(dt, offset, width):
    grid = frequency_grid(NU0, SIGMA, 2048, halfspan=12)
    f = gaussian_wavepacket(NU0, SIGMA, grid)
    g = gaussian_wavepacket(NU0 + offset * SIGMA, width * SIGMA, grid)
    assert coincidence_overlap(f, g, dt) == pytest.approx(coincidence_overlap(g, f, -dt), abs=1e-12)


def test_grid_mismatch(packet):
    other = gaussian_wavepacket(NU0, SIGMA, points=1024)
    with pytest.raises(ValueError):
        coincidence_overlap(packet, other, 0.0)


def test_spectral_amplitude_validation():
    grid = np.linspace(0, 1, 5)
    with pytest.raises(ValueError):
        SpectralAmplitude(grid, np.ones(5))  # sum |f|^2 dnu = 1.25
    with pytest.raises(ValueError):
        SpectralAmplitude(grid[::-1], np.ones(5) / np.sqrt(1.25))
    with pytest.raises(ValueError):
        SpectralAmplitude(np.array([0, 0.1, 0.5, 0.7, 1.0]), np.ones(5))
    with pytest.raises(ValueError):
        SpectralAmplitude(grid, np.ones(4))
    ok = SpectralAmplitude(grid, np.ones(5) / np.sqrt(1.25))
    assert ok.spacing == 0.25


@pytest.mark.invariant
def test_wavepacket_is_normalised(packet):
    assert np.sum(np.abs(packet.amplitudes) ** 2) * packet.spacing == pytest.approx(1.0, rel=1e-12)
    assert len(packet.frequencies) == 4096
    assert packet.frequencies[-1] - packet.frequencies[0] == pytest.approx(16 * SIGMA)


# --------------------------------------------------------------------- jitter


def test_no_jitter_is_ideal():
    for dt in (0.0, 3e-14, -1e-13):
        point = dip_with_jitter(JitterModel(dt, 0.0), SIGMA, 0.9)
        assert point.probability == coincidence_ideal(dt, SIGMA, 0.9)


def test_jitter_of_one_coherence_time():
    v_eff, s_eff = jittered_parameters(SIGMA, 0.9, 1 / SIGMA)
    assert v_eff == pytest.approx(0.9 / math.sqrt(2), rel=1e-15)
    assert s_eff == pytest.approx(SIGMA / math.sqrt(2), rel=1e-15)
    assert dip_with_jitter(JitterModel(0.0, 1 / SIGMA), SIGMA).probability == pytest.approx(0.5 * (1 - 1 / math.sqrt(2)))


def test_analytic_average_against_quadrature():
    # direct numerical Gaussian average of the ideal dip as an independent oracle
    shift, jitter, v = 1.3e-13, 0.7e-13, 0.85
    x = np.linspace(shift - 12 * jitter, shift + 12 * jitter, 20001)
    weight = np.exp(-0.5 * ((x - shift) / jitter) ** 2) / (jitter * math.sqrt(2 * math.pi))
    oracle = np.trapezoid(weight * coincidence_ideal(x, SIGMA, v), x)
    got = dip_with_jitter(JitterModel(shift, jitter), SIGMA, v).probability
    assert got == pytest.approx(oracle, abs=1e-12)


def test_montecarlo_is_seeded_and_consistent():
    model = JitterModel(0.5 / SIGMA, 1.0 / SIGMA, seed=11)
    first = dip_with_jitter(model, SIGMA, 1.0, "montecarlo", 50_000)
    second = dip_with_jitter(model, SIGMA, 1.0, "montecarlo", 50_000)
    assert first == second
    analytic = dip_with_jitter(model, SIGMA, 1.0).probability
    assert abs(first.probability - analytic) < 3 * first.std_error


def test_jitter_domain():
    with pytest.raises(ValueError):
        JitterModel(0.0, -1e-15)
    with pytest.raises(ValueError):
        dip_with_jitter(JitterModel(0.0, 1e-15), SIGMA, 1.0, "montecarlo", 0)
    with pytest.raises(ValueError):
        dip_with_jitter(JitterModel(0.0, 1e-15), SIGMA, 1.0, "bootstrap")


@pytest.mark.invariant
@given(st.floats(1e-16, 1e-11), st.floats(0.01, 1.0))
def test_jitter_never_deepens_dip(jitter, v):
    clean = dip_with_jitter(JitterModel(0.0, 0.0), SIGMA, v).probability
    noisy = dip_with_jitter(JitterModel(0.0, jitter), SIGMA, v).probability
    assert noisy > clean


# ------------------------------------------------------------------ dip shape

offsets = st.floats(0, 6 / SIGMA)


@pytest.mark.invariant
@given(st.floats(-1e-13, 1e-13), offsets, st.floats(0, 3 / SIGMA), st.floats(0, 1))
def test_dip_is_even_about_its_minimum(center, tau, jitter, v):
    v_eff, s_eff = jittered_parameters(SIGMA, v, jitter)
    left = coincidence_ideal(-tau, s_eff, v_eff)
    right = coincidence_ideal(tau, s_eff, v_eff)
    assert left == right
    curve = dip_curve(center, SIGMA, v, jitter_sigma=jitter)
    assert np.all(curve.probabilities >= 0)
    assert np.all(curve.probabilities <= 0.5 + 1e-12)


@pytest.mark.invariant
@given(st.floats(0, 3 / SIGMA), st.floats(0, 1))
def test_dip_is_monotone_away_from_minimum(jitter, v):
    curve = dip_curve(0.0, SIGMA, v, jitter_sigma=jitter, points=401)
    half = curve.probabilities[200:]
    assert np.all(np.diff(half) >= 0)
    np.testing.assert_allclose(curve.probabilities[::-1], curve.probabilities, rtol=0, atol=1e-10)


def test_curve_fields():
    curve = dip_curve(0.0, SIGMA, 0.7)
    assert len(curve.delays) == 201
    assert curve.argmin == 100
    assert curve.minimum_delay == 0.0
    assert curve.delays[-1] == pytest.approx(5 / SIGMA)
    assert curve.visibility == 0.7
    assert curve.spectral_width == SIGMA


@given(st.floats(-4 / SIGMA, 4 / SIGMA))
def test_argmin_tracks_center(tau):
    curve = dip_curve(tau, SIGMA)
    step = curve.delays[1] - curve.delays[0]
    assert abs(curve.minimum_delay - tau) <= 0.5 * step * (1 + 1e-9)
    assert curve.refined_minimum() == pytest.approx(tau, abs=0.05 * step)


@pytest.mark.parametrize("points", [2, 4, 100, 3.5])
def test_dip_curve_points_domain(points):
    with pytest.raises(ValueError):
        dip_curve(0.0, SIGMA, points=points)


def test_latitude_pair_shift_matches_sagnac_difference():
    earth = default_earth()
    area = 1e6
    near = sagnac_gr_delay(earth, 0.0, 0.0, area).total
    far = sagnac_gr_delay(earth, np.pi / 4, 0.0, area).total
    window, n = 5e-15, 2001
    a = dip_curve(near, SIGMA, window_halfwidth=window, points=n)
    b = dip_curve(far, SIGMA, window_halfwidth=window, points=n)
    step = a.delays[1] - a.delays[0]
    assert abs((a.minimum_delay - b.minimum_delay) - (near - far)) <= step
    assert a.refined_minimum() - b.refined_minimum() == pytest.approx(near - far, rel=1e-6)


# -------------------------------------------------------------- visibility


def test_visibility_examples():
    assert visibility_from_extremes(0.5, 0.0) == 1.0
    assert visibility_from_extremes(0.5, 0.25) == 0.5
    assert visibility_from_extremes(0.5, 0.1) == pytest.approx(0.8)
    assert visibility_min_denominator(0.5, 0.25) == 1.0


@given(st.floats(0, 1))
def test_visibility_inverts_dip(v):
    p_max = coincidence_ideal(1.0, SIGMA, v)
    p_min = coincidence_ideal(0.0, SIGMA, v)
    assert visibility_from_extremes(p_max, p_min) == pytest.approx(v, abs=1e-15)


@pytest.mark.parametrize("p_max, p_min", [(0.0, 0.0), (0.3, 0.4), (0.6, 0.1), (0.5, -0.1)])
def test_visibility_domain(p_max, p_min):
    with pytest.raises(ValueError):
        visibility_from_extremes(p_max, p_min)


@pytest.mark.invariant
def test_resolvable_threshold():
    assert is_resolvable(2e-18, 1e-18)
    assert not is_resolvable(1e-18, 1e-18)
    assert not is_resolvable(1e-18, 2e-18)
    assert is_resolvable(-2e-18, 1e-18)
    assert is_resolvable(1e-30, 0.0)
