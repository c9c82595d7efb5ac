import math

import mpmath
import numpy as np
import pytest

import stabma


def test_version():
    assert stabma.__version__


def test_sas_stream_is_deterministic_and_coupled():
    a = stabma.sas_stream(7, 0, 1000, 1.5)
    b = stabma.sas_stream(7, 0, 1000, 1.5)
    assert np.array_equal(a, b)
    c = stabma.sas_stream(7, 0, 1000, 1.9)
    assert np.all(np.sign(a) == np.sign(c))
    assert stabma.sas_stream(7, 0, 0, 1.5).size == 0


def test_gaussian_variance():
    x = stabma.sas_stream(3, 0, 200_000, 2.0, 1.5)
    assert x.var() == pytest.approx(2 * 1.5**2, rel=0.025)


@pytest.mark.parametrize("alpha", [0.5, 1.3, 1.5, 1.9])
def test_c_alpha_against_mpmath(alpha):
    mpmath.mp.dps = 30
    a = mpmath.mpf(alpha)
    ref = (2 * mpmath.gamma(1 - a) * mpmath.cos(mpmath.pi * a / 2) / a) ** (-1 / a)
    assert stabma.c_alpha(alpha) == pytest.approx(float(ref), rel=1e-10)


def test_c_alpha_closed_form():
    assert stabma.c_alpha(0.5) == pytest.approx(1 / (8 * math.pi), rel=1e-13)


def test_fft_matches_direct():
    for kernel, params in [("rev_ou", {"lambda": 0.7}), ("extime", {}), ("exfrequency", {}), ("lfsn", {"H": 0.6})]:
        f, meta = stabma.synthesize(kernel, params, alpha=1.7, omega=4, Omega=3, n=40, seed=11)
        d, _ = stabma.synthesize(kernel, params, alpha=1.7, omega=4, Omega=3, n=40, seed=11, method="direct")
        assert meta["method"] == "fft"
        assert np.all(np.abs(f - d) <= 1e-9 * (1 + np.abs(d)))


def test_constant_multistable_equals_plain():
    plain, _ = stabma.synthesize("extime", alpha=1.6, omega=8, Omega=8, n=300, seed=5)
    glued, meta = stabma.synthesize_multistable("extime", alpha_fn="constant:1.6", omega=8, Omega=8, n=300, seed=5)
    assert np.array_equal(plain, glued)
    _, meta = stabma.synthesize_multistable("rev_ou", omega=8, Omega=8, n=300, seed=5, renormalize=True)
    assert meta["renormalize"] == "per_line_min_max"


def test_bounds_and_tuning():
    assert stabma.bound("extime", alpha=1.8, omega=104, Omega=175504)["err_scale"] == pytest.approx(0.074, rel=0.05)
    b = stabma.bound("rev_ou", {"lambda": 1.0}, alpha=2.0, omega=2, Omega=1, formula="generic")
    assert b["total_alpha_power"] == pytest.approx(1.73434, rel=1e-5)
    assert stabma.optimal_Omega("lfsn", {"H": 0.5}, alpha=1.8, omega=1024)["Omega"] == 1024
    assert 4 <= stabma.optimal_Omega("rev_ou", alpha=1.8, omega=512)["Omega"] <= 12


def test_analysis_helpers():
    assert stabma.alpha_norm("rev_ou", alpha=2.0) == pytest.approx(math.sqrt(0.5), rel=1e-9)
    assert stabma.lalpha_distance("extime", alpha=1.8, t=0.0, r=0.1) == 0.0
    x = stabma.sas_stream(404, 0, 100_000, 1.8, 2.0)
    value, err = stabma.estimate_scale(x, 1.8)
    assert value == pytest.approx(2.0, rel=0.05)
    assert err > 0
    assert stabma.estimate_scaling_exponent(np.arange(1.0, 2049.0), 1.5, [1, 2, 4, 8]) == pytest.approx(1.0)


def test_errors_are_value_errors():
    with pytest.raises(ValueError):
        stabma.synthesize("nope", alpha=1.5, omega=1, Omega=1, n=1, seed=0)
    with pytest.raises(stabma.ValidationError):
        stabma.sas_stream(1, 0, 10, 2.5)
    with pytest.raises(ValueError):
        stabma.c_alpha(1.0)
