import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate as sp_integrate

from rydjam.quadrature import QuadratureError, gauss_kronrod, integrate


def test_single_panel_exact_for_polynomials():
    # K15 integrates degree <= 22 exactly
    val, err = gauss_kronrod(lambda x: x ** 22, 0.0, 1.0)
    assert abs(val - 1 / 23) < 1e-15
    val, err = gauss_kronrod(lambda x: 3 * x ** 2, -1.0, 2.0)
    assert abs(val - 9.0) < 1e-13
    assert err < 1e-12


def test_smooth_integrals():
    assert abs(integrate(np.sin, 0.0, math.pi).value - 2.0) < 1e-12
    assert abs(integrate(np.exp, 0.0, 1.0).value - (math.e - 1)) < 1e-13


def test_semi_infinite():
    assert abs(integrate(lambda x: np.exp(-x), 0.0, math.inf).value - 1.0) < 1e-11
    assert abs(integrate(lambda x: 1 / (1 + x * x), 0.0, math.inf).value - math.pi / 2) < 1e-10
    assert abs(integrate(lambda x: np.exp(-x), 2.0, math.inf).value - math.exp(-2)) < 1e-11


def test_endpoint_singularity():
    res = integrate(lambda x: 1 / np.sqrt(x), 0.0, 1.0, tol=1e-9)
    assert abs(res.value - 2.0) < 1e-8


def test_reversed_and_empty():
    assert integrate(np.exp, 1.0, 0.0).value == pytest.approx(-(math.e - 1), abs=1e-13)
    assert integrate(np.exp, 1.0, 1.0).value == 0.0


def test_failure_reports_partial():
    with pytest.raises(QuadratureError) as info:
        integrate(lambda x: np.sin(1 / x), 1e-8, 1.0, tol=1e-14, max_intervals=20)
    assert info.value.partial.evaluations > 0


def test_invalid_inputs():
    with pytest.raises(ValueError):
        integrate(np.exp, 0.0, 1.0, tol=0)
    with pytest.raises(ValueError):
        integrate(np.exp, -math.inf, math.inf)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.1, 20), st.floats(-3, 3), st.floats(0.1, 5))
def test_against_scipy(a, shift, width):
    f = lambda x: np.exp(-a * (x - shift) ** 2) * np.cos(a * x)  # noqa: E731
    lo, hi = shift - width, shift + width
    ref, _ = sp_integrate.quad(lambda x: float(f(np.array([x]))[0]), lo, hi, epsabs=1e-13, epsrel=1e-13, limit=200)
    res = integrate(f, lo, hi, tol=1e-12)
    assert abs(res.value - ref) < 1e-10
