import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import signal

from helpers import db, refined_extrema
from iirspeech import elliptic as ell
from iirspeech import prototypes as pt
from iirspeech.errors import InfeasibleSpecError, InvalidFrequencyError, InvalidOrderError, InvalidRippleError


def assert_prototype_invariants(proto):
    poles, zeros = proto.poles, proto.zeros
    assert np.all(poles.real < 0)
    assert len(zeros) <= len(poles)
    assert proto.gain > 0
    for roots in (poles, zeros):
        key = lambda c: (c.real, c.imag)
        assert sorted(map(complex, roots), key=key) == sorted(map(complex, roots.conj()), key=key)


# -- Butterworth ---------------------------------------------------------------

def test_butterworth_first_order():
    p = pt.butterworth_prototype(1)
    assert p.poles == pytest.approx([-1.0])
    assert p.gain == pytest.approx(1.0)


def test_butterworth_second_order():
    p = pt.butterworth_prototype(2)
    r = math.sqrt(2) / 2
    assert np.sort_complex(p.poles) == pytest.approx(np.array([-r - 1j * r, -r + 1j * r]))
    assert p.gain == pytest.approx(1.0)


def test_butterworth_fifth_order_unit_circle():
    p = pt.butterworth_prototype(5)
    assert np.abs(p.poles) == pytest.approx(np.ones(5), abs=1e-15)
    assert abs(p.response(0.0)) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("order", range(1, 9))
def test_butterworth_magnitude_law(order):
    p = pt.butterworth_prototype(order)
    w = np.arange(0, 41) / 10
    expected = 1 / (1 + w ** (2 * order))
    assert np.abs(p.response(w)) ** 2 == pytest.approx(expected, rel=1e-9)
    assert_prototype_invariants(p)


@pytest.mark.parametrize("order", range(1, 9))
def test_butterworth_monotone(order):
    mag = np.abs(pt.butterworth_prototype(order).response(np.linspace(0, 6, 3000)))
    assert np.all(np.diff(mag) <= 1e-12)


def test_butterworth_matches_scipy():
    for n in range(1, 9):
        _, p, k = signal.buttap(n)
        ours = pt.butterworth_prototype(n)
        assert np.sort_complex(ours.poles) == pytest.approx(np.sort_complex(p), abs=1e-12)


def test_butterworth_rejects_bad_order():
    for bad in (0, -3, 2.5):
        with pytest.raises(InvalidOrderError):
            pt.butterworth_prototype(bad)


def test_butterworth_metrics_examples():
    m = pt.butterworth_metrics(1.0, 1.0, 5)
    assert m.magnitude_sq == 0.5
    assert m.attenuation_db == pytest.approx(10 * math.log10(2), rel=1e-15)
    assert pt.butterworth_metrics(2.0, 1.0, 5).magnitude_sq == pytest.approx(1 / 1025, rel=1e-15)
    assert pt.butterworth_metrics(0.3, 1.0, 1).selectivity == pytest.approx(1 / (2 * math.sqrt(2)), rel=1e-15)


@given(st.floats(0, 50), st.floats(0.01, 50), st.integers(1, 12))
def test_butterworth_metrics_attenuation_consistent(omega, omega_c, order):
    m = pt.butterworth_metrics(omega, omega_c, order)
    assert 0 < m.magnitude_sq <= 1
    assert m.attenuation_db == pytest.approx(-10 * math.log10(m.magnitude_sq), rel=1e-12, abs=1e-15)


def test_butterworth_metrics_rejects_bad_cutoff():
    with pytest.raises(InvalidFrequencyError):
        pt.butterworth_metrics(1.0, 0.0, 3)


def test_selectivity_is_slope_at_cutoff():
    # |d|H|/dw| at w = wc by central differences
    order, wc, h = 4, 2.5, 1e-6
    mag = lambda w: math.sqrt(pt.butterworth_metrics(w, wc, order).magnitude_sq)
    slope = (mag(wc + h) - mag(wc - h)) / (2 * h)
    assert abs(slope) == pytest.approx(pt.butterworth_metrics(wc, wc, order).selectivity, rel=1e-6)


# -- ripple / Chebyshev --------------------------------------------------------

def test_ripple_to_epsilon_examples():
    assert pt.ripple_to_epsilon(10 * math.log10(2)) == pytest.approx(1.0, rel=1e-14)
    assert pt.ripple_to_epsilon(2.0) == pytest.approx(math.sqrt(10**0.2 - 1), rel=1e-14)


@pytest.mark.parametrize("ripple", [0.1, 1.0, 2.0, 3.0])
def test_ripple_round_trip(ripple):
    eps = pt.ripple_to_epsilon(ripple)
    assert 20 * math.log10(math.sqrt(1 + eps * eps)) == pytest.approx(ripple, abs=1e-12)


def test_ripple_must_be_positive():
    for bad in (0.0, -1.0):
        with pytest.raises(InvalidRippleError):
            pt.ripple_to_epsilon(bad)


def test_chebyshev_poly_examples():
    assert pt.chebyshev_poly(2, 0.5) == pytest.approx(-0.5, abs=1e-15)
    assert pt.chebyshev_poly(3, 2.0) == pytest.approx(26.0, rel=1e-14)
    for n in range(9):
        assert pt.chebyshev_poly(n, 1.0) == pytest.approx(1.0, abs=1e-14)


@given(st.integers(0, 10), st.floats(-3, 3))
def test_chebyshev_poly_matches_recurrence(n, x):
    t0, t1 = 1.0, x
    for _ in range(n):
        t0, t1 = t1, 2 * x * t1 - t0
    assert pt.chebyshev_poly(n, x) == pytest.approx(t0, rel=1e-9, abs=1e-9)


def test_chebyshev_magnitude_examples():
    eps = pt.ripple_to_epsilon(2.0)
    assert pt.chebyshev1_magnitude_sq(3.0, 3.0, eps, 4) == pytest.approx(1 / (1 + eps * eps), rel=1e-14)
    assert pt.chebyshev1_magnitude_sq(0.0, 1.0, eps, 5) == 1.0
    assert pt.chebyshev1_magnitude_sq(0.0, 1.0, 1.0, 2) == pytest.approx(0.5, rel=1e-14)
    with pytest.raises(InvalidFrequencyError):
        pt.chebyshev1_magnitude_sq(1.0, 0.0, eps, 3)


def test_chebyshev_first_order_unit_ripple():
    p = pt.chebyshev1_prototype(1, 10 * math.log10(2))
    assert p.poles == pytest.approx([-1.0])
    assert p.gain == pytest.approx(1.0)


@pytest.mark.parametrize("order", range(1, 9))
@pytest.mark.parametrize("ripple", [0.5, 2.0])
def test_chebyshev_prototype_matches_formula(order, ripple):
    p = pt.chebyshev1_prototype(order, ripple)
    eps = pt.ripple_to_epsilon(ripple)
    w = np.linspace(0, 3, 301)
    expected = [pt.chebyshev1_magnitude_sq(x, 1.0, eps, order) for x in w]
    assert np.abs(p.response(w)) ** 2 == pytest.approx(expected, rel=1e-9)
    assert_prototype_invariants(p)
    _, sp, _ = signal.cheb1ap(order, ripple)
    assert np.sort_complex(p.poles) == pytest.approx(np.sort_complex(np.atleast_1d(sp)), abs=1e-12)


@pytest.mark.parametrize("order", range(1, 8))
def test_chebyshev_equiripple_band(order):
    p = pt.chebyshev1_prototype(order, 2.0)
    eps = pt.ripple_to_epsilon(2.0)
    mag_sq = np.abs(p.response(np.linspace(0, 1, 4001))) ** 2
    assert mag_sq.max() == pytest.approx(1.0, abs=1e-6)
    assert mag_sq.min() == pytest.approx(1 / (1 + eps * eps), abs=1e-6)


def test_chebyshev_fourth_order_edge():
    eps = pt.ripple_to_epsilon(2)
    oracle = 1 / (1 + eps**2 * math.cos(4 * math.acos(1.0)) ** 2)
    assert abs(pt.chebyshev1_prototype(4, 2).response(1.0)) ** 2 == pytest.approx(oracle, rel=1e-12)


@pytest.mark.parametrize("order", range(1, 8))
def test_chebyshev_extrema_count(order):
    p = pt.chebyshev1_prototype(order, 2.0)
    levels = refined_extrema(lambda w: db(p.response(w)), 0.0, 1.0)
    assert len(levels) == order + 1
    # odd orders start at 0 dB at DC, even orders at -rp
    expected = [(-2.0 if (i + order) % 2 == 0 else 0.0) for i in range(order + 1)]
    assert levels == pytest.approx(expected, abs=1e-6)


# -- elliptic ------------------------------------------------------------------

def test_elliptic_magnitude_examples():
    eps, xi = pt.ripple_to_epsilon(2), 1.4
    assert pt.elliptic_magnitude(0.0, 1.0, eps, xi, 3) == 1.0
    assert pt.elliptic_magnitude(2.0, 2.0, eps, xi, 4) == pytest.approx(1 / math.sqrt(1 + eps**2), abs=1e-9)
    L = ell.elliptic_rational(4, xi, xi)
    assert pt.elliptic_magnitude(xi, 1.0, eps, xi, 4) == pytest.approx(1 / math.sqrt(1 + eps**2 * L**2), rel=1e-9)


def test_elliptic_first_order_is_chebyshev():
    e = pt.elliptic_prototype(1, 2, 35)
    c = pt.chebyshev1_prototype(1, 2)
    assert len(e.zeros) == 0 and len(e.poles) == 1 and e.poles[0].imag == 0
    w = np.linspace(0, 5, 50)
    assert np.abs(e.response(w)) == pytest.approx(np.abs(c.response(w)), rel=1e-12)


def test_elliptic_third_order_structure():
    e = pt.elliptic_prototype(3, 2, 35)
    assert len(e.zeros) == 2
    assert np.all(np.abs(e.zeros.real) < 1e-12)
    assert e.zeros[0] == pytest.approx(np.conj(e.zeros[1]))
    real_poles = [p for p in e.poles if abs(p.imag) < 1e-12]
    assert len(real_poles) == 1


@pytest.mark.parametrize("order", range(1, 9))
def test_elliptic_prototype_matches_formula(order):
    e = pt.elliptic_prototype(order, 2, 35)
    prm = e.params
    w = np.concatenate([np.linspace(0, 1, 200), np.linspace(1, prm.xi, 100), np.linspace(prm.xi, 20, 400)])
    expected = np.array([pt.elliptic_magnitude(x, 1.0, prm.epsilon, prm.xi, order) for x in w])
    got = np.abs(e.response(w))
    far_from_null = expected > 1e-6
    assert got[far_from_null] == pytest.approx(expected[far_from_null], rel=1e-6)
    assert got[~far_from_null] == pytest.approx(expected[~far_from_null], abs=1e-12)
    assert_prototype_invariants(e)
    assert prm.discrimination == pytest.approx(ell.elliptic_rational(order, prm.xi, prm.xi), rel=1e-9)


def test_elliptic_matches_scipy():
    for n in range(1, 9):
        z, p, k = signal.ellipap(n, 2, 35)
        e = pt.elliptic_prototype(n, 2, 35)
        assert np.sort_complex(e.poles) == pytest.approx(np.sort_complex(np.atleast_1d(p)), abs=1e-6)
        assert e.gain == pytest.approx(k, rel=1e-6)


def test_elliptic_fourth_order_passband_band():
    e = pt.elliptic_prototype(4, 2, 35)
    lo = 1 / math.sqrt(1 + e.params.epsilon**2)
    mag = np.abs(e.response(np.linspace(0, 1, 20001)))
    assert mag.max() <= 1 + 1e-6
    assert mag.min() >= lo - 1e-6
    assert mag.max() == pytest.approx(1.0, abs=1e-6)
    assert mag.min() == pytest.approx(lo, abs=1e-6)


@pytest.mark.parametrize("order", range(2, 8))
def test_elliptic_equiripple_both_bands(order):
    e = pt.elliptic_prototype(order, 2, 35)
    prm = e.params
    pass_levels = refined_extrema(lambda w: abs(e.response(w)), 0.0, 1.0)
    minima = pass_levels[pass_levels < 0.99]
    assert minima == pytest.approx(1 / math.sqrt(1 + prm.epsilon**2), abs=1e-6)
    stop_level = 1 / math.sqrt(1 + prm.epsilon**2 * prm.discrimination**2)
    mag = lambda w: abs(e.response(w))
    stop = refined_extrema(mag, prm.xi, 50 * prm.xi, points=40001)[:-1]
    maxima = stop[stop > stop_level / 10]
    assert maxima == pytest.approx(stop_level, abs=1e-6)
    if order % 2 == 0:
        assert mag(1e7) == pytest.approx(stop_level, abs=1e-6)


def test_elliptic_rejects_infeasible():
    with pytest.raises(InfeasibleSpecError):
        pt.elliptic_prototype(3, 40, 35)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["butterworth", "chebyshev1", "elliptic"]), st.integers(1, 10),
       st.floats(0.1, 3.0), st.floats(20, 80))
def test_all_prototypes_invariants(family, order, rp, rs):
    assert_prototype_invariants(pt.design_prototype(family, order, rp, rs))
