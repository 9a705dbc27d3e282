import math

import numpy as np
import pytest

from iirspeech import prototypes as pt
from iirspeech.design import design_filter
from iirspeech.errors import InvalidEdgesError, MappingSingularityError
from iirspeech.planner import BANDS, FAMILIES, prewarp, reference_spec
from iirspeech.transform import bilinear, bilinear_point, transform_band

FS = 8000.0
REFERENCE = [(f, b) for f in FAMILIES for b in BANDS]


@pytest.fixture(scope="module")
def designs():
    return {(f, b): design_filter(reference_spec(f, b)) for f, b in REFERENCE}


def digital_response(filt, freqs):
    z = np.exp(2j * np.pi * np.asarray(freqs) / filt.sample_rate)
    h = np.full(z.shape, filt.gain, dtype=complex)
    for q in filt.zeros:
        h *= z - q
    for p in filt.poles:
        h /= z - p
    return h


# -- analog band transforms ----------------------------------------------------

def test_lowpass_unit_edge_is_identity():
    proto = pt.elliptic_prototype(4, 2, 35)
    out = transform_band(proto, "lowpass", (1.0,))
    assert out.zeros == pytest.approx(proto.zeros)
    assert out.poles == pytest.approx(proto.poles)
    assert out.gain == pytest.approx(proto.gain)


def test_highpass_first_order_by_hand():
    out = transform_band(pt.butterworth_prototype(1), "highpass", (2.0,))
    assert out.poles == pytest.approx([-2.0])
    assert out.zeros == pytest.approx([0.0])
    assert abs(out.response(1e9)) == pytest.approx(1.0, rel=1e-9)
    # 1 / (2/s + 1) = s / (s + 2)
    w = np.linspace(0.1, 10, 25)
    assert out.response(w) == pytest.approx(1j * w / (1j * w + 2), rel=1e-12)


def band_edges(center, width):
    upper = 0.5 * (width + math.sqrt(width * width + 4 * center * center))
    return (center * center / upper, upper)


def test_bandpass_first_order_by_hand():
    out = transform_band(pt.butterworth_prototype(1), "bandpass", band_edges(2.0, 1.0))
    assert len(out.poles) == 2
    assert out.zeros == pytest.approx([0.0])
    assert abs(out.response(2.0)) == pytest.approx(1.0, abs=1e-12)
    # 1 / ((s^2 + 4)/s + 1) = s / (s^2 + s + 4)
    s = 1j * np.linspace(0.1, 10, 25)
    assert out.response(s.imag) == pytest.approx(s / (s * s + s + 4), rel=1e-12)


def test_bandstop_first_order_by_hand():
    out = transform_band(pt.butterworth_prototype(1), "bandstop", band_edges(2.0, 1.0))
    # 1 / (s/(s^2 + 4) + 1) = (s^2 + 4) / (s^2 + s + 4)
    s = 1j * np.array([0.1, 0.5, 1.0, 1.9, 2.1, 3.0, 10.0])
    assert out.response(s.imag) == pytest.approx((s * s + 4) / (s * s + s + 4), rel=1e-12)
    assert abs(out.response(2.0)) < 1e-12


@pytest.mark.parametrize("band", BANDS)
def test_transform_keeps_conjugate_symmetry_and_stability(band):
    proto = pt.chebyshev1_prototype(5, 2)
    edges = (3.0,) if band in ("lowpass", "highpass") else (2.0, 5.0)
    out = transform_band(proto, band, edges)
    assert np.all(out.poles.real < 0)
    for roots in (out.poles, out.zeros):
        assert np.sort_complex(roots) == pytest.approx(np.sort_complex(roots.conj()), abs=1e-9)
    assert len(out.poles) == (5 if band in ("lowpass", "highpass") else 10)


@pytest.mark.parametrize("band,edges", [
    ("lowpass", (1.0, 2.0)),
    ("highpass", ()),
    ("bandpass", (3.0,)),
    ("bandstop", (5.0, 2.0)),
])
def test_transform_rejects_bad_edges(band, edges):
    with pytest.raises(InvalidEdgesError):
        transform_band(pt.butterworth_prototype(2), band, edges)


# -- bilinear ------------------------------------------------------------------

def test_bilinear_point_examples():
    assert bilinear_point(0.0, FS) == 1.0
    assert bilinear_point(-2 * FS, FS) == 0.0
    assert bilinear_point(2j * FS, FS) == pytest.approx(1j, abs=1e-15)


def test_bilinear_point_singular():
    with pytest.raises(MappingSingularityError):
        bilinear_point(2 * FS, FS)


def test_bilinear_jw_axis_to_unit_circle():
    w = np.linspace(-1e5, 1e5, 101)
    assert np.abs(bilinear_point(1j * w, FS)) == pytest.approx(np.ones_like(w), abs=1e-14)


def test_bilinear_first_order_by_hand():
    # H(s) = a/(s+a): H(z) = a (1 + z^-1) / ((2fs + a) - (2fs - a) z^-1)
    a = 3000.0
    dig = bilinear(transform_band(pt.butterworth_prototype(1), "lowpass", (a,)), FS)
    f = np.linspace(0, FS / 2, 9)
    zi = np.exp(-2j * np.pi * f / FS)
    expected = a * (1 + zi) / ((2 * FS + a) - (2 * FS - a) * zi)
    assert digital_response(dig, f) == pytest.approx(expected, rel=1e-12, abs=1e-15)


@pytest.mark.parametrize("family,band", REFERENCE)
def test_reference_designs_stable(designs, family, band):
    d = designs[family, band].digital
    assert np.max(np.abs(d.poles)) < 1 - 1e-9
    assert len(d.zeros) == len(d.poles)


@pytest.mark.parametrize("family,band", REFERENCE)
def test_frequency_fidelity(designs, family, band):
    d = designs[family, band]
    freqs = np.linspace(20, FS / 2 - 20, 50)
    analog = np.abs(d.analog.response([prewarp(f, FS) for f in freqs]))
    digital = np.abs(digital_response(d.digital, freqs))
    assert digital == pytest.approx(analog, rel=1e-8, abs=1e-14)


@pytest.mark.parametrize("family", FAMILIES)
def test_lowpass_zero_structure(designs, family):
    zeros = designs[family, "lowpass"].digital.zeros
    if family == "butterworth":
        assert zeros == pytest.approx(-np.ones(5), abs=1e-9)
    assert np.abs(zeros) == pytest.approx(np.ones(len(zeros)), abs=1e-9)


def test_highpass_butterworth_zeros_at_plus_one(designs):
    zeros = designs["butterworth", "highpass"].digital.zeros
    assert zeros == pytest.approx(np.ones(len(zeros)), abs=1e-9)


def test_bandpass_butterworth_zeros_split_between_dc_and_nyquist(designs):
    zeros = designs["butterworth", "bandpass"].digital.zeros.real
    n = len(zeros) // 2
    assert np.sort(zeros) == pytest.approx([-1.0] * n + [1.0] * n, abs=1e-9)
