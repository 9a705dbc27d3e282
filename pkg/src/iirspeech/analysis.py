"""Response curves and measured band metrics for digital filters."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidKindError, OutOfBandError
from .realization import SOSCascade, impulse_response, section_roots, zpk_to_sos
from .transform import DigitalFilter

KINDS = ("impulse", "magnitude_db", "phase_rad", "group_delay_samples", "spectrum_db")

DB_FLOOR = -200.0
_MAG_FLOOR = 1e-10


@dataclass(frozen=True)
class ResponseSeries:
    kind: str
    abscissa: np.ndarray
    ordinate: np.ndarray

    def __post_init__(self):
        if len(self.abscissa) != len(self.ordinate):
            raise ValueError("abscissa and ordinate lengths differ")


@dataclass(frozen=True)
class PoleZero:
    poles: np.ndarray
    zeros: np.ndarray

    @property
    def pole_moduli(self) -> np.ndarray:
        return np.abs(self.poles)

    @property
    def zero_moduli(self) -> np.ndarray:
        return np.abs(self.zeros)


@dataclass(frozen=True)
class BandMetrics:
    passband_deviation_db: float
    stopband_attenuation_db: float
    transition_width_hz: float
    phase_linearity_error_rad: float


def _sample_rate(filt, sample_rate):
    return float(sample_rate if sample_rate is not None else filt.sample_rate)


def frequency_response(filt, frequencies, sample_rate: float | None = None) -> np.ndarray:
    """Complex response at ``frequencies`` (Hz), evaluated in factored form.

    A :class:`DigitalFilter` is evaluated as a product over its zeros and
    poles, a cascade as a product of its (at most quadratic) sections.
    """
    fs = _sample_rate(filt, sample_rate)
    f = np.atleast_1d(np.asarray(frequencies, dtype=float))
    if np.any(f < 0) or np.any(f > fs / 2):
        raise OutOfBandError(f"frequencies must lie in [0, {fs / 2}] Hz")
    z = np.exp(2j * np.pi * f / fs)
    if isinstance(filt, SOSCascade):
        zi = 1.0 / z
        h = np.full(z.shape, filt.overall_gain, dtype=complex)
        for b0, b1, b2, _, a1, a2 in filt.sections:
            h *= (b0 + zi * (b1 + zi * b2)) / (1.0 + zi * (a1 + zi * a2))
        return h
    h = np.full(z.shape, filt.gain, dtype=complex)
    for q in filt.zeros:
        h *= z - q
    for p in filt.poles:
        h /= z - p
    return h


def magnitude_db(h) -> np.ndarray:
    mag = np.abs(h)
    safe = np.where(mag < _MAG_FLOOR, 1.0, mag)
    return np.where(mag < _MAG_FLOOR, DB_FLOOR, 20.0 * np.log10(safe))


def unwrap_phase(phase) -> np.ndarray:
    """Add multiples of 2*pi wherever consecutive samples jump by more than pi."""
    return np.unwrap(np.asarray(phase, dtype=float))


def group_delay(phase, frequencies, sample_rate: float) -> np.ndarray:
    """``-d(phase)/d(omega)`` in samples, central differences on an unwrapped phase."""
    omega = 2.0 * np.pi * np.asarray(frequencies, dtype=float) / sample_rate
    return -np.gradient(np.asarray(phase, dtype=float), omega)


def response_series(filt, kind: str, points: int = 512, sample_rate: float | None = None) -> ResponseSeries:
    if kind not in KINDS or kind == "spectrum_db":
        raise InvalidKindError(f"unknown response kind {kind!r}")
    if points < 2:
        raise ValueError(f"need at least 2 points, got {points}")
    fs = _sample_rate(filt, sample_rate)
    if kind == "impulse":
        cascade = filt if isinstance(filt, SOSCascade) else zpk_to_sos(filt)
        return ResponseSeries(kind, np.arange(points, dtype=float), impulse_response(cascade, points))
    freqs = np.linspace(0.0, fs / 2, points)
    h = frequency_response(filt, freqs, fs)
    if kind == "magnitude_db":
        return ResponseSeries(kind, freqs, magnitude_db(h))
    phase = unwrap_phase(np.angle(h))
    if kind == "phase_rad":
        return ResponseSeries(kind, freqs, phase)
    return ResponseSeries(kind, freqs, group_delay(phase, freqs, fs))


def _sorted_roots(roots) -> np.ndarray:
    roots = np.asarray(roots, dtype=complex)
    key = sorted(
        range(len(roots)),
        key=lambda i: (-round(abs(roots[i]), 9), round(roots[i].real, 9), round(abs(roots[i].imag), 9), roots[i].imag),
    )
    return roots[key]


def pole_zero(filt) -> PoleZero:
    """Poles and zeros sorted by descending modulus, conjugates adjacent."""
    if isinstance(filt, SOSCascade):
        zeros, poles = section_roots(filt)
    else:
        zeros, poles = filt.zeros, filt.poles
    return PoleZero(_sorted_roots(poles), _sorted_roots(zeros))


def _band_layout(spec):
    """(passband segments, stopband segments, transitions) in Hz for a spec.

    A transition is ``(passband edge, stopband edge, far end of that stopband)``.
    """
    nyq = spec.sample_rate / 2
    p, s = spec.passband_edges, spec.stopband_edges
    if spec.band == "lowpass":
        return [(0.0, p[0])], [(s[0], nyq)], [(p[0], s[0], nyq)]
    if spec.band == "highpass":
        return [(p[0], nyq)], [(0.0, s[0])], [(p[0], s[0], 0.0)]
    if spec.band == "bandpass":
        return [(p[0], p[1])], [(0.0, s[0]), (s[1], nyq)], [(p[0], s[0], 0.0), (p[1], s[1], nyq)]
    return [(0.0, p[0]), (p[1], nyq)], [(s[0], s[1])], [(p[0], s[0], s[1]), (p[1], s[1], s[0])]


def _bisect(pred, good: float, bad: float, tol: float) -> float:
    """Boundary between ``good`` (pred true) and ``bad`` (pred false), within ``tol``."""
    while abs(bad - good) > tol:
        mid = 0.5 * (good + bad)
        if pred(mid):
            good = mid
        else:
            bad = mid
    return good


def _transition_width(atten, edge: float, far: float, rp: float, rs: float, tol: float = 0.1) -> float:
    path = np.linspace(edge, far, 2049)
    a = atten(path)
    passing = a <= rp + 1e-9
    if passing.all():
        last_pass = far
    else:
        i = int(np.argmin(passing))
        last_pass = path[0] if i == 0 else _bisect(lambda f: atten(f)[0] <= rp + 1e-9, path[i - 1], path[i], tol)
    stopping = a >= rs
    if not stopping.any():
        first_stop = far
    else:
        i = int(np.argmax(stopping))
        first_stop = path[0] if i == 0 else _bisect(lambda f: atten(f)[0] >= rs, path[i], path[i - 1], tol)
    return abs(first_stop - last_pass)


def _linear_residual(freqs, phase) -> float:
    slope, intercept = np.polyfit(freqs, phase, 1)
    return float(np.max(np.abs(phase - (slope * freqs + intercept))))


def measure_band_metrics(filt, spec, points: int = 1024) -> BandMetrics:
    """Measured ripple, attenuation, transition width and passband phase linearity.

    Band filters have two transitions; the wider one is reported.
    """
    fs = spec.sample_rate

    def atten(f):
        return -magnitude_db(frequency_response(filt, np.atleast_1d(f), fs))

    passbands, stopbands, transitions = _band_layout(spec)
    deviation = 0.0
    linearity = 0.0
    for lo, hi in passbands:
        grid = np.linspace(lo, hi, points)
        h = frequency_response(filt, grid, fs)
        deviation = max(deviation, float(np.max(np.abs(magnitude_db(h)))))
        linearity = max(linearity, _linear_residual(grid, unwrap_phase(np.angle(h))))
    attenuation = min(float(np.min(atten(np.linspace(lo, hi, points)))) for lo, hi in stopbands)
    width = max(
        _transition_width(atten, edge, far, spec.passband_ripple_db, spec.stopband_atten_db)
        for edge, _, far in transitions
    )
    return BandMetrics(deviation, max(attenuation, 0.0), width, linearity)
