"""Low-pass prototype -> analog band shape -> digital filter (bilinear)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidEdgesError, MappingSingularityError


@dataclass(frozen=True)
class AnalogFilter:
    zeros: np.ndarray
    poles: np.ndarray
    gain: float

    def response(self, omega) -> np.ndarray:
        s = 1j * np.asarray(omega, dtype=float)
        h = np.full(s.shape, self.gain, dtype=complex)
        for z in self.zeros:
            h = h * (s - z)
        for p in self.poles:
            h = h / (s - p)
        return h


@dataclass(frozen=True)
class DigitalFilter:
    """Zeros, poles and gain of ``H(z) = gain * prod(z - zeros) / prod(z - poles)``."""

    zeros: np.ndarray
    poles: np.ndarray
    gain: float
    sample_rate: float

    @property
    def order(self) -> int:
        return len(self.poles)


def _as_complex(values) -> np.ndarray:
    return np.asarray(values, dtype=complex).reshape(-1)


def transform_band(proto, band: str, edges) -> AnalogFilter:
    """Frequency-transform a unit low-pass prototype.

    ``edges`` is ``(omega_c,)`` for lowpass/highpass and ``(omega_1, omega_2)``
    for bandpass/bandstop, all in rad/s.  The band filters use centre
    ``sqrt(omega_1 * omega_2)`` and width ``omega_2 - omega_1``.
    """
    z = _as_complex(proto.zeros)
    p = _as_complex(proto.poles)
    k = float(proto.gain)
    edges = tuple(float(e) for e in edges)
    degree = len(p) - len(z)
    if degree < 0:
        raise InvalidEdgesError("prototype has more zeros than poles")

    if band in ("lowpass", "highpass"):
        if len(edges) != 1 or not edges[0] > 0:
            raise InvalidEdgesError(f"{band} needs one positive edge, got {edges}")
        wc = edges[0]
        if band == "lowpass":
            return AnalogFilter(z * wc, p * wc, k * wc**degree)
        gain = k * float(np.real(np.prod(-z) / np.prod(-p)))
        zeros = np.concatenate([wc / z, np.zeros(degree, dtype=complex)])
        return AnalogFilter(zeros, wc / p, gain)

    if band not in ("bandpass", "bandstop"):
        raise InvalidEdgesError(f"unknown band {band!r}")
    if len(edges) != 2 or not 0 < edges[0] < edges[1]:
        raise InvalidEdgesError(f"{band} needs two increasing positive edges, got {edges}")
    w0_sq = edges[0] * edges[1]
    width = edges[1] - edges[0]

    def split(roots):
        # each root r yields the two roots of s^2 - r s + w0^2
        disc = np.sqrt(roots * roots - 4.0 * w0_sq + 0j)
        return np.concatenate([(roots + disc) / 2.0, (roots - disc) / 2.0])

    if band == "bandpass":
        zeros = np.concatenate([split(z * width), np.zeros(degree, dtype=complex)])
        return AnalogFilter(zeros, split(p * width), k * width**degree)
    gain = k * float(np.real(np.prod(-z) / np.prod(-p)))
    w0 = np.sqrt(w0_sq)
    notch = np.concatenate([np.full(degree, 1j * w0), np.full(degree, -1j * w0)])
    zeros = np.concatenate([split(width / z), notch])
    return AnalogFilter(zeros, split(width / p), gain)


def bilinear_point(s, sample_rate: float):
    """Image ``(2 fs + s) / (2 fs - s)`` of analog point(s) ``s``."""
    fs2 = 2.0 * sample_rate
    s = np.asarray(s, dtype=complex)
    if np.any(s == fs2):
        raise MappingSingularityError(f"s = {fs2} has no finite bilinear image")
    return (fs2 + s) / (fs2 - s)


def bilinear(analog: AnalogFilter, sample_rate: float) -> DigitalFilter:
    """Bilinear transform with constant ``2*fs``.

    Zeros at infinity land on z = -1.  Analog zeros at s = 0 (from the
    high-pass and band-pass substitutions) map onto z = +1 explicitly.
    """
    z = _as_complex(analog.zeros)
    p = _as_complex(analog.poles)
    fs2 = 2.0 * sample_rate
    zd = bilinear_point(z, sample_rate)
    pd = bilinear_point(p, sample_rate)
    zd = np.concatenate([zd, -np.ones(len(p) - len(z), dtype=complex)])
    gain = analog.gain * float(np.real(np.prod(fs2 - z) / np.prod(fs2 - p)))
    return DigitalFilter(zd, pd, gain, float(sample_rate))
