"""16-bit PCM WAV reading/writing and magnitude spectra.

Only RIFF/WAVE files with format code 1 and 16 bits per sample are
accepted.  Samples are scaled by 1/32768, so the decoded range is [-1, 1).
"""

from __future__ import annotations

import os
import struct
from dataclasses import dataclass

import numpy as np

from .analysis import DB_FLOOR, ResponseSeries
from .errors import CorruptFileError, InvalidSizeError, UnsupportedFormatError

PCM_FORMAT = 1
FULL_SCALE = 32768.0
MAX_FFT_SIZE = 65536


@dataclass(frozen=True)
class Signal:
    samples: np.ndarray
    sample_rate: int
    source_bit_depth: int = 16

    def __post_init__(self):
        if not self.sample_rate > 0:
            raise ValueError(f"sample rate must be positive, got {self.sample_rate}")
        object.__setattr__(self, "samples", np.asarray(self.samples, dtype=float))

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def duration(self) -> float:
        return len(self.samples) / self.sample_rate


def _chunks(data: bytes):
    pos = 12
    while pos + 8 <= len(data):
        cid, size = struct.unpack_from("<4sI", data, pos)
        body = data[pos + 8 : pos + 8 + size]
        if len(body) < size:
            raise CorruptFileError(f"chunk {cid!r} declares {size} bytes, only {len(body)} present")
        yield cid, body
        pos += 8 + size + (size & 1)
    if pos < len(data) and data[pos:].strip(b"\x00"):
        raise CorruptFileError("trailing bytes after last chunk")


def read_wav(path) -> Signal:
    """Decode a 16-bit PCM WAV file, averaging channels down to mono."""
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < 12 or data[:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise CorruptFileError(f"{os.fspath(path)}: not a RIFF/WAVE file")
    fmt = None
    pcm = None
    for cid, body in _chunks(data):
        if cid == b"fmt ":
            if len(body) < 16:
                raise CorruptFileError("fmt chunk shorter than 16 bytes")
            fmt = struct.unpack_from("<HHIIHH", body)
        elif cid == b"data":
            pcm = body
    if fmt is None or pcm is None:
        raise CorruptFileError("missing fmt or data chunk")
    tag, channels, rate, _, block_align, bits = fmt
    if tag != PCM_FORMAT:
        raise UnsupportedFormatError(f"format code {tag} is not integer PCM (1)")
    if bits != 16:
        raise UnsupportedFormatError(f"{bits}-bit samples unsupported; only 16-bit PCM is read")
    if channels < 1 or block_align != 2 * channels or rate == 0:
        raise CorruptFileError(f"inconsistent fmt chunk: channels={channels} block_align={block_align} rate={rate}")
    if len(pcm) % block_align:
        raise CorruptFileError("data chunk is not a whole number of frames")
    frames = np.frombuffer(pcm, dtype="<i2").reshape(-1, channels) / FULL_SCALE
    if len(frames) == 0:
        raise CorruptFileError("data chunk holds no samples")
    return Signal(frames.mean(axis=1), int(rate), bits)


def quantize(samples) -> np.ndarray:
    """Saturate to [-1, 1 - 1/32768] and round half away from zero to int16 codes."""
    x = np.clip(np.asarray(samples, dtype=float) * FULL_SCALE, -FULL_SCALE, FULL_SCALE - 1)
    return (np.sign(x) * np.floor(np.abs(x) + 0.5)).astype("<i2")


def write_wav(signal: Signal, path) -> None:
    """Write a mono 16-bit PCM WAV file."""
    if not np.all(np.isfinite(signal.samples)):
        raise ValueError("cannot write non-finite samples")
    pcm = quantize(signal.samples).tobytes()
    rate = int(signal.sample_rate)
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF", 36 + len(pcm), b"WAVE",
        b"fmt ", 16, PCM_FORMAT, 1, rate, 2 * rate, 2, 16,
        b"data", len(pcm),
    )
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(pcm)
        if len(pcm) & 1:
            fh.write(b"\x00")


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def fft(x) -> np.ndarray:
    """Iterative radix-2 decimation-in-time FFT; ``len(x)`` must be a power of two."""
    a = np.asarray(x, dtype=complex).copy()
    n = len(a)
    if not is_power_of_two(n):
        raise InvalidSizeError(f"FFT size {n} is not a power of two")
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=int)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    a = a[rev]
    half = 1
    while half < n:
        twiddle = np.exp(-1j * np.pi * np.arange(half) / half)
        blocks = a.reshape(-1, 2 * half)
        top = blocks[:, :half].copy()
        bottom = blocks[:, half:] * twiddle
        blocks[:, :half] = top + bottom
        blocks[:, half:] = top - bottom
        half *= 2
    return a


def spectrum(signal: Signal, fft_size: int | None = None) -> ResponseSeries:
    """Peak-normalized magnitude spectrum (dB) over bins 0..fs/2, rectangular window.

    The default size is the next power of two at or above
    ``min(len(signal), 65536)``; shorter signals are zero-padded and longer
    ones truncated to the first window.
    """
    x = np.asarray(signal.samples, dtype=float)
    if len(x) == 0:
        raise ValueError("empty signal")
    if fft_size is None:
        n = 1
        while n < min(len(x), MAX_FFT_SIZE):
            n *= 2
    else:
        n = int(fft_size)
        if not is_power_of_two(n):
            raise InvalidSizeError(f"FFT size {fft_size} is not a power of two")
    frame = np.zeros(n)
    m = min(n, len(x))
    frame[:m] = x[:m]
    mag = np.abs(fft(frame)[: n // 2 + 1])
    peak = mag.max()
    rel = mag / peak if peak > 0 else mag
    db = np.where(rel < 1e-10, DB_FLOOR, 20.0 * np.log10(np.where(rel < 1e-10, 1.0, rel)))
    return ResponseSeries("spectrum_db", np.arange(n // 2 + 1) * signal.sample_rate / n, db)


def tone(frequencies, sample_rate: int = 8000, duration: float = 1.0, amplitude: float = 0.4) -> Signal:
    """Sum of equal-amplitude sines, for test and demo signals."""
    t = np.arange(int(round(sample_rate * duration))) / sample_rate
    x = sum(amplitude * np.sin(2 * np.pi * f * t) for f in np.atleast_1d(frequencies))
    return Signal(np.asarray(x, dtype=float), sample_rate)
