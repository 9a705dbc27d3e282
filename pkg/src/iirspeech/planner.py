"""Turn a digital-domain filter request into a concrete design plan.

Band edges are prewarped for the bilinear transform, band-pass and
band-stop requests are reduced to an equivalent low-pass selectivity ratio,
and the minimum order is chosen per family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import elliptic as ell
from .errors import InfeasibleSpecError, InvalidOrderError, OutOfBandError
from .prototypes import passband_edge, ripple_to_epsilon

FAMILIES = ("butterworth", "chebyshev1", "elliptic")
BANDS = ("lowpass", "highpass", "bandpass", "bandstop")

DEFAULT_SAMPLE_RATE = 8000.0
DEFAULT_PASSBAND_RIPPLE_DB = 2.0
DEFAULT_STOPBAND_ATTEN_DB = 35.0

# slack on the ceiling so an order that is an integer up to rounding is not bumped
_ORDER_SLACK = 1e-9


@dataclass(frozen=True)
class FilterSpec:
    """A filter request.

    ``passband_edges`` / ``stopband_edges`` hold one frequency (Hz) for
    low/high-pass filters and two for band filters.  For band-pass the
    stopband pair brackets the passband pair; for band-stop it is the
    other way round.
    """

    family: str
    band: str
    passband_edges: tuple[float, ...]
    stopband_edges: tuple[float, ...]
    sample_rate: float = DEFAULT_SAMPLE_RATE
    passband_ripple_db: float = DEFAULT_PASSBAND_RIPPLE_DB
    stopband_atten_db: float = DEFAULT_STOPBAND_ATTEN_DB
    order_override: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "passband_edges", tuple(float(f) for f in self.passband_edges))
        object.__setattr__(self, "stopband_edges", tuple(float(f) for f in self.stopband_edges))
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.band not in BANDS:
            raise ValueError(f"unknown band {self.band!r}; expected one of {BANDS}")
        if not self.sample_rate > 0:
            raise OutOfBandError(f"sample rate must be positive, got {self.sample_rate!r}")
        n_edges = 1 if self.band in ("lowpass", "highpass") else 2
        if len(self.passband_edges) != n_edges or len(self.stopband_edges) != n_edges:
            raise InfeasibleSpecError(f"{self.band} needs {n_edges} passband and {n_edges} stopband edge(s)")
        nyquist = self.sample_rate / 2
        for f in self.passband_edges + self.stopband_edges:
            if not 0 < f < nyquist:
                raise OutOfBandError(f"edge {f} Hz outside (0, {nyquist}) Hz")
        if not 0 < self.passband_ripple_db < self.stopband_atten_db:
            raise InfeasibleSpecError(
                f"need 0 < rp < rs, got rp={self.passband_ripple_db}, rs={self.stopband_atten_db}"
            )
        if self.order_override is not None and self.order_override < 1:
            raise InvalidOrderError(f"order override must be >= 1, got {self.order_override}")
        if not self._edges_ordered():
            raise InfeasibleSpecError(
                f"infeasible {self.band} edges: passband {self.passband_edges}, stopband {self.stopband_edges}"
            )

    def _edges_ordered(self) -> bool:
        p, s = self.passband_edges, self.stopband_edges
        if self.band == "lowpass":
            return p[0] < s[0]
        if self.band == "highpass":
            return s[0] < p[0]
        if self.band == "bandpass":
            return s[0] < p[0] < p[1] < s[1]
        return p[0] < s[0] < s[1] < p[1]


@dataclass(frozen=True)
class DesignPlan:
    family: str
    band: str
    sample_rate: float
    order: int
    passband_edges: tuple[float, ...]  # prewarped, rad/s
    stopband_edges: tuple[float, ...]  # prewarped, rad/s
    lowpass_ratio: float  # equivalent low-pass stopband/passband ratio
    transform_edges: tuple[float, ...] = field(default=())  # edges handed to the band transform
    passband_ripple_db: float = DEFAULT_PASSBAND_RIPPLE_DB
    stopband_atten_db: float = DEFAULT_STOPBAND_ATTEN_DB


def prewarp(frequency: float, sample_rate: float) -> float:
    """Analog frequency (rad/s) that the bilinear transform maps onto ``frequency`` Hz."""
    if not 0 < frequency < sample_rate / 2:
        raise OutOfBandError(f"frequency {frequency} Hz outside (0, {sample_rate / 2}) Hz")
    return 2.0 * sample_rate * math.tan(math.pi * frequency / sample_rate)


def _db_to_power_excess(db: float) -> float:
    return math.expm1(db * math.log(10.0) / 10.0)


def order_estimate(family: str, omega_p: float, omega_s: float, rp: float, rs: float) -> float:
    """Real-valued order at which ``family`` exactly meets both edge constraints."""
    if not omega_s > omega_p > 0:
        raise InfeasibleSpecError(f"need 0 < omega_p < omega_s, got {omega_p}, {omega_s}")
    if not 0 < rp < rs:
        raise InfeasibleSpecError(f"need 0 < rp < rs, got rp={rp}, rs={rs}")
    ratio = omega_s / omega_p
    discrimination = _db_to_power_excess(rs) / _db_to_power_excess(rp)
    if family == "butterworth":
        return math.log(discrimination) / (2.0 * math.log(ratio))
    if family == "chebyshev1":
        return math.acosh(math.sqrt(discrimination)) / math.acosh(ratio)
    if family == "elliptic":
        return ell.degree_ratio(1.0 / ratio, 1.0 / math.sqrt(discrimination))
    raise ValueError(f"unknown filter family {family!r}")


def minimum_order(family: str, omega_p: float, omega_s: float, rp: float, rs: float) -> int:
    """Smallest order meeting ``<= rp`` dB at ``omega_p`` and ``>= rs`` dB at ``omega_s``."""
    return max(1, math.ceil(order_estimate(family, omega_p, omega_s, rp, rs) - _ORDER_SLACK))


def lowpass_ratio(band: str, passband: tuple[float, ...], stopband: tuple[float, ...]) -> float:
    """Stopband frequency of the equivalent unit-passband low-pass filter.

    Inputs are prewarped analog edges.  Band filters use the geometric-mean
    centre of the passband edges and the tighter of the two stopband images.
    """
    if band == "lowpass":
        return stopband[0] / passband[0]
    if band == "highpass":
        return passband[0] / stopband[0]
    w1, w2 = passband
    center_sq = w1 * w2
    width = w2 - w1
    if band == "bandpass":
        return min(abs(ws * ws - center_sq) / (width * ws) for ws in stopband)
    if band == "bandstop":
        return min(width * ws / abs(center_sq - ws * ws) for ws in stopband)
    raise ValueError(f"unknown band {band!r}")


def transform_edges(band: str, passband: tuple[float, ...], prototype_edge: float) -> tuple[float, ...]:
    """Edges for the band transform so that the prototype frequency ``prototype_edge``
    lands on the prewarped passband edge(s)."""
    if band == "lowpass":
        return (passband[0] / prototype_edge,)
    if band == "highpass":
        return (passband[0] * prototype_edge,)
    w1, w2 = passband
    center_sq = w1 * w2
    width = (w2 - w1) / prototype_edge if band == "bandpass" else (w2 - w1) * prototype_edge
    upper = 0.5 * (width + math.sqrt(width * width + 4.0 * center_sq))
    return (center_sq / upper, upper)


def plan(spec: FilterSpec) -> DesignPlan:
    fs = spec.sample_rate
    passband = tuple(prewarp(f, fs) for f in spec.passband_edges)
    stopband = tuple(prewarp(f, fs) for f in spec.stopband_edges)
    ratio = lowpass_ratio(spec.band, passband, stopband)
    if spec.order_override is not None:
        order = int(spec.order_override)
    else:
        order = minimum_order(spec.family, 1.0, ratio, spec.passband_ripple_db, spec.stopband_atten_db)
    edges = transform_edges(spec.band, passband, passband_edge(spec.family, order, spec.passband_ripple_db))
    return DesignPlan(
        family=spec.family,
        band=spec.band,
        sample_rate=fs,
        order=order,
        passband_edges=passband,
        stopband_edges=stopband,
        lowpass_ratio=ratio,
        transform_edges=edges,
        passband_ripple_db=spec.passband_ripple_db,
        stopband_atten_db=spec.stopband_atten_db,
    )


def butterworth_cutoff(omega_p: float, order: int, rp: float) -> float:
    """Half-power frequency placing exactly ``rp`` dB of loss at ``omega_p``."""
    return omega_p * ripple_to_epsilon(rp) ** (-1.0 / order)


REFERENCE_BANDS = {
    "lowpass": ((2000.0,), (3000.0,)),
    "highpass": ((3000.0,), (2000.0,)),
    "bandpass": ((1500.0, 2000.0), (1000.0, 2500.0)),
    "bandstop": ((1000.0, 3000.0), (1500.0, 2500.0)),
}


def reference_spec(family: str, band: str, **overrides) -> FilterSpec:
    """Spec for one row of the reference frequency table (8 kHz, 2 dB / 35 dB)."""
    passband, stopband = REFERENCE_BANDS[band]
    return FilterSpec(family=family, band=band, passband_edges=passband, stopband_edges=stopband, **overrides)
