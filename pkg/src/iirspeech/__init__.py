"""Butterworth, Chebyshev type I and elliptic IIR filter design for speech filtering."""

from .analysis import (
    BandMetrics,
    PoleZero,
    ResponseSeries,
    frequency_response,
    measure_band_metrics,
    pole_zero,
    response_series,
)
from .audio_io import Signal, read_wav, spectrum, write_wav
from .design import DesignedFilter, design_filter
from .planner import DesignPlan, FilterSpec, minimum_order, plan, prewarp, reference_spec
from .prototypes import (
    AnalogPrototype,
    butterworth_prototype,
    chebyshev1_prototype,
    elliptic_prototype,
)
from .realization import FilterState, SOSCascade, filter_stream, impulse_response, is_stable, zpk_to_sos
from .transform import AnalogFilter, DigitalFilter, bilinear, transform_band

__version__ = "0.1.0"
