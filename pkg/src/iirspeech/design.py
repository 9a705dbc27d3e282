"""End-to-end design: spec -> plan -> prototype -> band transform -> bilinear -> SOS."""

from __future__ import annotations

from dataclasses import dataclass

from .planner import DesignPlan, FilterSpec, plan
from .prototypes import AnalogPrototype, design_prototype
from .realization import SOSCascade, zpk_to_sos
from .transform import AnalogFilter, DigitalFilter, bilinear, transform_band


@dataclass(frozen=True)
class DesignedFilter:
    spec: FilterSpec
    plan: DesignPlan
    prototype: AnalogPrototype
    analog: AnalogFilter
    digital: DigitalFilter
    cascade: SOSCascade


def design_filter(spec: FilterSpec) -> DesignedFilter:
    p = plan(spec)
    proto = design_prototype(p.family, p.order, p.passband_ripple_db, p.stopband_atten_db)
    analog = transform_band(proto, p.band, p.transform_edges)
    digital = bilinear(analog, p.sample_rate)
    return DesignedFilter(spec, p, proto, analog, digital, zpk_to_sos(digital))
