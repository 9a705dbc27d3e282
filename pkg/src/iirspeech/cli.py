"""Command-line front end.

    iirspeech design   --family butter --band lp --fs 8000 --fp 2000 --fstop 3000 --out lp.json
    iirspeech filter   --coeff lp.json --in speech.wav --out filtered.wav
    iirspeech analyze  --coeff lp.json --what magnitude --points 512 --format csv
    iirspeech spectrum --in speech.wav --nfft 4096 --format json

Coefficient files are JSON; series go out as CSV (default) or JSON, to
stdout unless ``--out`` is given.  Every failure prints one line starting
with ``error:`` on stderr and exits with status 2.

Spectra use a rectangular window, a power-of-two transform size and are
normalized so the largest bin is 0 dB.
"""

from __future__ import annotations

import argparse
import io
import json
import sys

import numpy as np

from . import analysis
from .audio_io import Signal, read_wav, spectrum, write_wav
from .design import design_filter
from .errors import FilterError
from .planner import DEFAULT_PASSBAND_RIPPLE_DB, DEFAULT_SAMPLE_RATE, DEFAULT_STOPBAND_ATTEN_DB, FilterSpec
from .realization import FilterState, SOSCascade, filter_stream, is_stable

SCHEMA_VERSION = 1

FAMILY_ALIASES = {
    "butter": "butterworth", "butterworth": "butterworth",
    "cheby1": "chebyshev1", "chebyshev1": "chebyshev1",
    "ellip": "elliptic", "elliptic": "elliptic",
}
BAND_ALIASES = {
    "lp": "lowpass", "lowpass": "lowpass",
    "hp": "highpass", "highpass": "highpass",
    "bp": "bandpass", "bandpass": "bandpass",
    "bs": "bandstop", "bandstop": "bandstop",
}
WHAT_KINDS = {
    "impulse": ("impulse", "sample", "amplitude"),
    "magnitude": ("magnitude_db", "frequency_hz", "magnitude_db"),
    "phase": ("phase_rad", "frequency_hz", "phase_rad"),
    "groupdelay": ("group_delay_samples", "frequency_hz", "group_delay_samples"),
}


class CLIError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CLIError(message)


def _edges(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected Hz value(s) separated by commas, got {text!r}")


def _fmt(v) -> str:
    return repr(float(v))


# -- filter files -------------------------------------------------------------

def filter_file_dict(designed) -> dict:
    spec, cascade = designed.spec, designed.cascade
    return {
        "schema_version": SCHEMA_VERSION,
        "family": spec.family,
        "band": spec.band,
        "sample_rate": spec.sample_rate,
        "order": designed.plan.order,
        "spec": {
            "passband_edges": list(spec.passband_edges),
            "stopband_edges": list(spec.stopband_edges),
            "passband_ripple_db": spec.passband_ripple_db,
            "stopband_atten_db": spec.stopband_atten_db,
            "order_override": spec.order_override,
        },
        "sections": [[float(c) for c in row] for row in cascade.sections],
        "overall_gain": cascade.overall_gain,
    }


def load_filter_file(path) -> tuple[SOSCascade, dict]:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CLIError(f"{path}: not valid JSON ({exc.msg})")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise CLIError(f"{path}: unrecognized schema_version {doc.get('schema_version')!r}")
    try:
        sections = np.array(doc["sections"], dtype=float)
        cascade = SOSCascade(sections, doc["overall_gain"], float(doc["sample_rate"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise CLIError(f"{path}: malformed filter file ({exc})")
    if sections.ndim != 2 or sections.shape[1] != 6:
        raise CLIError(f"{path}: sections must be rows of six numbers")
    if not is_stable(cascade):
        raise CLIError(f"{path}: filter is unstable")
    return cascade, doc


def _spec_from_doc(doc) -> FilterSpec:
    s = doc.get("spec")
    if not s:
        raise CLIError("filter file carries no spec; metrics need band edges")
    return FilterSpec(
        family=doc["family"], band=doc["band"], sample_rate=float(doc["sample_rate"]),
        passband_edges=s["passband_edges"], stopband_edges=s["stopband_edges"],
        passband_ripple_db=s["passband_ripple_db"], stopband_atten_db=s["stopband_atten_db"],
    )


# -- output -------------------------------------------------------------------

def _emit(text: str, out) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _series_text(series, xname: str, yname: str, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({
            "kind": series.kind,
            "abscissa": [float(v) for v in series.abscissa],
            "ordinate": [float(v) for v in series.ordinate],
        }) + "\n"
    buf = io.StringIO()
    buf.write(f"{xname},{yname}\n")
    for x, y in zip(series.abscissa, series.ordinate):
        buf.write(f"{_fmt(x)},{_fmt(y)}\n")
    return buf.getvalue()


def _polezero_text(pz, fmt: str) -> str:
    rows = [("pole", p) for p in pz.poles] + [("zero", z) for z in pz.zeros]
    if fmt == "json":
        return json.dumps({
            "poles": [[float(p.real), float(p.imag)] for p in pz.poles],
            "zeros": [[float(z.real), float(z.imag)] for z in pz.zeros],
        }) + "\n"
    lines = ["type,real,imag,modulus"]
    lines += [f"{t},{_fmt(r.real)},{_fmt(r.imag)},{_fmt(abs(r))}" for t, r in rows]
    return "\n".join(lines) + "\n"


def _metrics_text(m, fmt: str) -> str:
    values = {
        "passband_deviation_db": float(m.passband_deviation_db),
        "stopband_attenuation_db": float(m.stopband_attenuation_db),
        "transition_width_hz": float(m.transition_width_hz),
        "phase_linearity_error_rad": float(m.phase_linearity_error_rad),
    }
    if fmt == "json":
        return json.dumps(values) + "\n"
    return "metric,value\n" + "".join(f"{k},{_fmt(v)}\n" for k, v in values.items())


# -- commands -----------------------------------------------------------------

def cmd_design(args) -> int:
    spec = FilterSpec(
        family=FAMILY_ALIASES[args.family],
        band=BAND_ALIASES[args.band],
        sample_rate=args.fs,
        passband_edges=args.fp,
        stopband_edges=args.fstop,
        passband_ripple_db=args.rp,
        stopband_atten_db=args.rs,
        order_override=args.order,
    )
    designed = design_filter(spec)
    _emit(json.dumps(filter_file_dict(designed), indent=2) + "\n", args.out)
    return 0


def cmd_filter(args) -> int:
    cascade, _ = load_filter_file(args.coeff)
    sig = read_wav(args.input)
    if sig.sample_rate != cascade.sample_rate:
        raise CLIError(
            f"sample rate mismatch: {args.input} is {sig.sample_rate} Hz, "
            f"coefficients are for {cascade.sample_rate:g} Hz"
        )
    out = filter_stream(FilterState.for_cascade(cascade), cascade, sig.samples)
    write_wav(Signal(out, sig.sample_rate), args.out)
    return 0


def cmd_analyze(args) -> int:
    cascade, doc = load_filter_file(args.coeff)
    if args.what == "polezero":
        text = _polezero_text(analysis.pole_zero(cascade), args.format)
    elif args.what == "metrics":
        text = _metrics_text(analysis.measure_band_metrics(cascade, _spec_from_doc(doc)), args.format)
    else:
        kind, xname, yname = WHAT_KINDS[args.what]
        series = analysis.response_series(cascade, kind, args.points)
        text = _series_text(series, xname, yname, args.format)
    _emit(text, args.out)
    return 0


def cmd_spectrum(args) -> int:
    series = spectrum(read_wav(args.input), args.nfft)
    _emit(_series_text(series, "frequency_hz", "magnitude_db", args.format), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="iirspeech", description="IIR filter design and speech filtering.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("design", help="design a filter and write its coefficient file")
    d.add_argument("--family", required=True, choices=sorted(FAMILY_ALIASES))
    d.add_argument("--band", required=True, choices=sorted(BAND_ALIASES))
    d.add_argument("--fs", type=float, default=DEFAULT_SAMPLE_RATE, help="sample rate, Hz")
    d.add_argument("--fp", type=_edges, required=True, help="passband edge(s), Hz; f1,f2 for band filters")
    d.add_argument("--fstop", type=_edges, required=True, help="stopband edge(s), Hz; f3,f4 for band filters")
    d.add_argument("--rp", type=float, default=DEFAULT_PASSBAND_RIPPLE_DB, help="passband ripple, dB")
    d.add_argument("--rs", type=float, default=DEFAULT_STOPBAND_ATTEN_DB, help="stopband attenuation, dB")
    d.add_argument("--order", type=int, default=None, help="fixed order instead of the minimum")
    d.add_argument("--out", default=None)
    d.set_defaults(func=cmd_design)

    f = sub.add_parser("filter", help="filter a 16-bit PCM WAV file")
    f.add_argument("--coeff", required=True)
    f.add_argument("--in", dest="input", required=True)
    f.add_argument("--out", required=True)
    f.set_defaults(func=cmd_filter)

    a = sub.add_parser("analyze", help="emit response curves, pole-zero data or band metrics")
    a.add_argument("--coeff", required=True)
    a.add_argument("--what", required=True, choices=[*WHAT_KINDS, "polezero", "metrics"])
    a.add_argument("--points", type=int, default=512)
    a.add_argument("--format", choices=["csv", "json"], default="csv")
    a.add_argument("--out", default=None)
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser(
        "spectrum",
        help="magnitude spectrum of a WAV file (rectangular window, peak-normalized dB)",
    )
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--nfft", type=int, default=None, help="power-of-two transform size")
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_spectrum)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (CLIError, FilterError, ValueError, OSError, KeyError) as exc:
        message = str(exc).replace("\n", " ")
        print(f"error: {message}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
