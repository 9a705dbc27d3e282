"""Filter a synthetic 700 Hz + 3500 Hz tone pair with each low-pass design.

Writes the input and filtered WAV files to ``--outdir`` and prints the
level difference between the two spectral peaks before and after filtering.
"""

import argparse
from pathlib import Path

import numpy as np

from iirspeech import design_filter, read_wav, spectrum, reference_spec, write_wav
from iirspeech.audio_io import Signal, tone
from iirspeech.planner import FAMILIES
from iirspeech.realization import FilterState, filter_stream


def peak_db(series, freq, half_width=10.0):
    near = np.abs(series.abscissa - freq) <= half_width
    return float(np.max(series.ordinate[near]))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--outdir", type=Path, default=Path("two_tone_out"))
    args = parser.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)

    src = args.outdir / "two_tone.wav"
    write_wav(tone([700, 3500], 8000, 1.0, 0.4), src)
    sig = read_wav(src)
    before = spectrum(sig)
    print(f"input: 700 Hz peak {peak_db(before, 700):.2f} dB, 3500 Hz peak {peak_db(before, 3500):.2f} dB")
    for family in FAMILIES:
        d = design_filter(reference_spec(family, "lowpass"))
        out = filter_stream(FilterState.for_cascade(d.cascade), d.cascade, sig.samples)
        path = args.outdir / f"{family}_lowpass.wav"
        write_wav(Signal(out, sig.sample_rate), path)
        after = spectrum(read_wav(path))
        gap = peak_db(after, 700) - peak_db(after, 3500)
        print(f"{family:<12} N={d.plan.order}  3500 Hz sits {gap:.1f} dB below 700 Hz  -> {path}")


if __name__ == "__main__":
    main()
