"""Print or save the peak-normalized magnitude spectrum of a 16-bit WAV file.

    python3 scripts/input_spectrum.py speech.wav --nfft 4096 --out spectrum.csv
"""

import argparse

from iirspeech import read_wav, spectrum


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("wav")
    parser.add_argument("--nfft", type=int, default=None)
    parser.add_argument("--out", default=None, help="CSV path; summary only when omitted")
    args = parser.parse_args()

    sig = read_wav(args.wav)
    s = spectrum(sig, args.nfft)
    print(f"{len(sig)} samples at {sig.sample_rate} Hz, {len(s.abscissa)} bins spanning 0-{s.abscissa[-1]:g} Hz")
    top = s.abscissa[s.ordinate.argsort()[::-1][:5]]
    print("strongest bins (Hz):", ", ".join(f"{f:.1f}" for f in top))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("frequency_hz,magnitude_db\n")
            for f, v in zip(s.abscissa, s.ordinate):
                fh.write(f"{f!r},{v!r}\n")


if __name__ == "__main__":
    main()
