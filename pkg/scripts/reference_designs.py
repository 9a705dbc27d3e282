"""Design every family/band combination of the reference frequency table and report metrics.

    python3 scripts/reference_designs.py [--order N]
"""

import argparse

from iirspeech import design_filter, measure_band_metrics, reference_spec
from iirspeech.planner import BANDS, FAMILIES
from iirspeech.realization import is_stable


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--order", type=int, default=None, help="fixed order instead of the minimum")
    args = parser.parse_args()

    header = f"{'family':<12}{'band':<10}{'N':>3}{'dev dB':>9}{'atten dB':>10}{'width Hz':>10}{'phase rad':>11}{'margin':>9}"
    print(header)
    print("-" * len(header))
    for family in FAMILIES:
        for band in BANDS:
            d = design_filter(reference_spec(family, band, order_override=args.order))
            m = measure_band_metrics(d.cascade, d.spec)
            print(
                f"{family:<12}{band:<10}{d.plan.order:>3}{m.passband_deviation_db:>9.3f}"
                f"{m.stopband_attenuation_db:>10.2f}{m.transition_width_hz:>10.1f}"
                f"{m.phase_linearity_error_rad:>11.3f}{is_stable(d.digital).margin:>9.4f}"
            )


if __name__ == "__main__":
    main()
