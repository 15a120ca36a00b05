"""Fitted vs predicted fractional exponent over a grid of scaling ratios.

    python3 scripts/exponent_scan.py --ratios 1.5 2 3 4 --depth 60
"""

import argparse
import csv
import sys

from fracladder import FractalParams, auto_band, bode_sweep, fit_power_law
from fracladder.errors import FracLadderError


def scan(ratios, depth, omega_min, omega_max, ppd, min_g):
    for sigma in ratios:
        for rho in ratios:
            p = FractalParams(1.0, 1.0, sigma, rho, depth)
            bode = bode_sweep(p, omega_min, omega_max, ppd)
            try:
                rep = fit_power_law(bode, auto_band(bode, p, min_g_magnitude=min_g), p)
            except FracLadderError as exc:
                yield sigma, rho, None, None, None, type(exc).__name__
                continue
            yield sigma, rho, rep.nu_predicted, rep.nu_fitted, rep.band, ""


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--ratios", type=float, nargs="+", default=[1.5, 2.0, 3.0, 4.0])
    ap.add_argument("--depth", type=int, default=60)
    ap.add_argument("--omega-min", type=float, default=1e-10)
    ap.add_argument("--omega-max", type=float, default=1e2)
    ap.add_argument("--ppd", type=int, default=10)
    ap.add_argument("--min-g", type=float, default=10.0)
    args = ap.parse_args(argv)

    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["sigma", "rho", "nu_predicted", "nu_fitted", "abs_err", "band_lo", "band_hi", "note"])
    for sigma, rho, pred, fit, band, note in scan(args.ratios, args.depth, args.omega_min,
                                                  args.omega_max, args.ppd, args.min_g):
        if fit is None:
            out.writerow([sigma, rho, "", "", "", "", "", note])
            continue
        err = "" if pred is None else f"{abs(fit - pred):.4f}"
        pred_s = "" if pred is None else f"{pred:.4f}"
        out.writerow([sigma, rho, pred_s, f"{fit:.4f}", err, f"{band[0]:.3g}", f"{band[1]:.3g}",
                      "degenerate" if pred is None else ""])


if __name__ == "__main__":
    main()
