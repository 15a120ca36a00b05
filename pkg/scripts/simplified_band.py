"""Where the simplified product relation g(Z(s)) g(Z(sigma s)) ~ Z(s) / (1 + eps) holds.

Scans omega and reports the residual with eps = 0 and with eps set to the
measured |g(Z(sigma s), rho, sigma)|^-1, next to the regime diagnostic.

    python3 scripts/simplified_band.py --sigma 2 --rho 2 --depth 60
"""

import argparse

import numpy as np

from fracladder import FractalParams, g_eval, simplified_residual
from fracladder.transfer import g_depth_for, z_of


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--sigma", type=float, default=2.0)
    ap.add_argument("--rho", type=float, default=2.0)
    ap.add_argument("--depth", type=int, default=60, help="ladder depth; g uses 2N - 1 terms")
    ap.add_argument("--omega-min", type=float, default=1e-3)
    ap.add_argument("--omega-max", type=float, default=1e3)
    ap.add_argument("--ppd", type=int, default=10)
    ap.add_argument("--threshold", type=float, default=0.05)
    args = ap.parse_args(argv)

    p = FractalParams(1.0, 1.0, args.sigma, args.rho, args.depth)
    d = g_depth_for(p)
    decades = np.log10(args.omega_max / args.omega_min)
    grid = np.logspace(np.log10(args.omega_min), np.log10(args.omega_max), int(decades * args.ppd) + 1)
    good = []
    print(f"{'omega':>10} {'res_eps0':>10} {'res_meas':>10} {'1/|g|':>10}")
    for w in grid:
        s = 1j * w
        eps = 1.0 / abs(g_eval(z_of(p, p.sigma * s), p.rho, p.sigma, d))
        r0 = simplified_residual(s, p, d, 0.0)
        r1 = simplified_residual(s, p, d, eps)
        if r1.residual < args.threshold:
            good.append(w)
        print(f"{w:10.3e} {r0.residual:10.3e} {r1.residual:10.3e} {r1.inverse_g:10.3e}")
    if good:
        print(f"residual < {args.threshold} on [{good[0]:.4g}, {good[-1]:.4g}] ({len(good)} points)")
    else:
        print(f"residual never below {args.threshold}")


if __name__ == "__main__":
    main()
