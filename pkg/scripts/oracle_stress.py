"""Ladder vs discretized-diffusion admittance over random exponential profiles.

    python3 scripts/oracle_stress.py --profiles 1000 --seed 3
"""

import argparse
import time

import numpy as np

from fracladder import DiffusionProfile, assemble, input_admittance, ladder_from_profile, transfer_cf


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--profiles", type=int, default=500)
    ap.add_argument("--max-depth", type=int, default=64)
    ap.add_argument("--rate", type=float, default=1.0, help="max |lambda h|")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    errs = []
    start = time.perf_counter()
    for _ in range(args.profiles):
        h = 10 ** rng.uniform(-2, 1)
        prof = DiffusionProfile(10 ** rng.uniform(-1, 1), 10 ** rng.uniform(-1, 1),
                                rng.uniform(-args.rate, args.rate) / h,
                                rng.uniform(-args.rate, args.rate) / h, h)
        n = int(rng.integers(1, args.max_depth + 1))
        lad = ladder_from_profile(prof, n)
        system = assemble(prof, n)
        tau = lad.resistances[0] * lad.capacitances[0]
        for w in np.logspace(-2, 3, 31) / tau:
            ref = transfer_cf(lad, 1j * w)
            errs.append(abs(input_admittance(system, 1j * w) - ref) / abs(ref))
    errs = np.array(errs)
    print(f"{errs.size} samples in {time.perf_counter() - start:.1f}s")
    print(f"median {np.median(errs):.2e}  p99 {np.quantile(errs, 0.99):.2e}  max {errs.max():.2e}")


if __name__ == "__main__":
    main()
