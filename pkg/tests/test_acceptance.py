"""Acceptance criteria 1-8 at full scale.

Each test prints one ``PASS``/``FAIL criterion N`` line (visible without -s)
and asserts at the stated tolerance.
"""

import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from fracladder import (
    DiffusionProfile,
    FractalParams,
    LadderSpec,
    ScalingFunction,
    assemble,
    auto_band,
    bode_sweep,
    eval_cf,
    fit_power_law,
    functional_residual,
    generate_fractal,
    input_admittance,
    ladder_from_profile,
    nest_cf,
    predict_exponent,
    profile_from_ladder,
    scale_cf_head,
    scaling_lambda,
    transfer_cf,
    transfer_fractal,
    transfer_recursive,
)
from fracladder.fracfit import power_of_product

pytestmark = pytest.mark.acceptance


@pytest.fixture
def verdict(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
        assert ok, detail

    return emit


def _rel(a, b):
    return np.abs(a - b) / np.abs(b)


def test_criterion_1_confrac_identities(verdict):
    rng = np.random.default_rng(101)
    per_length = 200
    start = time.perf_counter()
    worst = 0.0
    count = 0
    for length in range(1, 51):
        mag = 10 ** rng.uniform(-3, 3, (per_length, length))
        a = mag * np.exp(2j * np.pi * rng.uniform(size=(per_length, length)))
        full = eval_cf(a)
        for j in range(1, length):
            worst = max(worst, float(np.max(_rel(nest_cf(a[:, :j], eval_cf(a[:, j:])), full))))
        alpha = rng.normal(size=per_length) + 1j * rng.normal(size=per_length)
        scaled = np.array([scale_cf_head(alpha[i], a[i]) for i in range(per_length)])
        worst = max(worst, float(np.max(_rel(scaled, alpha * full))))
        count += per_length
    elapsed = time.perf_counter() - start
    ok = count >= 10 ** 4 and worst <= 1e-12 and elapsed < 10
    verdict(1, ok, f"{count} sequences, worst rel {worst:.2e} (tol 1e-12), {elapsed:.1f}s (< 10s)")


def test_criterion_2_three_routes(verdict):
    rng = np.random.default_rng(202)
    omegas = np.logspace(-4, 4, 17)
    start = time.perf_counter()
    worst = 0.0
    n_ladders = 200
    for _ in range(n_ladders):
        n = int(rng.integers(1, 65))
        lad = LadderSpec(tuple(10 ** rng.uniform(-2, 2, n)), tuple(10 ** rng.uniform(-2, 2, n)))
        p = FractalParams(10 ** rng.uniform(-1, 1), 10 ** rng.uniform(-1, 1),
                          rng.uniform(0.5, 2), rng.uniform(0.5, 2), int(rng.integers(1, 65)))
        frac = generate_fractal(p)
        for w in omegas:
            s = 1j * w
            ref = transfer_cf(lad, s)
            worst = max(worst, abs(transfer_recursive(lad, s) - ref) / abs(ref))
            ref = transfer_cf(frac, s)
            worst = max(worst, abs(transfer_recursive(frac, s) - ref) / abs(ref),
                        abs(transfer_fractal(p, s) - ref) / abs(ref))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-12 and elapsed < 30
    verdict(2, ok, f"{2 * n_ladders} ladders x {omegas.size} freqs over 8 decades, "
                   f"worst rel {worst:.2e} (tol 1e-12), {elapsed:.1f}s (< 30s)")


def test_criterion_3_pde_oracle(verdict):
    rng = np.random.default_rng(303)
    start = time.perf_counter()
    worst = 0.0
    n_profiles = 150
    for _ in range(n_profiles):
        h = 10 ** rng.uniform(-2, 1)
        prof = DiffusionProfile(10 ** rng.uniform(-1, 1), 10 ** rng.uniform(-1, 1),
                                rng.uniform(-1, 1) / h, rng.uniform(-1, 1) / h, h)
        n = int(rng.integers(1, 65))
        lad = ladder_from_profile(prof, n)
        system = assemble(prof, n, 1.0)
        tau = lad.resistances[0] * lad.capacitances[0]
        for w in np.logspace(-2, 3, 31) / tau:
            y = input_admittance(system, 1j * w)
            ref = transfer_cf(lad, 1j * w)
            worst = max(worst, abs(y - ref) / abs(ref))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-10 and elapsed < 60
    verdict(3, ok, f"{n_profiles} profiles x 31 freqs, worst rel {worst:.2e} (tol 1e-10), "
                   f"{elapsed:.1f}s (< 60s)")


def test_criterion_4_functional_relation(verdict):
    rng = np.random.default_rng(404)
    grid = np.linspace(0.5, 2.0, 7)
    pairs = [(s, r) for s in grid for r in grid] + [tuple(rng.uniform(0.5, 2, 2)) for _ in range(100)]
    omegas = np.logspace(-2, 3, 11)
    worst = 0.0
    for sigma, rho in pairs:
        p = FractalParams(1.0, 1.0, sigma, rho, 1)
        for depth in (2, 3, 17, 40, 80, int(rng.integers(2, 81))):
            for w in omegas:
                worst = max(worst, functional_residual(1j * w, p, depth))
    verdict(4, worst <= 1e-12, f"{len(pairs)} (sigma, rho) pairs, depth 2..80, 5 decades, "
                               f"worst {worst:.2e} (tol 1e-12)")


def test_criterion_5_exponent_realization(verdict):
    start = time.perf_counter()
    rows = []
    worst = 0.0
    for sigma, rho in ((2, 2), (2, 4), (4, 2), (3, 1.5)):
        p = FractalParams(1.0, 1.0, sigma, rho, 60)
        bode = bode_sweep(p, 1e-10, 1e2, 10)
        rep = fit_power_law(bode, auto_band(bode, p), p)
        predicted = math.log(sigma) / math.log(sigma * rho)
        worst = max(worst, abs(rep.nu_fitted - predicted))
        rows.append(f"({sigma},{rho}) fit {rep.nu_fitted:.4f} vs {predicted:.4f}")
    half = predict_exponent(2, 2)
    elapsed = time.perf_counter() - start
    ok = worst <= 0.05 and half == 0.5 and elapsed < 60
    verdict(5, ok, "; ".join(rows) + f"; worst {worst:.4f} (tol 0.05); n(2,2) = {half}; {elapsed:.1f}s")


def test_criterion_6_exponent_identities(verdict):
    rng = np.random.default_rng(606)
    worst_comp = worst_comp_unit = worst_def = 0.0
    count = 0
    while count < 10 ** 4:
        sigma, rho = 10 ** rng.uniform(-1, 1, 2)
        if abs(sigma * rho - 1) <= 1e-6:
            continue
        count += 1
        a, b = predict_exponent(sigma, rho), predict_exponent(rho, sigma)
        err = abs(a + b - 1)
        worst_comp = max(worst_comp, err / math.ulp(max(abs(a), abs(b), 1.0)))
        worst_comp_unit = max(worst_comp_unit, err / math.ulp(1.0))
        worst_def = max(worst_def, abs(sigma - power_of_product(sigma, rho, a)) / math.ulp(sigma))
    ok = worst_comp <= 4 and worst_def <= 4
    verdict(6, ok, f"{count} pairs; complementarity {worst_comp:.2f} ulp of the operands "
                   f"({worst_comp_unit:.0f} ulp of 1.0, for reference); sigma = (sigma rho)^n "
                   f"{worst_def:.2f} ulp (tol 4)")


def test_criterion_7_scaling_law(verdict):
    rng = np.random.default_rng(707)
    worst = 0.0
    worst_call = 0.0
    for _ in range(200):
        h = 10 ** rng.uniform(-3, 3)
        # |ln sigma| (k + 1) stays below 700 so every value is finite
        sigma = math.exp(rng.uniform(-0.07, 0.07))
        g = ScalingFunction(scaling_lambda(sigma, h))
        ks = np.concatenate([rng.integers(0, 10 ** 4 + 1, 50), [0, 1, 10 ** 4]])
        for k in ks:
            lhs = g.at_index(k + 1, h)
            rhs = g.at_index(1, h) * g.at_index(k, h)
            worst = max(worst, abs(lhs - rhs) / math.ulp(rhs))
        # on a float32 step, k h is exact in double and __call__ sees the true grid point
        h32 = float(np.float32(h))
        g32 = ScalingFunction(scaling_lambda(sigma, h32))
        for k in ks:
            lhs = g32((k + 1) * h32)
            rhs = g32(h32) * g32(k * h32)
            worst_call = max(worst_call, abs(lhs - rhs) / math.ulp(rhs))
    worst_rt = 0.0
    for _ in range(500):
        h = 10 ** rng.uniform(-2, 1)
        prof = DiffusionProfile(10 ** rng.uniform(-1, 1), 10 ** rng.uniform(-1, 1),
                                rng.uniform(-1, 1) / h, rng.uniform(-1, 1) / h, h)
        back = profile_from_ladder(ladder_from_profile(prof, int(rng.integers(2, 65))), h)
        worst_rt = max(
            worst_rt,
            abs(back.beta0 - prof.beta0) / prof.beta0,
            abs(back.gamma0 - prof.gamma0) / prof.gamma0,
            abs(back.lambdaR - prof.lambdaR) / max(abs(prof.lambdaR), 1 / h),
            abs(back.lambdaC - prof.lambdaC) / max(abs(prof.lambdaC), 1 / h),
        )
    ok = worst <= 4 and worst_call <= 4 and worst_rt <= 1e-12
    verdict(7, ok, f"grid law {worst:.1f} ulp, continuous law {worst_call:.1f} ulp (tol 4, k <= 1e4); "
                   f"round trip {worst_rt:.2e} (tol 1e-12)")


def _cli(args, cwd):
    return subprocess.run([sys.executable, "-m", "fracladder", *args], cwd=cwd,
                          capture_output=True, check=False)


def test_criterion_8_cli_determinism(verdict, tmp_path):
    fractal = {"r1": 1.0, "c1": 1.0, "sigma": 2.0, "rho": 2.0, "depth": 60}
    sweep = {"omega_min": 1e-10, "omega_max": 1e2, "points_per_decade": 10}
    jobs = {
        "synthesize": {"fractal": fractal},
        "bode": {"fractal": fractal, "sweep": sweep},
        "exponent": {"fractal": fractal, "sweep": sweep},
        "map": {"profile": {"beta0": 1.5, "gamma0": 0.5, "lambdaR": 0.2, "lambdaC": -0.1, "h": 0.25},
                "depth": 12},
        "verify": {},
    }
    problems = []
    for mode, doc in jobs.items():
        cfg = tmp_path / f"{mode}.json"
        cfg.write_text(json.dumps(dict(doc, mode=mode)))
        outputs = []
        for run in range(2):
            out = tmp_path / f"{mode}-{run}.out"
            proc = _cli([mode, "--config", str(cfg), "--out", str(out)], tmp_path)
            if proc.returncode != 0:
                problems.append(f"{mode} exit {proc.returncode}")
            files = [out] + ([out.with_suffix(".cir")] if mode == "synthesize" else [])
            outputs.append(b"".join(f.read_bytes() for f in files))
        if outputs[0] != outputs[1]:
            problems.append(f"{mode} output differs")
    ok = not problems
    verdict(8, ok, "all modes byte-identical across runs, verify exit 0" if ok else "; ".join(problems))
