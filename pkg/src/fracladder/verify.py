"""Self-check suite run by ``fracladder verify``.

Each check draws from a seeded generator so reports are reproducible.  The
sizes are smaller than the test-suite acceptance runs; pass ``scale`` > 1 to
enlarge them.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .confrac import eval_cf, nest_cf, scale_cf_head
from .errors import NoValidBand
from .fracfit import auto_band, fit_power_law, power_of_product, predict_exponent
from .ladder import (
    DiffusionProfile,
    FractalParams,
    LadderSpec,
    ScalingFunction,
    generate_fractal,
    ladder_from_profile,
    profile_from_ladder,
    scaling_lambda,
)
from .pde import assemble, input_admittance
from .transfer import bode_sweep, functional_residual, transfer_cf, transfer_fractal, transfer_recursive


@dataclass
class CheckResult:
    name: str
    passed: bool
    worst: float
    tolerance: float
    samples: int

    def __post_init__(self):
        self.passed = bool(self.passed)
        self.worst = float(self.worst)


def _rel(a, b) -> float:
    return abs(a - b) / abs(b) if b != 0 else abs(a - b)


def _random_terms(rng, k):
    mag = 10 ** rng.uniform(-3, 3, k)
    return mag * np.exp(2j * np.pi * rng.uniform(size=k))


def check_confrac(rng, n: int) -> CheckResult:
    worst = 0.0
    for _ in range(n):
        k = int(rng.integers(1, 51))
        a = _random_terms(rng, k)
        full = eval_cf(a)
        for j in range(1, k):
            worst = max(worst, _rel(nest_cf(a[:j], eval_cf(a[j:])), full))
        alpha = complex(*rng.normal(size=2))
        worst = max(worst, _rel(scale_cf_head(alpha, a), alpha * full))
    return CheckResult("confrac_identities", worst <= 1e-12, worst, 1e-12, n)


def _random_ladder(rng) -> LadderSpec:
    n = int(rng.integers(1, 65))
    return LadderSpec(tuple(10 ** rng.uniform(-2, 2, n)), tuple(10 ** rng.uniform(-2, 2, n)))


def check_three_routes(rng, n: int) -> CheckResult:
    worst = 0.0
    omegas = np.logspace(-4, 4, 9)
    for _ in range(n):
        lad = _random_ladder(rng)
        p = FractalParams(10 ** rng.uniform(-1, 1), 10 ** rng.uniform(-1, 1),
                          rng.uniform(0.5, 2), rng.uniform(0.5, 2), int(rng.integers(1, 65)))
        frac = generate_fractal(p)
        for w in omegas:
            s = 1j * w
            ref = transfer_cf(lad, s)
            worst = max(worst, _rel(transfer_recursive(lad, s), ref))
            ref = transfer_cf(frac, s)
            worst = max(worst, _rel(transfer_fractal(p, s), ref), _rel(transfer_recursive(frac, s), ref))
    return CheckResult("three_route_agreement", worst <= 1e-12, worst, 1e-12, n)


def _random_profile(rng) -> DiffusionProfile:
    h = 10 ** rng.uniform(-2, 1)
    return DiffusionProfile(10 ** rng.uniform(-1, 1), 10 ** rng.uniform(-1, 1),
                            rng.uniform(-1, 1) / h, rng.uniform(-1, 1) / h, h)


def check_oracle(rng, n: int) -> CheckResult:
    worst = 0.0
    for _ in range(n):
        prof = _random_profile(rng)
        depth = int(rng.integers(1, 65))
        lad = ladder_from_profile(prof, depth)
        system = assemble(prof, depth, 1.0)
        tau = lad.resistances[0] * lad.capacitances[0]
        for w in np.logspace(-2, 3, 31) / tau:
            worst = max(worst, _rel(input_admittance(system, 1j * w), transfer_cf(lad, 1j * w)))
    return CheckResult("pde_oracle_equivalence", worst <= 1e-10, worst, 1e-10, n)


def check_functional(rng, n: int) -> CheckResult:
    worst = 0.0
    for _ in range(n):
        p = FractalParams(1.0, 1.0, rng.uniform(0.5, 2), rng.uniform(0.5, 2), 1)
        depth = int(rng.integers(2, 81))
        for w in np.logspace(-2, 3, 6):
            worst = max(worst, functional_residual(1j * w, p, depth))
    return CheckResult("functional_relation", worst <= 1e-12, worst, 1e-12, n)


def check_exponent_identities(rng, n: int) -> CheckResult:
    # measured in ulps of the operand scale
    worst = 0.0
    count = 0
    while count < n:
        sigma, rho = 10 ** rng.uniform(-1, 1, 2)
        if abs(sigma * rho - 1) < 1e-6:
            continue
        count += 1
        a, b = predict_exponent(sigma, rho), predict_exponent(rho, sigma)
        worst = max(worst, abs(a + b - 1) / math.ulp(max(abs(a), abs(b), 1.0)))
        worst = max(worst, abs(sigma - power_of_product(sigma, rho, a)) / math.ulp(sigma))
    return CheckResult("exponent_identities_ulp", worst <= 4, worst, 4.0, n)


def check_scaling(rng, n: int) -> CheckResult:
    worst = 0.0
    for _ in range(n):
        h = 10 ** rng.uniform(-3, 3)
        sigma = math.exp(rng.uniform(-0.07, 0.07))
        g = ScalingFunction(scaling_lambda(sigma, h))
        for k in rng.integers(0, 10 ** 4 + 1, 50):
            lhs = g.at_index(k + 1, h)
            rhs = g.at_index(1, h) * g.at_index(k, h)
            worst = max(worst, abs(lhs - rhs) / math.ulp(rhs))
        prof = _random_profile(rng)
        back = profile_from_ladder(ladder_from_profile(prof, int(rng.integers(2, 65))), prof.h)
        for x, y, scale in ((back.beta0, prof.beta0, prof.beta0),
                            (back.gamma0, prof.gamma0, prof.gamma0),
                            (back.lambdaR, prof.lambdaR, max(abs(prof.lambdaR), 1 / prof.h)),
                            (back.lambdaC, prof.lambdaC, max(abs(prof.lambdaC), 1 / prof.h))):
            if abs(x - y) > 1e-12 * scale:
                return CheckResult("scaling_law_and_roundtrip", False, abs(x - y) / scale, 1e-12, n)
    return CheckResult("scaling_law_and_roundtrip", worst <= 4, worst, 4.0, n)


def check_exponent_fit(cases=((2, 2), (2, 4), (4, 2), (3, 1.5))) -> CheckResult:
    worst = 0.0
    for sigma, rho in cases:
        p = FractalParams(1.0, 1.0, sigma, rho, 60)
        bode = bode_sweep(p, 1e-10, 1e2, 10)
        try:
            band = auto_band(bode, p)
        except NoValidBand:
            return CheckResult("exponent_realization", False, math.inf, 0.05, len(cases))
        rep = fit_power_law(bode, band, p)
        worst = max(worst, abs(rep.nu_fitted - rep.nu_predicted))
    return CheckResult("exponent_realization", worst <= 0.05, worst, 0.05, len(cases))


def run_all(seed: int = 20240101, scale: int = 1) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    return [
        check_confrac(rng, 300 * scale),
        check_three_routes(rng, 40 * scale),
        check_oracle(rng, 20 * scale),
        check_functional(rng, 40 * scale),
        check_exponent_identities(rng, 1000 * scale),
        check_scaling(rng, 20 * scale),
        check_exponent_fit(),
    ]


def report(results: list[CheckResult]) -> dict:
    return {
        "schema": 1,
        "passed": all(r.passed for r in results),
        "checks": [asdict(r) for r in results],
    }
