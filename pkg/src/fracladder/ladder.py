"""Ladder and diffusion-profile types, fractal generation and the coefficient maps.

A truncated Cauer ladder has series resistors ``R(1..N)`` and shunt capacitors
``C(1..N)``: ``R(k)`` feeds node ``k`` from node ``k-1`` and ``C(k)`` ties node
``k`` to ground.  The diffusion side is ``sU = gamma(z) d/dz(beta(z) dU/dz)``
sampled on ``z_k = k h`` with ``beta(z) = -beta0 exp(-lambdaR z)`` and
``gamma(z) = -gamma0 exp(-lambdaC z)``.

The maps between them absorb one grid step into every element value::

    C(k)   = -h / gamma(k h)      k = 1..N
    R(k+1) = -h / beta(k h)       k = 0..N-1

so the flux at grid index ``k`` flows through resistor ``R(k+1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import NonGeometricLadder, ValidationError

__all__ = [
    "LadderSpec",
    "FractalParams",
    "DiffusionProfile",
    "ScalingFunction",
    "generate_fractal",
    "ladder_from_profile",
    "profile_from_ladder",
    "fractal_from_profile",
    "scaling_lambda",
]

_SPLITTER = 134217729.0  # 2**27 + 1


def _two_product(a: float, b: float) -> tuple[float, float]:
    # Dekker: a*b == p + e exactly (barring over/underflow)
    p = a * b
    t = _SPLITTER * a
    ah = t - (t - a)
    al = a - ah
    t = _SPLITTER * b
    bh = t - (t - b)
    bl = b - bh
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def _exp_dd(hi: float, lo: float) -> float:
    """exp(hi + lo) for a double-double exponent, |lo| <= ulp(hi)."""
    e = math.exp(hi)
    return e + e * lo


def _check_positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise ValidationError(f"{name} must be positive and finite, got {value!r}")
    return value


def _check_depth(depth) -> int:
    if isinstance(depth, bool) or int(depth) != depth or depth < 1:
        raise ValidationError(f"depth must be a positive integer, got {depth!r}")
    return int(depth)


@dataclass(frozen=True)
class LadderSpec:
    """Element values of a truncated RC Cauer ladder (ohms, farads)."""

    resistances: tuple[float, ...]
    capacitances: tuple[float, ...]

    def __post_init__(self):
        r = tuple(float(x) for x in self.resistances)
        c = tuple(float(x) for x in self.capacitances)
        if len(r) == 0 or len(r) != len(c):
            raise ValidationError(
                f"need equal, nonzero numbers of resistors and capacitors (got {len(r)}, {len(c)})"
            )
        for k, x in enumerate(r, 1):
            _check_positive(f"R({k})", x)
        for k, x in enumerate(c, 1):
            _check_positive(f"C({k})", x)
        object.__setattr__(self, "resistances", r)
        object.__setattr__(self, "capacitances", c)

    @property
    def depth(self) -> int:
        return len(self.resistances)

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "resistances": list(self.resistances),
            "capacitances": list(self.capacitances),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "LadderSpec":
        ladder = cls(tuple(d["resistances"]), tuple(d["capacitances"]))
        if "depth" in d and int(d["depth"]) != ladder.depth:
            raise ValidationError(f"depth {d['depth']} does not match element count {ladder.depth}")
        return ladder


@dataclass(frozen=True)
class FractalParams:
    """Generator of a geometric ladder: R(k+1) = sigma R(k), C(k+1) = rho C(k)."""

    r1: float
    c1: float
    sigma: float
    rho: float
    depth: int

    def __post_init__(self):
        for name in ("r1", "c1", "sigma", "rho"):
            object.__setattr__(self, name, _check_positive(name, getattr(self, name)))
        object.__setattr__(self, "depth", _check_depth(self.depth))

    @property
    def degenerate(self) -> bool:
        """True when sigma * rho == 1 (no exponent prediction available)."""
        return math.log(self.sigma) + math.log(self.rho) == 0.0

    def to_dict(self) -> dict:
        return {
            "r1": self.r1,
            "c1": self.c1,
            "sigma": self.sigma,
            "rho": self.rho,
            "depth": self.depth,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FractalParams":
        return cls(d["r1"], d["c1"], d["sigma"], d["rho"], d["depth"])


@dataclass(frozen=True)
class ScalingFunction:
    """``f(zeta) = value0 * exp(lam * zeta)``.

    The exponent product is formed exactly (double-double) before
    exponentiation, so the multiplicative law ``f((k+1)h) f(0) = f(h) f(kh)``
    holds to a few ulp even for large exponents.
    """

    lam: float
    value0: float = 1.0

    def __call__(self, zeta: float) -> float:
        hi, lo = _two_product(self.lam, float(zeta))
        return self.value0 * _exp_dd(hi, lo)

    def at_index(self, k: int, h: float) -> float:
        """Evaluate on the grid point ``k h`` without rounding ``k h`` first."""
        a_hi, a_lo = _two_product(self.lam, float(h))
        b_hi, b_lo = _two_product(a_hi, float(k))
        lo = b_lo + a_lo * k
        hi = b_hi + lo
        lo = lo - (hi - b_hi)
        return self.value0 * _exp_dd(hi, lo)


def scaling_lambda(sigma: float, h: float) -> float:
    """Exponent ``lam`` with ``exp(lam h) = sigma``."""
    sigma = _check_positive("sigma", sigma)
    h = _check_positive("h", h)
    return math.log(sigma) / h


@dataclass(frozen=True)
class DiffusionProfile:
    """Exponential coefficient family on a uniform grid of step ``h``."""

    beta0: float
    gamma0: float
    lambdaR: float
    lambdaC: float
    h: float

    def __post_init__(self):
        for name in ("beta0", "gamma0", "h"):
            object.__setattr__(self, name, _check_positive(name, getattr(self, name)))
        for name in ("lambdaR", "lambdaC"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValidationError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)

    def beta(self, z: float) -> float:
        return -self.beta0 * math.exp(-self.lambdaR * z)

    def gamma(self, z: float) -> float:
        return -self.gamma0 * math.exp(-self.lambdaC * z)

    def resistance_fn(self) -> ScalingFunction:
        """Continuous ``r(z)`` with ``r(k h) = R(k+1)``."""
        return ScalingFunction(self.lambdaR, self.h / self.beta0)

    def capacitance_fn(self) -> ScalingFunction:
        """Continuous ``c(z)`` with ``c(k h) = C(k)``."""
        return ScalingFunction(self.lambdaC, self.h / self.gamma0)

    def to_dict(self) -> dict:
        return {
            "beta0": self.beta0,
            "gamma0": self.gamma0,
            "lambdaR": self.lambdaR,
            "lambdaC": self.lambdaC,
            "h": self.h,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DiffusionProfile":
        return cls(d["beta0"], d["gamma0"], d["lambdaR"], d["lambdaC"], d["h"])


def generate_fractal(params: FractalParams) -> LadderSpec:
    n = params.depth
    r = [params.r1]
    c = [params.c1]
    for _ in range(n - 1):
        r.append(r[-1] * params.sigma)
        c.append(c[-1] * params.rho)
    return LadderSpec(tuple(r), tuple(c))


def ladder_from_profile(profile: DiffusionProfile, depth: int) -> LadderSpec:
    """Ladder whose nodal equations coincide with the discretized diffusion equation."""
    depth = _check_depth(depth)
    r_of = profile.resistance_fn()
    c_of = profile.capacitance_fn()
    r = tuple(r_of.at_index(k, profile.h) for k in range(depth))
    c = tuple(c_of.at_index(k, profile.h) for k in range(1, depth + 1))
    return LadderSpec(r, c)


def _common_ratio_log(values: Sequence[float], which: str, rtol: float) -> float:
    """Validate a geometric sequence and return ln(ratio) fitted end to end."""
    n = len(values)
    if n == 1:
        return 0.0
    first = values[1] / values[0]
    for k in range(1, n - 1):
        ratio = values[k + 1] / values[k]
        if abs(ratio - first) > rtol * abs(first):
            raise NonGeometricLadder(which, k + 1, ratio, first)
    return math.log(values[-1] / values[0]) / (n - 1)


def profile_from_ladder(ladder: LadderSpec, h: float, rtol: float = 1e-9) -> DiffusionProfile:
    """Inverse of :func:`ladder_from_profile` for geometric ladders.

    A depth-1 ladder carries no ratio information; both rates are then 0.
    """
    h = _check_positive("h", h)
    log_sigma = _common_ratio_log(ladder.resistances, "resistance", rtol)
    log_rho = _common_ratio_log(ladder.capacitances, "capacitance", rtol)
    lam_r = log_sigma / h
    lam_c = log_rho / h
    beta0 = h / ladder.resistances[0]
    # C(1) = (h / gamma0) exp(lambdaC h)
    gamma0 = h * math.exp(log_rho) / ladder.capacitances[0]
    return DiffusionProfile(beta0, gamma0, lam_r, lam_c, h)


def fractal_from_profile(profile: DiffusionProfile, depth: int) -> FractalParams:
    """Fractal generator equivalent to ``ladder_from_profile(profile, depth)``."""
    ladder = ladder_from_profile(profile, depth)
    return FractalParams(
        ladder.resistances[0],
        ladder.capacitances[0],
        math.exp(profile.lambdaR * profile.h),
        math.exp(profile.lambdaC * profile.h),
        depth,
    )
