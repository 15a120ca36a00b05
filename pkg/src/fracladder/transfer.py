"""Driving-point transfer function H(s, 0) = I0 / U0 of truncated Cauer ladders.

Three independent routes are provided:

* :func:`transfer_recursive` - backward nodal recursion with open tail,
  ``H(s,k) = 1 / (R(k+1) + 1 / (s C(k+1) + H(s,k+1)))``, ``H(s,N) = 0``;
* :func:`transfer_cf` - the bracket ``[1/R1, Z_C1(R1 s), Z_C1(R2 s), Z_C2(R2 s), ...]``;
* :func:`transfer_fractal` / :func:`transfer_via_g` - geometric term pattern
  of a fractal ladder, with ``Z(s) = 1 / (s r1 c1)``.

A ladder of depth N has 2N bracket terms; the g-fraction inside it has 2N - 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .confrac import DEFAULT_FLOOR, eval_cf
from .errors import NumericalError, PoleEncountered, ValidationError
from .ladder import FractalParams, LadderSpec, generate_fractal

__all__ = [
    "BodeTable",
    "Converged",
    "SimplifiedCheck",
    "log_grid",
    "ladder_cf_terms",
    "fractal_cf_terms",
    "g_terms",
    "z_of",
    "transfer_recursive",
    "transfer_cf",
    "transfer_fractal",
    "g_eval",
    "g_depth_for",
    "transfer_via_g",
    "transfer_converged",
    "functional_residual",
    "simplified_residual",
    "bode_sweep",
]

Network = Union[LadderSpec, FractalParams]


def _check_s(s) -> complex:
    s = complex(s)
    if not (math.isfinite(s.real) and math.isfinite(s.imag)) or s == 0:
        raise ValidationError(f"s must be finite and nonzero, got {s!r}")
    return s


def z_of(params: FractalParams, s) -> complex:
    """Z(s) = Z_C1(R1 s) = 1 / (s r1 c1)."""
    return 1.0 / (_check_s(s) * params.r1 * params.c1)


def ladder_cf_terms(ladder: LadderSpec, s) -> list[complex]:
    s = _check_s(s)
    r, c = ladder.resistances, ladder.capacitances
    terms = [1.0 / r[0]]
    for k in range(ladder.depth):
        terms.append(1.0 / (r[k] * s * c[k]))
        if k + 1 < ladder.depth:
            terms.append(1.0 / (r[k + 1] * s * c[k]))
    return terms


def g_terms(z, sigma: float, rho: float, depth: int) -> list[complex]:
    """Terms of g(z, sigma, rho): z, z/sigma, z/(sigma rho), z/(sigma^2 rho), ..."""
    if depth < 1:
        raise ValidationError(f"g depth must be >= 1, got {depth}")
    z = complex(z)
    terms = [z]
    for m in range(2, depth + 1):
        terms.append(terms[-1] / (sigma if m % 2 == 0 else rho))
    return terms


def fractal_cf_terms(params: FractalParams, s) -> list[complex]:
    return [1.0 / params.r1] + g_terms(z_of(params, s), params.sigma, params.rho, 2 * params.depth - 1)


def transfer_recursive(ladder: LadderSpec, s, floor: float = DEFAULT_FLOOR) -> complex:
    s = _check_s(s)
    h = 0j
    for k in range(ladder.depth - 1, -1, -1):
        shunt = s * ladder.capacitances[k] + h
        if abs(shunt) < floor:
            raise PoleEncountered(k + 1, abs(shunt))
        series = ladder.resistances[k] + 1.0 / shunt
        if abs(series) < floor:
            raise PoleEncountered(k + 1, abs(series))
        h = 1.0 / series
    return h


def transfer_cf(ladder: LadderSpec, s, floor: float = DEFAULT_FLOOR) -> complex:
    return eval_cf(ladder_cf_terms(ladder, s), floor, error=PoleEncountered)


def transfer_fractal(params: FractalParams, s, floor: float = DEFAULT_FLOOR) -> complex:
    return eval_cf(fractal_cf_terms(params, s), floor, error=PoleEncountered)


def g_eval(z, sigma: float, rho: float, depth: int, floor: float = DEFAULT_FLOOR) -> complex:
    return eval_cf(g_terms(z, sigma, rho, depth), floor, error=PoleEncountered)


def g_depth_for(params: FractalParams) -> int:
    """g-truncation matching the ladder depth of ``params``."""
    return 2 * params.depth - 1


def transfer_via_g(params: FractalParams, s, depth: int | None = None,
                   floor: float = DEFAULT_FLOOR) -> complex:
    """H = [1/r1, g(Z(s), sigma, rho)]; ``depth`` counts g terms (default 2N - 1)."""
    if depth is None:
        depth = g_depth_for(params)
    g = g_eval(z_of(params, s), params.sigma, params.rho, depth, floor)
    d = 1.0 + g
    if abs(d) < floor:
        raise PoleEncountered(1, abs(d))
    return (1.0 / params.r1) / d


class Converged(NamedTuple):
    value: complex
    depth: int
    converged: bool


def transfer_converged(params: FractalParams, s, rtol: float = 1e-10,
                       max_depth: int = 2 ** 14) -> Converged:
    """Approximate the infinite fractal ladder by depth doubling.

    Starts from ``params.depth`` and doubles until
    ``|H_2N - H_N| <= rtol |H_2N|`` or ``max_depth`` is reached.
    """
    n = params.depth
    prev = transfer_fractal(params, s)
    while 2 * n <= max_depth:
        n *= 2
        cur = transfer_fractal(_with_depth(params, n), s)
        if abs(cur - prev) <= rtol * abs(cur):
            return Converged(cur, n, True)
        prev = cur
    return Converged(prev, n, False)


def _with_depth(params: FractalParams, depth: int) -> FractalParams:
    return FractalParams(params.r1, params.c1, params.sigma, params.rho, depth)


def functional_residual(s, params: FractalParams, depth: int) -> float:
    """Relative mismatch of g(Z(s),sigma,rho) = Z(s) / (1 + g(Z(sigma s),rho,sigma)).

    The right-hand g carries ``depth - 1`` terms, which makes the relation an
    identity of finite fractions; the residual is pure rounding.
    """
    if depth < 2:
        raise ValidationError(f"depth must be >= 2, got {depth}")
    s = _check_s(s)
    z = z_of(params, s)
    lhs = g_eval(z, params.sigma, params.rho, depth)
    inner = g_eval(z_of(params, params.sigma * s), params.rho, params.sigma, depth - 1)
    rhs = z / (1.0 + inner)
    return abs(lhs - rhs) / abs(lhs)


class SimplifiedCheck(NamedTuple):
    residual: float
    inverse_g: float  # |g(Z(s), rho, sigma)|^-1, small in the valid regime


def simplified_residual(s, params: FractalParams, depth: int, epsilon: float) -> SimplifiedCheck:
    """Mismatch of g(Z(s),sigma,rho) g(Z(sigma s),rho,sigma) = Z(s) / (1 + epsilon)."""
    if epsilon < 0:
        raise ValidationError(f"epsilon must be >= 0, got {epsilon}")
    s = _check_s(s)
    z = z_of(params, s)
    g_fwd = g_eval(z, params.sigma, params.rho, depth)
    g_swp = g_eval(z_of(params, params.sigma * s), params.rho, params.sigma, depth)
    residual = abs(g_fwd * g_swp * (1.0 + epsilon) - z) / abs(z)
    regime = g_eval(z, params.rho, params.sigma, depth)
    return SimplifiedCheck(residual, 1.0 / abs(regime))


@dataclass(frozen=True)
class BodeTable:
    """Sampled H(j omega).  Points where a pole diagnostic fired hold NaN and ``ok == False``."""

    omegas: np.ndarray
    values: np.ndarray
    ok: np.ndarray

    def __post_init__(self):
        om = np.asarray(self.omegas, dtype=float)
        val = np.asarray(self.values, dtype=complex)
        ok = np.asarray(self.ok, dtype=bool)
        if om.ndim != 1 or om.shape != val.shape or om.shape != ok.shape:
            raise ValidationError("omegas, values and flags must be 1-D of equal length")
        if om.size and (np.any(om <= 0) or np.any(np.diff(om) <= 0)):
            raise ValidationError("omegas must be positive and strictly ascending")
        if not np.all(np.isfinite(val[ok])):
            raise ValidationError("unflagged values must be finite")
        for name, arr in (("omegas", om), ("values", val), ("ok", ok)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def __len__(self):
        return self.omegas.size

    @classmethod
    def from_samples(cls, omegas, values) -> "BodeTable":
        values = np.asarray(values, dtype=complex)
        return cls(omegas, values, np.isfinite(values))


def log_grid(omega_min: float, omega_max: float, points_per_decade: int) -> np.ndarray:
    """Log-spaced grid including both ends; 3 decades at 10/decade gives 31 points."""
    if not (0 < omega_min < omega_max) or not math.isfinite(omega_max):
        raise ValidationError(f"need 0 < omega_min < omega_max, got {omega_min}, {omega_max}")
    if points_per_decade < 1:
        raise ValidationError(f"points_per_decade must be >= 1, got {points_per_decade}")
    lo, hi = math.log10(omega_min), math.log10(omega_max)
    n = int(math.ceil((hi - lo) * points_per_decade - 1e-9)) + 1
    grid = np.logspace(lo, hi, max(n, 2))
    grid[0], grid[-1] = omega_min, omega_max
    return grid


def bode_sweep(network: Network, omega_min: float, omega_max: float,
               points_per_decade: int) -> BodeTable:
    ladder = generate_fractal(network) if isinstance(network, FractalParams) else network
    omegas = log_grid(omega_min, omega_max, points_per_decade)
    values = np.empty(omegas.size, dtype=complex)
    ok = np.ones(omegas.size, dtype=bool)
    for i, w in enumerate(omegas):
        try:
            values[i] = transfer_cf(ladder, 1j * w)
        except NumericalError:
            values[i] = complex(math.nan, math.nan)
            ok[i] = False
        if not np.isfinite(values[i]):
            values[i] = complex(math.nan, math.nan)
            ok[i] = False
    return BodeTable(omegas, values, ok)
