"""Fractional exponent: prediction from (sigma, rho) and estimation from Bode data.

In the regime ``|g| >> 1`` the admittance behaves as ``H ~ (1/r1) / g`` with
``g ~ K Z(s)^n`` and ``Z ~ 1/s``, so log|H| rises with slope ``+n`` in
log(omega), ``n = ln(sigma) / ln(sigma rho)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

import mpmath
import numpy as np

from .errors import BandTooNarrow, DegenerateScaling, NoValidBand, NonFiniteSamples, ValidationError
from .ladder import FractalParams
from .transfer import BodeTable, g_depth_for, g_eval, transfer_fractal, z_of

__all__ = [
    "FitReport",
    "IdentificationResidual",
    "MIN_BAND_SAMPLES",
    "predict_exponent",
    "power_of_product",
    "check_identification_system",
    "fit_power_law",
    "auto_band",
    "regime_magnitudes",
    "truncation_converged",
]

MIN_BAND_SAMPLES = 8


@dataclass(frozen=True)
class FitReport:
    nu_fitted: float
    c_fitted: float
    band: tuple[float, float]
    rms_log_residual: float
    n_samples: int
    nu_predicted: Optional[float] = None
    regime_min_g: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "nu_fitted": self.nu_fitted,
            "c_fitted": self.c_fitted,
            "nu_predicted": self.nu_predicted,
            "band": list(self.band),
            "rms_log_residual": self.rms_log_residual,
            "regime_min_g": self.regime_min_g,
            "n_samples": self.n_samples,
        }


# quad precision; sigma * rho of two doubles is exact at 106 bits
_MP = mpmath.MPContext()
_MP.prec = 113


def _is_unit_product(sigma: float, rho: float) -> bool:
    return Fraction(sigma) * Fraction(rho) == 1


def predict_exponent(sigma: float, rho: float) -> float:
    """n(sigma, rho) = ln(sigma) / ln(sigma rho), correctly rounded.

    Evaluated in extended precision because ``ln(sigma rho)`` cancels when
    ``sigma rho`` is close to 1.
    """
    if not (sigma > 0 and rho > 0 and math.isfinite(sigma) and math.isfinite(rho)):
        raise ValidationError(f"sigma and rho must be positive and finite, got {sigma}, {rho}")
    if _is_unit_product(sigma, rho):
        raise DegenerateScaling(f"sigma * rho == 1 (sigma={sigma!r}, rho={rho!r})")
    a = _MP.log(_MP.mpf(sigma))
    d = _MP.log(_MP.mpf(sigma) * _MP.mpf(rho))
    return float(a / d)


def power_of_product(sigma: float, rho: float, n: float) -> float:
    """(sigma rho)^n for the exact real product, rounded once."""
    return float(_MP.power(_MP.mpf(sigma) * _MP.mpf(rho), _MP.mpf(n)))


class IdentificationResidual(NamedTuple):
    gain: float  # |K(s,r) K(r,s) (1 + eps) - sigma^(1 - n)|
    exponent: float  # |sigma - (sigma rho)^n|


def check_identification_system(sigma: float, rho: float, n: float, k_forward: float,
                                k_swapped: float, epsilon: float = 0.0) -> IdentificationResidual:
    """Residuals of the identification system for a power-law ansatz of g.

    ``n`` is the exponent for (sigma, rho); the swapped exponent is ``1 - n``.
    """
    vals = (sigma, rho, n, k_forward, k_swapped, epsilon)
    if not all(math.isfinite(v) for v in vals):
        raise ValidationError("identification inputs must be finite")
    if sigma <= 0 or rho <= 0:
        raise ValidationError("sigma and rho must be positive")
    if _is_unit_product(sigma, rho):
        raise DegenerateScaling("sigma * rho == 1")
    r_gain = abs(k_forward * k_swapped * (1.0 + epsilon) - sigma ** (1.0 - n))
    r_exp = abs(sigma - power_of_product(sigma, rho, n))
    return IdentificationResidual(r_gain, r_exp)


def fit_power_law(bode: BodeTable, band: tuple[float, float],
                  params: FractalParams | None = None) -> FitReport:
    """Least-squares line through (ln omega, ln|H|) restricted to ``band``.

    With ``params`` the report also carries the predicted exponent (None when
    sigma rho == 1) and the smallest regime magnitude over the band.
    """
    lo, hi = band
    if not lo < hi:
        raise ValidationError(f"band must satisfy low < high, got {band}")
    sel = (bode.omegas >= lo) & (bode.omegas <= hi)
    n_sel = int(sel.sum())
    if n_sel < MIN_BAND_SAMPLES:
        raise BandTooNarrow(f"band {band} holds {n_sel} samples, need {MIN_BAND_SAMPLES}")
    vals = bode.values[sel]
    if not np.all(bode.ok[sel]) or not np.all(np.isfinite(vals)) or np.any(vals == 0):
        raise NonFiniteSamples(f"band {band} contains flagged or non-finite samples")
    x = np.log(bode.omegas[sel])
    y = np.log(np.abs(vals))
    xm, ym = x.mean(), y.mean()
    dx = x - xm
    slope = float(np.dot(dx, y - ym) / np.dot(dx, dx))
    intercept = float(ym - slope * xm)
    resid = y - (intercept + slope * x)
    rms = float(np.sqrt(np.mean(resid ** 2)))

    nu_pred = None
    min_g = None
    if params is not None:
        try:
            nu_pred = predict_exponent(params.sigma, params.rho)
        except DegenerateScaling:
            nu_pred = None
        min_g = float(regime_magnitudes(bode.omegas[sel], params).min())
    return FitReport(
        nu_fitted=slope,
        c_fitted=math.exp(intercept),
        band=(float(bode.omegas[sel][0]), float(bode.omegas[sel][-1])),
        rms_log_residual=rms,
        n_samples=n_sel,
        nu_predicted=nu_pred,
        regime_min_g=min_g,
    )


def regime_magnitudes(omegas, params: FractalParams, depth: int | None = None) -> np.ndarray:
    """|g(Z(j omega), rho, sigma)| on a grid (note the swapped ratios)."""
    if depth is None:
        depth = g_depth_for(params)
    return np.array(
        [abs(g_eval(z_of(params, 1j * w), params.rho, params.sigma, depth)) for w in omegas]
    )


def truncation_converged(omegas, params: FractalParams, rtol: float = 1e-3) -> np.ndarray:
    """True where doubling the ladder depth changes H by at most ``rtol`` relative."""
    deeper = FractalParams(params.r1, params.c1, params.sigma, params.rho, 2 * params.depth)
    out = np.empty(len(omegas), dtype=bool)
    for i, w in enumerate(omegas):
        h_n = transfer_fractal(params, 1j * w)
        h_2n = transfer_fractal(deeper, 1j * w)
        out[i] = abs(h_n - h_2n) <= rtol * abs(h_2n)
    return out


def auto_band(bode: BodeTable, params: FractalParams, min_g_magnitude: float = 10.0,
              trunc_rtol: float = 1e-3) -> tuple[float, float]:
    """Widest contiguous run of grid points inside the power-law regime.

    A point qualifies when it is unflagged, ``|g(Z(j omega), rho, sigma)| >=
    min_g_magnitude`` and the truncated ladder has converged there.  Width is
    measured in log(omega); ties go to the lower band.
    """
    if len(bode) == 0:
        raise NoValidBand("empty Bode table")
    om = bode.omegas
    mask = np.asarray(bode.ok).copy()
    if math.isinf(min_g_magnitude):
        mask[:] = False
    else:
        mask &= regime_magnitudes(om, params) >= min_g_magnitude
    if mask.any():
        mask &= truncation_converged(om, params, trunc_rtol)

    best = None
    i = 0
    n = mask.size
    while i < n:
        if not mask[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and mask[j + 1]:
            j += 1
        if j > i:
            width = math.log(om[j] / om[i])
            if best is None or width > best[0]:
                best = (width, i, j)
        i = j + 1
    if best is None:
        raise NoValidBand(
            f"no contiguous band with |g| >= {min_g_magnitude} and converged truncation"
        )
    return float(om[best[1]]), float(om[best[2]])
