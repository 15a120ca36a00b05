"""Finite continued fractions in bracket form.

``[a1, ..., ak] = a1 / (1 + a2 / (1 + ... a_{k-1} / (1 + ak)))``

Evaluation is backward (innermost denominator first).  All functions accept
either a 1-D term sequence, returning a complex scalar, or an array whose last
axis holds the terms, returning an array over the leading axes.
"""

from __future__ import annotations

import numpy as np

from .errors import DivisionNearZero, ValidationError

__all__ = ["DEFAULT_FLOOR", "eval_cf", "nest_cf", "scale_cf_head"]

DEFAULT_FLOOR = 1e-300


def _as_terms(terms) -> np.ndarray:
    a = np.asarray(terms, dtype=complex)
    if a.ndim == 0 or a.shape[-1] == 0:
        raise ValidationError("continued fraction needs at least one term")
    if not np.all(np.isfinite(a)):
        raise ValidationError("continued-fraction terms must be finite")
    return a


def _backward(a: np.ndarray, tail, floor: float, error=DivisionNearZero):
    """Fold terms a[..., k-1] .. a[..., 0] onto ``tail``; level numbers are 1-based."""
    k = a.shape[-1]
    if a.ndim == 1:
        val = complex(tail)
        seq = a.tolist()
        for i in range(k - 1, -1, -1):
            d = 1.0 + val
            if abs(d) < floor:
                raise error(i + 1, abs(d))
            val = seq[i] / d
        return val
    val = np.broadcast_to(np.asarray(tail, dtype=complex), a.shape[:-1]).copy()
    for i in range(k - 1, -1, -1):
        d = 1.0 + val
        small = np.abs(d) < floor
        if small.any():
            raise error(i + 1, float(np.abs(d)[small].min()))
        val = a[..., i] / d
    return val


def eval_cf(terms, floor: float = DEFAULT_FLOOR, *, error=DivisionNearZero):
    """Value of ``[a1, ..., ak]``; ``[a1] == a1`` exactly.

    Raises ``error`` (default :class:`DivisionNearZero`) with the level of the
    term whose denominator ``1 + [a_{i+1}, ...]`` fell below ``floor``.
    """
    a = _as_terms(terms)
    if a.shape[-1] == 1:
        return complex(a[0]) if a.ndim == 1 else a[..., 0].copy()
    if a.ndim == 1:
        last = complex(a[-1])
    else:
        last = a[..., -1]
    return _backward(a[..., :-1], last, floor, error)


def nest_cf(head, tail_value, floor: float = DEFAULT_FLOOR, *, error=DivisionNearZero):
    """``[a1, ..., am, T]`` where ``T`` is an already-evaluated tail fraction."""
    a = _as_terms(head)
    return _backward(a, tail_value, floor, error)


def scale_cf_head(alpha, terms, floor: float = DEFAULT_FLOOR, *, error=DivisionNearZero):
    """``[alpha a1, a2, ..., ak]``, which equals ``alpha * [a1, ..., ak]``."""
    a = _as_terms(terms).copy()
    a[..., 0] = a[..., 0] * alpha
    return eval_cf(a, floor, error=error)

