"""Brute-force oracle: the space-discretized Laplace-domain diffusion equation.

For nodes k = 1..N with U(0) driven::

    s U(k) = gamma(k h) / h * (phi(k) - phi(k-1)),
    phi(k) = beta(k h) / h * (U(k+1) - U(k)),     phi(N) = 0

The flux beyond the last node vanishes (open termination).  The system is
tridiagonal in U(1..N) and is solved by direct elimination.  The input
admittance is ``phi(0) / U(0)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SingularAtFrequency, ValidationError

__all__ = [
    "DiscreteDiffusionSystem",
    "assemble",
    "tridiagonal_rows",
    "thomas_solve",
    "coupling_weights",
    "solve",
    "fluxes",
    "row_residuals",
    "input_admittance",
]


@dataclass(frozen=True)
class DiscreteDiffusionSystem:
    """Sampled coefficients on the grid.

    ``beta_at[k] = beta(k h)`` for k = 0..N-1 and ``gamma_at[k-1] = gamma(k h)``
    for k = 1..N, where N = ``n_nodes`` is the number of undriven nodes.
    """

    n_nodes: int
    h: float
    beta_at: tuple[float, ...]
    gamma_at: tuple[float, ...]
    boundary: complex = 1.0 + 0j

    def __post_init__(self):
        n = self.n_nodes
        if isinstance(n, bool) or int(n) != n or n < 1:
            raise ValidationError(f"n_nodes must be a positive integer, got {n!r}")
        if len(self.beta_at) != n or len(self.gamma_at) != n:
            raise ValidationError(
                f"need {n} beta and gamma samples, got {len(self.beta_at)} and {len(self.gamma_at)}"
            )
        if not (math.isfinite(self.h) and self.h > 0):
            raise ValidationError(f"h must be positive, got {self.h!r}")
        for name in ("beta_at", "gamma_at"):
            vals = tuple(float(v) for v in getattr(self, name))
            if not all(math.isfinite(v) and v < 0 for v in vals):
                raise ValidationError(f"{name} samples must be strictly negative and finite")
            object.__setattr__(self, name, vals)
        object.__setattr__(self, "n_nodes", int(n))
        object.__setattr__(self, "boundary", complex(self.boundary))


def assemble(profile, n_nodes: int, u0_boundary=1.0) -> DiscreteDiffusionSystem:
    """Sample ``profile.beta`` / ``profile.gamma`` on the grid of step ``profile.h``.

    Any object exposing ``beta(z)``, ``gamma(z)`` and ``h`` is accepted, not
    only :class:`DiffusionProfile`.
    """
    h = profile.h
    beta = tuple(profile.beta(k * h) for k in range(n_nodes))
    gamma = tuple(profile.gamma(k * h) for k in range(1, n_nodes + 1))
    return DiscreteDiffusionSystem(n_nodes, h, beta, gamma, u0_boundary)


def tridiagonal_rows(system: DiscreteDiffusionSystem, s):
    """Bands and right-hand side of the system in U(1..N).

    Returns ``(lower, diag, upper, rhs)``; ``lower[0]`` and ``upper[-1]`` are 0.
    """
    n = system.n_nodes
    w_back, w_fwd = coupling_weights(system)
    diag = complex(s) + w_back + w_fwd
    lower = np.zeros(n, dtype=complex)
    upper = np.zeros(n, dtype=complex)
    lower[1:] = -w_back[1:]
    upper[:-1] = -w_fwd[:-1]
    rhs = np.zeros(n, dtype=complex)
    rhs[0] = w_back[0] * system.boundary
    return lower, diag.astype(complex), upper, rhs


def thomas_solve(lower, diag, upper, rhs, s=None) -> np.ndarray:
    """Forward elimination / back substitution without pivoting."""
    n = len(diag)
    c = np.empty(n, dtype=complex)
    d = np.empty(n, dtype=complex)
    piv = diag[0]
    if piv == 0:
        raise SingularAtFrequency(1, s)
    c[0] = upper[0] / piv
    d[0] = rhs[0] / piv
    for i in range(1, n):
        piv = diag[i] - lower[i] * c[i - 1]
        if piv == 0 or not np.isfinite(piv):
            raise SingularAtFrequency(i + 1, s)
        c[i] = upper[i] / piv
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / piv
    x = np.empty(n, dtype=complex)
    x[-1] = d[-1]
    for i in range(n - 2, -1, -1):
        x[i] = d[i] - c[i] * x[i + 1]
    return x


def coupling_weights(system: DiscreteDiffusionSystem) -> tuple[np.ndarray, np.ndarray]:
    """Positive weights ``w_back[k] = gamma_k beta_{k-1} / h^2`` and ``w_fwd[k] = gamma_k beta_k / h^2``.

    Row k reads ``(s + w_back + w_fwd) U(k) - w_back U(k-1) - w_fwd U(k+1) = 0``
    with ``w_fwd = 0`` on the last row.
    """
    h2 = system.h * system.h
    beta = np.asarray(system.beta_at + (0.0,))
    gamma = np.asarray(system.gamma_at)
    return gamma * beta[:-1] / h2, gamma * beta[1:] / h2


def _eliminate(system: DiscreteDiffusionSystem, s):
    """Eliminate from the last node towards node 1.

    Pivots are kept split as ``p_k = w_back_k + q_k`` where ``q_k`` is the
    shift plus the Schur complement of the eliminated tail.  ``q_k`` is built
    from sums only, so the flux ``U(k-1) - U(k) = U(k-1) q_k / p_k`` never
    comes from subtracting nearly equal node values.
    """
    s = complex(s)
    w_back, w_fwd = coupling_weights(system)
    n = system.n_nodes
    q = np.empty(n, dtype=complex)
    p = np.empty(n, dtype=complex)
    q[-1] = s
    p[-1] = w_back[-1] + s
    if p[-1] == 0:
        raise SingularAtFrequency(n, s)
    for i in range(n - 2, -1, -1):
        q[i] = s + w_fwd[i] * (q[i + 1] / p[i + 1])
        p[i] = w_back[i] + q[i]
        if p[i] == 0 or not np.isfinite(p[i]):
            raise SingularAtFrequency(i + 1, s)
    return w_back, q, p


def solve(system: DiscreteDiffusionSystem, s) -> np.ndarray:
    """U at nodes 0..N (index 0 is the driven boundary value)."""
    w_back, _, p = _eliminate(system, s)
    u = np.empty(system.n_nodes + 1, dtype=complex)
    u[0] = system.boundary
    for i in range(system.n_nodes):
        u[i + 1] = (w_back[i] / p[i]) * u[i]
    return u


def fluxes(system: DiscreteDiffusionSystem, u) -> np.ndarray:
    """phi(k) for k = 0..N-1 from node values ``u`` (length N + 1)."""
    u = np.asarray(u)
    return np.asarray(system.beta_at) * np.diff(u) / system.h


def row_residuals(system: DiscreteDiffusionSystem, s, u, underflow_guard: float = 1e-250) -> np.ndarray:
    """Per-row residual of ``u`` relative to the row's magnitude.

    High-frequency solutions decay into the subnormal range deep in the
    network, where relative precision is lost; the row scale is therefore
    floored at ``underflow_guard * |U(0)| * |diag|``.
    """
    lower, diag, upper, rhs = tridiagonal_rows(system, s)
    x = np.asarray(u)[1:]
    ax = diag * x
    ax[1:] += lower[1:] * x[:-1]
    ax[:-1] += upper[:-1] * x[1:]
    scale = np.abs(diag * x)
    scale[1:] += np.abs(lower[1:] * x[:-1])
    scale[:-1] += np.abs(upper[:-1] * x[1:])
    scale += np.abs(rhs)
    floor = underflow_guard * max(abs(system.boundary), 1.0) * np.abs(diag)
    return np.abs(ax - rhs) / np.maximum(scale, floor)


def input_admittance(system: DiscreteDiffusionSystem, s) -> complex:
    """Node-0 flux over node-0 value; positive for current into the network."""
    if system.boundary == 0:
        raise ValidationError("input admittance needs a nonzero driven boundary value")
    _, q, p = _eliminate(system, s)
    # phi(0) = beta(0) / h * (U(1) - U(0)) and U(0) - U(1) = U(0) q_1 / p_1
    return complex(-system.beta_at[0] / system.h * (q[0] / p[0]))
