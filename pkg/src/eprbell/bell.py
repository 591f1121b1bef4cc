"""CHSH quantities for the EPR state: displaced-parity correlations and scaled correlations.

Two routes to a Bell test are provided.  The first measures displaced
parity: the correlation Pi(x1,p1;x2,p2) is proportional to the Wigner
density, Pi = (pi^2/4) W, and the four-point combination

    B(J) = Pi(0,0;0,0) + Pi(sqrt(J),0;0,0) + Pi(0,0;-sqrt(J),0)
           - Pi(sqrt(J),0;-sqrt(J),0)

obeys |B| <= 2 under any local theory.  The displacement pattern is fixed
to this one-parameter family on purpose; no search over general
displacement quadruples is attempted.  The second route is the scaled
coincidence correlation E(phi1, phi2) = V*cos(phi1 - phi2 + theta) of a
polarization-style CHSH measurement, where the visibility V absorbs
losses and |S| <= 2*sqrt(2)*V at the optimal analyzer angles (subject to
the usual fair-sampling caveat at low detection efficiency).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .epr_model import EprParams, GaussianEprState, TwoModePoint, wigner

__all__ = [
    "BellResult",
    "ScaledChsh",
    "pi_corr",
    "b_of_j",
    "b_of_j_closed_form",
    "maximize_b",
    "loss_bound_ok",
    "scaled_chsh",
    "optimize_scaled_chsh",
]

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0  # golden-section step


@dataclass(frozen=True)
class BellResult:
    j_max: float
    b_max: float
    violates: bool  # b_max > 2


@dataclass(frozen=True)
class ScaledChsh:
    visibility: float
    theta: float
    angles: tuple[float, float, float, float]  # (phi1, phi1', phi2, phi2')
    s_value: float
    m_scale: float  # overall coincidence scale; recorded, never enters S


def pi_corr(state: GaussianEprState, pt: TwoModePoint):
    """Displaced-parity correlation Pi = (pi^2/4) * wigner; equals 1 at the
    origin for the lossless state and 1/(sp*sm) in general."""
    return (math.pi**2 / 4.0) * wigner(state, pt)


def b_of_j(state: GaussianEprState, j):
    """CHSH combination of four displaced-parity correlations at displacement J.

    Accepts a scalar or array of nonnegative J values.
    """
    j = np.asarray(j, dtype=float)
    if not np.all(np.isfinite(j)) or np.any(j < 0.0):
        raise ValueError(f"j must be finite and >= 0, got {j!r}")
    root = np.sqrt(j)
    zero = np.zeros_like(root)
    b = (
        pi_corr(state, TwoModePoint(zero, zero, zero, zero))
        + pi_corr(state, TwoModePoint(root, zero, zero, zero))
        + pi_corr(state, TwoModePoint(zero, zero, -root, zero))
        - pi_corr(state, TwoModePoint(root, zero, -root, zero))
    )
    return float(b) if b.ndim == 0 else b


def b_of_j_closed_form(state: GaussianEprState, j):
    """Algebraic reduction of the four-term combination:

        B(J) = [1 + 2*exp(-J*(1/sp + 1/sm)) - exp(-4*J/sm)] / (sp*sm).

    Kept as an independent twin of :func:`b_of_j` for cross-checking.
    """
    j = np.asarray(j, dtype=float)
    sp = state.sigma_plus_sq
    sm = state.sigma_minus_sq
    b = (1.0 + 2.0 * np.exp(-j * (1.0 / sp + 1.0 / sm)) - np.exp(-4.0 * j / sm)) / (sp * sm)
    return float(b) if b.ndim == 0 else b


def _golden_max(f, lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Golden-section maximization of a unimodal f on [lo, hi] to width tol."""
    x1 = hi - _INV_PHI * (hi - lo)
    x2 = lo + _INV_PHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INV_PHI * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INV_PHI * (hi - lo)
            f1 = f(x1)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def maximize_b(state: GaussianEprState, tol: float = 1e-10, grid_points: int = 512) -> BellResult:
    """Locate the displacement maximizing B(J) over J in [0, 30*sigma_minus_sq].

    A uniform coarse scan brackets the best cell (B has at most one interior
    critical point, so any bracket is unimodal), golden-section refines to
    ``tol`` in J, and the candidates are compared against the boundary J = 0
    so that monotone-decreasing cases return exactly (0, B(0)).
    """
    if not (tol > 0.0 and math.isfinite(tol)):
        raise ValueError(f"tol must be positive and finite, got {tol!r}")
    if grid_points < 2:
        raise ValueError(f"grid_points must be >= 2, got {grid_points!r}")

    j_hi = 30.0 * state.sigma_minus_sq
    grid = np.linspace(0.0, j_hi, grid_points)
    values = b_of_j(state, grid)
    k = int(np.argmax(values))

    lo = grid[max(k - 1, 0)]
    hi = grid[min(k + 1, grid_points - 1)]
    j_ref, b_ref = _golden_max(lambda j: b_of_j(state, j), lo, hi, tol)

    candidates = [
        (b_of_j(state, 0.0), 0.0),
        (float(values[k]), float(grid[k])),
        (b_ref, j_ref),
    ]
    b_max, j_max = max(candidates, key=lambda c: (c[0], -c[1]))
    return BellResult(j_max=float(j_max), b_max=float(b_max), violates=b_max > 2.0)


def loss_bound_ok(params: EprParams) -> bool:
    """Heuristic flag 2*(1 - eta)*cosh(2r) < 1 for violation-friendly loss.

    The underlying condition is an order-of-magnitude statement ("much less
    than one"); this sharp cut is a reading aid on scan rows, never a
    correctness gate.
    """
    return 2.0 * (1.0 - params.eta) * math.cosh(2.0 * params.r) < 1.0


def _chsh_combination(v: float, theta: float, angles) -> float:
    phi1, phi1p, phi2, phi2p = (float(a) for a in angles)
    e = lambda a, b: v * math.cos(a - b + theta)
    return e(phi1, phi2) + e(phi1p, phi2) + e(phi1, phi2p) - e(phi1p, phi2p)


def scaled_chsh(v: float, theta: float, angles, m_scale: float = 1.0) -> ScaledChsh:
    """CHSH combination S = E(1,2) + E(1',2) + E(1,2') - E(1',2') of the
    scaled correlation E(phi1, phi2) = V*cos(phi1 - phi2 + theta).

    ``angles`` is the quadruple (phi1, phi1', phi2, phi2').  Local theories
    bound |S| by 2; the quantum ceiling is 2*sqrt(2)*V.
    """
    if not (math.isfinite(v) and 0.0 <= v <= 1.0):
        raise ValueError(f"visibility must be in [0, 1], got {v!r}")
    angles = tuple(float(a) for a in angles)
    if len(angles) != 4:
        raise ValueError(f"angles must be a quadruple, got {len(angles)} values")
    return ScaledChsh(
        visibility=v,
        theta=theta,
        angles=angles,
        s_value=_chsh_combination(v, theta, angles),
        m_scale=m_scale,
    )


def optimize_scaled_chsh(v: float, theta: float = 0.0) -> ScaledChsh:
    """Analyzer angles maximizing the scaled CHSH combination.

    The optimum of E(phi1, phi2) = V*cos(phi1 - phi2 + theta) sits at the
    standard quadruple rigidly shifted by theta on one side, giving
    S = 2*sqrt(2)*V independent of theta.
    """
    angles = (0.0, math.pi / 2.0, theta + math.pi / 4.0, theta - math.pi / 4.0)
    return scaled_chsh(v, theta, angles)
