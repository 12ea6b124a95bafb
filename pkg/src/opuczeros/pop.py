"""Paraorthogonal polynomials and their unimodular zeros.

Phi_n^(beta) = z Phi_{n-1} - conj(beta) Phi*_{n-1} with |beta| = 1.  All n
zeros lie on the unit circle, at the angles where the lifted phase

    eta(theta) = arg(beta e^{i theta} Phi_{n-1} / Phi*_{n-1})

crosses a multiple of 2 pi.  eta is strictly increasing and winds by 2 pi n
over a full turn.

Evaluating eta through the coefficient vector would be hopeless: zeros of
Phi_{n-1} can sit exponentially close to the circle, giving the phase
near-jumps that no unwrapping grid can resolve.  Instead the unimodular
ratio B_k = z Phi_k / Phi*_k is iterated directly,

    B_{k+1} = z (B_k - conj(alpha_k)) / (1 - alpha_k B_k),

and since M(w)/w = conj(1 - alpha w)/(1 - alpha w) has argument
-2 Arg(1 - alpha w) with |Arg| < pi/2, the lift of eta propagates one level
at a time on the principal branch.  The lift is exact pointwise, so
bracketing zeros needs no continuity assumptions between grid points.
"""

from __future__ import annotations

import numpy as np

from .sequences import VerblunskySeq
from . import szego, roots

__all__ = [
    "pop_poly",
    "eta_phase",
    "phase_winding",
    "pop_zeros_by_phase",
    "pop_zeros_by_rooting",
]


def _norm_beta(beta: complex) -> complex:
    beta = complex(beta)
    if abs(beta) == 0:
        raise ValueError("beta must be nonzero")
    if abs(abs(beta) - 1.0) > 1e-9:
        raise ValueError("beta must be unimodular")
    return beta / abs(beta)


def pop_poly(seq: VerblunskySeq, n: int, beta: complex) -> np.ndarray:
    """Coefficients of Phi_n^(beta), ascending powers, monic degree n."""
    beta = _norm_beta(beta)
    pair = szego.recurse(seq, n - 1)
    out = np.zeros(n + 1, dtype=complex)
    out[1:] = pair.phi
    out[:n] -= np.conj(beta) * pair.phi_star
    return out


def eta_phase(seq: VerblunskySeq, n: int, beta: complex, theta: np.ndarray) -> np.ndarray:
    """Lifted phase eta at the given angles.

    The lift is pinned by eta_0 = theta for the zeroth level, so values at
    different angles are on a common branch whenever the angles are; no
    grid or ordering is assumed.
    """
    beta = _norm_beta(beta)
    theta = np.asarray(theta, dtype=float)
    alphas = seq.alphas(n - 1)
    eta = theta.astype(float).copy()
    for a in alphas:
        eta = theta + eta - 2.0 * np.angle(1.0 - a * np.exp(1j * eta))
    return eta + np.angle(beta)


def phase_winding(seq: VerblunskySeq, n: int, beta: complex) -> float:
    """Increase of eta over one full turn; equals 2 pi n."""
    eta = eta_phase(seq, n, beta, np.array([0.0, 2.0 * np.pi]))
    return float(eta[1] - eta[0])


def pop_zeros_by_phase(
    seq: VerblunskySeq,
    n: int,
    beta: complex,
    grid_mult: int = 8,
    tol: float = 1e-14,
) -> roots.ZeroSet:
    """All n zeros of Phi_n^(beta) on the unit circle via the phase function.

    A grid of grid_mult*n angles brackets each multiple of 2 pi crossed by
    eta; bisection then pins each crossing to ``tol`` in angle.
    """
    beta = _norm_beta(beta)
    m = grid_mult * n
    theta = np.linspace(0.0, 2.0 * np.pi, m + 1)
    eta = eta_phase(seq, n, beta, theta)
    if abs(eta[-1] - eta[0] - 2.0 * np.pi * n) > 1e-6:
        raise roots.RootError("phase winding is not 2 pi n")
    if np.any(np.diff(eta) <= 0):
        raise roots.RootError("phase not increasing on grid")

    # targets strictly above eta[0]; a crossing at the grid start reappears
    # at the far end of the turn, which is the same point of the circle
    k0 = int(np.floor(eta[0] / (2 * np.pi))) + 1
    targets = 2.0 * np.pi * np.arange(k0, k0 + n)
    if targets[-1] > eta[-1] + 1e-9:
        raise roots.RootError("did not bracket exactly n zeros")
    idx = np.clip(np.searchsorted(eta, targets), 1, m)
    lo = theta[idx - 1].copy()
    hi = theta[idx].copy()
    flo = eta[idx - 1] - targets
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        fm = eta_phase(seq, n, beta, mid) - targets
        take_lo = (np.sign(fm) == np.sign(flo)) & (fm != 0.0)
        lo = np.where(take_lo, mid, lo)
        flo = np.where(take_lo, fm, flo)
        hi = np.where(take_lo, hi, mid)
        if np.max(hi - lo) < tol:
            break
    ang = 0.5 * (lo + hi)
    zeros = np.exp(1j * ang)
    coeffs = pop_poly(seq, n, beta)
    res = np.abs(roots._horner_extended(coeffs, zeros))
    order = np.argsort(np.angle(zeros))
    return roots.ZeroSet(zeros=zeros[order], residuals=res[order],
                         multiplicity_clusters=[], iterations=64)


def pop_zeros_by_rooting(seq: VerblunskySeq, n: int, beta: complex) -> roots.ZeroSet:
    """Cross-check route: root the coefficient vector directly."""
    return roots.find_roots(pop_poly(seq, n, beta))
