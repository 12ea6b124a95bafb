"""CMV matrices: pentadiagonal unitary truncations.

The full matrix is the product L*M of direct sums of 2x2 blocks
Theta(alpha) = [[conj(alpha), rho], [rho, -alpha]], L acting on even-indexed
pairs and M (with a leading 1x1 identity) on odd-indexed pairs.  The upper
left N x N block has characteristic polynomial Phi_N, which is the identity
this module is validated against.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .sequences import VerblunskySeq

__all__ = ["CmvTruncation", "build_truncation", "char_poly", "normalized_moments"]

CHAR_POLY_MAX_N = 64


@dataclass(frozen=True)
class CmvTruncation:
    size: int
    matrix: np.ndarray


def _theta(alpha: complex) -> np.ndarray:
    rho = np.sqrt(1.0 - abs(alpha) ** 2)
    return np.array([[np.conj(alpha), rho], [rho, -alpha]], dtype=complex)


def build_truncation(seq: VerblunskySeq, N: int, beta: complex | None = None) -> CmvTruncation:
    """Upper-left N x N block of the CMV matrix for alpha_0..alpha_{N-1}.

    With ``beta`` given (|beta| = 1), alpha_{N-1} is replaced by beta; the
    block then decouples from the rest of the matrix and is unitary (this is
    the paraorthogonal substitution).
    """
    if N < 1:
        raise ValueError("truncation size must be >= 1")
    alphas = list(seq.alphas(N))
    if any(abs(a) >= 1 for a in alphas):
        raise ValueError("|alpha_j| >= 1")
    if beta is not None:
        beta = complex(beta)
        if abs(abs(beta) - 1.0) > 1e-12:
            beta /= abs(beta)
        alphas[N - 1] = beta
    # pad so the upper-left block is complete; padding values never enter it
    alphas += [0.0] * 3
    M_full = N + 3
    L = np.zeros((M_full, M_full), dtype=complex)
    Mm = np.zeros((M_full, M_full), dtype=complex)
    for j in range(0, M_full - 1, 2):
        L[j : j + 2, j : j + 2] = _theta(alphas[j])
    if M_full % 2:
        L[M_full - 1, M_full - 1] = np.conj(alphas[M_full - 1])
    Mm[0, 0] = 1.0
    for j in range(1, M_full - 1, 2):
        Mm[j : j + 2, j : j + 2] = _theta(alphas[j])
    if M_full % 2 == 0:
        Mm[M_full - 1, M_full - 1] = np.conj(alphas[M_full - 1])
    C = L @ Mm
    return CmvTruncation(size=N, matrix=C[:N, :N])


def char_poly(trunc: CmvTruncation) -> np.ndarray:
    """Monic characteristic polynomial det(zI - C), ascending powers.

    Hessenberg reduction followed by the leading-minor determinant recursion;
    independent of the Szego recursion, which is the point.
    """
    N = trunc.size
    if N > CHAR_POLY_MAX_N:
        raise ValueError(f"char_poly limited to N <= {CHAR_POLY_MAX_N}")
    H = scipy.linalg.hessenberg(trunc.matrix)
    # p_k(z) = det(zI - H_k) over leading k x k minors of upper Hessenberg H
    polys = [np.array([1.0 + 0.0j])]  # p_0 = 1
    for k in range(1, N + 1):
        pk = np.zeros(k + 1, dtype=complex)
        # (z - h_{kk}) p_{k-1}
        pk[1 : k + 1] += polys[k - 1]
        pk[:k] -= H[k - 1, k - 1] * polys[k - 1]
        # - sum over j<k of h_{jk} (prod subdiag) p_{j-1}
        prod = 1.0 + 0.0j
        for j in range(k - 1, 0, -1):
            prod *= H[j, j - 1]
            pk[:j] -= H[j - 1, k - 1] * prod * polys[j - 1]
        polys.append(pk)
    return polys[N]


def normalized_moments(trunc: CmvTruncation, k_max: int) -> np.ndarray:
    """m_k = Tr(C^k)/N for k = 1..k_max; moments of the zero counting measure."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    N = trunc.size
    out = np.empty(k_max, dtype=complex)
    P = np.eye(N, dtype=complex)
    for k in range(1, k_max + 1):
        P = P @ trunc.matrix
        out[k - 1] = np.trace(P) / N
    return out
