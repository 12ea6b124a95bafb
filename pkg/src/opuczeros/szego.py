"""Szego recursion for monic polynomials on the unit circle.

Phi_{n+1}(z) = z Phi_n(z) - conj(alpha_n) Phi_n*(z)
Phi_{n+1}*(z) = Phi_n*(z) - alpha_n z Phi_n(z)

Coefficient vectors are stored in ascending powers so the constant term
(which recovers alpha via alpha_n = -conj(Phi_{n+1}(0))) is element 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sequences import VerblunskySeq

__all__ = ["PolyPair", "recurse", "eval_pair", "recurse_pointwise", "norm_product", "orthonormal_scale", "horner"]


@dataclass(frozen=True)
class PolyPair:
    """Monic pair (Phi_n, Phi_n*) with the norm product prod_j rho_j."""

    degree: int
    phi: np.ndarray        # length degree+1, ascending powers
    phi_star: np.ndarray
    norm: float            # ||Phi_n|| = prod_{j<n} sqrt(1 - |alpha_j|^2)


def _check_alpha(a: complex, j: int) -> complex:
    if abs(a) >= 1:
        raise ValueError(f"|alpha_{j}| >= 1: Szego recursion undefined")
    return a


def recurse(seq: VerblunskySeq, n: int) -> PolyPair:
    """Run n steps of the recursion; returns the coefficient vectors."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    phi = np.zeros(n + 1, dtype=complex)
    star = np.zeros(n + 1, dtype=complex)
    phi[0] = 1.0
    star[0] = 1.0
    norm = 1.0
    for j in range(n):
        a = _check_alpha(seq.alpha(j), j)
        new_phi = np.zeros(n + 1, dtype=complex)
        new_phi[1 : j + 2] = phi[: j + 1]
        new_phi[: j + 1] -= np.conj(a) * star[: j + 1]
        new_star = star.copy()
        new_star[1 : j + 2] -= a * phi[: j + 1]
        phi, star = new_phi, new_star
        norm *= np.sqrt(1.0 - abs(a) ** 2)
    return PolyPair(degree=n, phi=phi, phi_star=star, norm=float(norm))


def horner(coeffs: np.ndarray, z) -> np.ndarray | complex:
    """Evaluate a polynomial given in ascending powers at z (scalar or array)."""
    z = np.asarray(z, dtype=complex)
    acc = np.zeros_like(z)
    for c in coeffs[::-1]:
        acc = acc * z + c
    return acc if acc.shape else complex(acc)


def eval_pair(pair: PolyPair, z) -> tuple:
    """(Phi_n(z), Phi_n*(z)) by Horner evaluation."""
    return horner(pair.phi, z), horner(pair.phi_star, z)


def recurse_pointwise(seq: VerblunskySeq, n: int, z) -> tuple:
    """(Phi_n(z), Phi_n*(z)) without forming coefficients; O(n) time, O(1) extra.

    z may be a scalar or an ndarray; the recursion is vectorized over z.
    """
    z = np.asarray(z, dtype=complex)
    phi = np.ones_like(z)
    star = np.ones_like(z)
    for j in range(n):
        a = _check_alpha(seq.alpha(j), j)
        phi, star = z * phi - np.conj(a) * star, star - a * z * phi
    if phi.shape == ():
        return complex(phi), complex(star)
    return phi, star


def norm_product(seq: VerblunskySeq, n: int) -> float:
    """prod_{j<n} sqrt(1-|alpha_j|^2) without running the recursion."""
    alphas = seq.alphas(n)
    return float(np.prod(np.sqrt(1.0 - np.abs(alphas) ** 2)))


def orthonormal_scale(pair: PolyPair) -> float:
    """||Phi_n|| = prod_{j<n} sqrt(1-|alpha_j|^2); divide to get phi_n."""
    return pair.norm


def reversed_coeffs(coeffs: np.ndarray) -> np.ndarray:
    """Coefficient form of p*(z) = z^n conj(p(1/conj(z)))."""
    return np.conj(coeffs[::-1])
