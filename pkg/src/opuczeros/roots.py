"""Simultaneous root finding for monic complex polynomials.

Aberth-Ehrlich iteration with initial guesses on the circle of radius
|c_0|^(1/n), slightly rotated off the symmetry axes.  Tuned for zeros that
cluster near a circle, which is the generic OPUC picture.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["ZeroSet", "find_roots", "refine_root", "RootError"]

# fixed irrational rotation of the initial guesses; breaks the n-fold
# symmetry that stalls Aberth on polynomials like z^n - c
_TWIST = 0.5 * (np.sqrt(5.0) - 1.0)


class RootError(RuntimeError):
    pass


@dataclass(frozen=True)
class ZeroSet:
    """All zeros of one polynomial, sorted by principal argument in [0, 2pi)."""

    zeros: np.ndarray
    residuals: np.ndarray
    multiplicity_clusters: list = field(default_factory=list)
    iterations: int = 0

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.zeros)

    @property
    def arguments(self) -> np.ndarray:
        return np.mod(np.angle(self.zeros), 2.0 * np.pi)


def _horner_many(coeffs: np.ndarray, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """p(z) and p'(z) for ascending-power coeffs, vectorized over z."""
    p = np.zeros_like(z)
    dp = np.zeros_like(z)
    for c in coeffs[::-1]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _horner_extended(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Horner in 80-bit extended precision, for residuals and polishing."""
    cl = coeffs.astype(np.complex256)
    zl = np.asarray(z, dtype=np.complex256)
    p = np.zeros_like(zl)
    for c in cl[::-1]:
        p = p * zl + c
    return p


def _cluster(zeros: np.ndarray, radius: float) -> list:
    """Groups of indices closer than radius (single-linkage)."""
    n = len(zeros)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    order = np.argsort(zeros.real)
    for a in range(n):
        for b in range(a + 1, n):
            i, j = order[a], order[b]
            if zeros[j].real - zeros[i].real > radius:
                break
            if abs(zeros[i] - zeros[j]) <= radius:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    groups: dict = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [sorted(g) for g in groups.values() if len(g) > 1]


def find_roots(
    coeffs,
    tol: float = 1e-12,
    max_iter: int = 200,
    cluster_radius: float = 1e-6,
    require_disk: bool = False,
) -> ZeroSet:
    """All zeros of a monic polynomial (ascending-power coefficients).

    Deterministic: identical inputs and options give identical output bits.
    ``require_disk`` enforces the OPUC invariant that every zero has
    modulus < 1 (violations beyond 1+1e-9 raise).
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    n = len(coeffs) - 1
    if n < 1:
        raise ValueError("degree must be at least 1")
    if abs(coeffs[-1] - 1.0) > 1e-12:
        raise ValueError("polynomial must be monic")

    # strip exact zero roots (constant coefficient chain of zeros)
    n_zero = 0
    while n_zero < n and coeffs[n_zero] == 0.0:
        n_zero += 1
    work = coeffs[n_zero:]
    m = len(work) - 1

    roots_at_zero = np.zeros(n_zero, dtype=complex)
    iters = 0
    if m >= 1:
        r0 = abs(work[0]) ** (1.0 / m) if work[0] != 0 else 1.0
        r0 = min(max(r0, 1e-12), 1e12)
        angles = 2.0 * np.pi * (np.arange(m) + _TWIST) / m + _TWIST
        z = r0 * np.exp(1j * angles)
        coeff_norm = float(np.sum(np.abs(work)))
        for iters in range(1, max_iter + 1):
            p, dp = _horner_many(work, z)
            with np.errstate(divide="ignore", invalid="ignore"):
                newton = np.where(dp != 0, p / np.where(dp != 0, dp, 1.0), 0.0)
                diff = z[:, None] - z[None, :]
                np.fill_diagonal(diff, np.inf)
                s = np.sum(1.0 / diff, axis=1)
                corr = newton / (1.0 - newton * s)
            corr = np.where(np.isfinite(corr), corr, 0.0)
            z = z - corr
            if np.max(np.abs(corr)) < tol * max(1.0, np.max(np.abs(z))):
                break
        else:
            # corrections can dither at machine level without ever passing
            # the relative test; accept if the residuals already have
            res = np.abs(_horner_extended(work, z)).astype(float)
            if res.max() > 1e3 * np.finfo(float).eps * coeff_norm:
                raise RootError(
                    f"no convergence after {max_iter} iterations; worst residual {res.max():.3e}"
                )
        roots = z
    else:
        roots = np.array([], dtype=complex)
        coeff_norm = float(np.sum(np.abs(coeffs)))

    allz = np.concatenate([roots_at_zero, roots])
    order = np.lexsort((np.abs(allz), np.mod(np.angle(allz), 2.0 * np.pi)))
    allz = allz[order]
    residuals = np.abs(_horner_extended(coeffs, allz)).astype(float)

    if require_disk and np.any(np.abs(allz) > 1.0 + 1e-9):
        raise RootError("zero found outside the closed unit disk for an OPUC polynomial")

    return ZeroSet(
        zeros=allz,
        residuals=residuals,
        multiplicity_clusters=_cluster(allz, cluster_radius),
        iterations=iters,
    )


def refine_root(coeffs, z0: complex, tol: float = 1e-13, max_iter: int = 60) -> complex:
    """Newton polish in extended precision starting from z0.

    Raises on derivative underflow (multiple roots) or stall.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    coeff_norm = float(np.sum(np.abs(coeffs)))
    floor = 1e-14 * max(coeff_norm, 1.0)
    z = np.complex256(z0)
    cl = coeffs.astype(np.complex256)
    for _ in range(max_iter):
        p = np.complex256(0)
        dp = np.complex256(0)
        for c in cl[::-1]:
            dp = dp * z + p
            p = p * z + c
        if abs(dp) < floor:
            raise RootError("derivative underflow near a multiple root")
        step = p / dp
        z = z - step
        if abs(step) <= 1e-18 * max(1.0, abs(z)):
            break
    p = _horner_extended(coeffs, np.array([complex(z)]))[0]
    if abs(p) > tol * coeff_norm:
        raise RootError(f"Newton stalled with residual {abs(p):.3e}")
    return complex(z)
