"""Numerical verification of the exponential-decay asymptotics and the
model problem z^n = K(1-z)^k.

Three regions for a family with alpha_n ~ C b^n:

  outer   |z| > b:  phi_n(z) ~ z^n conj(D(1/conj(z)))^{-1}
  inner   |z| < b:  phi_n(z) ~ b^n conj(C) (z-b)^{-1} D(z)^{-1}
  critical annulus: the sum of both terms, error exponentially smaller
                    than b^n itself.

Each verifier samples points, runs n up the given list, and fits the decay
rate by least squares on the log-error over the last half of the list; the
pass criterion is slope < -0.01 per point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import comb

from .sequences import VerblunskySeq
from . import szego, roots

__all__ = [
    "AsymReport",
    "verify_outer",
    "verify_inner",
    "verify_critical",
    "model_zeros",
    "model_report",
]

_SLOPE_PASS = -0.01


@dataclass(frozen=True)
class AsymReport:
    region: str
    points: np.ndarray
    n_list: tuple
    errors: np.ndarray        # shape (len(points), len(n_list))
    rates: np.ndarray         # fitted per-point geometric rate e^slope
    passed: bool


def _bls_constants(seq: VerblunskySeq) -> tuple[complex, float]:
    if seq.family != "bls":
        raise ValueError("verification needs an exponentially decaying family")
    return complex(seq.params["C"]), float(seq.params["b"])


def _orthonormal_at(seq: VerblunskySeq, n: int, z: np.ndarray):
    phi, star = szego.recurse_pointwise(seq, n, z)
    N = szego.norm_product(seq, n)
    return phi / N, star / N


def _fit_report(region: str, points: np.ndarray, n_list, errors: np.ndarray) -> AsymReport:
    n_arr = np.asarray(n_list, dtype=float)
    half = len(n_arr) // 2
    floor = 1e-13
    rates = np.empty(len(points))
    for i in range(len(points)):
        if errors[i, -1] < floor:
            # already at the roundoff floor; the decay outran the n grid
            rates[i] = 0.0
            continue
        tail = np.maximum(errors[i, half:], floor)
        slope = np.polyfit(n_arr[half:], np.log(tail), 1)[0]
        rates[i] = np.exp(slope)
    passed = bool(np.all(rates < np.exp(_SLOPE_PASS)))
    return AsymReport(
        region=region,
        points=points,
        n_list=tuple(int(v) for v in n_list),
        errors=errors,
        rates=rates,
        passed=passed,
    )


def verify_outer(seq: VerblunskySeq, points, n_list, eps: float = 0.05) -> AsymReport:
    """|phi_n(z) - conj(D(1/conj(z)))^{-1} z^n| at points with b+eps < |z| <= 1."""
    _, b = _bls_constants(seq)
    z = np.asarray(points, dtype=complex)
    if np.any((np.abs(z) <= b + eps) | (np.abs(z) > 1.0 + 1e-12)):
        raise ValueError("points must satisfy b+eps < |z| <= 1")
    n_ref = 2 * max(n_list)
    _, star_ref = _orthonormal_at(seq, n_ref, 1.0 / np.conj(z))
    limit = np.conj(star_ref)
    errors = np.empty((len(z), len(n_list)))
    for j, n in enumerate(n_list):
        phi, _ = _orthonormal_at(seq, n, z)
        errors[:, j] = np.abs(phi - limit * z**n)
    return _fit_report("outer", z, n_list, errors)


def verify_inner(seq: VerblunskySeq, points, n_list, eps: float = 0.05) -> AsymReport:
    """|b^{-n} phi_n(z) - conj(C)(z-b)^{-1} D(z)^{-1}| at points |z| < b-eps."""
    C, b = _bls_constants(seq)
    if C == 0:
        raise ValueError("inner asymptotics needs C != 0")
    z = np.asarray(points, dtype=complex)
    if np.any(np.abs(z) >= b - eps):
        raise ValueError("points must satisfy |z| < b-eps")
    n_ref = 2 * max(n_list)
    _, dinv = _orthonormal_at(seq, n_ref, z)
    limit = np.conj(C) * dinv / (z - b)
    errors = np.empty((len(z), len(n_list)))
    for j, n in enumerate(n_list):
        phi, _ = _orthonormal_at(seq, n, z)
        errors[:, j] = np.abs(phi / b**n - limit)
    return _fit_report("inner", z, n_list, errors)


def verify_critical(seq: VerblunskySeq, points, n_list, width: float = 0.25) -> AsymReport:
    """Two-term error |phi_n - z^n u(z) - b^n conj(C)(z-b)^{-1} D(z)^{-1}|
    scaled by max(|z|, b)^{-n}, for points with |z|/b in [1-width, 1+width].
    The scaling matches the claim being tested: the error is exponentially
    smaller than both z^n and b^n.

    u is the continued outer factor, extracted from the two-term identity
    itself at a reference degree twice the largest requested n.
    """
    C, b = _bls_constants(seq)
    z = np.asarray(points, dtype=complex)
    ratio = np.abs(z) / b
    if np.any((ratio < 1.0 - width) | (ratio > 1.0 + width)):
        raise ValueError("points must lie in the critical annulus around |z| = b")
    if np.any(np.abs(z - b) < 1e-6):
        raise ValueError("the pole-cancellation point z = b needs the g form")
    n_ref = 2 * max(n_list)
    phi_ref, dinv = _orthonormal_at(seq, n_ref, z)
    inner_term = np.conj(C) * dinv / (z - b)
    u = (phi_ref - b**n_ref * inner_term) / z**n_ref
    scale_base = np.maximum(np.abs(z), b)
    errors = np.empty((len(z), len(n_list)))
    for j, n in enumerate(n_list):
        phi, _ = _orthonormal_at(seq, n, z)
        errors[:, j] = np.abs(phi - z**n * u - b**n * inner_term) / scale_base**n
    return _fit_report("critical", z, n_list, errors)


def model_poly(K: complex, k: int, n: int) -> np.ndarray:
    """Coefficients of z^n - K(1-z)^k, ascending powers."""
    if K == 0:
        raise ValueError("K must be nonzero")
    if not (isinstance(k, (int, np.integer)) and k >= 1):
        raise ValueError("k must be a positive integer")
    if n <= k:
        raise ValueError("need n > k")
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[n] = 1.0
    j = np.arange(k + 1)
    coeffs[: k + 1] -= K * comb(k, j) * (-1.0) ** j
    return coeffs


def model_zeros(K: complex, k: int, n: int) -> roots.ZeroSet:
    """All n zeros of z^n - K(1-z)^k."""
    return roots.find_roots(model_poly(K, k, n))


def model_report(K: complex, k: int, n: int) -> dict:
    """Exclusion zones and spacing statistics for the model zeros.

    Reported:
      outer_margin_M     fitted M = n (max|z| - 1); no zeros above 1 + M/n
      inner_clearance    min |z| minus the bound 1 - 2k log n / n
      near_one_clearance min |z-1| minus the bound (k/2) log n / n
      gap_dev_max        max over interior gaps of |gap - 2 pi / n|
      gap_constant       gap_dev_max * n * log n
      bridge_gap         the gap spanning the excluded neighborhood of z=1
    """
    zs = model_zeros(K, k, n)
    z = zs.zeros
    logn = np.log(n)
    mods = np.abs(z)
    outer_M = float(n * (mods.max() - 1.0))
    inner_bound = 1.0 - 2.0 * k * logn / n
    near_one_bound = 0.5 * k * logn / n
    args = np.sort(np.angle(z))
    gaps = np.diff(np.concatenate([args, [args[0] + 2.0 * np.pi]]))
    # gaps whose endpoints both stay out of the excluded window around arg 0
    window = 2.0 * k * logn / n
    ends_lo = args
    ends_hi = np.concatenate([args[1:], [args[0] + 2.0 * np.pi]])
    wrapped_hi = np.angle(np.exp(1j * ends_hi))
    interior = (np.abs(ends_lo) > window) & (np.abs(wrapped_hi) > window)
    dev = np.abs(gaps[interior] - 2.0 * np.pi / n)
    return {
        "zeros": zs,
        "outer_margin_M": outer_M,
        "inner_clearance": float(mods.min() - inner_bound),
        "near_one_clearance": float(np.abs(z - 1.0).min() - near_one_bound),
        "gap_dev_max": float(dev.max()),
        "gap_constant": float(dev.max() * n * logn),
        "bridge_gap": float(gaps[~interior].max()) if np.any(~interior) else 0.0,
    }
