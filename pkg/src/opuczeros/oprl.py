"""Real-line engine: monic three-term recursion, tridiagonal zeros, the
theta picture, resonance scaling, and Jacobi polynomials.

Two x-scales coexist and are never mixed implicitly: perturbations of the
free Jacobi matrix live on [-2, 2] with x = 2 cos(theta), while the
classical Jacobi(alpha, beta) weight lives on [-1, 1] with x = cos(theta).
Each parameter set carries its scale.

Zeros come from the symmetric tridiagonal truncation, solved by bisection
on Sturm sequence sign counts: deterministic, bit-reproducible, one
independent bisection per eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import gammaln, binom

__all__ = [
    "JacobiParams",
    "ThetaZeros",
    "free_params",
    "chebyshev1_params",
    "perturbed_params",
    "jacobi_params",
    "jacobi_recurrence",
    "oprl_recurse",
    "tridiag_eigenvalues",
    "oprl_zeros",
    "resonance_scaling",
    "jacobi_poly_zeros",
    "jacobi_eval",
    "darboux_eval",
]


@dataclass(frozen=True)
class JacobiParams:
    """Off-diagonal a_n (n >= 1) and diagonal b_n (n >= 1), plus the
    x = scale*cos(theta) convention of the family."""

    a: Callable[[int], float]
    b: Callable[[int], float]
    family: str
    scale: float = 2.0

    def a_arr(self, n: int) -> np.ndarray:
        out = np.array([self.a(k) for k in range(1, n + 1)], dtype=float)
        if np.any(out <= 0):
            raise ValueError("off-diagonal entries must be positive")
        return out

    def b_arr(self, n: int) -> np.ndarray:
        return np.array([self.b(k) for k in range(1, n + 1)], dtype=float)


@dataclass(frozen=True)
class ThetaZeros:
    """Zeros split into theta values (x = scale*cos(theta), increasing
    theta) and the ones outside [-scale, scale]."""

    theta: np.ndarray
    outside: np.ndarray
    scale: float

    def __post_init__(self):
        if np.any(np.diff(self.theta) <= 0):
            raise ValueError("theta must be strictly increasing")

    @property
    def count(self) -> int:
        return len(self.theta) + len(self.outside)

    @property
    def x_inside(self) -> np.ndarray:
        return self.scale * np.cos(self.theta)


def free_params() -> JacobiParams:
    return JacobiParams(a=lambda n: 1.0, b=lambda n: 0.0, family="free")


def chebyshev1_params() -> JacobiParams:
    """a_1 = sqrt(2), all other a_n = 1, b == 0."""
    return JacobiParams(
        a=lambda n: np.sqrt(2.0) if n == 1 else 1.0,
        b=lambda n: 0.0,
        family="chebyshev1",
    )


def perturbed_params(a_head: list[float], b_head: list[float]) -> JacobiParams:
    """Finite-rank perturbation of the free matrix."""
    a_head = [float(v) for v in a_head]
    b_head = [float(v) for v in b_head]
    return JacobiParams(
        a=lambda n: a_head[n - 1] if n <= len(a_head) else 1.0,
        b=lambda n: b_head[n - 1] if n <= len(b_head) else 0.0,
        family="perturbed",
    )


def jacobi_recurrence(alpha: float, beta: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Monic recursion data for the Jacobi(alpha, beta) weight on [-1, 1]:
    p_{k+1} = (x - c_k) p_k - lam_k p_{k-1}.  Returns c_0..c_{n-1} and
    lam_1..lam_{n-1}; the displayed general formulas are 0/0 at the first
    step for some parameter lines, so c_0 and lam_1 use their limits.
    """
    if alpha <= -1 or beta <= -1:
        raise ValueError("need alpha, beta > -1")
    s = alpha + beta
    c = np.empty(n)
    c[0] = (beta - alpha) / (s + 2.0)
    k = np.arange(1, n, dtype=float)
    c[1:] = (beta**2 - alpha**2) / ((2 * k + s) * (2 * k + s + 2.0))
    lam = np.empty(max(n - 1, 0))
    if n > 1:
        lam[0] = 4.0 * (1 + alpha) * (1 + beta) / ((2 + s) ** 2 * (3 + s))
        k = np.arange(2, n, dtype=float)
        lam[1:] = (
            4.0 * k * (k + alpha) * (k + beta) * (k + s)
            / ((2 * k + s) ** 2 * (2 * k + s + 1.0) * (2 * k + s - 1.0))
        )
    return c, lam


def jacobi_params(alpha: float, beta: float) -> JacobiParams:
    def a(n: int) -> float:
        _, lam = jacobi_recurrence(alpha, beta, n + 1)
        return float(np.sqrt(lam[n - 1]))

    def b(n: int) -> float:
        cc, _ = jacobi_recurrence(alpha, beta, n)
        return float(cc[n - 1])

    return JacobiParams(a=a, b=b, family=f"jacobi({alpha},{beta})", scale=1.0)


def oprl_recurse(params: JacobiParams, n: int) -> np.ndarray:
    """Monic P_n coefficients, ascending powers:
    x P_k = P_{k+1} + b_{k+1} P_k + a_k^2 P_{k-1}."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    prev = np.zeros(n + 1)
    cur = np.zeros(n + 1)
    cur[0] = 1.0
    for k in range(n):
        new = np.zeros(n + 1)
        new[1 : k + 2] = cur[: k + 1]
        new[: k + 1] -= params.b(k + 1) * cur[: k + 1]
        if k >= 1:
            new[:k] -= params.a(k) ** 2 * prev[:k]
        prev, cur = cur, new
    return cur


def tridiag_eigenvalues(diag: np.ndarray, off: np.ndarray) -> np.ndarray:
    """All eigenvalues of the symmetric tridiagonal matrix, ascending,
    by bisection on the Sturm sign count (LDL^T pivot signs)."""
    d = np.asarray(diag, dtype=float)
    e = np.asarray(off, dtype=float)
    n = len(d)
    if len(e) != n - 1:
        raise ValueError("off-diagonal length must be n-1")
    radius = np.abs(d) + np.concatenate([[0.0], np.abs(e)]) + np.concatenate([np.abs(e), [0.0]])
    lo_all = float(np.min(d - radius))
    hi_all = float(np.max(d + radius))
    scale = max(abs(lo_all), abs(hi_all), 1.0)
    e2 = e**2
    pivmin = max(float(np.max(e2, initial=0.0)), 1.0) * np.finfo(float).tiny / np.finfo(float).eps

    def count_below(x: np.ndarray) -> np.ndarray:
        # negative pivot signs of the LDL^T of (T - xI); a vanishing pivot
        # is pushed to -pivmin before its sign is counted
        q = d[0] - x
        cnt = np.zeros(len(x), dtype=np.int64)
        for i in range(n):
            q = np.where(np.abs(q) < pivmin, -pivmin, q)
            cnt += q < 0
            if i < n - 1:
                q = d[i + 1] - x - e2[i] / q
        return cnt

    j = np.arange(1, n + 1)
    lo = np.full(n, lo_all)
    hi = np.full(n, hi_all)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        c = count_below(mid)
        too_high = c >= j
        hi = np.where(too_high, mid, hi)
        lo = np.where(too_high, lo, mid)
        if np.max(hi - lo) < 1e-15 * scale:
            break
    return 0.5 * (lo + hi)


def oprl_zeros(params: JacobiParams, n: int) -> ThetaZeros:
    """Zeros of P_n as eigenvalues of the n x n truncation, in the theta
    picture of the family's scale."""
    if n < 1:
        raise ValueError("need n >= 1")
    x = tridiag_eigenvalues(params.b_arr(n), params.a_arr(n - 1) if n > 1 else np.array([]))
    s = params.scale
    inside = np.abs(x) <= s
    theta = np.sort(np.arccos(np.clip(x[inside] / s, -1.0, 1.0)))
    return ThetaZeros(theta=theta, outside=np.sort(x[~inside]), scale=s)


def resonance_scaling(params: JacobiParams, n_list: list[int]) -> dict:
    """Fit the scaled lowest angle n*theta_1 and classify the edge at +2.

    The dichotomy: the limit is pi off resonance and pi/2 at one.  The fit
    is least squares of n*theta_1 against 1/n, extrapolated to n = inf.
    """
    n_arr = np.asarray(sorted(n_list), dtype=float)
    y = np.array([n * oprl_zeros(params, int(n)).theta[0] for n in n_arr])
    A = np.vstack([np.ones_like(n_arr), 1.0 / n_arr]).T
    (limit, _), *_ = np.linalg.lstsq(A, y, rcond=None)
    limit = float(limit)
    if not (np.pi / 2 - 0.3 <= limit <= np.pi + 0.3):
        raise ValueError(f"fitted limit {limit:.4f} matches neither edge type")
    resonant = abs(limit - np.pi / 2) < abs(limit - np.pi)
    margin = min(abs(limit - np.pi / 2), abs(limit - np.pi))
    return {
        "limit": limit,
        "classification": "resonant" if resonant else "nonresonant",
        "margin": float(margin),
    }


def jacobi_poly_zeros(alpha: float, beta: float, n: int) -> ThetaZeros:
    return oprl_zeros(jacobi_params(alpha, beta), n)


def jacobi_eval(alpha: float, beta: float, n: int, x) -> np.ndarray:
    """P_n^(alpha,beta)(x) in the classical normalization
    P_n(1) = binom(n+alpha, n), evaluated through the monic recursion."""
    x = np.asarray(x, dtype=float)
    c, lam = jacobi_recurrence(alpha, beta, max(n, 1))
    prev = np.zeros_like(x)
    cur = np.ones_like(x)
    for k in range(n):
        lk = lam[k - 1] if k >= 1 else 0.0
        prev, cur = cur, (x - c[k]) * cur - lk * prev
    # leading coefficient of the classical normalization
    s = alpha + beta
    log_lead = (
        gammaln(2 * n + s + 1.0) - n * np.log(2.0) - gammaln(n + 1.0) - gammaln(n + s + 1.0)
    )
    return cur * np.exp(log_lead)


def darboux_eval(alpha: float, beta: float, theta: float, n: int) -> dict:
    """Interior large-n approximation of P_n(cos theta):
    rhs = n^{-1/2} k(theta) cos(n theta + gamma(theta)), error O(n^{-3/2}).

    k here is the amplitude itself; the Legendre special case pins this
    reading (n^{-1/2} k cos(n theta + gamma) reproduces
    sqrt(2/(pi n sin theta)) cos((n+1/2) theta - pi/4) exactly).
    """
    if not (0.05 < theta < np.pi - 0.05):
        raise ValueError("theta outside the interior window")
    k_theta = (
        np.pi ** -0.5
        * np.sin(theta / 2.0) ** (-alpha - 0.5)
        * np.cos(theta / 2.0) ** (-beta - 0.5)
    )
    gamma = 0.5 * (alpha + beta + 1.0) * theta - (alpha + 0.5) * np.pi / 2.0
    lhs = float(jacobi_eval(alpha, beta, n, np.cos(theta)))
    rhs = float(n ** -0.5 * k_theta * np.cos(n * theta + gamma))
    return {"lhs": lhs, "rhs": rhs, "k": float(k_theta), "gamma": float(gamma)}
