"""Szego function approximation through the phi_n* limit.

For exponentially decaying coefficient sequences, phi_n*(z) converges to
D(z)^{-1} uniformly on compact subsets of |z| < 1/b, where b is the decay
base.  Everything here is built on that single limit: no measure is ever
materialized and no Poisson-integral quadrature appears.  Error estimates
come from n doubling, |phi_{2n}* - phi_n*|.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sequences import VerblunskySeq, classify_root_asymptotics
from . import szego, roots

__all__ = [
    "DomainError",
    "DValue",
    "SzegoApprox",
    "decay_base",
    "d_inverse",
    "nevai_totik_zeros",
    "g_function",
]


class DomainError(ValueError):
    pass


def decay_base(seq: VerblunskySeq) -> float:
    """The base b with alpha_n = O(b^n), read off the family when possible."""
    fam = seq.family
    if fam == "bls":
        return float(seq.params["b"])
    if fam == "constant":
        return 0.0 if seq.params["value"] == 0 else 1.0
    if fam in ("random_uniform_disk", "random_uniform_real", "power_decay"):
        return 1.0
    return float(classify_root_asymptotics(seq, 256)["b_estimate_sup"])


@dataclass(frozen=True)
class DValue:
    value: complex
    error: float


@dataclass(frozen=True)
class SzegoApprox:
    """Evaluator for D(z)^{-1} as phi_n* at a fixed n."""

    seq: VerblunskySeq
    n_used: int
    b: float

    def __call__(self, z, check_domain: bool = True):
        z = np.asarray(z, dtype=complex)
        if check_domain and self.b > 0:
            if np.any(np.abs(z) >= 1.0 / self.b - 1e-9):
                raise DomainError("outside the analyticity disk |z| < 1/b")
        _, phistar = szego.recurse_pointwise(self.seq, self.n_used, z)
        return phistar / szego.norm_product(self.seq, self.n_used)

    def error_at(self, z) -> float:
        """n-halving error estimate at the given points."""
        z = np.asarray(z, dtype=complex)
        _, half = szego.recurse_pointwise(self.seq, self.n_used // 2, z)
        half /= szego.norm_product(self.seq, self.n_used // 2)
        return float(np.max(np.abs(self(z, check_domain=False) - half)))


def d_inverse(seq: VerblunskySeq, z, n: int, margin: float = 0.0) -> DValue:
    """phi_n*(z) as the approximation to D(z)^{-1}, with the n-halving
    error estimate |phi_n*(z) - phi_{n/2}*(z)|.

    Raises DomainError when |z| >= 1/b - margin; pass margin=0 to allow
    evaluation up to the critical circle itself (convergence there is slow
    but the polynomial is still well defined).
    """
    b = decay_base(seq)
    z_arr = np.atleast_1d(np.asarray(z, dtype=complex))
    if b > 0 and np.any(np.abs(z_arr) > 1.0 / b - margin + 1e-12):
        raise DomainError("outside the analyticity disk |z| < 1/b")
    _, full = szego.recurse_pointwise(seq, n, z_arr)
    full = full / szego.norm_product(seq, n)
    _, half = szego.recurse_pointwise(seq, n // 2, z_arr)
    half = half / szego.norm_product(seq, n // 2)
    err = float(np.max(np.abs(full - half)))
    if np.isscalar(z) or np.asarray(z).ndim == 0:
        return DValue(value=complex(full[0]), error=err)
    return DValue(value=full, error=err)


def nevai_totik_zeros(
    seq: VerblunskySeq,
    r_min: float,
    r_max: float,
    n: int,
    radial_step: float = 0.005,
    angular_step: float = 2.0 * np.pi / 720,
) -> list[tuple[complex, int]]:
    """Zeros of z -> conj(D(1/conj(z))^{-1}) in the annulus r_min < |z| < r_max.

    These are the only possible limit points of polynomial zeros strictly
    between the bulk circle and the unit circle.  Search: coarse polar grid
    on the reflected annulus, local minima of |phi_n*|, Newton refinement on
    the polynomial, multiplicity from the argument winding on a small circle.
    Returns (zero, multiplicity) pairs; empty list when there are none.
    """
    b = decay_base(seq)
    if not (b < r_min < r_max < 1.0):
        raise DomainError("annulus must sit inside (b, 1)")
    coeffs = szego.recurse(seq, n).phi_star
    # work with w = 1/conj(z): zeros of phi_n* in 1/r_max < |w| < 1/r_min
    w_lo, w_hi = 1.0 / r_max, 1.0 / r_min
    radii = np.arange(w_lo, w_hi + radial_step, radial_step)
    angles = np.arange(0.0, 2.0 * np.pi, angular_step)
    W = radii[:, None] * np.exp(1j * angles[None, :])
    vals = np.abs(szego.horner(coeffs, W))
    # local minima against the 8 neighbors, periodic in angle
    m = np.ones_like(vals, dtype=bool)
    for dr in (-1, 0, 1):
        for da in (-1, 0, 1):
            if dr == 0 and da == 0:
                continue
            shifted = np.roll(vals, da, axis=1)
            if dr == -1:
                comp = np.full_like(vals, np.inf)
                comp[1:] = shifted[:-1]
            elif dr == 1:
                comp = np.full_like(vals, np.inf)
                comp[:-1] = shifted[1:]
            else:
                comp = shifted
            m &= vals <= comp
    cand = W[m & (vals < np.median(vals))]
    found: list[complex] = []
    for w0 in cand:
        try:
            w = roots.refine_root(coeffs, complex(w0), tol=1e-13)
        except roots.RootError:
            continue
        if not (w_lo - radial_step < abs(w) < w_hi + radial_step):
            continue
        if all(abs(w - u) > 1e-6 for u in found):
            found.append(w)
    out: list[tuple[complex, int]] = []
    for w in found:
        ring = w + 1e-4 * np.exp(1j * np.linspace(0.0, 2.0 * np.pi, 257))
        ph = np.unwrap(np.angle(szego.horner(coeffs, ring)))
        mult = int(round((ph[-1] - ph[0]) / (2.0 * np.pi)))
        if mult < 1:
            continue
        zc = 1.0 / np.conj(w)
        if r_min < abs(zc) < r_max:
            out.append((complex(zc), mult))
    out.sort(key=lambda t: (abs(t[0]), np.angle(t[0])))
    return out


def g_function(seq: VerblunskySeq, z, n: int = 200, delta_margin: float = 0.5):
    """Regular-point function for an exponentially decaying family with
    leading constant C: g(z) = conj(C) * conj(D(1/conj(z))) / (D(z)(b-z)).

    At z = b the zero of the numerator cancels the explicit pole and g(b)=1;
    that value is returned directly.

    Reflecting z across the unit circle lands on the critical circle where
    the phi_n* series can fail to converge pointwise, so the reflected
    factor is not evaluated directly.  Instead it is extracted from the
    two-term expansion

        phi_n(z) = z^n conj(D(1/conj(z)))^{-1}
                   + b^n conj(C) (z-b)^{-1} D(z)^{-1} + small,

    which continues conj(D(1/conj(z)))^{-1} through the working annulus
    using only a stable polynomial evaluation and the interior D^{-1}.
    """
    if seq.family != "bls":
        raise DomainError("g is defined for exponentially decaying families")
    C = complex(seq.params["C"])
    b = float(seq.params["b"])
    z_arr = np.atleast_1d(np.asarray(z, dtype=complex))
    r = np.abs(z_arr)
    if np.any((r < b * delta_margin) | (r > b / delta_margin)):
        raise DomainError("outside the working annulus around |z| = b")
    N = szego.norm_product(seq, n)
    phi_n, dinv_z = szego.recurse_pointwise(seq, n, z_arr)
    phi_n = phi_n / N
    dinv_z = dinv_z / N
    with np.errstate(divide="ignore", invalid="ignore"):
        refl_inv = (phi_n - b**n * np.conj(C) * dinv_z / (z_arr - b)) / z_arr**n
        out = np.conj(C) * dinv_z / ((b - z_arr) * refl_inv)
    at_pole = np.abs(z_arr - b) < 1e-12
    out[at_pole] = 1.0
    if np.isscalar(z) or np.asarray(z).ndim == 0:
        return complex(out[0])
    return out
