"""Verblunsky coefficient sequences.

Every family yields coefficients alpha_0, alpha_1, ... strictly inside the
unit disk.  Random families are pure functions of (seed, index) so that
evaluation order and worker partitioning never change the sequence.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "VerblunskySeq",
    "constant",
    "bls",
    "random_uniform_disk",
    "random_uniform_real",
    "power_decay",
    "explicit",
    "classify_root_asymptotics",
]


def _counter_rng(seed: int, j: int) -> np.random.Generator:
    # Philox is counter-based: (seed, j) -> stream, independent of call order.
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, 0, j]))


@dataclass(frozen=True)
class VerblunskySeq:
    """A (possibly infinite) sequence of Verblunsky coefficients.

    ``family`` is one of {"constant", "bls", "random_uniform_disk",
    "random_uniform_real", "power_decay", "explicit"}; ``params`` holds the
    family constants.  Immutable, safe to share across workers.
    """

    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        p = self.params
        if self.family == "constant":
            if abs(p["value"]) >= 1:
                raise ValueError("constant coefficient must satisfy |value| < 1")
        elif self.family == "bls":
            if abs(p["C"]) >= 1:
                raise ValueError("BLS needs |C| < 1 (alpha_0 = C)")
            if not 0 < p["b"] < 1:
                raise ValueError("BLS needs b in (0,1)")
        elif self.family == "random_uniform_disk":
            if not 0 < p["rho"] < 1:
                raise ValueError("disk radius rho must lie in (0,1)")
        elif self.family == "random_uniform_real":
            if not 0 < p["halfwidth"] < 1:
                raise ValueError("halfwidth must lie in (0,1)")
        elif self.family == "power_decay":
            if p["beta"] <= 0:
                raise ValueError("decay exponent must be positive")
            if abs(p["C"]) / 2.0 ** p["beta"] >= 1:
                raise ValueError("power-decay constant puts |alpha_0| >= 1")
        elif self.family == "explicit":
            vals = np.asarray(p["values"], dtype=complex)
            if vals.size and np.max(np.abs(vals)) >= 1:
                raise ValueError("explicit coefficients must satisfy |alpha| < 1")
        else:
            raise ValueError(f"unknown family {self.family!r}")

    def alpha(self, j: int) -> complex:
        """Return alpha_j.  j must be >= 0 (and < len for explicit lists)."""
        if j < 0:
            raise IndexError("coefficient index must be nonnegative")
        p = self.params
        if self.family == "constant":
            return complex(p["value"])
        if self.family == "bls":
            base = p["C"] * p["b"] ** j
            pert = p.get("perturbation")
            if pert is not None:
                base = base + pert(j)
            if abs(base) >= 1:
                raise ValueError(f"|alpha_{j}| >= 1 for BLS family")
            return complex(base)
        if self.family == "random_uniform_disk":
            u = _counter_rng(p["seed"], j).random(2)
            r = p["rho"] * np.sqrt(u[0])  # area-uniform in the disk
            return r * cmath.exp(2j * cmath.pi * u[1])
        if self.family == "random_uniform_real":
            u = _counter_rng(p["seed"], j).random()
            return complex(p["halfwidth"] * (2.0 * u - 1.0))
        if self.family == "power_decay":
            return complex(p["C"] / (j + 2) ** p["beta"])
        # explicit
        vals = p["values"]
        if j >= len(vals):
            raise IndexError(f"explicit sequence has only {len(vals)} coefficients")
        return complex(vals[j])

    def alphas(self, n: int) -> np.ndarray:
        """First n coefficients as a complex array."""
        return np.array([self.alpha(j) for j in range(n)], dtype=complex)


def constant(value: complex = 0.0) -> VerblunskySeq:
    return VerblunskySeq("constant", {"value": complex(value)})


def bls(C: complex, b: float, perturbation=None) -> VerblunskySeq:
    """alpha_j = C * b**j (+ optional perturbation(j))."""
    return VerblunskySeq("bls", {"C": complex(C), "b": float(b), "perturbation": perturbation})


def random_uniform_disk(rho: float, seed: int) -> VerblunskySeq:
    """i.i.d. area-uniform on {|z| <= rho}, reproducible from (seed, j)."""
    return VerblunskySeq("random_uniform_disk", {"rho": float(rho), "seed": int(seed)})


def random_uniform_real(halfwidth: float, seed: int) -> VerblunskySeq:
    """i.i.d. uniform on [-halfwidth, halfwidth]."""
    return VerblunskySeq("random_uniform_real", {"halfwidth": float(halfwidth), "seed": int(seed)})


def power_decay(C: complex, beta: float) -> VerblunskySeq:
    """alpha_j = C / (j+2)**beta."""
    return VerblunskySeq("power_decay", {"C": complex(C), "beta": float(beta)})


def explicit(values) -> VerblunskySeq:
    return VerblunskySeq("explicit", {"values": [complex(v) for v in values]})


def classify_root_asymptotics(seq: VerblunskySeq, n_max: int) -> dict:
    """Estimate the geometric decay rate b and the Cesaro mean of |alpha|.

    Returns ``b_estimate`` = |alpha_{n_max}|**(1/n_max), a ``b_estimate_sup``
    running-max variant over the last half of the indices, and
    ``cesaro_mean`` = (1/n) sum |alpha_j|.
    """
    if n_max < 10:
        raise ValueError("need n_max >= 10")
    mods = np.abs(seq.alphas(n_max + 1))
    cesaro = float(np.mean(mods[:n_max]))
    if mods[n_max] == 0.0:
        b_est = 0.0
    else:
        b_est = float(mods[n_max] ** (1.0 / n_max))
    js = np.arange(n_max // 2, n_max + 1)
    nz = mods[js] > 0
    b_sup = float(np.max(mods[js[nz]] ** (1.0 / js[nz]))) if nz.any() else 0.0
    return {"b_estimate": b_est, "b_estimate_sup": b_sup, "cesaro_mean": cesaro}
