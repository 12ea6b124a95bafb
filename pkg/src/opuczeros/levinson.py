"""Inverse spectral map: circle weight -> trigonometric moments -> alphas.

A weight w(theta) >= 0 with mean 1 determines a probability measure
w(theta) d theta / 2 pi, hence a moment sequence c_k and, through the
Levinson recursion on the Toeplitz form, the coefficient sequence alpha_j.
The sign and conjugation convention is pinned by the Bernstein-Szego
roundtrip: alpha_0 = 1/2 gives w = rho_0^2 / |phi_1|^2, and recovering
exactly alpha_0 = 1/2 from that weight is the convention oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .sequences import VerblunskySeq, explicit

__all__ = ["PositivityError", "WeightSpec", "moments", "verblunsky_from_moments"]


class PositivityError(ValueError):
    """Moment data is not a positive definite Toeplitz form."""


@dataclass(frozen=True)
class WeightSpec:
    """Sampled weight on the uniform grid theta_k = 2 pi k / M, mean 1."""

    samples: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.samples, dtype=float)
        if w.ndim != 1 or len(w) < 8:
            raise ValueError("need a 1-d grid of at least 8 samples")
        if np.any(w <= 0):
            raise ValueError("weight must be positive on the grid")
        object.__setattr__(self, "samples", w)
        if abs(np.mean(w) - 1.0) > 1e-8:
            raise ValueError("weight must have mean 1 on the grid")

    @property
    def grid_size(self) -> int:
        return len(self.samples)

    @staticmethod
    def from_samples(w: np.ndarray) -> "WeightSpec":
        """Normalize a positive sampled weight to mean 1."""
        w = np.asarray(w, dtype=float)
        return WeightSpec(samples=w / np.mean(w))

    @staticmethod
    def rational(
        zeros: list[tuple[complex, int]],
        poles: list[tuple[complex, int]],
        M: int = 4096,
    ) -> "WeightSpec":
        """|f|^2 for rational f with the given zero and pole lists.

        Orders are positive integers; all points must stay off the unit
        circle so the weight is smooth and nonvanishing there.
        """
        theta = 2.0 * np.pi * np.arange(M) / M
        z = np.exp(1j * theta)
        f = np.ones(M, dtype=complex)
        for point, order in zeros:
            if abs(abs(point) - 1.0) < 1e-9:
                raise ValueError("zero on the unit circle")
            f *= (z - point) ** order
        for point, order in poles:
            if abs(abs(point) - 1.0) < 1e-9:
                raise ValueError("pole on the unit circle")
            f /= (z - point) ** order
        return WeightSpec.from_samples(np.abs(f) ** 2)


def moments(spec: WeightSpec, k_max: int) -> np.ndarray:
    """c_0..c_{k_max} with c_k = int e^{-ik theta} w(theta) d theta / 2 pi.

    Trapezoid rule on the uniform grid, which is one slice of the discrete
    transform and spectrally accurate for smooth w.
    """
    M = spec.grid_size
    if M < 8 * k_max:
        raise ValueError("grid too coarse for the requested moment order")
    c = np.fft.fft(spec.samples)[: k_max + 1] / M
    c[0] = c[0].real
    return c


def verblunsky_from_moments(c: np.ndarray, n: int) -> np.ndarray:
    """Recover alpha_0..alpha_{n-1} from trigonometric moments.

    Levinson recursion on the monic pair: with <z^k>_mu = conj(c_k),

        conj(alpha_m) = <z Phi_m> / <Phi_m*>,

    then the usual two-term update.  The denominator is ||Phi_m||^2 > 0;
    it and rho^2 = 1 - |alpha|^2 act as the positivity guard.
    """
    c = np.asarray(c, dtype=complex)
    if len(c) < n + 1:
        raise ValueError("need moments up to order n")
    if abs(c[0] - 1.0) > 1e-8:
        raise ValueError("moments must be normalized, c_0 = 1")
    powers = np.conj(c)  # powers[k] = <z^k>_mu
    phi = np.array([1.0 + 0.0j])
    star = np.array([1.0 + 0.0j])
    alphas = np.empty(n, dtype=complex)
    for m in range(n):
        num = np.dot(phi, powers[1 : m + 2])
        den = np.dot(star, powers[: m + 1])
        if den.real <= 0 or abs(den.imag) > 1e-10 * abs(den.real):
            raise PositivityError("Toeplitz form not positive definite")
        a = np.conj(num / den)
        if abs(a) >= 1:
            raise PositivityError("reflection coefficient left the disk")
        new_phi = np.zeros(m + 2, dtype=complex)
        new_phi[1:] = phi
        new_phi[: m + 1] -= np.conj(a) * star
        new_star = np.zeros(m + 2, dtype=complex)
        new_star[: m + 1] = star
        new_star[1:] -= a * phi
        phi, star = new_phi, new_star
        alphas[m] = a
    return alphas


def sequence_from_weight(spec: WeightSpec, n: int) -> VerblunskySeq:
    """Convenience wrapper: the recovered alphas as an explicit sequence."""
    return explicit(list(verblunsky_from_moments(moments(spec, n), n)))
