import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from opuczeros import pop, roots, sequences


def test_free_case_rotated_roots_of_unity():
    beta = np.exp(0.9j)
    zs = pop.pop_zeros_by_phase(sequences.constant(0.0), 8, beta)
    # z^8 = conj(beta)
    np.testing.assert_allclose(
        np.sort(zs.arguments),
        np.sort(np.mod((-0.9 + 2 * np.pi * np.arange(8)) / 8, 2 * np.pi)),
        atol=1e-13)


def test_all_zeros_on_circle():
    zs = pop.pop_zeros_by_phase(sequences.random_uniform_disk(0.7, seed=5), 40, 1.0)
    assert np.max(np.abs(zs.moduli - 1.0)) < 1e-12


def test_phase_matches_rooting():
    seq = sequences.random_uniform_disk(0.7, seed=5)
    a = np.sort(pop.pop_zeros_by_phase(seq, 40, 1.0).arguments)
    b = np.sort(pop.pop_zeros_by_rooting(seq, 40, 1.0).arguments)
    np.testing.assert_allclose(a, b, atol=1e-10)


def test_winding_is_2pi_n():
    for seq in (sequences.bls(0.5, 0.5), sequences.random_uniform_real(0.5, seed=2)):
        w = pop.phase_winding(seq, 37, np.exp(0.3j))
        assert w == pytest.approx(2 * np.pi * 37, abs=1e-9)


@given(st.integers(0, 2**31), st.floats(0, 2 * np.pi))
@settings(max_examples=25, deadline=None)
def test_phase_monotone(seed, beta_arg):
    seq = sequences.random_uniform_disk(0.8, seed=seed % 1000)
    theta = np.linspace(0, 2 * np.pi, 101)
    eta = pop.eta_phase(seq, 12, np.exp(1j * beta_arg), theta)
    assert np.all(np.diff(eta) > 0)


def test_poly_conjugation_symmetry():
    # real coefficients + real beta: zero set closed under conjugation
    seq = sequences.random_uniform_real(0.5, seed=8)
    zs = pop.pop_zeros_by_phase(seq, 21, 1.0)
    dist = np.abs(zs.zeros[:, None] - np.conj(zs.zeros)[None, :]).min(axis=1)
    assert np.max(dist) < 1e-10


def test_beta_must_be_nonzero():
    with pytest.raises(ValueError):
        pop.pop_poly(sequences.constant(0.0), 5, 0.0)


def test_poly_matches_phase_zeros():
    seq = sequences.bls(0.5, 0.5)
    beta = np.exp(1.1j)
    coeffs = pop.pop_poly(seq, 30, beta)
    zs = pop.pop_zeros_by_phase(seq, 30, beta)
    vals = np.polyval(coeffs[::-1], zs.zeros)
    assert np.max(np.abs(vals)) < 1e-10
