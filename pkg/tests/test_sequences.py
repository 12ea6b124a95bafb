import numpy as np
import pytest

from opuczeros import sequences


def test_constant_values():
    seq = sequences.constant(0.3 + 0.2j)
    assert seq.alpha(0) == 0.3 + 0.2j
    assert seq.alpha(17) == 0.3 + 0.2j


def test_bls_geometric():
    seq = sequences.bls(0.5, 0.5)
    assert seq.alpha(0) == 0.5
    assert seq.alpha(3) == pytest.approx(0.5 * 0.5**3)


def test_bls_perturbation():
    seq = sequences.bls(0.5, 0.5, perturbation=lambda j: 0.01 * 0.3**j)
    assert seq.alpha(0) == pytest.approx(0.51)


def test_invalid_parameters():
    with pytest.raises(ValueError):
        sequences.constant(1.0)
    with pytest.raises(ValueError):
        sequences.bls(0.5, 1.5)
    with pytest.raises(ValueError):
        sequences.random_uniform_disk(1.2, seed=0)
    with pytest.raises(ValueError):
        sequences.explicit([0.5, 1.0])


def test_random_reproducible_and_order_free():
    seq = sequences.random_uniform_disk(0.7, seed=11)
    a5 = seq.alpha(5)
    # counter-based stream: value must not depend on what was drawn before
    seq2 = sequences.random_uniform_disk(0.7, seed=11)
    seq2.alpha(99)
    assert seq2.alpha(5) == a5
    assert np.max(np.abs(seq.alphas(200))) < 0.7


def test_random_real_is_real():
    seq = sequences.random_uniform_real(0.5, seed=3)
    vals = seq.alphas(50)
    assert np.max(np.abs(vals.imag)) == 0.0
    assert np.max(np.abs(vals)) <= 0.5


def test_explicit_bounds():
    seq = sequences.explicit([0.1, -0.2j])
    assert seq.alpha(1) == -0.2j
    with pytest.raises(IndexError):
        seq.alpha(2)
    with pytest.raises(IndexError):
        seq.alpha(-1)


def test_classify_bls_rate():
    seq = sequences.bls(0.5, 0.5)
    info = sequences.classify_root_asymptotics(seq, 100)
    assert info["b_estimate"] == pytest.approx(0.5, abs=0.01)


def test_classify_random_rate_near_one():
    seq = sequences.random_uniform_disk(0.5, seed=1)
    info = sequences.classify_root_asymptotics(seq, 400)
    assert info["b_estimate_sup"] > 0.97
