import numpy as np
import pytest

from opuczeros import levinson, sequences, szego


def test_flat_weight_gives_zero_coefficients():
    spec = levinson.WeightSpec.from_samples(np.ones(512))
    al = levinson.verblunsky_from_moments(levinson.moments(spec, 20), 20)
    assert np.max(np.abs(al)) == 0.0


def test_cosine_moment():
    # w = 1 + cos(theta): c_1 = 1/2.  Odd grid keeps the zero at theta=pi
    # off the sample points.
    M = 255
    theta = 2 * np.pi * np.arange(M) / M
    spec = levinson.WeightSpec.from_samples(1.0 + np.cos(theta))
    c = levinson.moments(spec, 3)
    assert c[1] == pytest.approx(0.5, abs=1e-12)
    assert abs(c[2]) < 1e-12


def test_bernstein_szego_single_pole():
    # w proportional to 1/|z - 1/2|^2 recovers alpha_0 = 1/2 and a flat tail
    spec = levinson.WeightSpec.rational(zeros=[], poles=[(0.5, 1)])
    al = levinson.verblunsky_from_moments(levinson.moments(spec, 30), 30)
    assert abs(al[0] - 0.5) < 1e-12
    assert np.max(np.abs(al[1:])) < 1e-12


def test_roundtrip_three_coefficients():
    # build the Bernstein-Szego weight 1/|phi_3*|^2 directly from a target
    # sequence and ask for it back
    target = [0.4, -0.2 + 0.1j, 0.3j]
    pair = szego.recurse(sequences.explicit(target), 3)
    M = 1024
    z = np.exp(2j * np.pi * np.arange(M) / M)
    w = 1.0 / np.abs(szego.horner(pair.phi_star, z) / pair.norm) ** 2
    spec = levinson.WeightSpec.from_samples(w)
    al = levinson.verblunsky_from_moments(levinson.moments(spec, 10), 10)
    np.testing.assert_allclose(al[:3], target, atol=1e-10)
    assert np.max(np.abs(al[3:])) < 1e-10


def test_rational_zero_outside_gives_geometric_tail():
    # |z - 2|^2: coefficients decay like (1/2)^n
    spec = levinson.WeightSpec.rational(zeros=[(2.0, 1)], poles=[])
    al = levinson.verblunsky_from_moments(levinson.moments(spec, 30), 30)
    ratios = np.abs(al[10:20] / al[9:19])
    np.testing.assert_allclose(ratios, 0.5, atol=1e-6)


def test_positivity_guard():
    M = 256
    theta = 2 * np.pi * np.arange(M) / M
    with pytest.raises(ValueError):
        levinson.WeightSpec.from_samples(np.cos(theta))  # changes sign
    # moments with no positive measure behind them: |c_2| > c_0
    c = np.array([1.0, 0.2, 1.5], dtype=complex)
    with pytest.raises(levinson.PositivityError):
        levinson.verblunsky_from_moments(c, 2)


def test_sequence_from_weight_wrapper():
    spec = levinson.WeightSpec.rational(zeros=[], poles=[(0.5, 1)])
    seq = levinson.sequence_from_weight(spec, 5)
    assert seq.alpha(0) == pytest.approx(0.5)
    assert abs(seq.alpha(4)) < 1e-12
