import numpy as np
import pytest

from opuczeros import asym, sequences

FIG1 = sequences.bls(0.5, 0.5)
NLIST = [50, 100, 200, 400]


def test_outer_region_decays():
    rep = asym.verify_outer(FIG1, 0.8 * np.exp(1j * np.array([0.5, 2.0])), NLIST)
    assert rep.passed
    assert np.all(rep.rates < 1.0)


def test_inner_region_decays():
    rep = asym.verify_inner(FIG1, 0.3 * np.exp(1j * np.array([0.5, 2.0])), NLIST)
    assert rep.passed


def test_critical_region_decays():
    rep = asym.verify_critical(FIG1, 0.5 * np.exp(1j * np.array([0.7, 2.4])), NLIST)
    assert rep.passed


def test_critical_survives_perturbation():
    seq = sequences.bls(0.5, 0.5, perturbation=lambda j: 0.1 * 0.35**j)
    rep = asym.verify_critical(seq, 0.5 * np.exp(1j * np.array([0.7])), NLIST)
    assert rep.passed
    assert rep.errors[0, -1] < rep.errors[0, 0]


def test_region_guards():
    with pytest.raises(ValueError):
        asym.verify_outer(FIG1, np.array([0.4]), NLIST)  # not outside b
    with pytest.raises(ValueError):
        asym.verify_inner(FIG1, np.array([0.9]), NLIST)  # not inside b
    with pytest.raises(ValueError):
        asym.verify_inner(sequences.constant(0.0), np.array([0.1]), NLIST)  # C = 0


def test_model_poly_small_case():
    # n=2, K=1, k=1: z^2 + z - 1
    np.testing.assert_allclose(asym.model_poly(1.0, 1, 2), [-1.0, 1.0, 1.0])
    zs = np.sort(asym.model_zeros(1.0, 1, 2).zeros.real)
    np.testing.assert_allclose(
        zs, [(-1 - np.sqrt(5)) / 2, (-1 + np.sqrt(5)) / 2], atol=1e-12)


def test_model_report_n500():
    rep = asym.model_report(1.0, 1, 500)
    assert rep["inner_clearance"] > 0
    assert rep["near_one_clearance"] > 0
    assert rep["gap_constant"] <= 10.0
    assert rep["bridge_gap"] > 0.0


def test_model_report_higher_order():
    rep = asym.model_report(1.0, 2, 300)
    assert rep["inner_clearance"] > 0
    assert rep["gap_dev_max"] <= 10.0 / (300 * np.log(300))


def test_model_validation():
    with pytest.raises(ValueError):
        asym.model_poly(0.0, 1, 10)
    with pytest.raises(ValueError):
        asym.model_poly(1.0, 0, 10)
