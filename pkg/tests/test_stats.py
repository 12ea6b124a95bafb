import numpy as np
import pytest

from opuczeros import roots, sequences, stats, szego

ARC01 = [{"theta_anchor": 0.0, "a": 0.0, "b": 1.0}]


def _fig1_zeros(n):
    return roots.find_roots(szego.recurse(sequences.bls(0.5, 0.5), n).phi).zeros


def test_perfect_clock():
    z = 0.5 * np.exp(2j * np.pi * np.arange(64) / 64)
    rep = stats.clock_metrics(z, 0.5)
    assert rep.sup_dev < 1e-12
    assert rep.radial_sup < 1e-15
    assert len(rep.outliers) == 0


def test_fig1_metrics():
    rep = stats.clock_metrics(_fig1_zeros(200), 0.5)
    assert len(rep.outliers) == 1
    assert abs(rep.outliers[0] - 0.8599) < 1e-3
    assert rep.gap_at_b == pytest.approx(2 * (2 * np.pi / 200), rel=0.25)
    assert rep.radial_sup < 0.1 * np.log(200) / 200


def test_empty_bulk_raises():
    with pytest.raises(ValueError):
        stats.clock_metrics(np.array([0.9, 0.95j]), 0.5, radius_margin=0.01)


def test_canonical_interval_plugin():
    arcs = stats.canonical_intervals(100, ARC01)
    np.testing.assert_allclose(arcs, [[0.0, 2 * np.pi / 100]])


def test_canonical_ordering_enforced():
    bad = [{"theta_anchor": 0.0, "a": 0.0, "b": 1.0},
           {"theta_anchor": 0.0, "a": 1.0, "b": 2.0}]  # b_1 = a_2 not allowed
    with pytest.raises(ValueError):
        stats.canonical_intervals(50, bad)
    ok = [{"theta_anchor": 0.0, "a": 0.0, "b": 1.0},
          {"theta_anchor": np.pi, "a": 0.0, "b": 1.0}]
    assert len(stats.canonical_intervals(50, ok)) == 2


def test_poisson_reference_pmf():
    rep = stats.poisson_experiment(
        sequences.random_uniform_disk(0.5, seed=42), 50, 200, ARC01, seed=0)
    assert rep.pmf[0][0] == pytest.approx(np.exp(-1.0))
    assert int(np.sum(rep.histograms[0])) == 200


def test_clock_family_is_not_poisson():
    rep = stats.poisson_experiment(sequences.constant(0.0), 300, 200, ARC01, seed=0)
    assert rep.tv[0] >= 0.2


def test_trials_floor():
    with pytest.raises(ValueError):
        stats.poisson_experiment(sequences.constant(0.0), 50, 100, ARC01)


def test_counts_match_pop_zeros():
    from opuczeros import pop
    template = sequences.random_uniform_disk(0.5, seed=9)
    n, trials, seed = 60, 200, 4
    rep = stats.poisson_experiment(template, n, trials, ARC01, seed=seed)
    alphas = stats._draw_alphas(template, n - 1, trials, seed)
    rng = np.random.Generator(np.random.Philox(key=(seed << 1) ^ 0x9E3779B9))
    betas = np.exp(2j * np.pi * rng.random(trials))
    lo, hi = 0.0, 2 * np.pi / n
    for t in range(0, trials, 40):
        ang = pop.pop_zeros_by_phase(sequences.explicit(alphas[t]), n, betas[t]).arguments
        assert rep.counts[t, 0] == np.sum((ang >= lo) & (ang < hi))


def test_ensemble_angles_match_exact_zeros():
    from opuczeros import pop
    template = sequences.random_uniform_disk(0.5, seed=42)
    angs = stats.ensemble_zero_angles(template, 60, 3, seed=1)
    alphas = stats._draw_alphas(template, 59, 3, 1)
    rng = np.random.Generator(np.random.Philox(key=(1 << 1) ^ 0x9E3779B9))
    betas = np.exp(2j * np.pi * rng.random(3))
    for t in range(3):
        zs = pop.pop_zeros_by_phase(sequences.explicit(alphas[t]), 60, betas[t])
        np.testing.assert_allclose(
            np.sort(np.mod(angs[t], 2 * np.pi)), np.sort(zs.arguments), atol=1e-8)


def test_spacing_cdf_clock_is_step():
    sets = [2 * np.pi * np.arange(100) / 100 + 0.001 * s for s in range(100)]
    out = stats.spacing_cdf(sets)
    assert np.max(np.abs(out["s"] - 1.0)) < 1e-9  # point mass at s = 1


def test_spacing_cdf_needs_mass():
    with pytest.raises(ValueError):
        stats.spacing_cdf([np.linspace(0, 6, 50)])


def test_bls_spacing_far_from_exponential():
    # clock family: Kolmogorov distance to 1 - e^{-s} stays large
    template = sequences.bls(0.5, 0.5)
    zs = _fig1_zeros(200)
    th = np.sort(np.angle(zs[np.abs(zs) < 0.6]))
    sets = [th] * 60
    out = stats.spacing_cdf(sets)
    dist = np.max(np.abs(out["cdf"] - (1 - np.exp(-out["s"]))))
    assert dist >= 0.3
