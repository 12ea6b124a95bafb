import numpy as np
import pytest

from opuczeros import roots


def _poly_from_roots(rts):
    c = np.array([1.0 + 0j])
    for r in rts:
        c = np.convolve(c, [-r, 1.0])
    return c


def test_roots_of_unity():
    c = np.zeros(9, dtype=complex)
    c[0], c[8] = -1.0, 1.0
    zs = roots.find_roots(c)
    expect = np.exp(2j * np.pi * np.arange(8) / 8)
    np.testing.assert_allclose(
        np.sort_complex(zs.zeros), np.sort_complex(expect), atol=1e-12)


def test_sorted_by_argument():
    zs = roots.find_roots(_poly_from_roots([0.5, 0.5j, -0.5, -0.5j]))
    assert np.all(np.diff(zs.arguments) > 0)


def test_residuals_small():
    rng = np.random.default_rng(1)
    rts = 0.9 * np.sqrt(rng.random(30)) * np.exp(2j * np.pi * rng.random(30))
    zs = roots.find_roots(_poly_from_roots(rts))
    assert np.max(zs.residuals) < 1e-10
    np.testing.assert_allclose(np.sort_complex(zs.zeros), np.sort_complex(rts), atol=1e-7)


def test_double_root_cluster():
    zs = roots.find_roots(_poly_from_roots([0.5, 0.5, -0.3]))
    assert len(zs.zeros) == 3
    near = np.abs(zs.zeros - 0.5) < 1e-5
    assert near.sum() == 2
    assert any(len(c) == 2 for c in zs.multiplicity_clusters)


def test_refine_root_newton():
    c = _poly_from_roots([0.7 + 0.1j, -0.2])
    z = roots.refine_root(c, 0.71 + 0.09j)
    assert abs(z - (0.7 + 0.1j)) < 1e-12


def test_degenerate_inputs():
    with pytest.raises(ValueError):
        roots.find_roots(np.array([1.0 + 0j]))  # degree 0
    with pytest.raises(ValueError):
        roots.find_roots(np.array([0.0, 0.0], dtype=complex))  # not monic
