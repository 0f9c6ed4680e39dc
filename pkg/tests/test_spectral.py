import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braesslab.errors import DegenerateInputError, ParameterError
from braesslab.graph import Graph, GnpSpec, sample_gnp
from braesslab.spectral import (
    adjacency_matrix,
    combinatorial_laplacian,
    eig_sym,
    eigvals_sym,
    fix_signs,
    normalized_adjacency,
    normalized_laplacian,
    rayleigh_quotient,
    second_eigenvector,
    spectral_gap,
)


def complete_graph(n):
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def path_graph(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a, b):
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


# closed-form normalized Laplacian spectra
def test_fixture_complete_k4():
    vals = eigvals_sym(normalized_laplacian(complete_graph(4)))
    np.testing.assert_allclose(vals, [0, 4 / 3, 4 / 3, 4 / 3], atol=1e-12)


def test_fixture_path_p3():
    vals = eigvals_sym(normalized_laplacian(path_graph(3)))
    np.testing.assert_allclose(vals, [0, 1, 2], atol=1e-12)


def test_fixture_complete_bipartite_k33():
    vals = eigvals_sym(normalized_laplacian(complete_bipartite(3, 3)))
    np.testing.assert_allclose(vals, [0, 1, 1, 1, 1, 2], atol=1e-12)


def test_combinatorial_fixture_complete():
    # K_n: eigenvalues 0 and n with multiplicity n-1
    vals = eigvals_sym(combinatorial_laplacian(complete_graph(5)))
    np.testing.assert_allclose(vals, [0, 5, 5, 5, 5], atol=1e-12)


def test_isolated_vertex_rejected():
    g = Graph.from_edges(3, [(0, 1)])
    with pytest.raises(DegenerateInputError):
        normalized_adjacency(g)


def test_first_eigenvector_is_sqrt_degree():
    g = sample_gnp(GnpSpec(80, 0.4, 3))
    lap = normalized_laplacian(g)
    vals, vecs = np.linalg.eigh(lap)
    expect = np.sqrt(g.degrees.astype(float))
    expect /= np.linalg.norm(expect)
    v0 = fix_signs(vecs[:, :1])[:, 0]
    assert vals[0] == pytest.approx(0.0, abs=1e-12)
    np.testing.assert_allclose(v0, expect, atol=1e-10)


def test_eig_sym_invariants_random():
    rng = np.random.Generator(np.random.Philox(key=5))
    for _ in range(5):
        n = int(rng.integers(5, 120))
        m = rng.standard_normal((n, n))
        m = (m + m.T) / 2
        dec = eig_sym(m)
        assert np.all(np.diff(dec.eigenvalues) >= 0)
        recon = dec.eigenvectors * dec.eigenvalues @ dec.eigenvectors.T
        assert np.max(np.abs(recon - m)) <= 1e-10 * np.abs(m).max()
        gram = dec.eigenvectors.T @ dec.eigenvectors
        assert np.max(np.abs(gram - np.eye(n))) <= 1e-10
        scale = max(np.max(np.abs(dec.eigenvalues)), 1e-300)
        assert dec.max_residual <= 1e-9 * scale


def test_eig_sym_ordering_descending():
    m = np.diag([3.0, -1.0, 2.0])
    dec = eig_sym(m, ordering="descending")
    np.testing.assert_allclose(dec.eigenvalues, [3, 2, -1], atol=1e-14)


def test_eig_sym_rejects_nonsymmetric():
    with pytest.raises(ParameterError):
        eig_sym(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_fix_signs_convention():
    v = np.array([[-0.8, 0.6], [0.6, 0.8]])
    fixed = fix_signs(v.copy())
    # largest-magnitude entry of each column made positive
    assert fixed[0, 0] > 0 and fixed[1, 1] > 0
    np.testing.assert_allclose(np.abs(fixed), np.abs(v))


def test_spectral_gap_matches_full_solve():
    g = sample_gnp(GnpSpec(50, 0.5, 11))
    vals = np.linalg.eigvalsh(normalized_laplacian(g))
    assert spectral_gap(g) == pytest.approx(vals[1], abs=1e-12)


def test_second_eigenvector_properties():
    g = sample_gnp(GnpSpec(60, 0.5, 2))
    f, degenerate = second_eigenvector(g)
    lap = normalized_laplacian(g)
    lam = rayleigh_quotient(lap, f)
    assert np.linalg.norm(lap @ f - lam * f) <= 1e-9
    assert np.linalg.norm(f) == pytest.approx(1.0, abs=1e-12)
    # orthogonal to the degree-root direction
    d = np.sqrt(g.degrees.astype(float))
    assert abs(f @ d) / np.linalg.norm(d) <= 1e-9
    assert isinstance(degenerate, bool)


def test_second_eigenvector_degenerate_flag():
    _, degenerate = second_eigenvector(complete_graph(6))
    assert degenerate


@settings(max_examples=20, deadline=None)
@given(n=st.integers(4, 30), seed=st.integers(0, 2**31))
def test_normalized_spectrum_in_unit_interval(n, seed):
    g = sample_gnp(GnpSpec(n, 0.6, seed))
    if np.any(g.degrees == 0):
        return
    vals = eigvals_sym(normalized_laplacian(g))
    assert vals[0] == pytest.approx(0.0, abs=1e-10)
    assert vals[-1] <= 2.0 + 1e-10
    assert vals[0] >= -1e-10


def test_adjacency_and_laplacian_consistency():
    g = sample_gnp(GnpSpec(40, 0.5, 8))
    a = adjacency_matrix(g)
    d = np.diag(g.degrees.astype(float))
    np.testing.assert_allclose(combinatorial_laplacian(g), d - a, atol=0)
    dmh = np.diag(1.0 / np.sqrt(g.degrees.astype(float)))
    np.testing.assert_allclose(
        normalized_laplacian(g), np.eye(40) - dmh @ a @ dmh, atol=1e-14
    )
