import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import bipartite_mixed_graphs, mixed_graphs, numpy_h
from mixedspec.constructions import directed_cycle, g_m, guo_mohar
from mixedspec.errors import ComputationError, ContractError, InputError
from mixedspec.graph import MixedGraph
from mixedspec.numeric import (
    Spectrum,
    build_h_theta,
    conjugate_by_diagonal,
    eigenvalues,
    jacobi_eigh,
    spectrum,
    spectrum_is_symmetric,
)

thetas = st.floats(0.01, math.pi)


def test_build_h_theta_examples():
    h = build_h_theta(MixedGraph.build(2, [(0, 1)]), math.pi / 2)
    assert np.allclose(h, [[0, 1j], [-1j, 0]])
    assert np.allclose(build_h_theta(MixedGraph.build(2, digons=[(0, 1)]), 0.3), [[0, 1], [1, 0]])


def test_h_pi_of_oriented_graph_is_minus_adjacency():
    g = g_m(3).graph
    a = np.zeros((g.n, g.n))
    for u, v in g.underlying.edges:
        a[u, v] = a[v, u] = 1
    assert np.allclose(build_h_theta(g, math.pi), -a)


def test_out_of_range_theta_is_flagged(caplog):
    build_h_theta(guo_mohar(), 4.0)
    assert "outside" in caplog.text


def test_zero_matrix():
    assert eigenvalues(np.zeros((3, 3))).eigenvalues == (0.0, 0.0, 0.0)


def test_guo_mohar_spectrum():
    s = spectrum(guo_mohar(), math.pi / 2)
    assert np.allclose(s.eigenvalues, [-math.sqrt(5), -1, 1, math.sqrt(5)], atol=1e-9)


def test_triangle_spectrum():
    s = spectrum(directed_cycle(3), math.pi / 6)
    assert np.allclose(s.eigenvalues, [-math.sqrt(3), 0, math.sqrt(3)], atol=1e-9)


def test_jacobi_against_lapack(rng):
    for n in (1, 2, 3, 7, 20, 40):
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        a = a + a.conj().T
        vals, vecs = jacobi_eigh(a)
        assert np.allclose(vals, np.linalg.eigvalsh(a), atol=1e-10)
        assert np.allclose(vecs.conj().T @ vecs, np.eye(n), atol=1e-10)


def test_jacobi_degenerate_eigenvalues():
    a = np.kron(np.eye(3), np.array([[0, 1], [1, 0]]))
    assert np.allclose(jacobi_eigh(a)[0], [-1, -1, -1, 1, 1, 1])


def test_non_hermitian_rejected():
    with pytest.raises(ContractError):
        eigenvalues(np.array([[0, 1], [2, 0]]))
    with pytest.raises(InputError):
        eigenvalues(np.zeros((2, 3)))


def test_nonconvergence_raises():
    a = np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]], dtype=complex)
    with pytest.raises(ComputationError, match="sweeps"):
        jacobi_eigh(a, tol=0.0, max_sweeps=0)


def test_spectrum_is_symmetric_examples():
    assert spectrum_is_symmetric(Spectrum((-2, 0, 2)))
    assert not spectrum_is_symmetric(Spectrum((-1, 1, 1)))
    assert spectrum_is_symmetric(spectrum(g_m(3).graph, math.pi / 3))
    with pytest.raises(InputError):
        spectrum_is_symmetric(Spectrum((0,)), 0)


def test_spectrum_json():
    s = Spectrum((1 / 3, -1 / 3), 0.5)
    assert s.eigenvalues == (-1 / 3, 1 / 3)
    assert s.to_json() == {"theta": 0.5, "eigenvalues": [-0.333333333333333, 0.333333333333333]}


@given(mixed_graphs(min_n=1, max_n=7), thetas)
def test_trace_identities(g, theta):
    vals = np.array(spectrum(g, theta).eigenvalues)
    assert abs(vals.sum()) < 1e-9
    assert abs((vals**2).sum() - 2 * len(g.underlying.edges)) < 1e-8


@given(mixed_graphs(min_n=1, max_n=7), thetas)
def test_matches_lapack(g, theta):
    assert np.allclose(spectrum(g, theta).eigenvalues, np.linalg.eigvalsh(numpy_h(g, theta)), atol=1e-9)


@given(mixed_graphs(min_n=1, max_n=7), thetas)
def test_reversal_preserves_spectrum(g, theta):
    a = spectrum(g, theta).eigenvalues
    b = spectrum(g.reversed(), theta).eigenvalues
    assert np.allclose(a, b, atol=1e-9)


@given(mixed_graphs(min_n=1, max_n=7), thetas, st.data())
def test_diagonal_switching_preserves_spectrum(g, theta, data):
    phases = data.draw(st.lists(st.floats(-math.pi, math.pi), min_size=g.n, max_size=g.n))
    h = build_h_theta(g, theta)
    a = eigenvalues(h).eigenvalues
    b = eigenvalues(conjugate_by_diagonal(h, phases)).eigenvalues
    assert np.allclose(a, b, atol=1e-9)


@given(bipartite_mixed_graphs(max_n=8), st.lists(thetas, min_size=20, max_size=20))
def test_bipartite_spectra_are_symmetric(g, ts):
    assert all(spectrum_is_symmetric(spectrum(g, t)) for t in ts)
