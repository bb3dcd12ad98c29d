import math

import numpy as np
import pytest

from mixedspec.charpoly import charpoly_berkowitz, is_symmetric_exact, is_symmetric_numeric
from mixedspec.constructions import (
    BookParams,
    LabeledGraph,
    book_graph,
    directed_cycle,
    double_proper,
    g_m,
    guo_mohar,
    mohar_fig10,
    oriented_path,
    pi_example_fig9,
    sheet_cycle,
)
from mixedspec.errors import InputError
from mixedspec.graph import (
    MixedGraph,
    circumference,
    cycle_flux,
    enumerate_cycles,
    forest_signature,
    is_bipartite,
    odd_circumference,
)
from mixedspec.numeric import spectrum


def test_oriented_path_fig4():
    lg = oriented_path(6, 3)
    p = [lg[f"p{i}"] for i in range(1, 7)]
    want = {(p[0], p[1]), (p[1], p[2]), (p[2], p[3]), (p[4], p[3]), (p[5], p[4])}
    assert lg.graph.arcs == want


def test_oriented_path_small():
    assert oriented_path(2, 1).graph.arcs == {(0, 1)}
    assert oriented_path(1, 0).graph.arcs == frozenset()
    with pytest.raises(InputError):
        oriented_path(3, 3)
    with pytest.raises(InputError):
        oriented_path(0, 0)


def test_book_params_validation():
    with pytest.raises(InputError):
        BookParams((1,))
    with pytest.raises(InputError):
        BookParams((0, 0))
    with pytest.raises(InputError):
        BookParams((1, -1))
    p = BookParams((2, 2, 1))
    assert (p.t, p.sheets, p.odd_circumference, str(p)) == (3, 5, 5, "G(2,2,1)")


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_g_m_vertex_count(m):
    assert g_m(m).graph.n == 2 * m * m - 3 * m + 2


def test_g_m_examples():
    assert g_m(4).graph.n == 22
    assert g_m(3).graph.n == 11
    g2 = g_m(2).graph
    # G(1,1): two triangles x->y->z->x shaped sheets sharing x -> y
    assert g2.n == 4 and len(g2.arcs) == 5 and (0, 1) in g2.arcs
    assert sorted(len(c) for c in enumerate_cycles(g2)) == [3, 3, 4]
    with pytest.raises(InputError):
        g_m(1)


def test_g_m_equals_all_ones_book():
    for m in (2, 3, 4):
        assert g_m(m).graph.arcs == book_graph((1,) * m).graph.arcs


def test_g4_arc_layout():
    lg = g_m(4)
    x, y = lg["x"], lg["y"]
    arcs = lg.graph.arcs
    assert (x, y) in arcs
    for j in range(1, 5):
        z = lg[f"z{j}^1"]
        x2, x3 = lg[f"z{j}^1/x2"], lg[f"z{j}^1/x3"]
        assert {(z, x3), (x3, x2), (x2, x)} <= arcs
        y2, y3 = lg[f"z{j}^1/y2"], lg[f"z{j}^1/y3"]
        ypath = [y, y2, y3, z]
        for i in range(3):
            a, b = ypath[i], ypath[i + 1]
            assert ((a, b) if i < j - 1 else (b, a)) in arcs


def test_g221_arc_layout():
    lg = book_graph((2, 2, 1))
    g = lg.graph
    assert g.n == 2 + 5 * 3
    y = lg["y"]
    assert (lg["z1^1/y2"], y) in g.arcs
    assert (y, lg["z2^1/y2"]) in g.arcs and (lg["z2^1"], lg["z2^1/y2"]) in g.arcs
    assert (y, lg["z3^1/y2"]) in g.arcs and (lg["z3^1/y2"], lg["z3^1"]) in g.arcs


def test_directed_cycle_family():
    for t in (2, 3, 4):
        g = book_graph((0,) * (t - 1) + (1,)).graph
        assert g.n == 2 * t - 1
        cycles = enumerate_cycles(g)
        assert len(cycles) == 1 and abs(cycle_flux(g, cycles[0])) == 2 * t - 1
        assert charpoly_berkowitz(g) == charpoly_berkowitz(directed_cycle(2 * t - 1))


@pytest.mark.parametrize("s", [(1, 1, 1), (2, 2, 1), (0, 1, 1), (1, 0, 1, 1), (3, 0)])
def test_book_structure(s):
    lg = book_graph(s)
    g = lg.graph
    t = len(s)
    assert g.n == BookParams(s).vertex_count
    assert g.is_oriented and not is_bipartite(g)
    odd = [c for c in enumerate_cycles(g) if len(c) % 2]
    assert {len(c) for c in odd} == {2 * t - 1}
    assert len(odd) == sum(s)
    sigs = set()
    for c in odd:
        sub, _ = g.induced(set(range(g.n)) - set(c.vertices))
        sigs.add(forest_signature(sub))
    assert len(sigs) == 1
    for j, count in enumerate(s, start=1):
        for k in range(1, count + 1):
            assert cycle_flux(g, sheet_cycle(lg, f"z{j}^{k}")) == 2 * j - 1


def test_labels_are_injective():
    with pytest.raises(InputError):
        LabeledGraph(MixedGraph(2), {"a": 0, "b": 0})
    with pytest.raises(InputError):
        LabeledGraph(MixedGraph(2), {"a": 5})


def test_double_proper_single_vertex():
    d = double_proper(MixedGraph(1))
    assert d.digons == {(0, 1)}
    assert np.allclose(spectrum(d, 1.0).eigenvalues, [-1, 1])


def test_double_proper_of_g3():
    g = g_m(3).graph
    d = double_proper(g)
    base = np.array(spectrum(g, math.pi / 3).eigenvalues)
    want = np.sort(np.concatenate([base - 1, base + 1]))
    assert np.allclose(spectrum(d, math.pi / 3).eigenvalues, want, atol=1e-9)
    assert d.is_proper and not is_bipartite(d)
    assert is_symmetric_exact(d, 1, 3)


def test_named_graphs():
    gm = guo_mohar()
    assert gm.n == 4 and len(gm.underlying.edges) == 6 and len(gm.digons) == 1
    mf = mohar_fig10()
    assert mf.n == 5 and mf.is_oriented
    assert odd_circumference(mf) == 3 and circumference(mf) == 4
    assert is_symmetric_exact(mf, 1, 3)
    f9 = pi_example_fig9()
    assert not is_bipartite(f9)
    assert is_symmetric_exact(f9, 1, 1) and is_symmetric_numeric(f9, math.pi)


def test_fig10_equals_g21():
    assert charpoly_berkowitz(mohar_fig10()) == charpoly_berkowitz(book_graph((2, 1)).graph)
