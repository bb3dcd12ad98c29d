"""Builders for the oriented paths, book graphs and named examples.

Book graph ``G(s_1, .., s_t)``: start from the arc ``x -> y``; for every
``j`` add ``s_j`` sheets, each a cycle of length ``2t - 1`` through ``x -> y``
and a new vertex ``z_j^(k)``.  The ``x``-side of a sheet is a path of ``t``
vertices whose arcs all point towards ``x``; the ``y``-side has its first
``j - 1`` arcs leaving ``y`` and the rest pointing back, so the sheet's flux is
``(2j - 1) theta``.

Vertex numbering: ``x = 0``, ``y = 1``, then sheet by sheet the vertex
``z``, the interior of its ``x``-path and the interior of its ``y``-path.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from mixedspec.errors import InputError
from mixedspec.graph import MixedGraph


@dataclass(frozen=True)
class LabeledGraph:
    graph: MixedGraph
    labels: dict[str, int] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        seen = set()
        for key, v in self.labels.items():
            if not 0 <= v < self.graph.n:
                raise InputError(f"label {key!r} -> {v} out of range")
            if v in seen:
                raise InputError(f"vertex {v} carries two labels")
            seen.add(v)

    def __getitem__(self, label: str) -> int:
        return self.labels[label]


@dataclass(frozen=True)
class BookParams:
    s: tuple[int, ...]

    def __post_init__(self):
        s = tuple(int(x) for x in self.s)
        if len(s) < 2:
            raise InputError(f"a book graph needs t >= 2 entries, got {s}")
        if any(x < 0 for x in s):
            raise InputError(f"sheet counts must be non-negative: {s}")
        if sum(s) < 1:
            raise InputError("a book graph needs at least one sheet")
        object.__setattr__(self, "s", s)

    @property
    def t(self) -> int:
        return len(self.s)

    @property
    def sheets(self) -> int:
        return sum(self.s)

    @property
    def odd_circumference(self) -> int:
        return 2 * self.t - 1

    @property
    def vertex_count(self) -> int:
        return 2 + self.sheets * (2 * self.t - 3)

    def __str__(self) -> str:
        return "G(" + ",".join(map(str, self.s)) + ")"


def path_arcs(vertices: list[int], a: int) -> list[tuple[int, int]]:
    """Arcs of ``P_m^(a, m-1-a)`` on ``vertices = [p_1, .., p_m]``.

    The first ``a`` arcs run ``p_i -> p_{i+1}``; the remaining ones run
    ``p_{i+1} -> p_i``.
    """
    m = len(vertices)
    if not 0 <= a <= max(m - 1, 0):
        raise InputError(f"need 0 <= a <= m-1, got a={a}, m={m}")
    arcs = []
    for i in range(m - 1):
        u, v = vertices[i], vertices[i + 1]
        arcs.append((u, v) if i < a else (v, u))
    return arcs


def oriented_path(m: int, a: int) -> LabeledGraph:
    if m < 1:
        raise InputError(f"path needs m >= 1 vertices, got {m}")
    vs = list(range(m))
    g = MixedGraph.build(m, path_arcs(vs, a))
    return LabeledGraph(g, {f"p{i + 1}": i for i in vs}, f"P_{m}^({a},{m - 1 - a})")


def book_graph(p: BookParams | tuple[int, ...] | list[int]) -> LabeledGraph:
    if not isinstance(p, BookParams):
        p = BookParams(tuple(p))
    t = p.t
    labels = {"x": 0, "y": 1}
    arcs = [(0, 1)]
    nxt = 2
    for j, count in enumerate(p.s, start=1):
        for k in range(1, count + 1):
            tag = f"z{j}^{k}"
            z = nxt
            labels[tag] = z
            xs = list(range(nxt + 1, nxt + t - 1))
            ys = list(range(nxt + t - 1, nxt + 2 * t - 3))
            nxt += 2 * t - 3
            for i, v in enumerate(xs, start=2):
                labels[f"{tag}/x{i}"] = v
            for i, v in enumerate(ys, start=2):
                labels[f"{tag}/y{i}"] = v
            arcs += path_arcs([0] + xs + [z], 0)
            arcs += path_arcs([1] + ys + [z], j - 1)
    g = MixedGraph.build(nxt, arcs)
    return LabeledGraph(g, labels, str(p))


def g_m(m: int) -> LabeledGraph:
    if m < 2:
        raise InputError(f"G_m needs m >= 2, got {m}")
    lg = book_graph(BookParams((1,) * m))
    return LabeledGraph(lg.graph, lg.labels, f"G_{m}")


def sheet_cycle(lg: LabeledGraph, tag: str) -> list[int]:
    """Vertex sequence ``x, y, y-path, z, x-path`` of the sheet through ``tag``.

    Traversed in this order the flux is ``+(2j - 1)``.
    """
    ys = sorted((k for k in lg.labels if k.startswith(tag + "/y")), key=lambda k: int(k.rsplit("y", 1)[1]))
    xs = sorted((k for k in lg.labels if k.startswith(tag + "/x")), key=lambda k: int(k.rsplit("x", 1)[1]))
    seq = [lg["x"], lg["y"]] + [lg[k] for k in ys] + [lg[tag]] + [lg[k] for k in reversed(xs)]
    return seq


def double_proper(g: MixedGraph) -> MixedGraph:
    """Two copies of ``g`` with a digon between each vertex and its copy.

    ``H`` becomes ``[[H, I], [I, H]]``, whose spectrum is ``{lambda +- 1}``.
    """
    n = g.n
    arcs = set(g.arcs) | {(u + n, v + n) for u, v in g.arcs}
    for v in range(n):
        arcs.add((v, v + n))
        arcs.add((v + n, v))
    return MixedGraph(2 * n, frozenset(arcs))


def guo_mohar() -> MixedGraph:
    """Four vertices, digon ``{0, 1}`` and five arcs; symmetric at ``pi/2``."""
    return MixedGraph.build(4, arcs=[(2, 1), (3, 2), (3, 0), (2, 0), (1, 3)], digons=[(0, 1)])


def mohar_fig10() -> MixedGraph:
    """Mohar's 5-vertex oriented graph, symmetric at ``pi/3``.

    Vertex order: ``z_2, x, y, w, z_1``.
    """
    return MixedGraph.build(5, arcs=[(0, 1), (2, 0), (1, 2), (1, 3), (2, 3), (4, 1), (4, 2)])


def pi_example_fig9() -> MixedGraph:
    """A 4-vertex proper mixed graph, non-bipartite, symmetric at ``theta = pi``."""
    return MixedGraph.build(4, arcs=[(0, 1)], digons=[(1, 2), (2, 3), (3, 0), (0, 2)])


def directed_cycle(n: int) -> MixedGraph:
    if n < 3:
        raise InputError(f"a cycle needs n >= 3, got {n}")
    return MixedGraph.build(n, [(i, (i + 1) % n) for i in range(n)])


NAMED = {
    "guo-mohar": guo_mohar,
    "mohar": mohar_fig10,
    "fig9": pi_example_fig9,
}


def random_mixed_graph(rng, n: int, p_edge: float = 0.5, p_digon: float = 0.3) -> MixedGraph:
    """Random mixed graph: each pair is an edge with probability ``p_edge``;
    an edge is a digon with probability ``p_digon`` and otherwise a single
    arc in a random direction.  ``rng`` is a ``numpy.random.Generator``.
    """
    arcs = set()
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() >= p_edge:
                continue
            r = rng.random()
            if r < p_digon:
                arcs |= {(u, v), (v, u)}
            elif r < (1 + p_digon) / 2:
                arcs.add((u, v))
            else:
                arcs.add((v, u))
    return MixedGraph(n, frozenset(arcs))


def random_bipartite_mixed_graph(rng, n: int, p_edge: float = 0.5, p_digon: float = 0.3) -> MixedGraph:
    """Random mixed graph whose edges only join the two colour classes of a random split."""
    side = rng.integers(0, 2, size=n)
    g = random_mixed_graph(rng, n, p_edge, p_digon)
    return MixedGraph(n, frozenset((u, v) for u, v in g.arcs if side[u] != side[v]))
