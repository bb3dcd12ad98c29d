"""Mixed graphs: arcs, digons, the underlying graph and its cycles.

Vertices are the dense integers ``0 .. n-1``.  An arc ``(u, v)`` present in
both directions is a digon and behaves as an undirected edge.
"""

from __future__ import annotations

import enum
import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from mixedspec.errors import GraphFormatError, InputError

logger = logging.getLogger(__name__)


class PairKind(enum.Enum):
    NONE = "none"
    DIGON = "digon"
    FORWARD = "forward"
    BACKWARD = "backward"


@dataclass(frozen=True)
class UndirectedGraph:
    n: int
    edges: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        if self.n < 0:
            raise InputError(f"vertex count must be non-negative, got {self.n}")
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"edge ({u}, {v}) out of range for n={self.n}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges


@dataclass(frozen=True)
class MixedGraph:
    """A finite mixed graph on vertices ``0 .. n-1``.

    ``arcs`` holds ordered pairs; a pair stored in both directions is a digon.
    Instances are immutable and hashable.
    """

    n: int
    arcs: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise InputError(f"vertex count must be non-negative, got {self.n}")
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        for u, v in arcs:
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"arc ({u}, {v}) out of range for n={self.n}")
        object.__setattr__(self, "arcs", arcs)

    @classmethod
    def build(
        cls,
        n: int,
        arcs: Iterable[tuple[int, int]] = (),
        digons: Iterable[tuple[int, int]] = (),
    ) -> MixedGraph:
        all_arcs = set(arcs)
        for u, v in digons:
            all_arcs.add((u, v))
            all_arcs.add((v, u))
        return cls(n, frozenset(all_arcs))

    @cached_property
    def digons(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u, v in self.arcs if u < v and (v, u) in self.arcs)

    @cached_property
    def single_arcs(self) -> frozenset[tuple[int, int]]:
        return frozenset(a for a in self.arcs if (a[1], a[0]) not in self.arcs)

    @property
    def is_oriented(self) -> bool:
        return not self.digons

    @property
    def is_proper(self) -> bool:
        return bool(self.digons)

    def classify_pair(self, u: int, v: int) -> PairKind:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise InputError("classify_pair needs two distinct vertices")
        fwd = (u, v) in self.arcs
        bwd = (v, u) in self.arcs
        if fwd and bwd:
            return PairKind.DIGON
        if fwd:
            return PairKind.FORWARD
        if bwd:
            return PairKind.BACKWARD
        return PairKind.NONE

    @cached_property
    def underlying(self) -> UndirectedGraph:
        return UndirectedGraph(self.n, frozenset((min(u, v), max(u, v)) for u, v in self.arcs))

    def reversed(self) -> MixedGraph:
        """Every arc reversed; digons are unchanged."""
        return MixedGraph(self.n, frozenset((v, u) for u, v in self.arcs))

    def induced(self, keep: Iterable[int]) -> tuple[MixedGraph, list[int]]:
        """Subgraph induced on ``keep``, relabelled densely in increasing order.

        Returns the subgraph and the list mapping new index -> old vertex.
        """
        order = sorted(set(keep))
        for v in order:
            self._check_vertex(v)
        index = {v: i for i, v in enumerate(order)}
        arcs = frozenset(
            (index[u], index[v]) for u, v in self.arcs if u in index and v in index
        )
        return MixedGraph(len(order), arcs), order

    def disjoint_union(self, other: MixedGraph) -> MixedGraph:
        shift = self.n
        arcs = set(self.arcs) | {(u + shift, v + shift) for u, v in other.arcs}
        return MixedGraph(self.n + other.n, frozenset(arcs))

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InputError(f"vertex {v} out of range for n={self.n}")


def underlying(g: MixedGraph) -> UndirectedGraph:
    return g.underlying


def classify_pair(g: MixedGraph, u: int, v: int) -> PairKind:
    return g.classify_pair(u, v)


# --------------------------------------------------------------------------
# bipartiteness and cycles
# --------------------------------------------------------------------------


def two_coloring(g: MixedGraph | UndirectedGraph) -> list[int] | None:
    """A proper 2-colouring of the underlying graph, or None if there is none."""
    ug = g.underlying if isinstance(g, MixedGraph) else g
    color = [-1] * ug.n
    for root in range(ug.n):
        if color[root] >= 0:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in ug.adjacency[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return color


def is_bipartite(g: MixedGraph | UndirectedGraph) -> bool:
    return two_coloring(g) is not None


@dataclass(frozen=True, order=True)
class Cycle:
    """A simple cycle of length >= 3 in canonical form.

    The canonical form starts at the smallest vertex and is oriented so that
    the second vertex is smaller than the last one.  Construct through
    :meth:`from_sequence` unless the sequence is already canonical.
    """

    vertices: tuple[int, ...]

    def __post_init__(self):
        vs = tuple(self.vertices)
        if len(vs) < 3:
            raise InputError(f"a cycle needs at least 3 vertices, got {len(vs)}")
        if len(set(vs)) != len(vs):
            raise InputError(f"cycle vertices must be distinct: {vs}")
        if vs != _canonical(vs):
            raise InputError(f"cycle {vs} is not in canonical form")
        object.__setattr__(self, "vertices", vs)

    @classmethod
    def from_sequence(cls, seq: Sequence[int]) -> Cycle:
        vs = tuple(seq)
        if len(vs) < 3 or len(set(vs)) != len(vs):
            raise InputError(f"not a simple cycle of length >= 3: {vs}")
        return cls(_canonical(vs))

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def reversed_sequence(self) -> tuple[int, ...]:
        vs = self.vertices
        return (vs[0],) + tuple(reversed(vs[1:]))


def _canonical(vs: tuple[int, ...]) -> tuple[int, ...]:
    i = vs.index(min(vs))
    rot = vs[i:] + vs[:i]
    if rot[1] > rot[-1]:
        rot = (rot[0],) + tuple(reversed(rot[1:]))
    return rot


def is_cycle_of(g: MixedGraph | UndirectedGraph, seq: Sequence[int]) -> bool:
    ug = g.underlying if isinstance(g, MixedGraph) else g
    vs = tuple(seq)
    if len(vs) < 3 or len(set(vs)) != len(vs):
        return False
    if any(not 0 <= v < ug.n for v in vs):
        return False
    return all(ug.has_edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))


def iter_cycles(g: MixedGraph | UndirectedGraph, max_len: int | None = None) -> Iterator[Cycle]:
    """Yield every simple cycle of the underlying graph exactly once.

    Each cycle is discovered from its smallest vertex ``s`` by a depth-first
    search restricted to vertices larger than ``s``; a closing edge back to
    ``s`` is accepted only in the canonical direction.
    """
    ug = g.underlying if isinstance(g, MixedGraph) else g
    adj = ug.adjacency
    limit = ug.n if max_len is None else max_len
    if limit < 3:
        return
    for s in range(ug.n):
        path = [s]
        on_path = {s}

        def extend(u: int) -> Iterator[Cycle]:
            for w in adj[u]:
                if w == s:
                    if len(path) >= 3 and path[1] < path[-1]:
                        yield Cycle(tuple(path))
                elif w > s and w not in on_path and len(path) < limit:
                    path.append(w)
                    on_path.add(w)
                    yield from extend(w)
                    path.pop()
                    on_path.discard(w)

        yield from extend(s)


def enumerate_cycles(g: MixedGraph | UndirectedGraph, max_len: int | None = None) -> list[Cycle]:
    return sorted(iter_cycles(g, max_len), key=lambda c: (len(c), c.vertices))


def odd_circumference(g: MixedGraph | UndirectedGraph) -> int | None:
    """Length of the longest odd cycle, or None when the graph is bipartite."""
    if is_bipartite(g):
        return None
    return max(len(c) for c in iter_cycles(g) if len(c) % 2)


def circumference(g: MixedGraph | UndirectedGraph) -> int | None:
    return max((len(c) for c in iter_cycles(g)), default=None)


def odd_girth(g: MixedGraph | UndirectedGraph) -> int | None:
    """Length of the shortest odd cycle, or None when the graph is bipartite.

    Uses a BFS from every vertex: the shortest odd closed walk through a
    non-bipartite component is a cycle.
    """
    ug = g.underlying if isinstance(g, MixedGraph) else g
    best = None
    for root in range(ug.n):
        dist = [-1] * ug.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in ug.adjacency[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
                elif dist[w] == dist[u]:
                    length = 2 * dist[u] + 1
                    if best is None or length < best:
                        best = length
    return best


def cycle_flux(g: MixedGraph, cycle: Cycle | Sequence[int]) -> int:
    """Integer ``k`` such that the magnetic flux along ``cycle`` is ``k * theta``.

    The cycle is walked in the order given (canonical order for a
    :class:`Cycle`): single arcs traversed along their direction count +1,
    against it -1, digons 0.
    """
    vs = tuple(cycle.vertices if isinstance(cycle, Cycle) else cycle)
    if not is_cycle_of(g, vs):
        raise InputError(f"{vs} is not a cycle of the graph")
    k = 0
    for i, u in enumerate(vs):
        v = vs[(i + 1) % len(vs)]
        kind = g.classify_pair(u, v)
        if kind is PairKind.FORWARD:
            k += 1
        elif kind is PairKind.BACKWARD:
            k -= 1
    return k


# --------------------------------------------------------------------------
# forests
# --------------------------------------------------------------------------


def forest_signature(g: MixedGraph | UndirectedGraph) -> tuple[str, ...]:
    """Isomorphism invariant of a forest: sorted canonical codes of its trees.

    Two forests are isomorphic iff their signatures are equal.  Trees are
    encoded by the AHU parenthesis code rooted at their centre (the smaller
    of the two codes when there are two centres).
    """
    ug = g.underlying if isinstance(g, MixedGraph) else g
    if len(ug.edges) > 0 and _has_cycle(ug):
        raise InputError("forest_signature expects an acyclic graph")
    seen = [False] * ug.n
    codes = []
    for root in range(ug.n):
        if seen[root]:
            continue
        comp = _component(ug, root)
        for v in comp:
            seen[v] = True
        codes.append(min(_ahu(ug, c, set(comp)) for c in _centres(ug, comp)))
    return tuple(sorted(codes))


def _has_cycle(ug: UndirectedGraph) -> bool:
    comps = 0
    seen = [False] * ug.n
    for v in range(ug.n):
        if not seen[v]:
            comps += 1
            for w in _component(ug, v):
                seen[w] = True
    return len(ug.edges) != ug.n - comps


def _component(ug: UndirectedGraph, root: int) -> list[int]:
    comp = [root]
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in ug.adjacency[u]:
            if w not in seen:
                seen.add(w)
                comp.append(w)
                queue.append(w)
    return comp


def _centres(ug: UndirectedGraph, comp: list[int]) -> list[int]:
    if len(comp) <= 2:
        return comp
    members = set(comp)
    deg = {v: sum(1 for w in ug.adjacency[v] if w in members) for v in comp}
    leaves = [v for v in comp if deg[v] <= 1]
    remaining = len(comp)
    while remaining > 2:
        remaining -= len(leaves)
        nxt = []
        for leaf in leaves:
            for w in ug.adjacency[leaf]:
                if w in members and deg[w] > 0:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
            deg[leaf] = 0
        leaves = nxt
    return leaves


def _ahu(ug: UndirectedGraph, root: int, members: set[int]) -> str:
    def code(v: int, parent: int) -> str:
        kids = sorted(code(w, v) for w in ug.adjacency[v] if w in members and w != parent)
        return "(" + "".join(kids) + ")"

    return code(root, -1)


# --------------------------------------------------------------------------
# text format
# --------------------------------------------------------------------------


def parse_graph(text: str) -> MixedGraph:
    """Parse the line-oriented graph format.

    ``n <count>`` declares the vertex count, ``a u v`` a single arc and
    ``d u v`` a digon.  ``#`` starts a comment.  The pair ``a u v`` plus
    ``a v u`` is accepted and logged as a digon.
    """
    n = None
    arcs: set[tuple[int, int]] = set()
    declared_single: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        tag = parts[0]
        try:
            nums = [int(p) for p in parts[1:]]
        except ValueError:
            raise GraphFormatError(f"expected integers after {tag!r}: {raw.strip()!r}", lineno) from None
        if tag == "n":
            if len(nums) != 1:
                raise GraphFormatError("'n' takes exactly one integer", lineno)
            if n is not None:
                raise GraphFormatError("vertex count declared twice", lineno)
            if nums[0] < 0:
                raise GraphFormatError("vertex count must be non-negative", lineno)
            n = nums[0]
            continue
        if tag not in ("a", "d"):
            raise GraphFormatError(f"unknown record {tag!r}", lineno)
        if n is None:
            raise GraphFormatError("arc before the 'n' declaration", lineno)
        if len(nums) != 2:
            raise GraphFormatError(f"{tag!r} takes exactly two vertices", lineno)
        u, v = nums
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex out of range [0, {n})", lineno)
        if tag == "a":
            if (v, u) in declared_single:
                logger.warning(
                    "line %d: arcs %d->%d and %d->%d merged into a digon (first at line %d)",
                    lineno, u, v, v, u, declared_single[(v, u)],
                )
            declared_single[(u, v)] = lineno
            arcs.add((u, v))
        else:
            arcs.add((u, v))
            arcs.add((v, u))
    if n is None:
        raise GraphFormatError("missing 'n <count>' declaration")
    return MixedGraph(n, frozenset(arcs))


def format_graph(g: MixedGraph, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"n {g.n}")
    lines.extend(f"a {u} {v}" for u, v in sorted(g.single_arcs))
    lines.extend(f"d {u} {v}" for u, v in sorted(g.digons))
    return "\n".join(lines) + "\n"
