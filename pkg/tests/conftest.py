import itertools
import math

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import settings

from mixedspec.graph import MixedGraph
from mixedspec.rings import ONE, ZERO, Z, Z_INV

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def mixed_graphs(draw, min_n=0, max_n=6):
    """Random mixed graph; each pair is absent, an arc either way, or a digon."""
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    kinds = draw(st.lists(st.sampled_from("-fbd"), min_size=len(pairs), max_size=len(pairs)))
    arcs = set()
    for (u, v), k in zip(pairs, kinds):
        if k in "fd":
            arcs.add((u, v))
        if k in "bd":
            arcs.add((v, u))
    return MixedGraph(n, frozenset(arcs))


@st.composite
def bipartite_mixed_graphs(draw, max_n=8):
    g = draw(mixed_graphs(max_n=max_n))
    side = draw(st.lists(st.booleans(), min_size=g.n, max_size=g.n))
    return MixedGraph(g.n, frozenset((u, v) for u, v in g.arcs if side[u] != side[v]))


def leibniz_charpoly(g: MixedGraph):
    """det(xI - H) by the permutation expansion; exponential, n <= 6 only.

    Returns the Laurent coefficients [a_0, .., a_n].
    """
    n = g.n

    def entry(u, v):
        if (u, v) in g.arcs and (v, u) in g.arcs:
            return ONE
        if (u, v) in g.arcs:
            return Z
        if (v, u) in g.arcs:
            return Z_INV
        return ZERO

    coeffs = [ZERO] * (n + 1)
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = [False] * n
        for i in range(n):
            if not seen[i]:
                j, length = i, 0
                while not seen[j]:
                    seen[j] = True
                    j = perm[j]
                    length += 1
                if length % 2 == 0:
                    sign = -sign
        fixed = [i for i in range(n) if perm[i] == i]
        prod = ONE
        for i in range(n):
            if perm[i] != i:
                prod = prod * (-entry(i, perm[i]))
                if not prod:
                    break
        if not prod:
            continue
        # each fixed point contributes x (diagonal of H is zero)
        coeffs[n - len(fixed)] = coeffs[n - len(fixed)] + prod * sign
    return coeffs


def numpy_h(g: MixedGraph, theta: float) -> np.ndarray:
    h = np.zeros((g.n, g.n), dtype=complex)
    for u, v in g.arcs:
        if (v, u) in g.arcs:
            h[u, v] = 1
        else:
            h[u, v] = np.exp(1j * theta)
            h[v, u] = np.exp(-1j * theta)
    return h


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def irreducible_angles(m_max):
    return [(l, m) for m in range(1, m_max + 1) for l in range(1, m + 1) if math.gcd(l, m) == 1]
