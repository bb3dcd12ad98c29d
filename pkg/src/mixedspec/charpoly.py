"""Exact characteristic polynomials of ``H_theta`` over ``Z[z, z^-1]``.

Two independent routes produce the same :class:`CharPoly`:

* :func:`charpoly_berkowitz` -- division-free Berkowitz recursion on the
  symbolic matrix; polynomial time, the production path.
* :func:`charpoly_elementary` -- the sum over elementary subgraphs (disjoint
  unions of edges and cycles); exponential, used as an oracle.

Cycle weights are kept doubled: a cycle of flux ``k`` contributes
``z^k + z^-k = 2 re(C)``, which absorbs the factor ``2`` per cycle and keeps
all arithmetic integral.

The exact symmetry decision at ``theta = l pi / m`` checks that every odd
coefficient vanishes at ``z = zeta_{2m}^l``.  Small graphs run Berkowitz
directly over the cyclotomic ring.  Larger ones use a multi-modular test,
described at :func:`odd_coefficients_vanish_modular`.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence, TypeVar

import numpy as np

from mixedspec.errors import ContractError, InputError
from mixedspec.graph import Cycle, MixedGraph, cycle_flux, is_cycle_of
from mixedspec.numeric import build_h_theta, eigenvalues, spectrum_is_symmetric
from mixedspec.rings import (
    ONE,
    Z,
    Z_INV,
    ZERO,
    CosPoly,
    CyclotomicElement,
    LaurentPoly,
    eval_at_root_of_unity,
    normalize_angle,
    power_residue_l1_bound,
    to_cos_poly,
)

logger = logging.getLogger(__name__)

R = TypeVar("R")


@dataclass(frozen=True)
class CharPoly:
    """``det(x I - H_theta) = sum_j coeffs[j] x^{n-j}`` with Laurent coefficients."""

    coeffs: tuple[LaurentPoly, ...]

    def __post_init__(self):
        if not self.coeffs or self.coeffs[0] != 1:
            raise ContractError("characteristic polynomial must be monic")

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    degree = n

    def __getitem__(self, j: int) -> LaurentPoly:
        return self.coeffs[j]

    def odd_coefficients(self) -> dict[int, LaurentPoly]:
        return {j: a for j, a in enumerate(self.coeffs) if j % 2}

    def at_root(self, l: int, m: int) -> list[CyclotomicElement]:
        """Exact coefficients at ``theta = l pi / m`` (no normalization)."""
        return [eval_at_root_of_unity(a, l, 2 * m) for a in self.coeffs]

    def cos_polys(self) -> list[CosPoly]:
        return [to_cos_poly(a) for a in self.coeffs]

    def numeric(self, theta: float) -> np.ndarray:
        """Real coefficient vector at ``theta``, highest power of ``x`` first."""
        z = complex(math.cos(theta), math.sin(theta))
        return np.array([a(z).real for a in self.coeffs])

    def to_json(self) -> dict:
        return {"degree": self.n, "coefficients": [a.to_json() for a in self.coeffs]}


def entry_weight(g: MixedGraph, u: int, v: int) -> LaurentPoly:
    """Symbolic entry ``(u, v)`` of ``H_theta``: 1, ``z``, ``z^-1`` or 0."""
    if u == v:
        raise InputError("entry_weight needs two distinct vertices")
    g._check_vertex(u)
    g._check_vertex(v)
    fwd = (u, v) in g.arcs
    bwd = (v, u) in g.arcs
    if fwd and bwd:
        return ONE
    if fwd:
        return Z
    if bwd:
        return Z_INV
    return ZERO


def sparse_matrix(g: MixedGraph, one: R, z: R, z_inv: R) -> list[dict[int, R]]:
    """Rows of ``H_theta`` as ``{column: entry}`` with entries taken from a ring."""
    rows: list[dict[int, R]] = [dict() for _ in range(g.n)]
    for u, v in g.single_arcs:
        rows[u][v] = z
        rows[v][u] = z_inv
    for u, v in g.digons:
        rows[u][v] = one
        rows[v][u] = one
    return rows


def berkowitz(rows: Sequence[dict[int, R]], one: R) -> list[R]:
    """Characteristic polynomial coefficients ``[1, a_1, .., a_n]`` over any commutative ring.

    ``rows[i]`` maps column index to entry and omits zeros.  Only ring
    addition, subtraction and multiplication are used.  With ``A_k`` the
    leading ``k x k`` block, ``R`` the row and ``C`` the column joining
    vertex ``k`` to it, the coefficient vector grows by the lower-triangular
    Toeplitz product with first column ``(1, -a_kk, -RC, -RA_kC, ...)``.
    """
    n = len(rows)
    zero = one - one
    cols: list[dict[int, R]] = [dict() for _ in range(n)]
    for i, row in enumerate(rows):
        for j, x in row.items():
            cols[j][i] = x

    poly = [one]
    for k in range(n):
        row = rows[k]
        r = {j: x for j, x in row.items() if j < k}
        vec = {i: x for i, x in cols[k].items() if i < k}
        toeplitz = [one, -row.get(k, zero)]
        for step in range(k):
            toeplitz.append(-_dot(r, vec, zero))
            if step == k - 1:
                break
            nxt: dict[int, R] = {}
            for j, x in vec.items():
                for i, y in cols[j].items():
                    if i < k:
                        nxt[i] = nxt[i] + y * x if i in nxt else y * x
            vec = {i: x for i, x in nxt.items() if x}
        new = []
        for i in range(k + 2):
            acc = zero
            for j in range(max(0, i - len(toeplitz) + 1), min(i, k) + 1):
                t = toeplitz[i - j]
                if t and poly[j]:
                    acc = acc + t * poly[j]
            new.append(acc)
        poly = new
    return poly


def _dot(r: dict, vec: dict, zero):
    acc = zero
    small, big = (r, vec) if len(r) <= len(vec) else (vec, r)
    for j, x in small.items():
        y = big.get(j)
        if y is not None:
            acc = acc + x * y
    return acc


def charpoly_berkowitz(g: MixedGraph) -> CharPoly:
    coeffs = berkowitz(sparse_matrix(g, ONE, Z, Z_INV), ONE)
    return CharPoly(tuple(coeffs))


# --------------------------------------------------------------------------
# elementary subgraphs
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ElementarySubgraph:
    single_edges: tuple[tuple[int, int], ...]
    cycles: tuple[Cycle, ...]

    @property
    def p(self) -> int:
        return len(self.single_edges) + len(self.cycles)

    @property
    def vertex_count(self) -> int:
        return 2 * len(self.single_edges) + sum(len(c) for c in self.cycles)

    def vertices(self) -> frozenset[int]:
        vs = {v for e in self.single_edges for v in e}
        for c in self.cycles:
            vs.update(c.vertices)
        return frozenset(vs)


def iter_elementary_subgraphs(g: MixedGraph, max_vertices: int | None = None) -> Iterator[ElementarySubgraph]:
    """Every elementary subgraph (the empty one included), each exactly once.

    The lowest undecided vertex is either left out, matched to a later
    neighbour, or made the minimum vertex of a cycle through later free
    vertices.  Each component is thus generated from its own minimum vertex.
    """
    n = g.n
    adj = g.underlying.adjacency
    limit = n if max_vertices is None else max_vertices
    covered = [False] * n
    edges: list[tuple[int, int]] = []
    cycles: list[Cycle] = []

    def cycles_from(s: int, budget: int) -> Iterator[tuple[int, ...]]:
        path = [s]
        on_path = {s}

        def extend(v: int) -> Iterator[tuple[int, ...]]:
            for w in adj[v]:
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    yield tuple(path)
                elif w > s and not covered[w] and w not in on_path and len(path) < budget:
                    path.append(w)
                    on_path.add(w)
                    yield from extend(w)
                    path.pop()
                    on_path.discard(w)

        yield from extend(s)

    def rec(start: int, used: int) -> Iterator[ElementarySubgraph]:
        v = start
        while v < n and covered[v]:
            v += 1
        if v >= n or used >= limit:
            yield ElementarySubgraph(tuple(edges), tuple(cycles))
            return
        yield from rec(v + 1, used)
        if used + 2 > limit:
            return
        covered[v] = True
        for w in adj[v]:
            if w > v and not covered[w]:
                covered[w] = True
                edges.append((v, w))
                yield from rec(v + 1, used + 2)
                edges.pop()
                covered[w] = False
        if used + 3 <= limit:
            for seq in list(cycles_from(v, limit - used)):
                for w in seq[1:]:
                    covered[w] = True
                cycles.append(Cycle(seq))
                yield from rec(v + 1, used + len(seq))
                cycles.pop()
                for w in seq[1:]:
                    covered[w] = False
        covered[v] = False

    yield from rec(0, 0)


def elementary_subgraphs(g: MixedGraph, j: int) -> list[ElementarySubgraph]:
    """All elementary subgraphs spanning exactly ``j`` vertices."""
    if not 0 <= j <= g.n:
        raise InputError(f"j must lie in [0, {g.n}], got {j}")
    return [h for h in iter_elementary_subgraphs(g, j) if h.vertex_count == j]


def re_cycle(g: MixedGraph, c: Cycle | Sequence[int]) -> LaurentPoly:
    """Doubled real part ``2 re(C) = z^k + z^-k`` where ``k`` is the flux of ``c``."""
    seq = c.vertices if isinstance(c, Cycle) else tuple(c)
    if len(seq) < 3 or not is_cycle_of(g, seq):
        raise InputError(f"{seq} is not a cycle of the graph")
    return LaurentPoly.cos_pair(cycle_flux(g, seq))


def elementary_weight(g: MixedGraph, h: ElementarySubgraph) -> LaurentPoly:
    """``(-1)^{p(H)} prod_C 2 re(C)``; an edge-only subgraph weighs ``(-1)^{p(H)}``."""
    w = ONE if h.p % 2 == 0 else -ONE
    for c in h.cycles:
        w = w * re_cycle(g, c)
    return w


def charpoly_elementary(g: MixedGraph) -> CharPoly:
    acc: list[LaurentPoly] = [ZERO] * (g.n + 1)
    for h in iter_elementary_subgraphs(g):
        j = h.vertex_count
        acc[j] = acc[j] + elementary_weight(g, h)
    return CharPoly(tuple(acc))


def coeff_in_cos(g: MixedGraph, j: int, cp: CharPoly | None = None) -> CosPoly:
    """``f_j`` with ``f_j(cos theta) = a_j(e^{i theta})``."""
    if not 0 <= j <= g.n:
        raise InputError(f"j must lie in [0, {g.n}], got {j}")
    cp = cp if cp is not None else charpoly_berkowitz(g)
    return to_cos_poly(cp[j])


# --------------------------------------------------------------------------
# exact symmetry decision
# --------------------------------------------------------------------------

BERKOWITZ_MAX_N = 40


def charpoly_at_root(g: MixedGraph, l: int, m: int) -> list[CyclotomicElement]:
    """Coefficients at ``z = zeta_{2m}^l`` by Berkowitz over ``Z[x]/Phi_{2m}``."""
    n = 2 * m
    one = CyclotomicElement.one(n)
    rows = sparse_matrix(
        g, one, CyclotomicElement.root_power(n, l), CyclotomicElement.root_power(n, -l)
    )
    return berkowitz(rows, one)


def is_symmetric_exact(g: MixedGraph, l: int, m: int, method: str = "auto") -> bool:
    """Exact test of whether ``H_theta`` has a symmetric spectrum at ``theta = l pi / m``.

    ``method`` is ``"berkowitz"`` (cyclotomic ring), ``"modular"`` or
    ``"auto"``, which picks Berkowitz up to ``BERKOWITZ_MAX_N`` vertices.
    """
    l, m = normalize_angle(l, m)
    if method == "auto":
        method = "berkowitz" if g.n <= BERKOWITZ_MAX_N else "modular"
    if method == "berkowitz":
        vals = charpoly_at_root(g, l, m)
        return all(not v for v in vals[1::2])
    if method == "modular":
        return odd_coefficients_vanish_modular(g, l, m)
    raise InputError(f"unknown method {method!r}")


def is_symmetric_numeric(g: MixedGraph, theta: float, tol: float = 1e-8) -> bool:
    if tol <= 0:
        raise InputError("tolerance must be positive")
    return spectrum_is_symmetric(eigenvalues(build_h_theta(g, theta), theta), tol)


# --------------------------------------------------------------------------
# multi-modular decision
# --------------------------------------------------------------------------

_PRIME_LIMIT = 1 << 25


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_one_mod(q: int, limit: int = _PRIME_LIMIT) -> Iterator[int]:
    """Primes ``p = 1 mod q`` below ``limit``, largest first."""
    p = (limit - 1) - (limit - 1 - 1) % q
    while p > q:
        if _is_prime(p):
            yield p
        p -= q


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def primitive_root_of_unity(q: int, p: int) -> int:
    """An element of exact multiplicative order ``q`` modulo the prime ``p``."""
    if (p - 1) % q:
        raise ContractError(f"{q} does not divide {p} - 1")
    factors = _prime_factors(q)
    for g in range(2, p):
        r = pow(g, (p - 1) // q, p)
        if all(pow(r, q // f, p) != 1 for f in factors):
            return r
    raise ContractError("no primitive root found")  # unreachable for prime p


def charpoly_mod_p(h: np.ndarray, p: int) -> np.ndarray:
    """``[1, a_1, .., a_n] mod p`` for an integer matrix with entries in ``[0, p)``.

    Gaussian similarity reduction to upper Hessenberg form, then the standard
    three-term expansion.  Requires ``p < 2^25`` and ``n < 2^13`` so that int64
    products and row sums cannot overflow.
    """
    a = np.array(h, dtype=np.int64) % p
    n = a.shape[0]
    if p >= _PRIME_LIMIT or n >= (1 << 13):
        raise ContractError("modulus or dimension too large for int64 arithmetic")
    for k in range(n - 2):
        nz = np.flatnonzero(a[k + 1 :, k])
        if nz.size == 0:
            continue
        piv = k + 1 + int(nz[0])
        if piv != k + 1:
            a[[piv, k + 1], :] = a[[k + 1, piv], :]
            a[:, [piv, k + 1]] = a[:, [k + 1, piv]]
        inv = pow(int(a[k + 1, k]), p - 2, p)
        f = a[k + 2 :, k] * inv % p
        if not f.any():
            continue
        a[k + 2 :, :] = (a[k + 2 :, :] - np.outer(f, a[k + 1, :]) % p) % p
        a[:, k + 1] = (a[:, k + 1] + a[:, k + 2 :] @ f % p) % p

    # polys[k] holds det(x I - A[:k, :k]) with ascending coefficients
    polys = np.zeros((n + 1, n + 1), dtype=np.int64)
    polys[0, 0] = 1
    for k in range(1, n + 1):
        cur = np.zeros(n + 1, dtype=np.int64)
        cur[1:] = polys[k - 1, :-1]
        cur = (cur - int(a[k - 1, k - 1]) * polys[k - 1]) % p
        weights = np.zeros(k - 1, dtype=np.int64)
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = prod * int(a[i, i - 1]) % p
            if prod == 0:
                break
            weights[i - 1] = int(a[i - 1, k - 1]) * prod % p
        if k > 1 and weights.any():
            cur = (cur - weights @ polys[: k - 1] % p) % p
        polys[k] = cur
    return polys[n, ::-1].copy()


def odd_coefficient_bound(g: MixedGraph, q: int) -> int:
    """Bound on every coefficient of every odd ``a_j`` reduced into ``Z[x]/Phi_q``.

    ``a_j`` is a signed sum of principal ``j x j`` minors; expanding each
    minor gives at most ``prod deg(v)`` unit monomials, so the coefficient
    1-norm of ``a_j`` is at most the elementary symmetric sum ``e_j`` of the
    degrees.  Reducing one monomial modulo ``Phi_q`` has 1-norm at most
    ``power_residue_l1_bound(q)``.
    """
    ug = g.underlying
    e = [1] + [0] * g.n
    for v in range(g.n):
        d = ug.degree(v)
        for j in range(g.n, 0, -1):
            e[j] += d * e[j - 1]
    worst = max((e[j] for j in range(1, g.n + 1, 2)), default=0)
    return worst * power_residue_l1_bound(q)


def odd_coefficients_vanish_modular(g: MixedGraph, l: int, m: int) -> bool:
    """Exact decision of ``a_j(zeta_{2m}^l) = 0`` for all odd ``j``, by primes.

    Take primes ``p = 1 mod 2m`` and an element ``r`` of order ``2m`` mod ``p``.
    Writing an odd coefficient's reduction as ``beta(x)`` in ``Z[x]/Phi_{2m}``,
    the values ``beta(r^k)`` for ``k`` coprime to ``2m`` are the charpoly
    coefficients of ``H`` with ``z -> r^{kl}``.  These ``phi(2m)`` points are
    distinct roots of ``Phi_{2m}`` mod ``p``, so their Vandermonde matrix is
    invertible and all values vanish iff ``beta = 0 mod p``.  Once the product
    of primes exceeds twice :func:`odd_coefficient_bound`, vanishing modulo
    every prime forces ``beta = 0`` over the integers.  Any nonzero value
    proves non-vanishing at once.
    """
    q = 2 * m
    bound = odd_coefficient_bound(g, q)
    if bound == 0:
        return True
    ks = [k for k in range(1, q) if math.gcd(k, q) == 1]
    modulus = 1
    for p in primes_one_mod(q):
        r = primitive_root_of_unity(q, p)
        for k in ks:
            w = pow(r, k * l, p)
            h = np.zeros((g.n, g.n), dtype=np.int64)
            for u, v in g.single_arcs:
                h[u, v] = w
                h[v, u] = pow(w, p - 2, p)
            for u, v in g.digons:
                h[u, v] = 1
                h[v, u] = 1
            cp = charpoly_mod_p(h, p)
            if cp[1::2].any():
                return False
        modulus *= p
        if modulus > 2 * bound:
            return True
    raise ContractError("ran out of primes below the int64-safe limit")
