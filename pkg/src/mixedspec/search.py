"""Bounded searches over oriented book graphs and the reproduction checks.

For a book graph every odd cycle has length ``2t - 1`` and removing any one
of them leaves the same forest, so the spectrum is symmetric iff
``a_{2t-1} = -sum_j s_j (z^{2j-1} + z^{-(2j-1)})`` vanishes.  Scans decide
that sum exactly in ``Z[x]/Phi_{2m}``, vectorized over all parameter tuples
of a given length and total; witnesses then get the full exact check.
"""

from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from mixedspec.charpoly import (
    charpoly_berkowitz,
    elementary_subgraphs,
    is_symmetric_exact,
)
from mixedspec.constructions import (
    BookParams,
    LabeledGraph,
    book_graph,
    g_m,
    pi_example_fig9,
)
from mixedspec.errors import InputError
from mixedspec.graph import MixedGraph
from mixedspec.rings import LaurentPoly, eval_at_root_of_unity, normalize_angle

logger = logging.getLogger(__name__)


def counterexample_for(l: int, m: int) -> LabeledGraph:
    """A non-bipartite graph whose spectrum is symmetric at ``theta = l pi / m``.

    ``m = 2`` has no book graph with odd circumference ``m/2``; the directed
    triangle ``G(0, 1)`` is used instead (every oriented graph is symmetric at
    ``pi/2``).
    """
    l, m = normalize_angle(l, m)
    if m == 1:
        return LabeledGraph(pi_example_fig9(), {}, "fig9")
    if m == 2:
        return book_graph(BookParams((0, 1)))
    if m % 2:
        s = (2,) * ((m - 1) // 2) + (1,)
    elif m % 4 == 2:
        s = (0,) * ((m - 2) // 4) + (1,)
    else:
        s = (0,) * (m // 4 - 1) + (1, 1)
    return book_graph(BookParams(s))


def sheet_values(t: int, l: int, m: int) -> np.ndarray:
    """Row ``j-1``: residue of ``z^{2j-1} + z^{-(2j-1)}`` at ``z = zeta_{2m}^l``."""
    rows = [
        eval_at_root_of_unity(LaurentPoly.cos_pair(2 * j - 1), l, 2 * m).coeffs
        for j in range(1, t + 1)
    ]
    return np.array(rows, dtype=np.int64)


def book_is_symmetric_fast(s: tuple[int, ...], l: int, m: int) -> bool:
    """Exact ``a_{2t-1} = 0`` test for ``G(s)``; equivalent to symmetry for book graphs."""
    vals = sheet_values(len(s), l, m)
    return not (np.array(s, dtype=np.int64) @ vals).any()


def compositions(total: int, parts: int) -> np.ndarray:
    """All non-negative ``parts``-tuples with the given sum, lexicographically ascending."""
    if parts == 1:
        return np.array([[total]], dtype=np.int64)
    bars = np.array(list(itertools.combinations(range(total + parts - 1), parts - 1)), dtype=np.int64)
    if bars.size == 0:
        bars = bars.reshape(0, parts - 1)
    edges = np.hstack(
        [np.full((len(bars), 1), -1), bars, np.full((len(bars), 1), total + parts - 1)]
    )
    return np.diff(edges, axis=1) - 1


def fold_params(s: tuple[int, ...], m: int) -> tuple[int, ...]:
    """Fold ``s`` onto the indices ``1 .. ceil(m/2)`` using ``cos`` periodicity.

    Index ``j`` and ``j + m`` give the same ``cos (2j-1) theta``, and ``j`` and
    ``m + 1 - j`` give the same value as well.  The result is padded to
    length 2 so it is a valid book parameter.
    """
    width = max(2, (m + 1) // 2)
    out = [0] * width
    for j, c in enumerate(s, start=1):
        r = (j - 1) % m + 1
        if r > (m + 1) // 2:
            r = m + 1 - r
        out[r - 1] += c
    return tuple(out)


@dataclass
class TScan:
    """All tuples of one length ``t``, in scan order, with their verdicts."""

    t: int
    tuples: np.ndarray
    symmetric: np.ndarray


@dataclass
class SearchReport:
    angle: tuple[int, int]
    max_t: int
    max_sheets: int
    min_t: int = 2
    scans: list[TScan] = field(default_factory=list)
    witness: BookParams | None = None
    witness_verified: bool | None = None
    complete: bool = True

    def iter_verdicts(self) -> Iterator[tuple[BookParams, bool]]:
        for sc in self.scans:
            for row, ok in zip(sc.tuples, sc.symmetric):
                yield BookParams(tuple(int(x) for x in row)), bool(ok)

    @property
    def verdicts(self) -> list[tuple[BookParams, bool]]:
        return list(self.iter_verdicts())

    @property
    def instance_count(self) -> int:
        return sum(len(sc.tuples) for sc in self.scans)

    def symmetric_instances(self, t: int | None = None) -> list[BookParams]:
        out = []
        for sc in self.scans:
            if t is None or sc.t == t:
                out += [BookParams(tuple(int(x) for x in r)) for r in sc.tuples[sc.symmetric]]
        return out

    @property
    def min_odd_circumference(self) -> int | None:
        return None if self.witness is None else self.witness.odd_circumference

    @property
    def min_sheets(self) -> int | None:
        return None if self.witness is None else self.witness.sheets

    def to_json(self) -> dict:
        per_t = []
        for sc in self.scans:
            hits = sc.tuples[sc.symmetric]
            per_t.append(
                {
                    "t": sc.t,
                    "instances": int(len(sc.tuples)),
                    "symmetric": int(sc.symmetric.sum()),
                    "first_symmetric": [int(x) for x in hits[0]] if len(hits) else None,
                }
            )
        return {
            "angle": list(self.angle),
            "bounds": {"min_t": self.min_t, "max_t": self.max_t, "max_sheets": self.max_sheets},
            "complete": self.complete,
            "per_t": per_t,
            "minimum": None
            if self.witness is None
            else {
                "odd_circumference": self.min_odd_circumference,
                "sheets": self.min_sheets,
                "witness": list(self.witness.s),
                "witness_verified": self.witness_verified,
            },
        }


def default_bounds(m: int) -> tuple[int, int]:
    return (m + 1) // 2 + 2, 2 * m


def _scan_t(args: tuple[int, int, int, int, bool]) -> TScan:
    t, l, m, max_sheets, stop_at_first = args
    vals = sheet_values(t, l, m)
    blocks, flags = [], []
    for total in range(1, max_sheets + 1):
        comp = compositions(total, t)
        ok = ~(comp @ vals).any(axis=1)
        blocks.append(comp)
        flags.append(ok)
        if stop_at_first and ok.any():
            break
    return TScan(t, np.vstack(blocks), np.concatenate(flags))


def scan_books(
    l: int,
    m: int,
    max_t: int | None = None,
    max_sheets: int | None = None,
    min_t: int = 2,
    jobs: int = 1,
    stop_at_first: bool = False,
    verify_witness: bool = True,
) -> SearchReport:
    """Exact verdict for every ``G(s)`` with ``min_t <= t <= max_t`` and ``1 <= sum s <= max_sheets``.

    Order is lexicographic over ``(t, sum s, s)``.  With ``stop_at_first`` the
    scan ends after the first sheet total, at the first ``t``, that has a
    symmetric instance; the minima are the same either way.
    """
    l, m = normalize_angle(l, m)
    dt, ds = default_bounds(m)
    max_t = dt if max_t is None else max_t
    max_sheets = ds if max_sheets is None else max_sheets
    if max_t < 2 or max_sheets < 1 or min_t < 2:
        raise InputError("need max_t >= 2, min_t >= 2 and max_sheets >= 1")
    report = SearchReport((l, m), max_t, max_sheets, min_t)
    ts = list(range(min_t, max_t + 1))
    work = [(t, l, m, max_sheets, stop_at_first) for t in ts]
    if jobs > 1 and not stop_at_first and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            scans = list(pool.map(_scan_t, work))
    else:
        scans = []
        for item in work:
            sc = _scan_t(item)
            scans.append(sc)
            if stop_at_first and sc.symmetric.any():
                break
    report.scans = scans
    report.complete = not stop_at_first or len(scans) == len(ts)
    for sc in scans:
        if sc.symmetric.any():
            row = sc.tuples[int(np.argmax(sc.symmetric))]
            report.witness = BookParams(tuple(int(x) for x in row))
            break
    if report.witness is not None and verify_witness:
        report.witness_verified = is_symmetric_exact(book_graph(report.witness).graph, l, m)
    return report


@dataclass(frozen=True)
class TableRow:
    m: int
    angles: tuple[int, ...]
    min_odd_circumference: int | None
    min_sheets: int | None
    witness: BookParams | None
    per_angle: dict[int, int | None]
    proven: bool

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "angles": list(self.angles),
            "min_odd_circumference": self.min_odd_circumference,
            "min_sheets": self.min_sheets,
            "witness": None if self.witness is None else list(self.witness.s),
            "per_angle": {str(k): v for k, v in self.per_angle.items()},
            "status": "minimum within bounds" if self.proven else "upper bound only",
        }


def _second_angle(m: int) -> int | None:
    for l in range(2, m):
        if math.gcd(l, m) == 1:
            return l
    return None


def min_odd_circumference_table(
    m_from: int, m_to: int, bounds: tuple[int, int] | None = None
) -> list[TableRow]:
    """Least odd circumference of a symmetric book graph, for each ``m``.

    Each ``m`` is scanned at ``l = 1`` and at the smallest other ``l``
    coprime to ``m``; the row reports the larger of the two minima, the value
    that serves both angles.  ``proven`` is true when every angle found a
    witness inside the bounds, so every smaller ``t`` was exhausted.
    """
    rows = []
    for m in range(m_from, m_to + 1):
        if m < 1:
            raise InputError("m must be positive")
        mt, ms = bounds if bounds is not None else default_bounds(m)
        angles = (1,) + ((_second_angle(m),) if _second_angle(m) else ())
        per_angle: dict[int, int | None] = {}
        best: SearchReport | None = None
        for l in angles:
            rep = scan_books(l, m, mt, ms, stop_at_first=True)
            per_angle[l] = rep.min_odd_circumference
            if rep.witness is not None and rep.witness_verified is False:
                raise AssertionError(f"fast verdict disagrees with the exact check for {rep.witness}")
            if best is None or (
                rep.witness is not None
                and (best.witness is None or rep.witness.t > best.witness.t)
            ):
                best = rep
        proven = all(v is not None for v in per_angle.values())
        w = best.witness if best is not None else None
        rows.append(
            TableRow(
                m,
                angles,
                max(per_angle.values()) if proven else None,
                w.sheets if w is not None else None,
                w,
                per_angle,
                proven,
            )
        )
    return rows


def paths_union(count: int, length: int) -> MixedGraph:
    """``count`` disjoint undirected paths on ``length`` vertices each, as digons."""
    digons = []
    for c in range(count):
        base = c * length
        digons += [(base + i, base + i + 1) for i in range(length - 1)]
    return MixedGraph.build(count * length, digons=digons)


@dataclass(frozen=True)
class RelationCheck:
    m: int
    k: int
    m_k: int
    sign: int
    holds: bool


def coefficient_relation(m: int) -> list[RelationCheck]:
    """Check ``a_{2k-1} = (-1)^{k-m} M_k a_{2m-1}`` on ``G_m`` for every ``k > m``.

    ``M_k`` counts elementary subgraphs on ``2(k-m)`` vertices of the forest
    left after removing one odd cycle, ``(m-1) P_{2m-3}``.  Also checks that
    ``a_{2k-1} = 0`` for ``k < m``.
    """
    if m < 2:
        raise InputError(f"need m >= 2, got {m}")
    g = g_m(m).graph
    cp = charpoly_berkowitz(g)
    forest = paths_union(m - 1, 2 * m - 3)
    out = []
    for k in range(1, (g.n + 1) // 2 + 1):
        if 2 * k - 1 > g.n:
            break
        if k < m:
            out.append(RelationCheck(m, k, 0, 0, cp[2 * k - 1].is_zero()))
        elif k > m:
            mk = len(elementary_subgraphs(forest, 2 * (k - m)))
            sign = -1 if (k - m) % 2 else 1
            out.append(RelationCheck(m, k, mk, sign, cp[2 * k - 1] == cp[2 * m - 1] * (sign * mk)))
    return out


def verify_coefficient_relation(m: int) -> bool:
    return all(c.holds for c in coefficient_relation(m))
