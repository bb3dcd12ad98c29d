"""Reproduction checks run by ``mixedspec verify``.

Each check returns a :class:`CheckResult`; nothing is skipped silently.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from mixedspec import constructions as C
from mixedspec.charpoly import (
    charpoly_berkowitz,
    charpoly_elementary,
    coeff_in_cos,
    elementary_subgraphs,
    is_symmetric_exact,
    is_symmetric_numeric,
)
from mixedspec.graph import is_bipartite, odd_circumference, odd_girth
from mixedspec.numeric import build_h_theta, eigenvalues
from mixedspec.rings import CosPoly, LaurentPoly, eval_at_root_of_unity, to_cos_poly
from mixedspec.search import (
    book_is_symmetric_fast,
    counterexample_for,
    min_odd_circumference_table,
    scan_books,
    verify_coefficient_relation,
)

TABLE3 = (3, 3, 5, 3, 7, 5, 7, 5, 11, 7, 13)


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "details": self.details,
        }


class _Recorder:
    def __init__(self):
        self.details: list[str] = []
        self.ok = True

    def check(self, cond: bool, msg: str) -> None:
        self.details.append(("ok   " if cond else "FAIL ") + msg)
        self.ok = self.ok and bool(cond)


def _irreducible(m_max: int):
    for m in range(1, m_max + 1):
        for l in range(1, m + 1):
            if math.gcd(l, m) == 1:
                yield l, m


def check_guo_mohar(r: _Recorder) -> None:
    g = C.guo_mohar()
    cp = charpoly_berkowitz(g)
    at = [v.coeffs[0] if not any(v.coeffs[1:]) else None for v in cp.at_root(1, 2)]
    r.check(at == [1, 0, -6, 0, 5], f"charpoly at pi/2 has coefficients {at}")
    vals = eigenvalues(build_h_theta(g, math.pi / 2)).eigenvalues
    want = (-math.sqrt(5), -1.0, 1.0, math.sqrt(5))
    r.check(max(abs(a - b) for a, b in zip(vals, want)) < 1e-9, f"spectrum at pi/2 {vals}")
    cs = [LaurentPoly.cos_pair(k) for k in (1, 2, 3)]
    a3 = -2 - cs[0] - cs[1] - cs[2]
    a4 = 3 - cs[0] - cs[1] - cs[2]
    r.check(to_cos_poly(cp[3]) == to_cos_poly(a3), f"a3 = {to_cos_poly(cp[3])}")
    r.check(to_cos_poly(cp[4]) == to_cos_poly(a4), f"a4 = {to_cos_poly(cp[4])}")


def check_oracle(r: _Recorder, samples: int = 500) -> None:
    rng = np.random.default_rng(20240101)
    bad = 0
    for _ in range(samples):
        n = int(rng.integers(0, 6))
        g = C.random_mixed_graph(rng, n, p_edge=float(rng.uniform(0.2, 1.0)))
        bad += charpoly_berkowitz(g) != charpoly_elementary(g)
    r.check(bad == 0, f"{samples} random graphs with n <= 5, {bad} mismatches")
    for name, g in _named_small():
        r.check(charpoly_berkowitz(g) == charpoly_elementary(g), f"{name} (n={g.n})")


def _named_small():
    out = [
        ("guo-mohar", C.guo_mohar()),
        ("mohar", C.mohar_fig10()),
        ("fig9", C.pi_example_fig9()),
        ("G_2", C.g_m(2).graph),
        ("G_3", C.g_m(3).graph),
        ("G(2,1)", C.book_graph((2, 1)).graph),
        ("G(1,1)", C.book_graph((1, 1)).graph),
        ("G(0,1,1)", C.book_graph((0, 1, 1)).graph),
        ("G(0,0,1)", C.book_graph((0, 0, 1)).graph),
        ("P_6^(3,2)", C.oriented_path(6, 3).graph),
        ("double(G(0,1))", C.double_proper(C.book_graph((0, 1)).graph)),
        ("double(guo-mohar)", C.double_proper(C.guo_mohar())),
    ]
    return [(k, g) for k, g in out if g.n <= 12]


def check_bipartite(r: _Recorder) -> None:
    rng = np.random.default_rng(7)
    bad_num = bad_exact = 0
    for _ in range(50):
        g = C.random_bipartite_mixed_graph(rng, int(rng.integers(1, 11)), p_edge=0.6)
        for theta in rng.uniform(0, math.pi, size=10):
            bad_num += not is_symmetric_numeric(g, float(theta), 1e-8)
        for _ in range(10):
            m = int(rng.integers(1, 13))
            l = int(rng.integers(1, 2 * m))
            if l % (2 * m) == 0:
                l = 1
            bad_exact += not is_symmetric_exact(g, l, m)
    r.check(bad_num == 0, f"numeric symmetry on 500 (graph, theta) pairs, {bad_num} failures")
    r.check(bad_exact == 0, f"exact symmetry on 500 (graph, angle) pairs, {bad_exact} failures")


def check_main_theorem(r: _Recorder, m_max: int = 8) -> None:
    for l, m in _irreducible(m_max):
        g = counterexample_for(l, m).graph
        r.check(not is_bipartite(g) and is_symmetric_exact(g, l, m), f"theta={l}pi/{m}")
    cp = charpoly_berkowitz(C.g_m(3).graph)
    r.check(eval_at_root_of_unity(cp[5], 1, 6).is_zero(), "G_3: a5 vanishes at pi/3")


def check_perturbation(r: _Recorder) -> None:
    g = C.g_m(3).graph
    r.check(is_symmetric_numeric(g, math.pi / 3), "G_3 symmetric at pi/3")
    for d in (-0.01, 0.01):
        r.check(not is_symmetric_numeric(g, math.pi / 3 + d), f"G_3 not symmetric at pi/3{d:+}")


def check_relation(r: _Recorder) -> None:
    for m in (2, 3):
        r.check(verify_coefficient_relation(m), f"G_{m}")


def check_table1(r: _Recorder, m_max: int = 13) -> None:
    for l, m in _irreducible(m_max):
        if m < 3:
            continue
        g = counterexample_for(l, m).graph
        want = m if m % 2 else (m // 2 if m % 4 == 2 else m // 2 + 1)
        oc = odd_circumference(g)
        r.check(
            oc == want and not is_bipartite(g) and is_symmetric_exact(g, l, m),
            f"theta={l}pi/{m}: odd circumference {oc} (want {want})",
        )


def check_minimality(r: _Recorder) -> None:
    for p in (5, 7):
        t = (p - 1) // 2
        rep = scan_books(1, p, max_t=t, max_sheets=2 * p, min_t=t)
        r.check(rep.witness is None, f"p={p}, t={t}: {rep.instance_count} instances, none symmetric")
        rep = scan_books(1, p, max_t=t + 1, max_sheets=2 * p, min_t=t + 1)
        want = (2,) * t + (1,)
        r.check(
            rep.min_sheets == p and rep.witness is not None and rep.witness.s == want,
            f"p={p}, t={t + 1}: minimum sheets {rep.min_sheets}, witness {rep.witness}",
        )
    r.check(is_symmetric_exact(C.book_graph((1, 0, 1, 1)).graph, 1, 9), "m=9: G(1,0,1,1) symmetric")
    rep = scan_books(1, 9, max_t=3, max_sheets=8, min_t=3)
    r.check(rep.witness is None, f"m=9, t=3: {rep.instance_count} instances, none symmetric")
    rep = scan_books(1, 12, max_t=3, max_sheets=12, min_t=3)
    r.check(rep.witness is None, f"m=12, t=3: {rep.instance_count} instances, none symmetric")


def check_table3(r: _Recorder) -> None:
    rows = min_odd_circumference_table(3, 13)
    got = tuple(row.min_odd_circumference for row in rows)
    r.check(got == TABLE3, f"row {','.join(map(str, got))}")


def check_fig10(r: _Recorder) -> None:
    a = charpoly_berkowitz(C.mohar_fig10())
    b = charpoly_berkowitz(C.book_graph((2, 1)).graph)
    r.check(a == b, "charpoly(mohar) == charpoly(G(2,1))")


def check_doubling(r: _Recorder) -> None:
    g = C.g_m(3).graph
    d = C.double_proper(g)
    theta = math.pi / 3
    base = np.array(eigenvalues(build_h_theta(g, theta)).eigenvalues)
    want = np.sort(np.concatenate([base + 1, base - 1]))
    got = np.array(eigenvalues(build_h_theta(d, theta)).eigenvalues)
    r.check(float(np.abs(got - want).max()) < 1e-9, "spectrum is {lambda +- 1}")
    r.check(d.is_proper and not is_bipartite(d), "proper and non-bipartite")
    r.check(is_symmetric_exact(d, 1, 3), "exactly symmetric at pi/3")


def check_cos_nonzero(r: _Recorder) -> None:
    rng = np.random.default_rng(12)
    found = 0
    while found < 20:
        g = C.random_mixed_graph(rng, int(rng.integers(3, 9)), p_edge=0.5)
        k = odd_girth(g)
        if k is None:
            continue
        found += 1
        f = coeff_in_cos(g, k)
        r.check(f != CosPoly(()), f"n={g.n}, odd girth {k}: f = {f}")


CHECKS: dict[str, Callable[[_Recorder], None]] = {
    "guo-mohar": check_guo_mohar,
    "oracle": check_oracle,
    "bipartite": check_bipartite,
    "main-theorem": check_main_theorem,
    "perturbation": check_perturbation,
    "relation": check_relation,
    "table1": check_table1,
    "minimality": check_minimality,
    "table3": check_table3,
    "fig10": check_fig10,
    "doubling": check_doubling,
    "cos-nonzero": check_cos_nonzero,
}


def run_checks(only: list[str] | None = None) -> list[CheckResult]:
    names = list(CHECKS) if not only else only
    out = []
    for name in names:
        if name not in CHECKS:
            out.append(CheckResult(name, False, [f"unknown check; choose from {', '.join(CHECKS)}"]))
            continue
        rec = _Recorder()
        start = time.perf_counter()
        try:
            CHECKS[name](rec)
        except Exception as exc:  # reported, never swallowed
            rec.check(False, f"raised {type(exc).__name__}: {exc}")
        out.append(CheckResult(name, rec.ok, rec.details, time.perf_counter() - start))
    return out
