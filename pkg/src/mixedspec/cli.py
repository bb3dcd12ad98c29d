"""Command-line interface.

Graphs are given as a path to a file in the text format, ``-`` for stdin, or
a construction spec::

    book 2,2,1 | gm 4 | path 6:3 | cycle 5 | guo-mohar | mohar | fig9 | double(<spec>)

Angles: ``l/m`` means ``theta = l pi / m``; raw radians need ``rad:``.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from dataclasses import dataclass

from mixedspec import constructions as C
from mixedspec.charpoly import (
    charpoly_berkowitz,
    is_symmetric_exact,
    is_symmetric_numeric,
)
from mixedspec.errors import InputError, MixedSpecError
from mixedspec.graph import (
    MixedGraph,
    cycle_flux,
    enumerate_cycles,
    format_graph,
    is_bipartite,
    odd_circumference,
    parse_graph,
)
from mixedspec.numeric import build_h_theta, eigenvalues, spectrum_is_symmetric
from mixedspec.rings import eval_at_root_of_unity, format_cos_sum, normalize_angle, to_cos_poly

log = logging.getLogger("mixedspec")


@dataclass(frozen=True)
class Angle:
    """Either a rational multiple ``l pi / m`` or a raw radian value."""

    l: int | None = None
    m: int | None = None
    radians: float | None = None

    @property
    def exact(self) -> bool:
        return self.m is not None

    @property
    def theta(self) -> float:
        return self.radians if self.radians is not None else self.l * math.pi / self.m

    def __str__(self) -> str:
        return f"{self.l}pi/{self.m}" if self.exact else f"{self.radians!r} rad"


def parse_angle(text: str) -> Angle:
    text = text.strip()
    if text.startswith("rad:"):
        try:
            return Angle(radians=float(text[4:]))
        except ValueError:
            raise InputError(f"bad radian value {text!r}") from None
    if "/" in text:
        a, _, b = text.partition("/")
        try:
            l, m = int(a), int(b)
        except ValueError:
            raise InputError(f"bad rational angle {text!r}; expected l/m") from None
        l, m = normalize_angle(l, m)
        return Angle(l, m)
    raise InputError(
        f"angle {text!r}: write l/m for theta = l*pi/m, or rad:<value> for radians"
    )


def build_from_spec(spec: str) -> C.LabeledGraph:
    spec = spec.strip()
    if spec.startswith("double(") and spec.endswith(")"):
        inner = build_from_spec(spec[len("double(") : -1])
        return C.LabeledGraph(C.double_proper(inner.graph), {}, f"double({inner.name})")
    head, _, rest = spec.partition(" ")
    rest = rest.strip()
    try:
        if head in C.NAMED and not rest:
            return C.LabeledGraph(C.NAMED[head](), {}, head)
        if head == "book":
            return C.book_graph(tuple(int(x) for x in rest.split(",")))
        if head == "gm":
            return C.g_m(int(rest))
        if head == "path":
            m, _, a = rest.partition(":")
            return C.oriented_path(int(m), int(a))
        if head == "cycle":
            return C.LabeledGraph(C.directed_cycle(int(rest)), {}, f"C_{rest}")
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"bad construction spec {spec!r}: {exc}") from None
    raise InputError(f"unknown graph {spec!r}: not a file and not a construction spec")


def load_graph(arg: str) -> tuple[MixedGraph, dict[str, int], str]:
    if arg == "-":
        return parse_graph(sys.stdin.read()), {}, "<stdin>"
    if os.path.exists(arg):
        with open(arg) as fh:
            return parse_graph(fh.read()), {}, arg
    lg = build_from_spec(arg)
    return lg.graph, lg.labels, lg.name


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print("\n".join(lines))


def _require_angle(args) -> Angle:
    if args.angle is None:
        raise InputError("this command needs --angle")
    return parse_angle(args.angle)


def _decide(g: MixedGraph, angle: Angle, tol: float) -> tuple[bool, str]:
    if angle.exact:
        return is_symmetric_exact(g, angle.l, angle.m), "exact"
    return is_symmetric_numeric(g, angle.theta, tol), "numeric"


def cmd_spectrum(args) -> int:
    g, _, name = load_graph(args.graph)
    angle = _require_angle(args)
    spec = eigenvalues(build_h_theta(g, angle.theta), angle.theta)
    sym, how = _decide(g, angle, args.tol)
    payload = spec.to_json() | {"graph": name, "angle": str(angle), "symmetric": sym, "method": how}
    lines = [f"{name} at theta = {angle}"]
    lines += [f"  {x: .12g}" for x in spec.eigenvalues]
    lines.append(f"symmetric={str(sym).lower()} ({how})")
    _emit(args, payload, lines)
    return 0


def _laurent_line(j: int, a) -> str:
    return f"a{j} = {a}"


def cmd_charpoly(args) -> int:
    g, _, name = load_graph(args.graph)
    cp = charpoly_berkowitz(g)
    payload = {"graph": name} | cp.to_json()
    lines = [f"{name}: det(xI - H) = sum_j a_j x^(n-j), n = {cp.n}"]
    for j, a in enumerate(cp.coeffs):
        lines.append(_laurent_line(j, a))
    if args.cos:
        cos = [to_cos_poly(a) for a in cp.coeffs]
        payload["cos"] = [f.to_json() for f in cos]
        lines.append("in c = cos(theta):")
        for j, (a, f) in enumerate(zip(cp.coeffs, cos)):
            lines.append(f"a{j} = {format_cos_sum(a)} = {f}")
    if args.at:
        angle = parse_angle(args.at)
        if not angle.exact:
            raise InputError("--at needs a rational angle l/m")
        vals = [eval_at_root_of_unity(a, angle.l, 2 * angle.m) for a in cp.coeffs]
        approx = [v.to_complex().real for v in vals]
        payload["at"] = {
            "angle": [angle.l, angle.m],
            "exact": [v.to_json() for v in vals],
            "approx": [float(f"{x:.15g}") for x in approx],
        }
        lines.append(f"at theta = {angle} (basis 1, zeta, zeta^2, .. with zeta = exp(i pi/{angle.m})):")
        lines.append("  " + _poly_text(vals, approx))
        for j, (v, x) in enumerate(zip(vals, approx)):
            lines.append(f"  a{j} = {list(v.coeffs)} ~ {x:.12g}")
    _emit(args, payload, lines)
    return 0


def _poly_text(vals, approx) -> str:
    """``x^4 - 6x^2 + 5`` when every coefficient is rational, else the decimals."""
    n = len(vals) - 1
    terms = []
    for j, (v, x) in enumerate(zip(vals, approx)):
        rational = not any(v.coeffs[1:])
        c = v.coeffs[0] if rational else x
        if c == 0:
            continue
        power = n - j
        mono = "" if power == 0 else ("x" if power == 1 else f"x^{power}")
        mag = abs(c)
        coef = f"{mag:g}" if not rational else str(mag)
        body = mono if (mag == 1 and mono) else (coef + mono)
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def cmd_symmetric(args) -> int:
    g, _, name = load_graph(args.graph)
    angle = _require_angle(args)
    sym, how = _decide(g, angle, args.tol)
    payload = {
        "graph": name,
        "angle": str(angle),
        "symmetric": sym,
        "method": how,
        "bipartite": is_bipartite(g),
    }
    lines = [f"{name} at theta = {angle}: symmetric={str(sym).lower()} ({how}), bipartite={str(is_bipartite(g)).lower()}"]
    _emit(args, payload, lines)
    return 0


def cmd_construct(args) -> int:
    lg = build_from_spec(args.spec)
    comments = [f"{lg.name}", "labels " + json.dumps(lg.labels, sort_keys=True)]
    text = format_graph(lg.graph, comments)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    if args.json:
        print(
            json.dumps(
                {
                    "name": lg.name,
                    "n": lg.graph.n,
                    "arcs": sorted(lg.graph.single_arcs),
                    "digons": sorted(lg.graph.digons),
                    "labels": lg.labels,
                },
                indent=2,
            )
        )
    elif not args.output:
        sys.stdout.write(text)
    return 0


def cmd_flux(args) -> int:
    g, labels, name = load_graph(args.graph)
    cycles = enumerate_cycles(g, args.max_len)
    rows = [{"cycle": list(c.vertices), "length": len(c), "flux": cycle_flux(g, c)} for c in cycles]
    payload = {"graph": name, "odd_circumference": odd_circumference(g), "cycles": rows}
    lines = [f"{name}: {len(rows)} cycles, odd circumference {odd_circumference(g)}"]
    lines += [f"  len {r['length']:>3}  flux {r['flux']:+d}  {r['cycle']}" for r in rows]
    _emit(args, payload, lines)
    return 0


def cmd_search(args) -> int:
    from mixedspec.search import min_odd_circumference_table, scan_books

    if args.table:
        a, _, b = args.table.partition(":")
        bounds = (args.max_t, args.max_sheets) if args.max_t and args.max_sheets else None
        rows = min_odd_circumference_table(int(a), int(b or a), bounds)
        payload = {"rows": [r.to_json() for r in rows]}
        lines = ["m   min odd circ.  sheets  witness           status"]
        for r in rows:
            lines.append(
                f"{r.m:<3} {str(r.min_odd_circumference):<14} {str(r.min_sheets):<7} "
                f"{str(r.witness):<17} {'minimum within bounds' if r.proven else 'upper bound only'}"
            )
        _emit(args, payload, lines)
        return 0
    angle = _require_angle(args)
    if not angle.exact:
        raise InputError("search needs a rational angle l/m")
    rep = scan_books(angle.l, angle.m, args.max_t, args.max_sheets, args.min_t, args.jobs)
    payload = rep.to_json()
    lines = [
        f"theta = {angle}: t in [{rep.min_t}, {rep.max_t}], 1 <= sheets <= {rep.max_sheets}, "
        f"{rep.instance_count} book graphs"
    ]
    for item in payload["per_t"]:
        lines.append(
            f"  t={item['t']} (odd circumference {2 * item['t'] - 1}): "
            f"{item['symmetric']}/{item['instances']} symmetric, first {item['first_symmetric']}"
        )
    if rep.witness is None:
        lines.append("no symmetric book graph within bounds")
    else:
        lines.append(
            f"minimum: odd circumference {rep.min_odd_circumference}, {rep.min_sheets} sheets, "
            f"witness {rep.witness} (full exact check: {rep.witness_verified})"
        )
    _emit(args, payload, lines)
    return 0


def cmd_verify(args) -> int:
    from mixedspec.reproduce import run_checks

    results = run_checks(args.only)
    failed = [r for r in results if not r.passed]
    if args.json:
        print(json.dumps({"passed": not failed, "checks": [r.to_json() for r in results]}, indent=2))
    else:
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}  ({r.seconds:.2f}s)")
            for d in r.details:
                if args.verbose or d.startswith("FAIL"):
                    print(f"    {d}")
        print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 1 if failed else 0


def _add_common(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--angle", default=d(None), help="l/m for theta = l*pi/m, or rad:<radians>")
    p.add_argument("--tol", type=float, default=d(1e-8), help="numeric symmetry tolerance (default 1e-8)")
    p.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    p.add_argument("--jobs", type=int, default=d(1), help="worker processes for search")
    p.add_argument("-v", "--verbose", action="store_true", default=d(False))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mixedspec",
        description="Symmetric spectra of theta-Hermitian adjacency matrices of mixed graphs.",
    )
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        _add_common(p, suppress=True)
        p.set_defaults(func=func)
        return p

    p = add("spectrum", cmd_spectrum, "eigenvalues of H_theta and the symmetry verdict")
    p.add_argument("graph")
    p = add("charpoly", cmd_charpoly, "exact characteristic polynomial")
    p.add_argument("graph")
    p.add_argument("--cos", action="store_true", help="also print coefficients as polynomials in cos(theta)")
    p.add_argument("--at", metavar="L/M", help="exact values at theta = l*pi/m")
    p = add("symmetric", cmd_symmetric, "decide whether the spectrum is symmetric")
    p.add_argument("graph")
    p = add("construct", cmd_construct, "emit a constructed graph in the text format")
    p.add_argument("spec")
    p.add_argument("-o", "--output")
    p = add("flux", cmd_flux, "list cycles with their flux")
    p.add_argument("graph")
    p.add_argument("--max-len", type=int)
    p = add("search", cmd_search, "scan oriented book graphs at a rational angle")
    p.add_argument("--max-t", type=int)
    p.add_argument("--max-sheets", type=int)
    p.add_argument("--min-t", type=int, default=2)
    p.add_argument("--table", metavar="M1:M2", help="minimum odd circumference table for m in [M1, M2]")
    p = add("verify", cmd_verify, "run the reproduction checks")
    p.add_argument("--only", nargs="+", metavar="CHECK")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    try:
        return args.func(args)
    except MixedSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
