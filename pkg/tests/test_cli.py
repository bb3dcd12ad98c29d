import json
import math

import pytest

from mixedspec.cli import build_from_spec, main, parse_angle
from mixedspec.constructions import book_graph, g_m
from mixedspec.errors import InputError
from mixedspec.graph import parse_graph


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_angle():
    a = parse_angle("1/3")
    assert a.exact and (a.l, a.m) == (1, 3) and math.isclose(a.theta, math.pi / 3)
    assert (parse_angle("2/6").l, parse_angle("2/6").m) == (1, 3)
    r = parse_angle("rad:0.5")
    assert not r.exact and r.theta == 0.5
    for bad in ("0.5", "1/0", "0/3", "x/y", "rad:abc"):
        with pytest.raises(InputError):
            parse_angle(bad)


def test_build_from_spec():
    assert build_from_spec("book 2,2,1").graph == book_graph((2, 2, 1)).graph
    assert build_from_spec("gm 4").graph == g_m(4).graph
    assert build_from_spec("path 6:3").graph.n == 6
    assert build_from_spec("double(gm 2)").graph.n == 8
    assert build_from_spec("double(double(fig9))").graph.n == 16
    with pytest.raises(InputError):
        build_from_spec("petersen")
    with pytest.raises(InputError):
        build_from_spec("book 0,0")


def test_charpoly_guo_mohar(capsys):
    code, out, _ = run(capsys, "charpoly", "guo-mohar", "--at", "1/2")
    assert code == 0 and "x^4 - 6x^2 + 5" in out


def test_charpoly_json(capsys):
    code, out, _ = run(capsys, "charpoly", "guo-mohar", "--json", "--cos")
    data = json.loads(out)
    assert data["degree"] == 4
    assert len(data["coefficients"]) == 5


def test_spectrum_json_is_stable(capsys):
    _, a, _ = run(capsys, "spectrum", "gm 3", "--angle", "1/3", "--json")
    _, b, _ = run(capsys, "spectrum", "gm 3", "--angle", "1/3", "--json")
    assert a == b
    vals = json.loads(a)["eigenvalues"]
    assert len(vals) == 11 and vals == sorted(vals)


def test_symmetric_verdicts(capsys):
    code, out, _ = run(capsys, "symmetric", "book 2,1", "--angle", "1/3", "--json")
    assert code == 0 and json.loads(out)["symmetric"] is True
    _, out, _ = run(capsys, "symmetric", "book 2,1", "--angle", "1/4", "--json")
    assert json.loads(out)["symmetric"] is False


@pytest.mark.parametrize("spec,l,m", [("guo-mohar", 1, 2), ("mohar", 1, 3), ("fig9", 1, 1), ("gm 3", 1, 3), ("book 2,1", 1, 4)])
def test_rational_and_radian_paths_agree(capsys, spec, l, m):
    _, a, _ = run(capsys, "symmetric", spec, "--angle", f"{l}/{m}", "--json")
    _, b, _ = run(capsys, "symmetric", spec, "--angle", f"rad:{l * math.pi / m!r}", "--json")
    assert json.loads(a)["symmetric"] == json.loads(b)["symmetric"]
    assert json.loads(b)["method"] == "numeric"


def test_bare_decimal_angle_is_rejected(capsys):
    code, _, err = run(capsys, "spectrum", "mohar", "--angle", "0.5")
    assert code == 2 and "rad:" in err


def test_missing_angle(capsys):
    code, _, err = run(capsys, "spectrum", "mohar")
    assert code == 2 and "angle" in err


def test_construct_round_trip(tmp_path, capsys):
    for spec in ("book 2,2,1", "path 6:3", "double(guo-mohar)", "gm 3"):
        path = tmp_path / "g.txt"
        code, _, _ = run(capsys, "construct", spec, "-o", str(path))
        assert code == 0
        assert parse_graph(path.read_text()).arcs == build_from_spec(spec).graph.arcs
        _, out, _ = run(capsys, "charpoly", str(path))
        _, direct, _ = run(capsys, "charpoly", spec)
        assert out.splitlines()[1:] == direct.splitlines()[1:]


def test_construct_stdout_reparses(capsys):
    _, out, _ = run(capsys, "construct", "path 3:1")
    assert parse_graph(out).arcs == {(0, 1), (2, 1)}


def test_bad_graph_file(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("n 3\na 0 7\n")
    code, _, err = run(capsys, "spectrum", str(path), "--angle", "1/2")
    assert code == 2 and "line 2" in err


def test_flux(capsys):
    _, out, _ = run(capsys, "flux", "mohar", "--json")
    data = json.loads(out)
    assert data["odd_circumference"] == 3
    assert all(abs(c["flux"]) <= c["length"] for c in data["cycles"])


def test_search_json(capsys):
    code, out, _ = run(capsys, "search", "--angle", "1/5", "--max-t", "3", "--max-sheets", "6", "--json")
    data = json.loads(out)
    assert code == 0 and data["angle"] == [1, 5]
    assert [row["t"] for row in data["per_t"]] == [2, 3]
    assert data["minimum"]["witness"] == [2, 2, 1]


def test_search_table(capsys):
    code, out, _ = run(capsys, "search", "--table", "3:5", "--json")
    rows = json.loads(out)["rows"]
    assert [r["min_odd_circumference"] for r in rows] == [3, 3, 5]


def test_verify_only(capsys):
    code, out, _ = run(capsys, "verify", "--only", "guo-mohar", "fig10")
    assert code == 0 and "2/2 checks passed" in out
    code, out, _ = run(capsys, "verify", "--only", "table3", "--json")
    data = json.loads(out)
    assert data["passed"] and "3,3,5,3,7,5,7,5,11,7,13" in data["checks"][0]["details"][0]


def test_verify_unknown_check_fails(capsys):
    code, out, _ = run(capsys, "verify", "--only", "nope")
    assert code == 1 and "FAIL" in out
