import io
import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from modcsp import cli
from modcsp.core import Literal
from modcsp.errors import ParseError, SemanticError
from modcsp.generators import GENERATORS
from modcsp.polyrep import nand_trivial
from modcsp.reductions import random_3sat
from modcsp.textio import parse, parse_cnf, parse_poly, serialize, serialize_cnf, serialize_poly


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    return cli.main(argv, out, err), out.getvalue(), err.getvalue()


def test_spec_example_roundtrip():
    text = "p modcsp horn 3 1\nh 3 2 1 2\ng 2 1 0 1 0 1 0 1\n"
    inst = parse(text)
    assert inst.clauses[0] == (2, frozenset([0, 1]))
    assert serialize(inst) == text


def test_twosat_sign():
    inst = parse("p modcsp 2sat 2 1\nt 1 -2\ng 2 0 0 1 0 1\n")
    assert inst.clauses[0] == (Literal(0, True), Literal(1, False))


@pytest.mark.parametrize("text,err", [
    ("p modcsp horn 3 1\nh 3 2 1 2\ng 2 1 0 1\n", SemanticError),
    ("p modcsp horn 3 1\nh 3 2 1 2\ng 2 1 0 1 0 1 0 1\np modcsp horn 3 1\n", SemanticError),
    ("p modcsp horn 3 2\nh 3 2 1 2\ng 2 1 0 1 0 1 0 1\n", SemanticError),
    ("p modcsp horn 3 1\nh 4 2 1 2\ng 2 1 0 1 0 1 0 1\n", SemanticError),
    ("p modcsp horn 3 1\nh 3 2 1 2\ng 2 5 0 1 0 1 0 1\n", SemanticError),
    ("p modcsp horn 3 1\nh 3 2 1  2\ng 2 1 0 1 0 1 0 1\n", ParseError),
    ("p modcsp horn 3 1\r\nh 3 2 1 2\ng 2 1 0 1 0 1 0 1\n", ParseError),
    ("p modcsp horn 3 1\nq 1\ng 2 1 0 1 0 1 0 1\n", ParseError),
    ("p modcsp horn 3 1\nh 3 x 1 2\ng 2 1 0 1 0 1 0 1\n", ParseError),
    ("p modcsp cnf 3 1\n", ParseError),
])
def test_parse_errors(text, err):
    with pytest.raises(err):
        parse(text)


def test_parse_error_carries_line():
    with pytest.raises(ParseError) as info:
        parse("p modcsp horn 3 1\nh 3 2 1  2\n")
    assert info.value.line == 2


@pytest.mark.parametrize("kind", sorted(GENERATORS))
def test_roundtrip_500(kind):
    rng = random.Random(kind)
    for _ in range(500):
        mods = rng.choice([[2], [3], [6], [2, 3], [4, 5, 2]])
        inst = GENERATORS[kind](rng.randint(1, 8), rng.randint(0, 8), mods, rng, rng.randint(1, 3))
        text = serialize(inst)
        back = parse(text)
        assert back == inst
        assert serialize(back) == text


@settings(max_examples=100, deadline=None)
@given(st.dictionaries(st.integers(0, 63), st.integers(-10**30, 10**30).filter(bool), max_size=8))
def test_poly_roundtrip(terms):
    from modcsp.polyrep import IntPoly
    p = IntPoly(6, terms)
    assert parse_poly(serialize_poly(p)) == p


def test_cnf_roundtrip():
    phi = random_3sat(5, 7, random.Random(0))
    assert parse_cnf(serialize_cnf(phi)) == phi


def test_solve_pipes_back_through_oracle(tmp_path):
    f = tmp_path / "a.mcsp"
    f.write_text("p modcsp horn 3 1\nh 3 2 1 2\ng 2 1 0 1 0 1 0 1\n")
    code, out, _ = run(["solve", "--auto", str(f)])
    assert code == 10
    bits = [l for l in out.splitlines() if l.startswith("v ")][0][2:]
    assert parse(f.read_text()).is_solution(tuple(map(int, bits)))
    assert run(["oracle", str(f)])[0] == 10


def test_json_output(tmp_path):
    f = tmp_path / "a.mcsp"
    f.write_text("p modcsp lin2 2 1\nl 1 2 1 2\ng 3 1 0 1 0 1\n")
    code, out, _ = run(["solve", "--json", str(f)])
    obj = json.loads(out)
    assert code == 10 and obj["format"] == 1 and obj["status"] == "SAT" and obj["residue"] == [1]
    f.write_text("p modcsp lin2 2 1\nl 1 2 1 2\ng 3 0 0 1 0 1\n")
    code, out, _ = run(["oracle", "--json", str(f)])
    assert code == 20 and json.loads(out)["status"] == "UNSAT"


def test_usage_errors():
    code, _, err = run(["solve", "--bogus", "x"])
    assert code == 1 and "usage" in err
    assert run([])[0] == 1
    assert run(["--help"])[0] == 0


def test_gen_output_parses(tmp_path):
    for argv in (["gen", "random", "--kind", "2sat", "--n", "4", "--m", "3", "--moduli", "2,3"],
                 ["gen", "3sat-lin2", "--modulus", "3", "--t", "3", "--m", "2"],
                 ["gen", "hadamard", "--d", "2", "--copies", "2", "--modulus", "3", "--target", "1"]):
        code, out, _ = run(argv)
        assert code == 0
        parse(out)


def test_poly_cli(tmp_path):
    code, out, _ = run(["poly", "build", "or-trivial", "--d", "3", "--modulus", "5"])
    assert code == 0
    f = tmp_path / "p.poly"
    f.write_text(out)
    assert run(["poly", "check", "--kind", "or", "--modulus", "5", str(f)])[0] == 0
    code, out, _ = run(["poly", "mvf", "--modulus", "5", str(f)])
    assert code == 0 and "size 8" in out
    f.write_text(serialize_poly(nand_trivial(4, 3)))
    code, out, _ = run(["poly", "cov", "--json", str(f)])
    assert json.loads(out)["cov"] == 2


def test_reduce_flatten(tmp_path):
    f = tmp_path / "g.mcsp"
    f.write_text("p modcsp horn 2 0\ng 2 1 0 1 0 1\ng 3 1 0 1 0 1\n")
    code, out, _ = run(["reduce", "flatten", str(f)])
    assert code == 0
    flat = parse(out)
    assert flat.side.group.moduli == (6,)
