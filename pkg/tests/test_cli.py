import io
import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cartanforge import cli
from cartanforge.cli import BinOp, Neg, Num, ParseError, Pow, Var, format_phi, parse_phi, to_polynomial

leaves = st.one_of(
    st.builds(Num, st.fractions(min_value=0, max_value=50, max_denominator=7)),
    st.builds(Var, st.sampled_from(["x", "y", "u"])),
)
trees = st.recursive(
    leaves,
    lambda sub: st.one_of(
        st.builds(BinOp, st.sampled_from(["+", "-", "*"]), sub, sub),
        st.builds(Neg, sub),
        st.builds(Pow, sub, st.integers(0, 3)),
    ),
    max_leaves=8,
)
points = st.tuples(*[st.fractions(min_value=-5, max_value=5, max_denominator=5)] * 3)


def run(*argv):
    out = io.StringIO()
    status, payload = cli.run(list(argv), out=out)
    return status, payload, out.getvalue()


@given(trees)
def test_format_then_parse_is_identity(tree):
    assert parse_phi(format_phi(tree)) == tree


def _direct_value(tree, point):
    env = dict(zip("xyu", point))
    if isinstance(tree, Num):
        return tree.value
    if isinstance(tree, Var):
        return env[tree.name]
    if isinstance(tree, Neg):
        return -_direct_value(tree.operand, point)
    if isinstance(tree, Pow):
        return _direct_value(tree.base, point) ** tree.exponent
    left, right = _direct_value(tree.left, point), _direct_value(tree.right, point)
    return {"+": left + right, "-": left - right, "*": left * right}[tree.op]


@given(trees, points)
def test_polynomial_evaluation_matches_the_tree(tree, point):
    assert to_polynomial(tree).evaluate(point) == _direct_value(tree, point)


def test_precedence_and_rationals():
    assert parse_phi("x + y*u^2") == BinOp("+", Var("x"), BinOp("*", Var("y"), Pow(Var("u"), 2)))
    assert parse_phi("-x^2") == Neg(Pow(Var("x"), 2))
    assert parse_phi("1/3*x") == BinOp("*", Num(Fraction(1, 3)), Var("x"))


@pytest.mark.parametrize(
    "text, position",
    [("x^2+(y", 6), ("x^y", 2), ("x + * y", 4), ("x $ y", 2), ("", 0)],
)
def test_parse_errors_carry_position(text, position):
    with pytest.raises(ParseError) as info:
        parse_phi(text)
    assert info.value.position == position
    assert info.value.expected


def test_seed_comes_from_the_environment(monkeypatch):
    monkeypatch.setenv(cli.SEED_VARIABLE, "17")
    assert cli.resolve_seed(None) == 17
    assert cli.resolve_seed(3) == 3
    monkeypatch.delenv(cli.SEED_VARIABLE)
    assert cli.resolve_seed(None) == 0


def test_cohomology_command_reports_the_table():
    status, payload, text = run("cohomology", "--homogeneity", "4")
    assert status == 0
    assert payload["table"] == [{"homogeneity": 4, "C": 5, "Z": 3, "B": 1, "H": 2}]
    assert json.loads(text)["ok"]


def test_tanaka_command_on_bundled_file(tmp_path):
    status, payload, _ = run("tanaka")
    assert status == 0 and payload["dims"] == [1, 2, 2, 2, 1]
    assert payload["isomorphism_to_bundled"]["found"]


def test_free_lie_and_hol_commands():
    assert run("free-lie", "--max-length", "6")[0] == 0
    assert run("hol-heisenberg")[0] == 0


def test_curvature_on_the_sphere():
    status, payload, _ = run("curvature", "--phi", "x^2 + y^2")
    assert status == 0
    assert payload["verdict"] == "spherical at point"
    assert payload["basics"]["Upsilon"] == "-4"


def test_curvature_reports_degenerate_points():
    status, payload, _ = run("curvature", "--phi", "x^2 - y^2")
    assert status == 2
    assert payload["error"]["type"] == "DegeneratePoint"


def test_curvature_reports_parse_errors():
    status, payload, _ = run("curvature", "--phi", "x^2+(y")
    assert status == 2
    assert payload["error"] == {
        "type": "ParseError",
        "position": 6,
        "expected": [")"],
        "message": "unbalanced parenthesis at position 6; expected one of [')']",
    }


def test_pretty_output_is_readable():
    _, _, text = run("cohomology", "--homogeneity", "4", "--pretty")
    assert text.startswith("cohomology: PASS")
    assert "[ok]" in text


def test_check_connection_command():
    status, payload, _ = run("check-connection", "--points", "1", "--seed", "5")
    assert status == 0 and payload["seed"] == 5
