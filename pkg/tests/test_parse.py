import pytest

from leavitt.algebra import Element
from leavitt.parse import ParseError, PathLiteral, parse_element, parse_matrix, parse_path_literal, split_matrix


def test_parse_examples(g2):
    assert parse_element("v", g2) == Element.one(g2)
    u = parse_element("e1*e2' + e2*e1' + e1^2*e2'*e1'", g2)
    assert str(u) == "e1*e2' + e2*e1' + e1^2*e2'*e1'"
    with pytest.raises(ParseError, match="unknown name 'e3' at position 3"):
        parse_element("e1*e3'", g2)


def test_grammar_features(g2):
    a = parse_element("-(e1 + 1/2*e2)'*e1 + 3", g2)
    assert a == Element.one(g2).scale(2)
    assert parse_element("(1/2)*e1 + 1/2*e1", g2) == parse_element("e1", g2)
    assert parse_element("(e1*e2')'", g2) == parse_element("e2*e1'", g2)
    assert parse_element("e1^0", g2) == Element.one(g2)
    assert parse_element("- -e1", g2) == parse_element("e1", g2)


@pytest.mark.parametrize("src", ["", "e1 +", "(e1", "e1^", "e1 ^ x", "1/0", "e1 e2", "e1 $", "f(e1)"])
def test_syntax_errors(g2, src):
    with pytest.raises(ParseError):
        parse_element(src, g2)


def test_bound_names_and_calls(g2):
    x = parse_element("e1*e2' + e2*e1'", g2)
    env = {"x": x, "sq": lambda a: a * a}
    assert parse_element("sq(x)", g2, env) == Element.one(g2)
    assert parse_element("x*x - v", g2, env) == Element.zero(g2)
    with pytest.raises(ParseError):
        parse_element("x(e1)", g2, env)


def test_matrix_literal(g2):
    rows = parse_matrix("[0, v; v, 2]", g2)
    assert rows[1][1] == Element.one(g2).scale(2)
    assert split_matrix("[f(a, b), c; d, e]") == [["f(a, b)", "c"], ["d", "e"]]
    for bad in ("0, v", "[1, 2; 3]", "[1, ; 2, 3]"):
        with pytest.raises(ParseError):
            split_matrix(bad)


def test_matrix_scalars_use_corner(sink_graph):
    rows = parse_matrix("[1]", sink_graph, sink_graph.vertex("b"))
    assert rows[0][0] == Element.vertex(sink_graph, "b")
    with pytest.raises(ParseError):
        parse_matrix("[1]", sink_graph)


def test_path_literals():
    assert parse_path_literal("(e1 e2)^inf") == PathLiteral((), ("e1", "e2"))
    assert parse_path_literal("e2 (e1 e2)^inf") == PathLiteral(("e2",), ("e1", "e2"))
    assert parse_path_literal("oracle:thue-morse[e1,e2]") == PathLiteral((), (), "thue-morse", ("e1", "e2"))
    assert parse_path_literal("e1 oracle:fibonacci-word").oracle == "fibonacci-word"
    for bad in ("e1 e2", "()^inf", "(e1)^3", "oracle:", "(e1)^inf e2"):
        with pytest.raises(ParseError):
            parse_path_literal(bad)
