import pytest
from hypothesis import given, strategies as st

from conftest import A2, A3, words
from freecalc.errors import AlphabetError, ArityError, ParseError
from freecalc.parser import (
    Commutator,
    Placeholder,
    evaluate_term,
    parse_expr,
    parse_term,
    parse_word,
    to_text,
)
from freecalc.words import Alphabet


def test_parse_word_examples():
    x, y = A2.gens()
    assert parse_word("x*y^-1", A2) == x * y.inverse()
    c = x.inverse() * y.inverse() * x * y
    assert parse_word("[x,y]^2", A2) == c * c
    assert parse_word("(x*y)^3", A2) == (x * y) ** 3
    assert parse_word(" x * y ^ - 1 ", A2) == x * y.inverse()
    assert parse_word("1", A2).is_identity()
    assert parse_word("x^+2", A2) == x ** 2


def test_left_normed_brackets():
    x, y, _ = A3.gens()
    assert parse_word("[x,y,x]", A3) == parse_word("[[x,y],x]", A3)
    assert parse_word("[x, y^2 , x*y]", A3) == parse_word("[[x,y^2],x*y]", A3)


def test_big_exponents():
    a = parse_word("x^100000000000000000000", A2)
    assert a.exponent_sum(0) == 10 ** 20


@pytest.mark.parametrize("text, pos", [("x*", 2), ("x**y", 2), ("(x", 2), ("[x]", 2), ("x^y", 2), ("x $ y", 2), ("2", 0)])
def test_syntax_errors_report_position(text, pos):
    with pytest.raises(ParseError) as err:
        parse_word(text, A2)
    assert err.value.pos == pos
    assert f"position {pos}" in str(err.value)


def test_unknown_generator():
    with pytest.raises(AlphabetError):
        parse_word("x*q", A2)


def test_placeholders_rejected_in_words():
    with pytest.raises(ParseError):
        parse_word("_0*x", A2)


def test_parse_term_examples():
    w0 = parse_term("_1*_0*_1^-1")
    assert w0.arity == 1
    w1 = parse_term("_1*_0^-1*_1^-1")
    assert w1.arity == 1
    ident = parse_term("_0")
    assert ident.arity == 0 and ident.root == Placeholder(0)
    assert isinstance(parse_term("[_0,_1,_2]").root, Commutator)


def test_parse_term_errors():
    with pytest.raises(ParseError):
        parse_term("_0*_2")
    with pytest.raises(ParseError):
        parse_term("x*_1")
    with pytest.raises(ParseError):
        parse_term("__x*_0")


def test_evaluate_term_examples():
    x, y = A2.gens()
    w0 = parse_term("_1*_0*_1^-1")
    w1 = parse_term("_1*_0^-1*_1^-1")
    assert evaluate_term(w0, x, [y]) == y * x * y.inverse()
    assert evaluate_term(w1, x, [y]) == y * x.inverse() * y.inverse()
    g = parse_word("x*y^3", A2)
    assert evaluate_term(parse_term("_0^1"), g, []) == g
    with pytest.raises(ArityError):
        evaluate_term(w0, x, [])
    with pytest.raises(AlphabetError):
        evaluate_term(w0, x, [Alphabet.standard(3).gen(0)])


def test_canonical_printer():
    assert str(parse_word("x*y^-1*y^-1", A2)) == "x*y^-2"
    assert str(parse_word("x^1", A2)) == "x"
    assert to_text(parse_expr("(x*y)^2*[x,y^-1]")) == "(x*y)^2*[x,y^-1]"
    assert to_text(parse_expr("((x^2)^3)")) == "(x^2)^3"


ATOMS = st.sampled_from(["x", "y", "z", "_0", "_1", "1"])


def exprs():
    return st.recursive(
        ATOMS,
        lambda inner: st.one_of(
            st.lists(inner, min_size=2, max_size=3).map(lambda fs: "*".join(fs)),
            st.tuples(inner, st.integers(-3, 3)).map(lambda t: f"({t[0]})^{t[1]}"),
            st.lists(inner, min_size=2, max_size=3).map(lambda fs: "[" + ",".join(fs) + "]"),
        ),
        max_leaves=8,
    )


@given(exprs())
def test_print_parse_round_trip(text):
    node = parse_expr(text)
    printed = to_text(node)
    assert parse_expr(printed) == node
    assert to_text(parse_expr(printed)) == printed


@given(words(A3, 8), words(A3, 8), words(A3, 5), st.data())
def test_evaluate_commutes_with_substitute(subject, arg, _unused, data):
    term = parse_term("[_0,_1]*_1*_0^2*_1^-1")
    images = [data.draw(words(A3, 5)) for _ in range(3)]
    lhs = evaluate_term(term, subject, [arg]).substitute(images)
    rhs = evaluate_term(term, subject.substitute(images), [arg.substitute(images)])
    assert lhs == rhs
