import random

import jsonschema
import pytest
from hypothesis import given, settings, strategies as st

from conftest import A2, A3, ranked_words, words
from freecalc import schemas
from freecalc.errors import AlphabetError, DescriptorError
from freecalc.groupring import FreeGroup, RingElement, quotient
from freecalc.magnus import (
    MagnusGroup,
    NegativeUnit,
    coefficient_descriptor,
    f_sigma,
    fox_derivative,
    fox_derivatives,
    inner_on_R_witness,
    is_identity_in_FmodRprime,
    magnus_derivation,
    solvable_key,
)
from freecalc.autos import HomWord
from freecalc.oracles import wreath_eval
from freecalc.parser import parse_word
from freecalc.words import commutator


def W(text, A=A2):
    return parse_word(text, A)


def wreath_coords(a):
    """Module part of the wreath image as {generator: {exponent vector: coeff}}."""
    el = wreath_eval(a)
    return [el.coordinate(i) for i in range(a.rank)]


def magnus_coords(a):
    vec = magnus_derivation(a, "abelian")
    return [{key: c for _, key, c in vec[i].sorted_terms()} for i in range(a.rank)]


def test_fox_examples():
    assert str(fox_derivative(W("x"), "x")) == "1"
    assert fox_derivative(W("y"), "x").is_zero()
    assert str(fox_derivative(W("x^-1"), "x")) == "-x^-1"
    assert str(fox_derivative(W("(x*y)^3"), "x")) == "1 + x*y + x*y*x*y"
    with pytest.raises(AlphabetError):
        fox_derivative(W("x"), 5)


def test_fox_powers():
    assert str(fox_derivative(W("x^3"), 0)) == "1 + x + x^2"
    assert str(fox_derivative(W("x^-2"), 0)) == "-x^-1 - x^-2"


def test_magnus_commutator_coordinates():
    vec = magnus_derivation(W("[x,y]"))
    # x^-1 (y^-1 - 1) and x^-1 y^-1 (x - 1)
    assert str(vec) == "t_x: -x^-1 + x^-1*y^-1; t_y: -x^-1*y^-1 + y^-1"
    assert magnus_coords(W("[x,y]")) == wreath_coords(W("[x,y]"))


def test_magnus_zero_and_generator():
    a = W("[[x,y],x^-1*[x,y]*x]")
    assert magnus_derivation(a).is_zero()
    vec = magnus_derivation(W("x"))
    assert str(vec[0]) == "1" and vec[1].is_zero()
    data = magnus_derivation(W("[x,y]")).to_json()
    jsonschema.Draft202012Validator(schemas.MODULE_VECTOR).validate(data)
    assert data["quotient"] == "abelian"


def test_solvable_key_examples():
    G = quotient("metabelian", A2)
    assert G.key_text(solvable_key(W("x"), 2)) == "<t_x: 1 | x>"
    assert quotient("metabelian", A3).is_identity(solvable_key(W("[[x,y],[x,z]]", A3), 2))
    assert not G.is_identity(solvable_key(W("[x,[x,y]]"), 2))
    assert solvable_key(W("x*y^2"), 1) == (1, 2)
    with pytest.raises(DescriptorError):
        solvable_key(W("x"), 0)


def test_is_identity_examples():
    assert is_identity_in_FmodRprime(W("[[x,y],[y,x]]"), "commutator")
    assert is_identity_in_FmodRprime(W("[[x,y],[x,z]]", A3))
    assert not is_identity_in_FmodRprime(W("[x,y]"))
    assert not wreath_eval(W("[x,y]")).is_identity()
    # R = gamma_2 = F' gives the same answer; gamma_3 makes [x,y]^2-type words visible
    assert is_identity_in_FmodRprime(W("[[x,y],[x,z]]", A3), "gamma:2")
    assert not is_identity_in_FmodRprime(W("[[x,y],[x,z]]", A3), "gamma:3")
    assert is_identity_in_FmodRprime(W("[[[x,y],[x,z]],[[y,z],[x,y]]]", A3), "derived:2")
    with pytest.raises(DescriptorError):
        is_identity_in_FmodRprime(W("x"), "gamma:1")


def test_double_commutator_nontrivial():
    a = W("[x,[x,y]]")
    assert not is_identity_in_FmodRprime(a)
    assert not wreath_eval(a).is_identity()


def test_coefficient_descriptor():
    assert coefficient_descriptor("metabelian") == "abelian"
    assert coefficient_descriptor("solvable:3") == "solvable:2"
    assert coefficient_descriptor("gamma:4") == "nilpotent:3"
    for bad in ("free", "abelian", "nilpotent:2", "solvable:1"):
        with pytest.raises(DescriptorError):
            coefficient_descriptor(bad)


def test_magnus_group_descriptors():
    assert quotient("solvable:3", A2).descriptor == "solvable:3"
    assert MagnusGroup(quotient("nilpotent:2", A2)).descriptor == "rprime(nilpotent:2)"


def test_f_sigma_examples():
    w0 = HomWord.parse("_1*_0*_1^-1", ["x*y"], A2)
    f = f_sigma(w0)
    assert str(f) == "x*y" and f.augmentation() == 1
    assert inner_on_R_witness(f) == f.group.key(W("x*y"))
    w1 = HomWord.parse("_1*_0^-1*_1^-1", ["x"], A2)
    f = f_sigma(w1)
    assert str(f) == "-x" and f.augmentation() == -1
    assert isinstance(inner_on_R_witness(f), NegativeUnit)
    assert str(inner_on_R_witness(f)) == "impossible: negative unit"
    ident = HomWord.parse("_0", [], A2)
    assert str(f_sigma(ident)) == "1"
    G = quotient("abelian", A2)
    assert inner_on_R_witness(RingElement.one(G) + RingElement.of_word(G, W("x"))) is None


def test_normal_shape():
    hw = HomWord.parse("_1*_0^2*_2*_0^-1", ["x", "y"], A2)
    assert str(hw.shape) == "x *^2 y *^-1"
    assert hw.exponent_sum() == 1
    assert [str(c) for c in hw.shape.prefixes()] == ["x", "x*y"]


# properties ----------------------------------------------------------------

@settings(max_examples=200)
@given(ranked_words(count=2, max_rank=4, max_len=16))
def test_product_rule(data):
    A, a, b = data
    for i in range(A.rank):
        lhs = fox_derivative(a * b, i)
        F = lhs.group
        rhs = fox_derivative(a, i) + RingElement.of_word(F, a) * fox_derivative(b, i)
        assert lhs == rhs


@settings(max_examples=200)
@given(ranked_words(count=1, max_rank=4, max_len=16))
def test_fundamental_identity(data):
    A, a = data
    F = FreeGroup(A)
    one = RingElement.one(F)
    total = RingElement.zero(F)
    for i, d in enumerate(fox_derivatives(a)):
        total = total + d * (RingElement.of_word(F, A.gen(i)) - one)
    assert total == RingElement.of_word(F, a) - one


@settings(max_examples=150)
@given(ranked_words(count=1, max_len=20))
def test_magnus_matches_wreath(data):
    A, a = data
    assert magnus_coords(a) == wreath_coords(a)
    assert is_identity_in_FmodRprime(a) == wreath_eval(a).is_identity()


def random_relator(rng, A, count=3):
    gens = A.gens()
    r = A.identity()
    for _ in range(count):
        u = gens[rng.randrange(A.rank)] ** rng.choice((-2, -1, 1, 2))
        v = gens[rng.randrange(A.rank)] * gens[rng.randrange(A.rank)] ** -1
        r = r * commutator(u, v)
    return r


@given(st.randoms(use_true_random=False), words(A3, 8))
def test_derivation_laws_on_relators(rng, g):
    r1, r2 = random_relator(rng, A3), random_relator(rng, A3)
    d = lambda w: magnus_derivation(w, "abelian")  # noqa: E731
    assert d(r1 * r2) == d(r1) + d(r2)
    G = quotient("abelian", A3)
    assert d(g * r1 * g.inverse()) == d(r1).translate(G.key(g))


@given(ranked_words(count=1, max_len=14), st.integers(2, 3))
def test_fast_key_matches_letter_product(data, k):
    A, a = data
    G = quotient(f"solvable:{k}", A)
    ref = G.identity
    for g, e in a.syllables:
        step = G.gen_key(g) if e > 0 else G.inv(G.gen_key(g))
        for _ in range(abs(e)):
            ref = G.mul(ref, step)
    assert G.key(a) == ref
    assert G.mul(G.key(a), G.key(a.inverse())) == G.identity


@given(st.randoms(use_true_random=False))
def test_f_sigma_unit_law_for_inner(rng):
    from conftest import words as _w  # noqa: F401
    v = random_relator(rng, A2, 1) * A2.gen(rng.randrange(2)) ** rng.choice((-1, 1, 3))
    w = HomWord.parse("_1*_0*_1^-1", [v], A2)
    winv = HomWord.parse("_1*_0*_1^-1", [v.inverse()], A2)
    f, finv = f_sigma(w), f_sigma(winv)
    assert f.augmentation() == 1
    assert f * finv == RingElement.one(f.group)


@given(words(A2, 6), words(A2, 6))
def test_f_sigma_augmentation_is_exponent_sum(u, v):
    hw = HomWord.parse("_1*_0^2*_2*_0^-3*_1", [u, v], A2)
    assert f_sigma(hw).augmentation() == hw.exponent_sum() == -1
