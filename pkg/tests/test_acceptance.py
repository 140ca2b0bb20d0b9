"""Acceptance criteria, one test each.

Run directly (python3 tests/test_acceptance.py) or through pytest; the
terminal summary prints one PASS/FAIL line per criterion.
"""

import random
import sys
import time

import pytest

from freecalc.autos import HomWord, is_hom_word
from freecalc.errors import ParseError
from freecalc.groupring import FreeGroup, RingElement, quotient
from freecalc.magnus import (
    NegativeUnit,
    f_sigma,
    fox_derivative,
    inner_on_R_witness,
    is_identity_in_FmodRprime,
    magnus_derivation,
    solvable_key,
)
from freecalc.nilpotent import _basis, collect, congruent_mod_gamma, lcs_weight
from freecalc.oracles import truncated_series_eval, wreath_eval
from freecalc.parser import parse_term, parse_word
from freecalc.words import Alphabet, commutator, free_reduce, left_normed

criterion = pytest.mark.criterion


def rand_word(rng, A, max_len):
    n = rng.randint(0, max_len)
    return free_reduce([(rng.randrange(A.rank), rng.choice((-1, 1))) for _ in range(n)], A)


def rand_alphabet(rng, max_rank):
    return Alphabet.standard(rng.randint(1, max_rank))


def lyndon_counts(n, max_len):
    counts = [0] * (max_len + 1)
    w = [-1]
    while w:
        w[-1] += 1
        counts[len(w)] += 1
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == n - 1:
            w.pop()
    return counts[1:]


def fox_corpus(seed=1):
    rng = random.Random(seed)
    out = []
    for _ in range(1000):
        A = rand_alphabet(rng, 4)
        out.append((A, rand_word(rng, A, 32), rand_word(rng, A, 32)))
    return out


@criterion(1, "Fox product rule on 1000 random pairs")
def test_fox_product_rule():
    start = time.perf_counter()
    for A, a, b in fox_corpus():
        F = FreeGroup(A)
        left = RingElement.of_word(F, a)
        for i in range(A.rank):
            assert fox_derivative(a * b, i) == fox_derivative(a, i) + left * fox_derivative(b, i)
    assert time.perf_counter() - start < 5.0


@criterion(2, "fundamental Fox identity on the same corpus")
def test_fundamental_identity():
    for A, a, b in fox_corpus():
        F = FreeGroup(A)
        one = RingElement.one(F)
        for w in (a, b):
            total = RingElement.zero(F)
            for i in range(A.rank):
                total = total + fox_derivative(w, i) * (RingElement.of_word(F, A.gen(i)) - one)
            assert total == RingElement.of_word(F, w) - one


def rand_relator(rng, A, max_commutators=6):
    r = A.identity()
    for _ in range(rng.randint(1, max_commutators)):
        r = r * commutator(rand_word(rng, A, 4), rand_word(rng, A, 4))
    return r


@criterion(3, "derivation laws on R/R' (metabelian coefficients)")
def test_derivation_laws():
    rng = random.Random(3)
    A = Alphabet.standard(3)
    Q = quotient("abelian", A)
    for _ in range(500):
        r1, r2 = rand_relator(rng, A), rand_relator(rng, A)
        g = rand_word(rng, A, 8)
        d1, d2 = magnus_derivation(r1, Q), magnus_derivation(r2, Q)
        assert magnus_derivation(r1 * r2, Q) == d1 + d2
        assert magnus_derivation(g * r1 * g.inverse(), Q) == d1.translate(Q.key(g))


def metabelian_corpus(seed=4):
    """Random words, half of them pushed into F'' (and a few just outside it)."""
    rng = random.Random(seed)
    out = []
    for k in range(500):
        A = rand_alphabet(rng, 3)
        if k % 2 or A.rank == 1:
            out.append(rand_word(rng, A, 40))
            continue
        c1 = commutator(rand_word(rng, A, 3), rand_word(rng, A, 3))
        c2 = commutator(rand_word(rng, A, 3), rand_word(rng, A, 3))
        g = rand_word(rng, A, 4)
        w = g * commutator(c1, c2) * g.inverse()
        if k % 10 == 0:
            w = w * c1  # usually outside F''
        out.append(w)
    return out


@criterion(4, "F/F'' word problem agrees with the wreath model on 500 words")
def test_word_problem_vs_wreath():
    start = time.perf_counter()
    trivial = 0
    for a in metabelian_corpus():
        verdict = is_identity_in_FmodRprime(a, "commutator")
        assert verdict == wreath_eval(a).is_identity(), str(a)
        trivial += verdict
    assert trivial > 100  # both outcomes are exercised
    assert time.perf_counter() - start < 30.0


@criterion(5, "congruence chain [t^2,x^2,t^2] ~ ... ~ [t,x,t]^8 mod gamma_4")
def test_congruence_chain():
    A = Alphabet.of("t,x")
    chain = [parse_word(s, A) for s in ("[t^2,x^2,t^2]", "[t,x^2,t^2]^2", "[t,x,t^2]^4", "[t,x,t]^8")]
    for a, b in zip(chain, chain[1:]):
        assert congruent_mod_gamma(a, b, 4)
        assert truncated_series_eval(a * b.inverse(), 4).is_one()


def cancelling_conjugates(rng, A):
    t, x = A.gens()
    factors = []
    for k in rng.sample(range(-4, 5), rng.randint(1, 4)):
        ss = [rng.randint(-3, 3) for _ in range(rng.randint(1, 3))]
        ss.append(-sum(ss))
        factors += [(k, s) for s in ss]
    rng.shuffle(factors)
    w = A.identity()
    for k, s in factors:
        w = w * x ** k * t ** s * x ** -k
    return w


@criterion(6, "products with vanishing per-exponent sums lie in gamma_3")
def test_cancelling_conjugates_in_gamma3():
    rng = random.Random(6)
    A = Alphabet.of("t,x")
    for _ in range(200):
        w = cancelling_conjugates(rng, A)
        assert lcs_weight(w, 4).value >= 3


def random_term(rng, arity, size):
    """Random term text over _0.._arity with nonzero exponent sum in _0."""
    while True:
        if rng.random() < 0.5:
            # conjugation-shaped candidate, sometimes perturbed
            p = "*".join(f"_{rng.randint(1, arity)}^{rng.choice((-1, 1, 2))}" for _ in range(rng.randint(1, 3)))
            core = "_0" if rng.random() < 0.7 else f"_0*[_0,_{rng.randint(1, arity)}]"
            text = f"({p})*{core}*({p})^-1"
        else:
            atoms = [f"_{rng.randint(0, arity)}^{rng.choice((-2, -1, 1, 2))}" for _ in range(size)]
            text = "*".join(atoms)
        try:
            t = parse_term(text)
        except ParseError:  # some placeholder was never drawn
            continue
        if t.arity == arity:
            return text


@criterion(7, "hom-word checker: w0 and identity accepted, w1 rejected, accepted words have sum 1")
def test_hom_word_checker():
    A = Alphabet.standard(2)
    assert is_hom_word(HomWord.parse("_1*_0*_1^-1", ["x*y^-1"], A))
    assert is_hom_word(HomWord.parse("_0", [], A))
    assert not is_hom_word(HomWord.parse("_1*_0^-1*_1^-1", ["x*y^-1"], A))
    rng = random.Random(7)
    accepted = 0
    for k in range(300):
        arity = rng.randint(1, 2)
        text = random_term(rng, arity, rng.randint(2, 6))
        hw = HomWord.parse(text, [rand_word(rng, A, 4) for _ in range(arity)], A)
        if hw.exponent_sum() == 0:
            continue
        variety = ("free", "metabelian", "nilpotent:2")[k % 3]
        if is_hom_word(hw, variety):
            accepted += 1
            assert hw.exponent_sum() == 1, (text, variety)
    assert accepted > 50


@criterion(8, "f_sigma of inner automorphisms is a positive trivial unit; w1 gives -v")
def test_f_sigma_laws():
    rng = random.Random(8)
    A = Alphabet.standard(3)
    Q = quotient("abelian", A)
    one = RingElement.one(Q)
    for _ in range(100):
        v = rand_word(rng, A, 10)
        f = f_sigma(HomWord.parse("_1*_0*_1^-1", [v], A), Q)
        finv = f_sigma(HomWord.parse("_1*_0*_1^-1", [v.inverse()], A), Q)
        assert f.as_trivial_unit() == (1, Q.key(v))
        assert f.augmentation() == 1
        assert f * finv == one
        assert inner_on_R_witness(f) == Q.key(v)
        g = f_sigma(HomWord.parse("_1*_0^-1*_1^-1", [v], A), Q)
        assert g == -RingElement.of_word(Q, v)
        assert g.augmentation() == -1
        assert isinstance(inner_on_R_witness(g), NegativeUnit)


@criterion(9, "[x,[x,y]] is nontrivial in F/F''")
def test_double_commutator_nontrivial():
    A = Alphabet.standard(2)
    a = parse_word("[x,[x,y]]", A)
    assert not is_identity_in_FmodRprime(a, "commutator")
    assert not quotient("metabelian", A).is_identity(solvable_key(a, 2))
    assert not wreath_eval(a).is_identity()


@criterion(10, "Hall basis counts equal Lyndon word counts (rank <= 3, weight <= 6)")
def test_hall_counts():
    assert _basis(2, 6).counts() == [2, 1, 2, 3, 6, 9]
    for n in (1, 2, 3):
        assert _basis(n, 6).counts() == lyndon_counts(n, 6)


def nilpotent_corpus(rng, c, size=300):
    """Random words mixed with elements of gamma_c and gamma_(c+1)."""
    out = []
    for k in range(size):
        A = rand_alphabet(rng, 3)
        kind = k % 3
        if kind == 0 or A.rank == 1:
            out.append(rand_word(rng, A, 30))
            continue
        weight = c + 1 if kind == 1 else c
        parts = [rand_word(rng, A, 3) or A.gen(0) for _ in range(weight)]
        w = left_normed(parts)
        g = rand_word(rng, A, 4)
        out.append(g * w * g.inverse())
    return out


@criterion(11, "collect(a, c) trivial iff the degree c+1 series is 1 (c = 2, 3, 4)")
def test_nilpotent_vs_dimension_series():
    rng = random.Random(11)
    for c in (2, 3, 4):
        trivial = 0
        for a in nilpotent_corpus(rng, c):
            verdict = collect(a, c).is_identity()
            assert verdict == truncated_series_eval(a, c + 1).is_one(), (str(a), c)
            trivial += verdict
        assert 0 < trivial < 300


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
