"""Quick randomized cross-checks of the main algorithms against the oracles."""

from __future__ import annotations

import random

from .groupring import FreeGroup, RingElement, quotient
from .magnus import fox_derivative, is_identity_in_FmodRprime
from .nilpotent import _basis, collect, witt_number
from .oracles import truncated_series_eval, wreath_eval
from .words import Alphabet, Word, commutator, free_reduce


def random_word(rng: random.Random, alphabet: Alphabet, max_len: int) -> Word:
    n = alphabet.rank
    if n == 0:
        return alphabet.identity()
    length = rng.randint(0, max_len)
    return free_reduce([(rng.randrange(n), rng.choice((-1, 1))) for _ in range(length)], alphabet)


def random_second_derived(rng: random.Random, alphabet: Alphabet, max_len: int = 4) -> Word:
    """An element of F'' built as a commutator of two commutators."""
    c1 = commutator(random_word(rng, alphabet, max_len), random_word(rng, alphabet, max_len))
    c2 = commutator(random_word(rng, alphabet, max_len), random_word(rng, alphabet, max_len))
    g = random_word(rng, alphabet, max_len)
    return g * commutator(c1, c2) * g.inverse()


def run_selftest(trials: int = 100, seed: int = 0) -> list[tuple[str, bool, str]]:
    rng = random.Random(seed)
    results = []

    bad = 0
    for _ in range(trials):
        A = Alphabet.standard(rng.randint(1, 4))
        a, b = random_word(rng, A, 16), random_word(rng, A, 16)
        F = FreeGroup(A)
        for i in range(A.rank):
            if fox_derivative(a * b, i) != fox_derivative(a, i) + fox_derivative(b, i).translate(a):
                bad += 1
        total = RingElement.zero(F)
        for i, x in enumerate(A.gens()):
            total = total + fox_derivative(a, i) * (RingElement.of_key(F, x) - 1)
        if total != RingElement.of_key(F, a) - 1:
            bad += 1
    results.append(("fox product rule and fundamental identity", bad == 0, f"{trials} pairs, {bad} failures"))

    bad = 0
    for t in range(trials):
        A = Alphabet.standard(rng.randint(1, 3))
        a = random_second_derived(rng, A) if t % 3 == 0 else random_word(rng, A, 24)
        if is_identity_in_FmodRprime(a, "commutator") != wreath_eval(a).is_identity():
            bad += 1
    results.append(("metabelian word problem vs wreath model", bad == 0, f"{trials} words, {bad} disagreements"))

    bad = 0
    for t in range(trials):
        A = Alphabet.standard(rng.randint(1, 3))
        c = 2 + t % 3
        a = random_word(rng, A, 16)
        if t % 2:
            a = commutator(a, random_word(rng, A, 6))
        if collect(a, c).is_identity() != truncated_series_eval(a, c + 1).is_one():
            bad += 1
    results.append(("collection vs dimension series", bad == 0, f"{trials} words, {bad} disagreements"))

    bad = [(n, w) for n in (2, 3) for w in range(1, 6) if _basis(n, 5).counts()[w - 1] != witt_number(n, w)]
    results.append(("Hall basis sizes vs Witt formula", not bad, "ranks 2-3, weights 1-5"))

    G = quotient("metabelian", 2)
    A = G.alphabet
    x, y = A.gens()
    nontrivial = not G.is_identity(G.key(commutator(x, commutator(x, y))))
    results.append(("[x,[x,y]] nontrivial in F/F''", nontrivial, "Magnus key"))
    return results
