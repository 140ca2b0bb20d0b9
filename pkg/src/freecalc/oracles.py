"""Independent models used to cross-check the main algorithms.

Nothing here imports the group ring, Fox or collection code: the wreath
model redoes the metabelian word problem with plain dictionaries, the
series model detects lower central series membership through the
dimension subgroups of the Magnus power-series ring, and the finite probe
maps words into small metabelian groups.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .words import Word


# wreath product Z^n wr Z^n -----------------------------------------------

def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True)
class WreathElement:
    """(translation, f) with f a finitely supported map Z^n -> Z^n.

    Multiplication: (a, f)(b, g) = (a + b, f + g(. - a)).
    """

    translation: tuple
    function: tuple  # sorted ((position, coords), ...), no zero coords

    @staticmethod
    def _pack(d: dict) -> tuple:
        return tuple(sorted((p, v) for p, v in d.items() if any(v)))

    @classmethod
    def identity(cls, n: int) -> WreathElement:
        return cls((0,) * n, ())

    @classmethod
    def generator(cls, n: int, i: int, sign: int = 1) -> WreathElement:
        e = tuple(1 if j == i else 0 for j in range(n))
        origin = (0,) * n
        if sign > 0:
            return cls(e, ((origin, e),))
        # inverse of (e, {0: e}) is (-e, {-e: -e})
        neg = tuple(-x for x in e)
        return cls(neg, ((neg, neg),))

    def __mul__(self, other: WreathElement) -> WreathElement:
        f = dict(self.function)
        for p, v in other.function:
            q = _vadd(p, self.translation)
            f[q] = _vadd(f[q], v) if q in f else v
        return WreathElement(_vadd(self.translation, other.translation), self._pack(f))

    def inverse(self) -> WreathElement:
        neg = tuple(-x for x in self.translation)
        f = {_vadd(p, neg): tuple(-x for x in v) for p, v in self.function}
        return WreathElement(neg, self._pack(f))

    def is_identity(self) -> bool:
        return not any(self.translation) and not self.function

    def coordinate(self, i: int) -> dict:
        """Coefficients of the i-th free module generator, position -> integer."""
        return {p: v[i] for p, v in self.function if v[i]}


def wreath_eval(a: Word) -> WreathElement:
    """Image of a in the wreath model of F/F''."""
    n = a.rank
    acc = WreathElement.identity(n)
    gens = {}
    for g, e in a.syllables:
        s = 1 if e > 0 else -1
        key = (g, s)
        if key not in gens:
            gens[key] = WreathElement.generator(n, g, s)
        for _ in range(abs(e)):
            acc = acc * gens[key]
    return acc


# truncated Magnus series ------------------------------------------------------

class TruncatedSeries:
    """Noncommutative integer polynomial in X_0..X_(n-1), degrees < d kept."""

    __slots__ = ("rank", "degree", "terms")

    def __init__(self, rank: int, degree: int, terms: dict):
        self.rank = rank
        self.degree = degree
        self.terms = {m: c for m, c in terms.items() if c and len(m) < degree}

    @classmethod
    def one(cls, rank, degree):
        return cls(rank, degree, {(): 1})

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        d = self.degree
        out: dict = {}
        for m1, c1 in self.terms.items():
            room = d - len(m1)
            for m2, c2 in other.terms.items():
                if len(m2) < room:
                    m = m1 + m2
                    out[m] = out.get(m, 0) + c1 * c2
        return TruncatedSeries(self.rank, d, out)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def is_one(self) -> bool:
        return self.terms == {(): 1}

    def __str__(self):
        names = "XYZW" if self.rank <= 4 else None
        parts = []
        for m in sorted(self.terms, key=lambda m: (len(m), m)):
            c = self.terms[m]
            mono = "".join(names[i] if names else f"X{i}" for i in m) or "1"
            if mono == "1":
                body = str(abs(c))
            else:
                body = mono if abs(c) == 1 else f"{abs(c)}{mono}"
            sign = "-" if c < 0 else "+"
            parts.append(body if not parts and c > 0 else f"{sign}{body}" if not parts else f"{sign} {body}")
        return " ".join(parts) if parts else "0"


def _letter_series(rank: int, degree: int, i: int, sign: int) -> TruncatedSeries:
    if sign > 0:
        return TruncatedSeries(rank, degree, {(): 1, (i,): 1})
    # (1 + X)^-1 = 1 - X + X^2 - ...
    return TruncatedSeries(rank, degree, {(i,) * k: (-1) ** k for k in range(degree)})


def truncated_series_eval(a: Word, degree: int) -> TruncatedSeries:
    """Image of a under x_i -> 1 + X_i, dropping monomials of degree >= degree."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    n = a.rank
    acc = TruncatedSeries.one(n, degree)
    cache = {}
    for g, e in a.syllables:
        s = 1 if e > 0 else -1
        if (g, s) not in cache:
            cache[(g, s)] = _letter_series(n, degree, g, s)
        for _ in range(abs(e)):
            acc = acc * cache[(g, s)]
    return acc


# finite metabelian probes -----------------------------------------------------

def _affine_group(m: int):
    """Aff(Z/m) as pairs (a, b) meaning t -> a*t + b."""
    units = [a for a in range(1, m) if math.gcd(a, m) == 1]
    elems = [(a, b) for a in units for b in range(m)]

    def mul(p, q):
        # (p*q)(t) = p(q(t))
        return (p[0] * q[0] % m, (p[0] * q[1] + p[1]) % m)

    def inv(p):
        ai = pow(p[0], -1, m)
        return (ai, (-ai * p[1]) % m)

    return f"Aff(Z/{m})", elems, mul, inv, (1, 0)


def _symmetric3():
    from itertools import permutations
    elems = list(permutations(range(3)))

    def mul(p, q):
        return tuple(p[q[i]] for i in range(3))

    def inv(p):
        r = [0] * 3
        for i, x in enumerate(p):
            r[x] = i
        return tuple(r)

    return "S3", elems, mul, inv, (0, 1, 2)


_PROBE_GROUPS = [_symmetric3(), *(_affine_group(m) for m in (4, 5, 7, 8, 9, 12))]


@dataclass(frozen=True)
class ProbeWitness:
    group: str
    images: tuple
    value: object


def finite_probe(a: Word, trials: int = 200, seed: int = 0) -> ProbeWitness | None:
    """Search for a metabelian image in which a is nontrivial.

    A returned witness proves a is not in F''; None proves nothing.
    """
    rng = random.Random(seed)
    for t in range(trials):
        name, elems, mul, inv, one = _PROBE_GROUPS[t % len(_PROBE_GROUPS)]
        images = [rng.choice(elems) for _ in range(a.rank)]
        acc = one
        for g, e in a.syllables:
            base = images[g] if e > 0 else inv(images[g])
            for _ in range(abs(e)):
                acc = mul(acc, base)
        if acc != one:
            return ProbeWitness(name, tuple(images), acc)
    return None
