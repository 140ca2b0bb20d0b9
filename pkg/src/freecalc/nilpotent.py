"""Hall basic commutators and collection in free nilpotent groups.

Normal forms in F/gamma_(c+1) are products a_1^e_1 ... a_N^e_N over the
basic commutators of weight <= c, listed by weight.  Multiplication is
collection from the left against a polycyclic presentation whose
conjugation relations

    a_j^-1 a_i a_j   and   a_j a_i a_j^-1        (i > j)

are derived on demand.  For a Hall pair (u, v) the relation is the
definition [u, v] = a_[u,v].  For a non-Hall pair u = [p, q] with q > v we
use v^-1 u v = [p^v, q^v]; collecting that commutator only ever moves
basic commutators with index > v past others, so relations are computed
in order of decreasing right index and the recursion is well founded.
"""

from __future__ import annotations

import functools
import threading
from collections.abc import Sequence
from dataclasses import dataclass
from typing import NamedTuple

from . import budget
from .errors import BudgetExceeded
from .groupring import CanonicalGroup
from .words import Alphabet, Word

Syllables = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class BasicCommutator:
    id: int
    weight: int
    left: int | None = None
    right: int | None = None

    @property
    def is_generator(self) -> bool:
        return self.left is None


class HallBasis:
    def __init__(self, rank: int, cls: int):
        if rank < 0 or cls < 1:
            raise ValueError("hall basis needs rank >= 0 and class >= 1")
        self.rank = rank
        self.cls = cls
        elems = [BasicCommutator(i, 1) for i in range(rank)]
        by_weight: dict[int, list[int]] = {1: list(range(rank))}
        for w in range(2, cls + 1):
            found = []
            for wu in range(w - 1, 0, -1):
                wv = w - wu
                for u in by_weight[wu]:
                    for v in by_weight[wv]:
                        if u <= v:
                            continue
                        bu = elems[u]
                        if bu.is_generator or bu.right <= v:
                            found.append((u, v))
            found.sort()
            by_weight[w] = []
            for u, v in found:
                by_weight[w].append(len(elems))
                elems.append(BasicCommutator(len(elems), w, u, v))
        self.elements: tuple[BasicCommutator, ...] = tuple(elems)
        self.by_weight = by_weight
        self._pair = {(b.left, b.right): b.id for b in elems if not b.is_generator}

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, i) -> BasicCommutator:
        return self.elements[i]

    def __iter__(self):
        return iter(self.elements)

    def weight(self, i: int) -> int:
        return self.elements[i].weight

    def pair_id(self, u: int, v: int) -> int | None:
        return self._pair.get((u, v))

    def counts(self) -> list[int]:
        return [len(self.by_weight[w]) for w in range(1, self.cls + 1)]

    def text(self, i: int, names: Sequence[str]) -> str:
        b = self.elements[i]
        if b.is_generator:
            return names[i]
        return f"[{self.text(b.left, names)},{self.text(b.right, names)}]"

    def as_word(self, i: int, alphabet: Alphabet) -> Word:
        b = self.elements[i]
        if b.is_generator:
            return alphabet.gen(i)
        p = self.as_word(b.left, alphabet)
        q = self.as_word(b.right, alphabet)
        return p.inverse() * q.inverse() * p * q


def witt_number(rank: int, weight: int) -> int:
    """Number of basic commutators of the given weight: (1/w) sum_{d|w} mu(d) n^(w/d)."""
    total = 0
    for d in range(1, weight + 1):
        if weight % d == 0:
            total += _mobius(d) * rank ** (weight // d)
    return total // weight


def _mobius(d: int) -> int:
    out, p = 1, 2
    while p * p <= d:
        if d % p == 0:
            d //= p
            if d % p == 0:
                return 0
            out = -out
        p += 1
    return -out if d > 1 else out


@functools.lru_cache(maxsize=64)
def _cached_basis(rank: int, cls: int) -> HallBasis:
    return HallBasis(rank, cls)


def _basis(rank: int, cls: int) -> HallBasis:
    size = sum(witt_number(rank, w) for w in range(1, cls + 1))
    limit = budget.current().max_terms
    if size > limit:
        raise BudgetExceeded(f"Hall basis of rank {rank} and class {cls} has {size} elements, budget is {limit}")
    return _cached_basis(rank, cls)


def hall_basis(rank: int, cls: int) -> list[BasicCommutator]:
    """Basic commutators of weight <= cls on `rank` generators, in collection order."""
    return list(_basis(rank, cls).elements)


def _invert(s: Syllables) -> Syllables:
    return tuple((g, -e) for g, e in reversed(s))


class Collector:
    """Collection from the left in F/gamma_(c+1)."""

    def __init__(self, basis: HallBasis):
        self.basis = basis
        self.n = len(basis)
        self._weights = [b.weight for b in basis]
        self._conj: dict[tuple[int, int, int], Syllables] = {}
        self._lock = threading.RLock()
        self._busy: set = set()
        self._powers: dict = {}
        self._tables: dict = {}
        # indices after g that do not commute with a_g
        cls = basis.cls
        self._blockers = [
            tuple(i for i in range(g + 1, self.n) if self._weights[i] + self._weights[g] <= cls)
            for g in range(self.n)
        ]

    def zero(self) -> list[int]:
        return [0] * self.n

    @staticmethod
    def syllables(e: Sequence[int]) -> Syllables:
        return tuple((i, x) for i, x in enumerate(e) if x)

    def conj(self, i: int, j: int, s: int) -> Syllables:
        """Normal form of a_j^-s a_i a_j^s for i > j."""
        key = (i, j, s)
        hit = self._conj.get(key)
        if hit is not None:
            return hit
        with self._lock:
            hit = self._conj.get(key)
            if hit is not None:
                return hit
            if key in self._busy:
                raise RuntimeError(f"circular dependency computing relation {key}")
            self._busy.add(key)
            try:
                result = self._compute_conj(i, j, s)
            finally:
                self._busy.discard(key)
            self._conj[key] = result
            return result

    def _compute_conj(self, i: int, j: int, s: int) -> Syllables:
        B = self.basis
        if self._weights[i] + self._weights[j] > B.cls:
            return ((i, 1),)
        if s == 1:
            k = B.pair_id(i, j)
            if k is not None:
                return ((i, 1), (k, 1))
            p, q = B[i].left, B[i].right
            P = self.conj(p, j, 1)
            Q = self.conj(q, j, 1)
            e = self.zero()
            for part in (_invert(P), _invert(Q), P, Q):
                self.multiply(e, part)
            result = self.syllables(e)
        else:
            # phi = conjugation by a_j^-1; a_i w = a_i^(a_j)  =>  phi(a_i) = a_i phi(w^-1)
            plus = self.conj(i, j, 1)
            e = self.zero()
            self.multiply(e, _invert(plus[1:]))
            w_inv = self.syllables(e)
            e = self.zero()
            e[i] = 1
            for m, em in w_inv:
                img = self.conj(m, j, -1)
                self.multiply(e, img if em > 0 else _invert(img), repeat=abs(em))
            result = self.syllables(e)
        if result[0] != (i, 1) or any(g <= i for g, _ in result[1:]):
            raise RuntimeError(f"malformed conjugation relation for {(i, j, s)}: {result}")
        return result

    def multiply(self, e: list[int], syls: Syllables, repeat: int = 1) -> list[int]:
        """Right-multiply the normal form `e` (in place) by a syllable sequence."""
        ctr = [0, budget.current().max_collection_steps]
        for _ in range(repeat):
            for g, x in syls:
                self._mul_gen(e, g, x, ctr)
        return e

    def _mul_gen(self, e: list[int], g: int, x: int, ctr: list) -> None:
        # e * a_g^x = e_(<=g) a_g^x * (a_g^-x e_(>g) a_g^x); the conjugated tail
        # lies in the subgroup on indices > g, so it is again a normal form
        if not x:
            return
        ctr[0] += 1
        if ctr[0] > ctr[1]:
            raise BudgetExceeded(f"collection exceeded {ctr[1]} steps")
        for i in self._blockers[g]:
            if e[i]:
                break
        else:
            e[g] += x
            return
        tail = [(i, e[i]) for i in range(g + 1, self.n) if e[i]]
        for i, _ in tail:
            e[i] = 0
        e[g] += x
        s = 1 if x > 0 else -1
        k, bit = abs(x), 0
        while k:
            if k & 1:
                tail = self._apply_table(self._table(g, s, bit, ctr), tail, ctr)
            k >>= 1
            bit += 1
        for i, v in tail:
            e[i] = v

    def _table(self, g: int, s: int, bit: int, ctr: list) -> dict:
        """Images of a_i (i > g) under conjugation by a_g^(s * 2^bit), nontrivial ones only."""
        key = (g, s, bit)
        hit = self._tables.get(key)
        if hit is not None:
            return hit
        if bit == 0:
            table = {}
            room = self.basis.cls - self._weights[g]
            for i in range(g + 1, self.n):
                if self._weights[i] <= room:
                    img = self.conj(i, g, s)
                    if len(img) > 1:
                        table[i] = img
        else:
            half = self._table(g, s, bit - 1, ctr)
            table = {i: self._apply_table(half, img, ctr) for i, img in half.items()}
        self._tables[key] = table
        return table

    def _apply_table(self, table: dict, tail, ctr: list) -> Syllables:
        out = self.zero()
        for i, ei in tail:
            img = table.get(i)
            if img is None:
                self._mul_gen(out, i, ei, ctr)
            else:
                for h, y in self._power(img, ei, ctr):
                    self._mul_gen(out, h, y, ctr)
        return self.syllables(out)

    def _power(self, syls: Syllables, k: int, ctr: list) -> Syllables:
        """Normal form of (normal form syls)^k."""
        key = (syls, k)
        hit = self._powers.get(key)
        if hit is not None:
            return hit
        if k < 0:
            base = self.zero()
            for g, x in reversed(syls):
                self._mul_gen(base, g, -x, ctr)
            base_s, k = self.syllables(base), -k
        else:
            base_s = syls
        acc = self.zero()
        while k:
            if k & 1:
                for g, x in base_s:
                    self._mul_gen(acc, g, x, ctr)
            k >>= 1
            if k:
                sq = list(self.zero())
                for part in (base_s, base_s):
                    for g, x in part:
                        self._mul_gen(sq, g, x, ctr)
                base_s = self.syllables(sq)
        result = self.syllables(acc)
        self._powers[key] = result
        return result


@functools.lru_cache(maxsize=None)
def _cached_collector(rank: int, cls: int) -> Collector:
    return Collector(_cached_basis(rank, cls))


def collector(rank: int, cls: int) -> Collector:
    _basis(rank, cls)  # budget check, even on a cache hit
    return _cached_collector(rank, cls)


class NilpotentNF:
    """Element of F/gamma_(c+1) as an exponent vector over the Hall basis."""

    __slots__ = ("alphabet", "cls", "exponents")

    def __init__(self, alphabet: Alphabet, cls: int, exponents: Sequence[int]):
        self.alphabet = alphabet
        self.cls = cls
        self.exponents = tuple(exponents)

    @property
    def basis(self) -> HallBasis:
        return _basis(self.alphabet.rank, self.cls)

    def _collector(self) -> Collector:
        return collector(self.alphabet.rank, self.cls)

    def __eq__(self, other):
        if not isinstance(other, NilpotentNF):
            return NotImplemented
        return (self.alphabet, self.cls, self.exponents) == (other.alphabet, other.cls, other.exponents)

    def __hash__(self):
        return hash((self.alphabet, self.cls, self.exponents))

    def __mul__(self, other: NilpotentNF) -> NilpotentNF:
        col = self._collector()
        e = list(self.exponents)
        col.multiply(e, col.syllables(other.exponents))
        return NilpotentNF(self.alphabet, self.cls, e)

    def inverse(self) -> NilpotentNF:
        col = self._collector()
        e = col.multiply(col.zero(), _invert(col.syllables(self.exponents)))
        return NilpotentNF(self.alphabet, self.cls, e)

    def is_identity(self) -> bool:
        return not any(self.exponents)

    def min_weight(self) -> int | None:
        """Smallest weight carrying a nonzero exponent (None for the identity)."""
        B = self.basis
        ws = [B.weight(i) for i, x in enumerate(self.exponents) if x]
        return min(ws) if ws else None

    def items(self) -> list[tuple[str, int]]:
        B = self.basis
        names = self.alphabet.names
        return [(B.text(i, names), x) for i, x in enumerate(self.exponents) if x]

    def __str__(self):
        parts = [t if x == 1 else f"{t}^{x}" for t, x in self.items()]
        return "*".join(parts) if parts else "1"

    def __repr__(self):
        return f"NilpotentNF(class={self.cls}, {str(self)!r})"

    def to_word(self) -> Word:
        B = self.basis
        acc = self.alphabet.identity()
        for i, x in enumerate(self.exponents):
            if x:
                acc = acc * B.as_word(i, self.alphabet) ** x
        return acc

    def to_json(self) -> dict:
        return {"class": self.cls, "exponents": [[t, str(x)] for t, x in self.items()]}


def collect(a: Word, cls: int) -> NilpotentNF:
    """Normal form of `a` in F/gamma_(cls+1)."""
    col = collector(a.rank, cls)
    e = col.multiply(col.zero(), a.syllables)
    return NilpotentNF(a.alphabet, cls, e)


def congruent_mod_gamma(a: Word, b: Word, k: int) -> bool:
    """True iff a b^-1 lies in gamma_k(F)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return True
    return collect(a * b.inverse(), k - 1).is_identity()


class LcsWeight(NamedTuple):
    value: int
    exact: bool

    def __str__(self):
        return str(self.value) if self.exact else f">= {self.value}"


def lcs_weight(a: Word, max_class: int) -> LcsWeight:
    """Largest k <= max_class with a in gamma_k, or ">= max_class+1"."""
    if max_class < 1:
        raise ValueError("max_class must be >= 1")
    w = collect(a, max_class).min_weight()
    if w is None:
        return LcsWeight(max_class + 1, False)
    return LcsWeight(w, True)


class NilpotentGroup(CanonicalGroup):
    """Free nilpotent group of class c as a canonical-key group."""

    def __init__(self, alphabet: Alphabet, cls: int):
        super().__init__(alphabet)
        self.cls = cls
        self.descriptor = f"nilpotent:{cls}"
        self._col = collector(alphabet.rank, cls)
        self._basis = _basis(alphabet.rank, cls)
        self._identity = (0,) * len(self._basis)

    @property
    def identity(self):
        return self._identity

    def gen_key(self, i):
        e = [0] * len(self._basis)
        e[i] = 1
        return tuple(e)

    def key(self, word):
        self._check_word(word)
        return tuple(self._col.multiply(self._col.zero(), word.syllables))

    def mul(self, a, b):
        if not any(b):
            return a
        return tuple(self._col.multiply(list(a), self._col.syllables(b)))

    def inv(self, a):
        return tuple(self._col.multiply(self._col.zero(), _invert(self._col.syllables(a))))

    def nf(self, k) -> NilpotentNF:
        return NilpotentNF(self.alphabet, self.cls, k)

    def _key_text(self, k):
        return str(self.nf(k))
