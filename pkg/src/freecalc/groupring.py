"""Integral group rings of groups with canonical element keys.

A ``CanonicalGroup`` turns a representative word into a hashable key such
that equal group elements get identical keys, and multiplies/inverts keys
directly.  ``RingElement`` is a finite Z-linear combination of such keys.

Supported quotients of the free group F on an alphabet:

* ``free``          -- F itself, keys are reduced words
* ``abelian``       -- F/F', keys are exponent vectors
* ``nilpotent:c``   -- F/gamma_(c+1), keys are Hall normal forms
* ``metabelian``    -- F/F'', keys from the Magnus embedding
* ``solvable:k``    -- F/F^(k), keys from iterating the Magnus embedding
"""

from __future__ import annotations

import threading
from collections import defaultdict
from collections.abc import Iterable, Mapping

from . import budget
from .errors import AlphabetError, DescriptorError
from .words import Alphabet, Word


class CanonicalGroup:
    """Abstract quotient F/R with canonical keys."""

    descriptor: str = "?"

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self._text_cache: dict = {}
        self._text_lock = threading.Lock()

    @property
    def rank(self) -> int:
        return self.alphabet.rank

    def __eq__(self, other):
        return (
            isinstance(other, CanonicalGroup)
            and self.descriptor == other.descriptor
            and self.alphabet == other.alphabet
        )

    def __hash__(self):
        return hash((self.descriptor, self.alphabet))

    def __repr__(self):
        return f"<{self.descriptor} group on {', '.join(self.alphabet.names) or 'no generators'}>"

    def describe(self) -> dict:
        return {"variety": self.descriptor, "rank": self.rank, "generators": list(self.alphabet.names)}

    # subclasses implement these
    @property
    def identity(self):
        raise NotImplementedError

    def gen_key(self, i: int):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def _key_text(self, k) -> str:
        raise NotImplementedError

    # shared behaviour
    def _check_word(self, word: Word) -> None:
        if word.rank != self.rank:
            raise AlphabetError(f"word of rank {word.rank} used in a group of rank {self.rank}")

    def key(self, word: Word):
        self._check_word(word)
        acc = self.identity
        for g, e in word.syllables:
            acc = self.mul(acc, self.pow(self.gen_key(g), e))
        return acc

    def pow(self, k, n: int):
        if n < 0:
            k, n = self.inv(k), -n
        acc = self.identity
        while n:
            if n & 1:
                acc = self.mul(acc, k)
            k = self.mul(k, k)
            n >>= 1
        return acc

    def is_identity(self, k) -> bool:
        return k == self.identity

    def equal(self, a: Word, b: Word) -> bool:
        return self.key(a) == self.key(b)

    def key_text(self, k) -> str:
        text = self._text_cache.get(k)
        if text is None:
            text = self._key_text(k)
            with self._text_lock:
                self._text_cache[k] = text
        return text


class FreeGroup(CanonicalGroup):
    descriptor = "free"

    @property
    def identity(self):
        return self.alphabet.identity()

    def gen_key(self, i):
        return self.alphabet.gen(i)

    def key(self, word):
        self._check_word(word)
        return word if word.alphabet == self.alphabet else word.rename(self.alphabet)

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inverse()

    def pow(self, k, n):
        return k ** n

    def _key_text(self, k):
        return str(k)


def monomial_text(names, exps) -> str:
    parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e]
    return "*".join(parts) if parts else "1"


class FreeAbelianGroup(CanonicalGroup):
    descriptor = "abelian"

    def __init__(self, alphabet):
        super().__init__(alphabet)
        self._identity = (0,) * alphabet.rank

    @property
    def identity(self):
        return self._identity

    def gen_key(self, i):
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def key(self, word):
        self._check_word(word)
        v = [0] * self.rank
        for g, e in word.syllables:
            v[g] += e
        return tuple(v)

    def mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inv(self, a):
        return tuple(-x for x in a)

    def pow(self, k, n):
        return tuple(n * x for x in k)

    def _key_text(self, k):
        return monomial_text(self.alphabet.names, k)


# ring elements ------------------------------------------------------------------

class RingElement:
    """Finitely supported map key -> nonzero integer in Z[G]."""

    __slots__ = ("group", "terms", "_hash")

    def __init__(self, group: CanonicalGroup, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for k, c in items:
            if c:
                clean[k] = clean.get(k, 0) + c
                if not clean[k]:
                    del clean[k]
        budget.check_terms(len(clean))
        self.group = group
        self.terms = clean
        self._hash = None

    @classmethod
    def _trusted(cls, group, terms: dict) -> RingElement:
        budget.check_terms(len(terms))
        obj = cls.__new__(cls)
        obj.group = group
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, group) -> RingElement:
        return cls._trusted(group, {})

    @classmethod
    def one(cls, group) -> RingElement:
        return cls._trusted(group, {group.identity: 1})

    @classmethod
    def of_key(cls, group, key, coeff: int = 1) -> RingElement:
        return cls._trusted(group, {key: coeff} if coeff else {})

    @classmethod
    def of_word(cls, group, word: Word, coeff: int = 1) -> RingElement:
        return cls.of_key(group, group.key(word), coeff)

    @classmethod
    def from_words(cls, group, pairs: Iterable[tuple[Word, int]]) -> RingElement:
        return cls(group, [(group.key(w), c) for w, c in pairs])

    def _check(self, other: RingElement) -> None:
        if self.group != other.group:
            raise AlphabetError(f"ring elements over different groups: {self.group!r} vs {other.group!r}")

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            return self == RingElement.one(self.group) * other
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.group == other.group and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = RingElement.one(self.group) * other
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return RingElement._trusted(self.group, out)

    __radd__ = __add__

    def __neg__(self):
        return RingElement._trusted(self.group, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = RingElement.one(self.group) * other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return RingElement.zero(self.group)
            return RingElement._trusted(self.group, {k: c * other for k, c in self.terms.items()})
        if not isinstance(other, RingElement):
            return NotImplemented
        self._check(other)
        g = self.group
        out: dict = defaultdict(int)
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                out[g.mul(k1, k2)] += c1 * c2
        return RingElement._trusted(g, {k: c for k, c in out.items() if c})

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def translate(self, key, right: bool = False) -> RingElement:
        """Multiply by a single group element (on the left by default)."""
        g = self.group
        if right:
            return RingElement._trusted(g, {g.mul(k, key): c for k, c in self.terms.items()})
        return RingElement._trusted(g, {g.mul(key, k): c for k, c in self.terms.items()})

    def augmentation(self) -> int:
        return sum(self.terms.values())

    def as_trivial_unit(self):
        """(sign, key) when this element is +-g for a single group element, else None."""
        if len(self.terms) != 1:
            return None
        (k, c), = self.terms.items()
        if c in (1, -1):
            return c, k
        return None

    def map_keys(self, target: CanonicalGroup, fn) -> RingElement:
        return RingElement(target, [(fn(k), c) for k, c in self.terms.items()])

    def sorted_terms(self) -> list[tuple[str, object, int]]:
        g = self.group
        return sorted(((g.key_text(k), k, c) for k, c in self.terms.items()), key=lambda t: t[0])

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for i, (text, _k, c) in enumerate(self.sorted_terms()):
            if " " in text:
                text = f"({text})"
            mag = abs(c)
            if text == "1":
                body = str(mag)
            elif mag == 1:
                body = text
            else:
                body = f"{mag}*{text}"
            if i == 0:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(out)

    def __repr__(self):
        return f"RingElement({str(self)!r})"

    def to_json(self) -> dict:
        return {
            "group": self.group.describe(),
            "terms": [{"coeff": str(c), "key": text} for text, _k, c in self.sorted_terms()],
        }


def ring_add(u: RingElement, v: RingElement) -> RingElement:
    return u + v


def ring_multiply(u: RingElement, v: RingElement) -> RingElement:
    return u * v


def augmentation(u: RingElement) -> int:
    return u.augmentation()


def as_trivial_unit(u: RingElement):
    return u.as_trivial_unit()


def project(u: RingElement, target: CanonicalGroup | str) -> RingElement:
    """Image of an element of Z[F] in Z[F/R]."""
    if not isinstance(u.group, FreeGroup):
        raise DescriptorError("project expects an element of the group ring of the free group")
    if isinstance(target, str):
        target = quotient(target, u.group.alphabet)
    if target.rank != u.group.rank:
        raise AlphabetError(f"cannot project rank {u.group.rank} onto a quotient of rank {target.rank}")
    return u.map_keys(target, target.key)


# descriptors ------------------------------------------------------------------

def parse_descriptor(text: str) -> tuple[str, int | None]:
    """'nilpotent:3' -> ('nilpotent', 3); 'metabelian' -> ('solvable', 2)."""
    name, _, param = text.strip().lower().partition(":")
    if name == "metabelian" and not param:
        return "solvable", 2
    if name in ("free", "abelian") and not param:
        return name, None
    if name in ("nilpotent", "solvable"):
        try:
            n = int(param)
        except ValueError:
            raise DescriptorError(f"{name} needs an integer parameter, e.g. {name}:2") from None
        if n < 1:
            raise DescriptorError(f"{name} parameter must be >= 1")
        return name, n
    raise DescriptorError(
        f"unknown variety {text!r}; expected free, abelian, nilpotent:c, metabelian or solvable:k"
    )


_quotient_cache: dict = {}
_quotient_lock = threading.Lock()


def quotient(descriptor: str, alphabet: Alphabet | int) -> CanonicalGroup:
    """The relatively free group named by a descriptor, on the given alphabet."""
    if isinstance(alphabet, int):
        alphabet = Alphabet.standard(alphabet)
    name, param = parse_descriptor(descriptor)
    if name == "solvable" and param == 1:
        name, param = "abelian", None
    cache_key = (name, param, alphabet)
    with _quotient_lock:
        hit = _quotient_cache.get(cache_key)
    if hit is not None:
        return hit
    if name == "free":
        group = FreeGroup(alphabet)
    elif name == "abelian":
        group = FreeAbelianGroup(alphabet)
    elif name == "nilpotent":
        from .nilpotent import NilpotentGroup
        group = NilpotentGroup(alphabet, param)
    else:
        from .magnus import MagnusGroup
        group = MagnusGroup(quotient(f"solvable:{param - 1}", alphabet))
    with _quotient_lock:
        return _quotient_cache.setdefault(cache_key, group)
