"""Freely reduced words over a finite, named alphabet.

A word is stored as a tuple of syllables ``(generator_index, exponent)``
with adjacent generators distinct and no zero exponents, so every element
of the free group has exactly one representation.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

from .errors import AlphabetError

STANDARD_NAMES = ("x", "y", "z", "w")


@dataclass(frozen=True)
class Alphabet:
    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise AlphabetError(f"duplicate generator names in {self.names}")
        for name in self.names:
            if not name.isidentifier() or name.startswith("_"):
                raise AlphabetError(f"invalid generator name {name!r}")

    @classmethod
    def standard(cls, rank: int) -> Alphabet:
        """x, y, z, w for rank <= 4, otherwise x0, x1, ..."""
        if rank < 0:
            raise AlphabetError("rank must be non-negative")
        if rank <= len(STANDARD_NAMES):
            return cls(STANDARD_NAMES[:rank])
        return cls(tuple(f"x{i}" for i in range(rank)))

    @classmethod
    def of(cls, names: str | Iterable[str]) -> Alphabet:
        if isinstance(names, str):
            names = [n.strip() for n in names.split(",") if n.strip()]
        return cls(tuple(names))

    @property
    def rank(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise AlphabetError(f"unknown generator {name!r} (alphabet {', '.join(self.names)})") from None

    def gen(self, g: int | str, exp: int = 1) -> Word:
        i = self.index(g) if isinstance(g, str) else g
        return free_reduce([(i, exp)], self)

    def gens(self) -> list[Word]:
        return [self.gen(i) for i in range(self.rank)]

    def identity(self) -> Word:
        return Word(self, ())

    def extended(self, *names: str) -> Alphabet:
        return Alphabet(self.names + tuple(names))

    def fresh_names(self, count: int, stem: str = "s") -> list[str]:
        out: list[str] = []
        k = 0
        while len(out) < count:
            cand = f"{stem}{k}"
            if cand not in self.names:
                out.append(cand)
            k += 1
        return out


def free_reduce(raw: Iterable[tuple[int, int]], alphabet: Alphabet) -> Word:
    """Freely reduce a sequence of (generator, exponent) pairs."""
    out: list[list[int]] = []
    rank = alphabet.rank
    for g, e in raw:
        if not 0 <= g < rank:
            raise AlphabetError(f"generator index {g} out of range for rank {rank}")
        if e == 0:
            continue
        if out and out[-1][0] == g:
            out[-1][1] += e
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([g, e])
    return Word(alphabet, tuple((g, e) for g, e in out))


class Word:
    __slots__ = ("alphabet", "syllables", "_hash")

    def __init__(self, alphabet: Alphabet, syllables: tuple[tuple[int, int], ...]):
        # trusted constructor: callers outside this module go through free_reduce
        self.alphabet = alphabet
        self.syllables = syllables
        self._hash = None

    @property
    def rank(self) -> int:
        return self.alphabet.rank

    def is_identity(self) -> bool:
        return not self.syllables

    def __len__(self) -> int:
        """Length in letters."""
        return sum(abs(e) for _, e in self.syllables)

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.syllables == other.syllables and self.alphabet == other.alphabet

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.alphabet.names, self.syllables))
        return self._hash

    def _check(self, other: Word) -> None:
        if self.alphabet != other.alphabet:
            raise AlphabetError(
                f"alphabet mismatch: ({', '.join(self.alphabet.names)}) vs ({', '.join(other.alphabet.names)})"
            )

    def __mul__(self, other: Word) -> Word:
        if not isinstance(other, Word):
            return NotImplemented
        self._check(other)
        left = list(self.syllables)
        right = list(other.syllables)
        # cancel across the seam only
        while left and right and left[-1][0] == right[0][0]:
            g = left[-1][0]
            e = left[-1][1] + right[0][1]
            left.pop()
            right.pop(0)
            if e != 0:
                left.append((g, e))
                break
        return Word(self.alphabet, tuple(left + right))

    def inverse(self) -> Word:
        return Word(self.alphabet, tuple((g, -e) for g, e in reversed(self.syllables)))

    __invert__ = inverse

    def __pow__(self, n: int) -> Word:
        if n < 0:
            return self.inverse() ** (-n)
        result = self.alphabet.identity()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate_by(self, g: Word) -> Word:
        """g * self * g^-1"""
        return g * self * g.inverse()

    def letters(self) -> list[tuple[int, int]]:
        """Expand into single letters (generator, +-1)."""
        out = []
        for g, e in self.syllables:
            s = 1 if e > 0 else -1
            out.extend([(g, s)] * abs(e))
        return out

    def generators_used(self) -> set[int]:
        return {g for g, _ in self.syllables}

    def exponent_sum(self, g: int | str) -> int:
        i = self.alphabet.index(g) if isinstance(g, str) else g
        return sum(e for h, e in self.syllables if h == i)

    def substitute(self, images: Mapping[int, Word] | Sequence[Word]) -> Word:
        """Image under the endomorphism generator -> images[generator]."""
        result = None
        cache: dict[tuple[int, int], Word] = {}
        for g, e in self.syllables:
            try:
                img = images[g]
            except (KeyError, IndexError):
                raise AlphabetError(f"no image given for generator {self.alphabet.names[g]}") from None
            if result is None:
                result = img.alphabet.identity()
            key = (g, e)
            if key not in cache:
                cache[key] = img ** e
            result = result * cache[key]
        if result is None:
            # identity word: need the target alphabet from any image
            vals = list(images.values()) if isinstance(images, Mapping) else list(images)
            target = vals[0].alphabet if vals else self.alphabet
            return target.identity()
        return result

    def rename(self, alphabet: Alphabet, mapping: Sequence[int] | None = None) -> Word:
        """Same letters read in another alphabet (optionally re-indexed)."""
        if mapping is None:
            return free_reduce(self.syllables, alphabet)
        return free_reduce([(mapping[g], e) for g, e in self.syllables], alphabet)

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        names = self.alphabet.names
        return "*".join(names[g] if e == 1 else f"{names[g]}^{e}" for g, e in self.syllables)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


def multiply(a: Word, b: Word) -> Word:
    return a * b


def invert(a: Word) -> Word:
    return a.inverse()


def exponent_sum(a: Word, g: int | str) -> int:
    return a.exponent_sum(g)


def substitute(a: Word, images) -> Word:
    return a.substitute(images)


def commutator(a: Word, b: Word) -> Word:
    """[a, b] = a^-1 b^-1 a b"""
    return a.inverse() * b.inverse() * a * b


def left_normed(items: Sequence[Word]) -> Word:
    """[a1, ..., an] = [[a1, ..., a(n-1)], an]"""
    if len(items) < 2:
        raise ValueError("a commutator needs at least two entries")
    acc = items[0]
    for b in items[1:]:
        acc = commutator(acc, b)
    return acc
