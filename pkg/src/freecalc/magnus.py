"""Fox calculus, the Magnus derivation and free solvable word problems.

For a normal subgroup R of F with effective quotient Q = F/R, the map

    aR' -> sum_i D_i(a)~ t_i

(D_i the Fox derivatives, ~ the projection Z[F] -> Z[Q]) embeds F/R' in a
free Z[Q]-module.  Pairing the module vector with the image of a in Q
gives a canonical key for F/R', and iterating from Q = F/F' gives keys for
every free solvable group F/F^(k).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import NamedTuple

from . import budget
from .errors import AlphabetError, DescriptorError
from .groupring import (
    CanonicalGroup,
    FreeAbelianGroup,
    FreeGroup,
    RingElement,
    parse_descriptor,
    project,
    quotient,
)
from .words import Alphabet, Word


# Fox derivatives ----------------------------------------------------------------

def fox_derivative(a: Word, i: int | str) -> RingElement:
    """D_i(a) in Z[F], from D(uv) = D(u) + u D(v) and D_i(x_j) = delta_ij."""
    alphabet = a.alphabet
    i = alphabet.index(i) if isinstance(i, str) else i
    if not 0 <= i < alphabet.rank:
        raise AlphabetError(f"generator index {i} out of range for rank {alphabet.rank}")
    group = FreeGroup(alphabet)
    terms: dict = {}
    prefix: tuple = ()
    for g, e in a.syllables:
        if g == i:
            # x^e contributes sum_{k<e} p x^k, or -sum_{1<=k<=|e|} p x^-k
            if e > 0:
                ks, sign = range(e), 1
            else:
                ks, sign = range(-1, e - 1, -1), -1
            for k in ks:
                w = Word(alphabet, prefix + ((g, k),) if k else prefix)
                terms[w] = terms.get(w, 0) + sign
        prefix = prefix + ((g, e),)
    return RingElement(group, terms)


def fox_derivatives(a: Word) -> list[RingElement]:
    return [fox_derivative(a, i) for i in range(a.rank)]


# module vectors -------------------------------------------------------------

class ModuleVector:
    """sum_i coords[i] t_i in the free Z[Q]-module on t_0 .. t_(n-1)."""

    __slots__ = ("group", "coords")

    def __init__(self, group: CanonicalGroup, coords):
        coords = tuple(coords)
        if len(coords) != group.rank:
            raise AlphabetError(f"module vector needs {group.rank} coordinates, got {len(coords)}")
        for c in coords:
            if c.group != group:
                raise AlphabetError("module coordinates must share the coefficient group")
        self.group = group
        self.coords = coords

    @classmethod
    def zero(cls, group) -> ModuleVector:
        return cls(group, [RingElement.zero(group)] * group.rank)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __getitem__(self, i) -> RingElement:
        if isinstance(i, str):
            i = self.group.alphabet.index(i)
        return self.coords[i]

    def __eq__(self, other):
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self.group == other.group and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __add__(self, other: ModuleVector) -> ModuleVector:
        return ModuleVector(self.group, [a + b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return ModuleVector(self.group, [-a for a in self.coords])

    def __sub__(self, other):
        return self + (-other)

    def translate(self, key) -> ModuleVector:
        """Left multiplication by the group element with the given key."""
        return ModuleVector(self.group, [c.translate(key) for c in self.coords])

    def scale(self, r: RingElement) -> ModuleVector:
        return ModuleVector(self.group, [r * c for c in self.coords])

    def __str__(self):
        names = self.group.alphabet.names
        parts = [f"t_{names[i]}: {c}" for i, c in enumerate(self.coords) if c]
        return "; ".join(parts) if parts else "0"

    def __repr__(self):
        return f"ModuleVector({str(self)!r})"

    def to_json(self) -> dict:
        names = self.group.alphabet.names
        return {
            "quotient": self.group.descriptor,
            "coords": [[names[i], c.to_json()] for i, c in enumerate(self.coords) if c],
        }


def _coefficient_group(Q, alphabet: Alphabet) -> CanonicalGroup:
    if isinstance(Q, CanonicalGroup):
        if Q.rank != alphabet.rank:
            raise AlphabetError(f"quotient of rank {Q.rank} used with a word of rank {alphabet.rank}")
        return Q
    return quotient(Q, alphabet)


def magnus_derivation(a: Word, Q: CanonicalGroup | str = "abelian") -> ModuleVector:
    """The vector (D_i(a) projected to Z[Q])_i."""
    group = _coefficient_group(Q, a.alphabet)
    return ModuleVector(group, [project(fox_derivative(a, i), group) for i in range(a.rank)])


# Magnus keys ----------------------------------------------------------------

class SolvableKey(NamedTuple):
    """Canonical key of an element of F/R': its derivation vector and its image in F/R."""

    coords: tuple
    base: object


class MagnusGroup(CanonicalGroup):
    """F/R' for R the kernel of F -> base, keyed through the Magnus embedding."""

    def __init__(self, base: CanonicalGroup, descriptor: str | None = None):
        super().__init__(base.alphabet)
        self.base = base
        if descriptor is None:
            length = derived_length(base)
            if length is None:
                descriptor = f"rprime({base.descriptor})"
            elif length + 1 == 2:
                descriptor = "metabelian"
            else:
                descriptor = f"solvable:{length + 1}"
        self.descriptor = descriptor
        n = base.rank
        self._zero = RingElement.zero(base)
        self._identity = SolvableKey((self._zero,) * n, base.identity)
        self._gens = [base.gen_key(i) for i in range(n)]
        self._gens_inv = [base.inv(k) for k in self._gens]

    @property
    def identity(self):
        return self._identity

    def gen_key(self, i):
        coords = [self._zero] * self.rank
        coords[i] = RingElement.one(self.base)
        return SolvableKey(tuple(coords), self._gens[i])

    def key(self, word):
        # walk the letters keeping the prefix image in the base group
        self._check_word(word)
        base = self.base
        acc = [defaultdict(int) for _ in range(self.rank)]
        pk = base.identity
        for g, e in word.syllables:
            col = acc[g]
            if e > 0:
                step = self._gens[g]
                for _ in range(e):
                    col[pk] += 1
                    pk = base.mul(pk, step)
            else:
                step = self._gens_inv[g]
                for _ in range(-e):
                    pk = base.mul(pk, step)
                    col[pk] -= 1
        coords = tuple(RingElement(base, c) for c in acc)
        return SolvableKey(coords, pk)

    def mul(self, a, b):
        if b == self._identity:
            return a
        if a == self._identity:
            return b
        coords = tuple(x + y.translate(a.base) for x, y in zip(a.coords, b.coords))
        return SolvableKey(coords, self.base.mul(a.base, b.base))

    def inv(self, a):
        binv = self.base.inv(a.base)
        return SolvableKey(tuple(-(c.translate(binv)) for c in a.coords), binv)

    def vector(self, k: SolvableKey) -> ModuleVector:
        return ModuleVector(self.base, k.coords)

    def _key_text(self, k):
        vec = str(self.vector(k))
        return f"<{vec} | {self.base.key_text(k.base)}>"


def derived_length(group: CanonicalGroup) -> int | None:
    """k when the group is the free solvable group F/F^(k), else None."""
    if isinstance(group, FreeAbelianGroup):
        return 1
    if isinstance(group, MagnusGroup):
        inner = derived_length(group.base)
        return None if inner is None else inner + 1
    return None


def solvable_key(a: Word, k: int):
    """Canonical key of a in F/F^(k); k = 1 gives the exponent vector."""
    if k < 1:
        raise DescriptorError("derived length must be >= 1")
    return quotient(f"solvable:{k}", a.alphabet).key(a)


def _coefficients_for(rspec, alphabet: Alphabet) -> CanonicalGroup:
    """F/R for an R-spec: commutator, derived:k (R = F^(k)), gamma:c (R = gamma_c), or F/R itself."""
    if isinstance(rspec, CanonicalGroup):
        return _coefficient_group(rspec, alphabet)
    text = rspec.strip().lower()
    name, _, param = text.partition(":")
    if text in ("commutator", "f'", "derived"):
        return quotient("abelian", alphabet)
    if name == "derived" and param:
        k = int(param)
        if k < 1:
            raise DescriptorError("derived:k needs k >= 1")
        return quotient(f"solvable:{k}", alphabet)
    if name == "gamma" and param:
        c = int(param)
        if c < 2:
            raise DescriptorError("gamma:c needs c >= 2 (gamma_1 is the whole group)")
        return quotient(f"nilpotent:{c - 1}", alphabet)
    parse_descriptor(text)
    return quotient(text, alphabet)


def is_identity_in_FmodRprime(a: Word, rspec="commutator") -> bool:
    """Decide a in R' by the vanishing of every projected Fox derivative."""
    group = _coefficients_for(rspec, a.alphabet)
    return all(not project(fox_derivative(a, i), group) for i in range(a.rank))


def rprime_group(rspec, alphabet: Alphabet) -> MagnusGroup:
    return MagnusGroup(_coefficients_for(rspec, alphabet))


def coefficient_descriptor(variety: str) -> str:
    """F/R for a variety F/R': metabelian -> abelian, solvable:k -> solvable:(k-1), gamma:c -> nilpotent:(c-1)."""
    text = variety.strip().lower()
    name, _, param = text.partition(":")
    if name == "gamma" and param:
        c = int(param)
        if c < 2:
            raise DescriptorError("gamma:c needs c >= 2")
        return f"nilpotent:{c - 1}"
    kind, k = parse_descriptor(text)
    if kind == "solvable" and k >= 2:
        return "abelian" if k == 2 else f"solvable:{k - 1}"
    raise DescriptorError(f"{variety!r} is not of the form F/R' (use metabelian, solvable:k with k >= 2, or gamma:c)")


# hom-word normal shape and f_sigma ----------------------------------------------

@dataclass(frozen=True)
class NormalShape:
    """w(x; u) = v_1 x^k_1 v_2 x^k_2 ... v_m x^k_m with v_j free of x."""

    pieces: tuple  # ((v_j, k_j), ...)

    def prefixes(self) -> list[Word]:
        """c_i = v_1 ... v_i."""
        out = []
        acc = None
        for v, _ in self.pieces:
            acc = v if acc is None else acc * v
            out.append(acc)
        return out

    def exponent_sum(self) -> int:
        return sum(k for _, k in self.pieces)

    def __str__(self):
        out = []
        for v, k in self.pieces:
            if not v.is_identity():
                out.append(f"({v})" if len(v.syllables) > 1 else str(v))
            if k:
                out.append("*" if k == 1 else f"*^{k}")
        return " ".join(out) if out else "1"


def normal_shape(hw) -> NormalShape:
    """Split the evaluated term at the occurrences of the subject.

    `hw` needs `.term`, `.args` and `.alphabet`; the subject is evaluated as
    a fresh generator appended to the alphabet.
    """
    from .parser import evaluate_term

    alphabet = hw.alphabet
    fresh = alphabet.fresh_names(1, "subject")[0]
    ext = alphabet.extended(fresh)
    subject = ext.gen(alphabet.rank)
    args = [u.rename(ext) for u in hw.args]
    word = evaluate_term(hw.term, subject, args)
    s = alphabet.rank
    pieces = []
    segment: list = []
    for g, e in word.syllables:
        if g == s:
            pieces.append((Word(alphabet, tuple(segment)), e))
            segment = []
        else:
            segment.append((g, e))
    if segment or not pieces:
        pieces.append((Word(alphabet, tuple(segment)), 0))
    return NormalShape(tuple(pieces))


def f_sigma(hw, Q: CanonicalGroup | str = "abelian") -> RingElement:
    """sum_i k_i c_i in Z[Q] for the normal shape of the hom-word.

    Q is the coefficient quotient F/R of the variety F/R'.
    """
    group = _coefficient_group(Q, hw.alphabet)
    shape = normal_shape(hw)
    terms: dict = defaultdict(int)
    for (_, k), c in zip(shape.pieces, shape.prefixes()):
        if k:
            terms[group.key(c)] += k
    budget.check_terms(len(terms))
    return RingElement(group, terms)


@dataclass(frozen=True)
class NegativeUnit:
    """f_sigma = -v: cannot come from an automorphism (augmentation would be -1)."""

    key: object

    def __str__(self):
        return "impossible: negative unit"


def inner_on_R_witness(f: RingElement):
    """v when f = v (conjugation by v on R/R'), NegativeUnit when f = -v, else None."""
    unit = f.as_trivial_unit()
    if unit is None:
        return None
    sign, key = unit
    if sign > 0:
        return key
    return NegativeUnit(key)
