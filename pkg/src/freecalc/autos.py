"""Endomorphisms of finite-rank relatively free groups and homomorphism words.

An endomorphism is stored by the images of the basis.  Constructors that
are known to give automorphisms (inner, permutational, transvections by
words avoiding the target, and products of these) attach the inverse as
a certificate; nothing else is ever declared invertible.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass, field

from .errors import AlphabetError, DescriptorError, EndomorphismError
from .groupring import CanonicalGroup, parse_descriptor, quotient
from .magnus import MagnusGroup, NormalShape, coefficient_descriptor, f_sigma, normal_shape
from .parser import TermExpr, evaluate_term, parse_term, parse_word
from .words import Alphabet, Word, left_normed


def _gen_index(alphabet: Alphabet, g) -> int:
    if isinstance(g, Word):
        if len(g.syllables) != 1 or g.syllables[0][1] != 1:
            raise AlphabetError(f"{g} is not a generator")
        return g.syllables[0][0]
    i = alphabet.index(g) if isinstance(g, str) else g
    if not 0 <= i < alphabet.rank:
        raise AlphabetError(f"generator index {i} out of range for rank {alphabet.rank}")
    return i


class Endomorphism:
    __slots__ = ("alphabet", "images", "variety", "_inverse")

    def __init__(self, alphabet: Alphabet, images: Sequence[Word], variety: str = "free", inverse=None):
        images = tuple(images)
        if len(images) != alphabet.rank:
            raise EndomorphismError(f"need {alphabet.rank} images, got {len(images)}")
        for img in images:
            if img.alphabet != alphabet:
                raise AlphabetError("images must be words over the same alphabet")
        parse_descriptor(variety)
        self.alphabet = alphabet
        self.images = images
        self.variety = variety
        self._inverse = inverse

    @property
    def rank(self) -> int:
        return self.alphabet.rank

    @classmethod
    def from_texts(cls, alphabet: Alphabet, texts: Sequence[str], variety: str = "free") -> Endomorphism:
        return cls(alphabet, [parse_word(t, alphabet) for t in texts], variety)

    # invertibility certificate
    @property
    def certified(self) -> bool:
        return self._inverse is not None

    def inverse(self) -> Endomorphism:
        if self._inverse is None:
            raise EndomorphismError("no invertibility certificate for this endomorphism")
        inv = self._inverse
        if callable(inv):
            inv = inv()
        return Endomorphism(self.alphabet, inv.images, self.variety, inverse=lambda: self)

    def with_variety(self, variety: str) -> Endomorphism:
        return Endomorphism(self.alphabet, self.images, variety, self._inverse)

    def apply(self, g: Word) -> Word:
        if g.alphabet != self.alphabet:
            raise AlphabetError("word and endomorphism use different alphabets")
        return g.substitute(self.images)

    __call__ = apply

    def __eq__(self, other):
        if not isinstance(other, Endomorphism):
            return NotImplemented
        return (self.alphabet, self.images, self.variety) == (other.alphabet, other.images, other.variety)

    def __hash__(self):
        return hash((self.alphabet, self.images, self.variety))

    def agrees_with(self, other: Endomorphism, variety: str | None = None) -> bool:
        """Equal as maps of the relatively free group of the variety."""
        G = quotient(variety or self.variety, self.alphabet)
        return all(G.equal(a, b) for a, b in zip(self.images, other.images))

    def is_identity(self, variety: str | None = None) -> bool:
        return self.agrees_with(identity(self.alphabet), variety)

    def abelianization_matrix(self) -> list[list[int]]:
        """Row i holds the exponent sums of the image of generator i."""
        return [[img.exponent_sum(j) for j in range(self.rank)] for img in self.images]

    def abelianization_determinant(self) -> int:
        """Necessary condition for invertibility: this must be +-1."""
        return _det(self.abelianization_matrix())

    def __str__(self):
        names = self.alphabet.names
        return ", ".join(f"{names[i]} -> {img}" for i, img in enumerate(self.images))

    def __repr__(self):
        return f"Endomorphism({str(self)!r}, variety={self.variety!r})"

    def to_json(self) -> dict:
        return {"rank": self.rank, "images": [str(w) for w in self.images], "variety": self.variety}

    @classmethod
    def from_json(cls, data: dict, alphabet: Alphabet | None = None) -> Endomorphism:
        alphabet = alphabet or Alphabet.standard(int(data["rank"]))
        if alphabet.rank != int(data["rank"]):
            raise EndomorphismError("rank does not match the alphabet")
        return cls.from_texts(alphabet, data["images"], data.get("variety", "free"))


def _det(m: list[list[int]]) -> int:
    # fraction-free Gaussian elimination (Bareiss)
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# constructors ------------------------------------------------------------------

def identity(alphabet: Alphabet, variety: str = "free") -> Endomorphism:
    e = Endomorphism(alphabet, alphabet.gens(), variety)
    e._inverse = e
    return e


def inner(g: Word, variety: str = "free") -> Endomorphism:
    """x -> g x g^-1 on every generator."""
    A = g.alphabet
    ginv = g.inverse()
    imgs = [g * x * ginv for x in A.gens()]
    return Endomorphism(A, imgs, variety, inverse=lambda: inner(ginv, variety))


def permutational(p: Sequence, alphabet: Alphabet, variety: str = "free") -> Endomorphism:
    """x_i -> x_p(i) for a bijection p of the generators (indices or names)."""
    idx = [_gen_index(alphabet, q) for q in p]
    if len(idx) != alphabet.rank or sorted(idx) != list(range(alphabet.rank)):
        raise EndomorphismError(f"not a permutation of the {alphabet.rank} generators: {list(p)}")
    inv = [0] * len(idx)
    for i, j in enumerate(idx):
        inv[j] = i
    imgs = [alphabet.gen(j) for j in idx]
    return Endomorphism(alphabet, imgs, variety, inverse=lambda: permutational(inv, alphabet, variety))


def transvection(target, v: Word, variety: str = "free") -> Endomorphism:
    """target -> target * v, other generators fixed.

    Certified invertible only when v does not involve the target.
    """
    A = v.alphabet
    t = _gen_index(A, target)
    imgs = A.gens()
    imgs[t] = imgs[t] * v
    inverse = None
    if t not in v.generators_used():
        vinv = v.inverse()
        inverse = lambda: transvection(t, vinv, variety)  # noqa: E731
    return Endomorphism(A, imgs, variety, inverse=inverse)


def compose(a: Endomorphism, b: Endomorphism) -> Endomorphism:
    """The map g -> a(b(g))."""
    if a.alphabet != b.alphabet:
        raise AlphabetError("cannot compose endomorphisms of different alphabets")
    if a.variety != b.variety:
        raise DescriptorError(f"cannot compose maps of varieties {a.variety} and {b.variety}")
    imgs = [a.apply(w) for w in b.images]
    inverse = None
    if a.certified and b.certified:
        inverse = lambda: compose(b.inverse(), a.inverse())  # noqa: E731
    return Endomorphism(a.alphabet, imgs, a.variety, inverse=inverse)


def apply(e: Endomorphism, g: Word) -> Word:
    return e.apply(g)


def star_product(alphabet: Alphabet, partition: Sequence[Sequence], parts: Sequence[Endomorphism],
                 variety: str = "free") -> Endomorphism:
    """Common extension of maps of the free factors spanned by a partition of the basis.

    A part is either a map of its own small alphabet (generator j standing for
    block[j]) or a map of the full alphabet whose block images stay in the block.
    """
    if len(partition) != len(parts):
        raise EndomorphismError("need one endomorphism per block")
    blocks = [[_gen_index(alphabet, g) for g in block] for block in partition]
    flat = [i for b in blocks for i in b]
    if sorted(flat) != list(range(alphabet.rank)):
        raise EndomorphismError("blocks must be disjoint and cover the generators")
    imgs: list = [None] * alphabet.rank
    certified = True
    for block, part in zip(blocks, parts):
        certified = certified and part.certified
        if part.alphabet == alphabet:
            for i in block:
                img = part.images[i]
                stray = img.generators_used() - set(block)
                if stray:
                    names = ", ".join(alphabet.names[s] for s in sorted(stray))
                    raise EndomorphismError(
                        f"image of {alphabet.names[i]} leaves its factor (uses {names})"
                    )
                imgs[i] = img
        else:
            if part.rank != len(block):
                raise EndomorphismError(f"part of rank {part.rank} for a block of size {len(block)}")
            for j, i in enumerate(block):
                imgs[i] = part.images[j].rename(alphabet, block)
    inverse = None
    if certified:
        inverse = lambda: star_product(alphabet, partition, [p.inverse() for p in parts], variety)  # noqa: E731
    return Endomorphism(alphabet, imgs, variety, inverse=inverse)


# homomorphism words ----------------------------------------------------------

@dataclass(frozen=True)
class HomWord:
    """A term w(_0; _1, ..., _s) together with arguments u_1 .. u_s."""

    term: TermExpr
    args: tuple
    alphabet: Alphabet
    _shape: list = field(default_factory=list, compare=False, repr=False)

    def __post_init__(self):
        if len(self.args) != self.term.arity:
            raise EndomorphismError(f"term has arity {self.term.arity} but {len(self.args)} argument(s) were given")
        for u in self.args:
            if u.alphabet != self.alphabet:
                raise AlphabetError("hom-word arguments must be words over its alphabet")

    @classmethod
    def parse(cls, term: str | TermExpr, args: Sequence[str | Word], alphabet: Alphabet) -> HomWord:
        t = parse_term(term) if isinstance(term, str) else term
        words = tuple(a if isinstance(a, Word) else parse_word(a, alphabet) for a in args)
        return cls(t, words, alphabet)

    @property
    def shape(self) -> NormalShape:
        if not self._shape:
            self._shape.append(normal_shape(self))
        return self._shape[0]

    def exponent_sum(self) -> int:
        """Total exponent of the subject placeholder."""
        return self.shape.exponent_sum()

    def __call__(self, g: Word) -> Word:
        return hom_word_apply(self, g)

    def __str__(self):
        if not self.args:
            return str(self.term)
        return f"{self.term} with " + ", ".join(f"_{i + 1}={u}" for i, u in enumerate(self.args))

    def to_json(self) -> dict:
        return {"term": str(self.term), "args": [str(u) for u in self.args]}


def hom_word_apply(hw: HomWord, g: Word) -> Word:
    return evaluate_term(hw.term, g, hw.args)


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    reason: str | None
    hom_law: bool
    identity_preserved: bool
    exponent_sum: int

    def __bool__(self):
        return self.accepted

    def to_json(self) -> dict:
        return {
            "accepted": self.accepted,
            "reason": self.reason,
            "checks": {
                "hom_law": self.hom_law,
                "identity_preserved": self.identity_preserved,
                "exponent_sum": self.exponent_sum,
            },
        }


def is_hom_word(hw: HomWord, variety: str = "free") -> Verdict:
    """Does g -> w(g; u) satisfy w(xy; u) = w(x; u) w(y; u) in the variety?

    x and y are two fresh generators, so one equality in the relatively free
    group of rank n+2 settles the law for all pairs.
    """
    parse_descriptor(variety)
    A = hw.alphabet
    fx, fy = A.fresh_names(2, "h")
    ext = A.extended(fx, fy)
    x, y = ext.gen(A.rank), ext.gen(A.rank + 1)
    args = [u.rename(ext) for u in hw.args]
    G = quotient(variety, ext)
    lhs = evaluate_term(hw.term, x * y, args)
    rhs = evaluate_term(hw.term, x, args) * evaluate_term(hw.term, y, args)
    law = G.equal(lhs, rhs)
    at_one = evaluate_term(hw.term, ext.identity(), args)
    unit_ok = G.is_identity(G.key(at_one))
    k = hw.exponent_sum()
    if law:
        return Verdict(True, None, True, unit_ok, k)
    reasons = [f"homomorphism law fails in {variety}: w(xy;u) != w(x;u)*w(y;u)"]
    if not unit_ok:
        reasons.append("w(1;u) != 1")
    if k != 1:
        reasons.append(f"exponent sum of the subject is {k}, not 1")
    return Verdict(False, "; ".join(reasons), False, unit_ok, k)


def conjugate_hom_word(p: Endomorphism, hw: HomWord) -> HomWord:
    """The hom-word of p sigma p^-1, namely w(.; p(u))."""
    if not p.certified:
        raise EndomorphismError("conjugating needs an invertible map (no certificate)")
    if p.alphabet != hw.alphabet:
        raise AlphabetError("endomorphism and hom-word use different alphabets")
    return HomWord(hw.term, tuple(p.apply(u) for u in hw.args), hw.alphabet)


def hom_word_endomorphism(hw: HomWord, variety: str = "free") -> Endomorphism:
    return Endomorphism(hw.alphabet, [hom_word_apply(hw, x) for x in hw.alphabet.gens()], variety)


def hom_word_f_sigma(hw: HomWord, variety: str = "metabelian"):
    """f_sigma over the coefficient ring Z[F/R] of the variety F/R'."""
    return f_sigma(hw, coefficient_descriptor(variety))


# IA on R/R' ---------------------------------------------------------------------

def _relator_setup(variety: str, alphabet: Alphabet):
    """(F/R, F/R', module generators of R/R') for an F/R' variety."""
    text = variety.strip().lower()
    name, _, param = text.partition(":")
    if text in ("metabelian", "solvable:2"):
        c = 2
    elif name == "gamma" and param:
        c = int(param)
        if c < 2:
            raise DescriptorError("gamma:c needs c >= 2")
    else:
        raise DescriptorError(
            f"IA check supports metabelian (R = F') and gamma:c (R = gamma_c), not {variety!r}"
        )
    base: CanonicalGroup = quotient("abelian" if c == 2 else f"nilpotent:{c - 1}", alphabet)
    top = quotient("metabelian", alphabet) if c == 2 else MagnusGroup(base)
    gens = alphabet.gens()
    relators = []
    for combo in itertools.product(range(alphabet.rank), repeat=c):
        if combo[0] >= combo[1]:
            continue
        relators.append(left_normed([gens[i] for i in combo]))
    return base, top, relators


def relator_module_generators(variety: str, alphabet: Alphabet) -> list[Word]:
    return _relator_setup(variety, alphabet)[2]


def is_ia_on_R(e: Endomorphism, variety: str = "metabelian") -> bool:
    """x^-1 e(x) in R for each generator, and e fixes R/R' pointwise."""
    base, top, relators = _relator_setup(variety, e.alphabet)
    for x, img in zip(e.alphabet.gens(), e.images):
        if not base.is_identity(base.key(x.inverse() * img)):
            return False
    return all(top.equal(e.apply(r), r) for r in relators)
