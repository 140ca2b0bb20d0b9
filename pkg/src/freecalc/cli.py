"""Command-line front end: ``freecalc <subcommand> ...``.

Exit codes: 0 success, 1 domain error, 2 usage error, 3 budget exceeded.
Word and term arguments use the library grammar; an argument ``@path``
is replaced by the contents of that file.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, budget
from .autos import (
    Endomorphism,
    HomWord,
    compose,
    hom_word_apply,
    identity,
    inner,
    is_hom_word,
    is_ia_on_R,
    permutational,
    transvection,
)
from .errors import BudgetExceeded, FreeCalcError
from .groupring import project, quotient
from .magnus import (
    coefficient_descriptor,
    f_sigma,
    fox_derivative,
    inner_on_R_witness,
    is_identity_in_FmodRprime,
    magnus_derivation,
    NegativeUnit,
)
from .nilpotent import _basis, collect, congruent_mod_gamma
from .parser import names_in, parse_expr, parse_term, parse_word
from .words import STANDARD_NAMES, Alphabet


class UsageError(Exception):
    pass


def _read(text: str) -> str:
    if text.startswith("@"):
        try:
            return Path(text[1:]).read_text(encoding="utf-8").strip()
        except OSError as exc:
            raise UsageError(f"cannot read {text[1:]}: {exc.strerror}") from None
    return text


def _infer_alphabet(opts, texts) -> Alphabet:
    if opts.gens:
        return Alphabet.of(opts.gens)
    if opts.rank is not None:
        return Alphabet.standard(opts.rank)
    seen: list[str] = []
    for t in texts:
        for n in names_in(parse_expr(t)):
            if n not in seen:
                seen.append(n)
    if all(n in STANDARD_NAMES for n in seen):
        return Alphabet.standard(max((STANDARD_NAMES.index(n) + 1 for n in seen), default=1))
    return Alphabet(tuple(seen))


def _bool(v: bool) -> str:
    return "true" if v else "false"


def _parse_aut(spec: str, alphabet: Alphabet, variety: str) -> Endomorphism:
    """inner:g | perm:y;x | transvection:x;v | images:w1;w2;... | id | JSON object."""
    spec = _read(spec).strip()
    if spec.startswith("{"):
        data = json.loads(spec)
        data.setdefault("variety", variety)
        return Endomorphism.from_json(data, alphabet if alphabet.rank == int(data["rank"]) else None)
    kind, _, rest = spec.partition(":")
    parts = [p.strip() for p in rest.split(";")] if rest else []
    kind = kind.strip().lower()
    if kind in ("id", "identity"):
        return identity(alphabet, variety)
    if kind == "inner" and len(parts) == 1:
        return inner(parse_word(parts[0], alphabet), variety)
    if kind in ("perm", "permutation") and parts:
        return permutational(parts, alphabet, variety)
    if kind == "transvection" and len(parts) == 2:
        return transvection(parts[0], parse_word(parts[1], alphabet), variety)
    if kind == "images" and parts:
        return Endomorphism.from_texts(alphabet, parts, variety)
    raise UsageError(
        f"bad endomorphism {spec!r}; use inner:g, perm:y;x, transvection:x;v, images:w1;w2 or JSON"
    )


def _aut_texts(spec: str) -> list[str]:
    spec = _read(spec).strip()
    if spec.startswith("{"):
        return list(json.loads(spec).get("images", []))
    kind, _, rest = spec.partition(":")
    parts = [p.strip() for p in rest.split(";")] if rest else []
    if kind.strip().lower() == "transvection":
        return parts[1:]
    return parts


# subcommands ------------------------------------------------------------------

def cmd_reduce(o, out):
    text = _read(o.word)
    w = parse_word(text, _infer_alphabet(o, [text]))
    return {"word": str(w), "length": len(w)}, str(w)


def cmd_expsum(o, out):
    text = _read(o.word)
    A = _infer_alphabet(o, [text, o.generator])
    k = parse_word(text, A).exponent_sum(o.generator)
    return {"generator": o.generator, "exponent_sum": k}, str(k)


def cmd_fox(o, out):
    text = _read(o.word)
    A = _infer_alphabet(o, [text])
    w = parse_word(text, A)
    gens = [o.gen] if o.gen else list(A.names)
    variety = o.variety or "free"
    G = quotient(variety, A)
    rows = []
    for g in gens:
        d = fox_derivative(w, g)
        if variety != "free":
            d = project(d, G)
        rows.append((g, d))
    data = {"variety": variety, "derivatives": [[g, d.to_json()] for g, d in rows]}
    return data, "\n".join(f"D_{g} = {d}" for g, d in rows)


def cmd_magnus(o, out):
    text = _read(o.word)
    A = _infer_alphabet(o, [text])
    v = magnus_derivation(parse_word(text, A), o.coeff)
    return v.to_json(), str(v)


def cmd_istrivial(o, out):
    text = _read(o.word)
    A = _infer_alphabet(o, [text])
    w = parse_word(text, A)
    if o.rspec:
        result = is_identity_in_FmodRprime(w, o.rspec)
        where = f"R'/{o.rspec}"
    else:
        where = o.variety or "free"
        G = quotient(where, A)
        result = G.is_identity(G.key(w))
    return {"variety": where, "trivial": result}, _bool(result)


def cmd_equal(o, out):
    a, b = _read(o.a), _read(o.b)
    A = _infer_alphabet(o, [a, b])
    variety = o.variety or "free"
    result = quotient(variety, A).equal(parse_word(a, A), parse_word(b, A))
    return {"variety": variety, "equal": result}, _bool(result)


def cmd_collect(o, out):
    text = _read(o.word)
    A = _infer_alphabet(o, [text])
    nf = collect(parse_word(text, A), o.cls)
    return nf.to_json(), str(nf)


def cmd_congruent(o, out):
    a, b = _read(o.a), _read(o.b)
    A = _infer_alphabet(o, [a, b])
    result = congruent_mod_gamma(parse_word(a, A), parse_word(b, A), o.gamma)
    return {"gamma": o.gamma, "congruent": result}, _bool(result)


def cmd_hallbasis(o, out):
    A = Alphabet.of(o.gens) if o.gens else Alphabet.standard(o.rank if o.rank is not None else 2)
    B = _basis(A.rank, o.cls)
    rows = [(b.id, b.weight, B.text(b.id, A.names)) for b in B]
    data = {
        "rank": A.rank,
        "class": o.cls,
        "counts": B.counts(),
        "basis": [{"id": i, "weight": w, "text": t} for i, w, t in rows],
    }
    lines = [f"{i}\t{w}\t{t}" for i, w, t in rows]
    lines.append("counts: " + ",".join(str(c) for c in B.counts()))
    return data, "\n".join(lines)


def _homword(o, extra=()):
    term = _read(o.term)
    args = [_read(a) for a in (o.args or [])]
    A = _infer_alphabet(o, [term, *args, *extra])
    return HomWord.parse(parse_term(term), args, A), A


def cmd_homword_check(o, out):
    hw, _ = _homword(o)
    v = is_hom_word(hw, o.variety or "free")
    data = {"variety": o.variety or "free", **hw.to_json(), **v.to_json()}
    return data, "accepted" if v.accepted else f"rejected: {v.reason}"


def cmd_homword_apply(o, out):
    text = _read(o.word)
    hw, A = _homword(o, [text])
    w = hom_word_apply(hw, parse_word(text, A))
    return {"word": str(w)}, str(w)


def cmd_fsigma(o, out):
    hw, A = _homword(o)
    variety = o.variety or "metabelian"
    coeff = o.coeff or coefficient_descriptor(variety)
    f = f_sigma(hw, coeff)
    unit = f.as_trivial_unit()
    witness = inner_on_R_witness(f)
    G = f.group
    unit_text = "none" if unit is None else f"({unit[0]}, {G.key_text(unit[1])})"
    if witness is None:
        wit_text = "none"
    elif isinstance(witness, NegativeUnit):
        wit_text = str(witness)
    else:
        wit_text = f"conjugation by {G.key_text(witness)}"
    data = {
        "variety": variety,
        "shape": str(hw.shape),
        "f_sigma": f.to_json(),
        "augmentation": f.augmentation(),
        "trivial_unit": None if unit is None else {"sign": unit[0], "key": G.key_text(unit[1])},
        "witness": wit_text,
    }
    lines = [
        f"shape: {hw.shape}",
        f"f_sigma: {f}",
        f"augmentation: {f.augmentation()}",
        f"trivial unit: {unit_text}",
        f"witness: {wit_text}",
    ]
    return data, "\n".join(lines)


def cmd_aut_apply(o, out):
    text = _read(o.word)
    A = _infer_alphabet(o, [text, *_aut_texts(o.aut)])
    e = _parse_aut(o.aut, A, o.variety or "free")
    w = e.apply(parse_word(text, A))
    return {"word": str(w)}, str(w)


def cmd_aut_compose(o, out):
    texts = [t for s in o.aut for t in _aut_texts(s)]
    A = _infer_alphabet(o, texts)
    maps = [_parse_aut(s, A, o.variety or "free") for s in o.aut]
    acc = maps[0]
    for m in maps[1:]:
        acc = compose(acc, m)
    return acc.to_json(), str(acc)


def cmd_ia_check(o, out):
    A = _infer_alphabet(o, _aut_texts(o.aut))
    variety = o.variety or "metabelian"
    e = _parse_aut(o.aut, A, "free")
    result = is_ia_on_R(e, variety)
    return {"variety": variety, "ia_on_R": result}, _bool(result)


def cmd_selftest(o, out):
    from .selftest import run_selftest

    results = run_selftest(trials=o.trials, seed=o.seed if o.seed is not None else 0)
    ok = all(r[1] for r in results)
    data = {"passed": ok, "checks": [{"name": n, "passed": p, "detail": d} for n, p, d in results]}
    text = "\n".join(f"{'PASS' if p else 'FAIL'} {n}: {d}" for n, p, d in results)
    return data, text, (0 if ok else 1)


COMMANDS = {
    "reduce": cmd_reduce,
    "expsum": cmd_expsum,
    "fox": cmd_fox,
    "magnus": cmd_magnus,
    "istrivial": cmd_istrivial,
    "equal": cmd_equal,
    "collect": cmd_collect,
    "congruent": cmd_congruent,
    "hallbasis": cmd_hallbasis,
    "homword-check": cmd_homword_check,
    "homword-apply": cmd_homword_apply,
    "fsigma": cmd_fsigma,
    "aut-apply": cmd_aut_apply,
    "aut-compose": cmd_aut_compose,
    "ia-check": cmd_ia_check,
    "selftest": cmd_selftest,
}


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    d = argparse.SUPPRESS if suppress else None
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--rank", type=int, default=d, help="alphabet rank (standard names x, y, z, w or x0, x1, ...)")
    g.add_argument("--gens", default=d, help="comma-separated generator names, overrides --rank")
    g.add_argument("--variety", default=d, help="free | abelian | nilpotent:c | metabelian | solvable:k")
    g.add_argument("--json", action="store_true", default=argparse.SUPPRESS if suppress else False,
                   help="print JSON")
    g.add_argument("--budget", type=int, default=d, help="maximum number of terms in a ring element")
    g.add_argument("--max-steps", type=int, default=d, help="maximum number of collection steps")
    g.add_argument("--seed", type=int, default=d, help="random seed (selftest)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(suppress=True)
    parser = argparse.ArgumentParser(
        prog="freecalc",
        description="Fox calculus, Magnus embeddings and nilpotent collection for free groups.",
        parents=[_global_flags(suppress=False)],
    )
    parser.add_argument("--version", action="version", version=f"freecalc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help_):
        return sub.add_parser(name, help=help_, parents=[common])

    add("reduce", "freely reduce a word").add_argument("word")
    p = add("expsum", "exponent sum of a generator")
    p.add_argument("word")
    p.add_argument("generator")
    p = add("fox", "Fox derivatives (projected to --variety when given)")
    p.add_argument("word")
    p.add_argument("--gen", help="only this generator")
    p = add("magnus", "Magnus derivation into the free Z[Q]-module")
    p.add_argument("word")
    p.add_argument("--coeff", default="abelian", help="coefficient quotient Q (default abelian)")
    p = add("istrivial", "is the word trivial in the variety")
    p.add_argument("word")
    p.add_argument("--rspec", help="decide membership in R' for R = commutator | derived:k | gamma:c")
    p = add("equal", "are two words equal in the variety")
    p.add_argument("a")
    p.add_argument("b")
    p = add("collect", "Hall normal form in the free nilpotent group of the given class")
    p.add_argument("word")
    p.add_argument("--class", dest="cls", type=int, required=True)
    p = add("congruent", "is a*b^-1 in gamma_k")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--gamma", type=int, required=True, metavar="K")
    p = add("hallbasis", "list basic commutators")
    p.add_argument("--class", dest="cls", type=int, required=True)
    for name, help_ in (
        ("homword-check", "check the homomorphism law of a hom-word"),
        ("homword-apply", "evaluate a hom-word at a word"),
        ("fsigma", "f_sigma of a hom-word and its unit analysis"),
    ):
        p = add(name, help_)
        p.add_argument("--term", required=True)
        p.add_argument("--args", nargs="+", action="extend", default=[])
        if name == "homword-apply":
            p.add_argument("word")
        if name == "fsigma":
            p.add_argument("--coeff", help="coefficient quotient (default: derived from --variety)")
    p = add("aut-apply", "apply an endomorphism to a word")
    p.add_argument("--aut", required=True)
    p.add_argument("word")
    p = add("aut-compose", "compose endomorphisms (first --aut applied last)")
    p.add_argument("--aut", action="append", required=True)
    p = add("ia-check", "does the endomorphism fix R/R' pointwise (IA on R)")
    p.add_argument("--aut", required=True)
    p = add("selftest", "run oracle cross-checks")
    p.add_argument("--trials", type=int, default=100)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        opts = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = sys.stdout
    ctx = budget.limits(max_terms=opts.budget, max_collection_steps=opts.max_steps)
    try:
        with ctx:
            result = COMMANDS[opts.command](opts, out)
    except UsageError as exc:
        print(f"freecalc: usage error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"freecalc: budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (FreeCalcError, ValueError, json.JSONDecodeError) as exc:
        print(f"freecalc: error: {exc}", file=sys.stderr)
        return 1
    except RecursionError:
        print("freecalc: budget exceeded: recursion too deep", file=sys.stderr)
        return 3
    data, text, *rest = result
    if opts.json:
        out.write(json.dumps(data, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")
    return rest[0] if rest else 0


if __name__ == "__main__":
    sys.exit(main())
