"""Seed files, the shipped regression corpora and random sentence generators.

A seed file holds one s-expression sentence per line (a sentence may span
lines while its parentheses are open).  ``;`` starts a comment.  Directives:

    @liar                 the liar sentence
    @truth-teller         the truth-teller
    @diag VAR FORMULA     the diagonal sentence of FORMULA in VAR
    @chain K              T(T(...T(0 = 0))) with K truth predicates
    @theta                theta([s]) for every sentence read so far

Codes are written ``(code FORMULA)`` so that one file means the same thing
under every codec.
"""
from __future__ import annotations

import random
from pathlib import Path
from typing import Iterable, Optional, Union

from .coding import Codec, CodecA
from .diagonal import build_theta, diagonalize, liar, theta_instance, truth_teller
from .syntax import (ZERO, And, Eq, Exists, Forall, Formula, Not, Num, Or,
                     ParseError, Plus, Tr, Var, parse, succ)


def chain(k: int, codec: Codec, base: Optional[Formula] = None) -> list:
    """``[base, T(base), T(T(base)), ...]`` with ``k`` truth predicates on top."""
    s = base if base is not None else Eq(ZERO, ZERO)
    out = [s]
    for _ in range(k):
        s = Tr(Num(codec.encode(s)))
        out.append(s)
    return out


def _statements(text: str):
    buf, depth, start = [], 0, 1
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        if depth == 0 and line.startswith("@"):
            yield n, line
            continue
        if depth == 0:
            start = n
        buf.append(line)
        depth += line.count("(") - line.count(")")
        if depth <= 0:
            yield start, " ".join(buf)
            buf, depth = [], 0
    if buf:
        raise ParseError(f"line {start}: unbalanced parentheses", 0)


def read_labelled_seeds(source: Union[str, Path], codec: Optional[Codec] = None) -> list:
    """``(label, sentence)`` pairs of a seed file (a path) or of seed text (a
    string with a newline or an opening parenthesis).  Labels are the source
    statements and do not depend on the codec."""
    codec = codec if codec is not None else CodecA()
    if isinstance(source, Path) or ("\n" not in source and not source.lstrip().startswith(("(", "@"))):
        source = Path(source).read_text()
    profile = codec.profile
    out: list = []
    theta = None
    for line_no, stmt in _statements(source):
        try:
            if not stmt.startswith("@"):
                f = parse(stmt, profile, codec)
                if not f.is_sentence:
                    raise ParseError(f"free variables {sorted(f.free_vars)}", 0)
                out.append((stmt, f))
                continue
            word, _, rest = stmt[1:].partition(" ")
            rest = rest.strip()
            if word == "liar":
                out.append((stmt, liar(codec).psi))
            elif word == "truth-teller":
                out.append((stmt, truth_teller(codec).psi))
            elif word == "diag":
                var, _, body = rest.partition(" ")
                d = diagonalize(parse(body, profile, codec), var, codec)
                if not d.psi.is_sentence:
                    raise ParseError(f"diagonal has free variables {sorted(d.psi.free_vars)}", 0)
                out.append((stmt, d.psi))
            elif word == "chain":
                out.append((stmt, chain(int(rest), codec)[-1]))
            elif word == "theta":
                theta = theta or build_theta(codec)
                out.extend([(f"@theta {label}", theta_instance(theta, Num(codec.encode(f))))
                            for label, f in list(out)])
            else:
                raise ParseError(f"unknown directive @{word}", 0)
        except (ParseError, ValueError) as e:
            raise ParseError(f"line {line_no}: {e}", getattr(e, "pos", 0)) from None
    seen: set = set()
    uniq = []
    for label, f in out:
        if f not in seen:
            seen.add(f)
            uniq.append((label, f))
    return uniq


def read_seeds(source: Union[str, Path], codec: Optional[Codec] = None) -> list:
    """Sentences of a seed file; see :func:`read_labelled_seeds`."""
    return [f for _, f in read_labelled_seeds(source, codec)]


# -- random generation --------------------------------------------------------

def random_term(rng: random.Random, scope: tuple = (), depth: int = 2):
    r = rng.random()
    if depth <= 0 or r < 0.4:
        if scope and rng.random() < 0.6:
            return Var(rng.choice(scope))
        return Num(rng.randrange(4))
    if r < 0.7:
        return succ(random_term(rng, scope, depth - 1))
    return Plus(random_term(rng, scope, depth - 1), random_term(rng, scope, depth - 1))


def random_formula(rng: random.Random, scope: tuple = (), depth: int = 3,
                   codes: tuple = (), quantifiers: bool = True) -> Formula:
    """A random formula whose free variables lie in ``scope``.

    Truth atoms apply ``T`` to a variable, to one of ``codes`` or to a small
    numeral that codes nothing.
    """
    if depth <= 0 or rng.random() < 0.25:
        if rng.random() < 0.5:
            return Eq(random_term(rng, scope, 1), random_term(rng, scope, 1))
        pick = rng.random()
        if scope and pick < 0.4:
            return Tr(Var(rng.choice(scope)))
        if codes and pick < 0.85:
            return Tr(Num(rng.choice(codes)))
        return Tr(Num(rng.randrange(6)))
    kind = rng.choice(("not", "and", "or", "q") if quantifiers else ("not", "and", "or"))
    if kind == "not":
        return Not(random_formula(rng, scope, depth - 1, codes, quantifiers))
    if kind in ("and", "or"):
        a = random_formula(rng, scope, depth - 1, codes, quantifiers)
        b = random_formula(rng, scope, depth - 1, codes, quantifiers)
        return And(a, b) if kind == "and" else Or(a, b)
    v = f"v{len(scope)}"
    body = random_formula(rng, scope + (v,), depth - 1, codes, False)
    return Forall(v, body) if rng.random() < 0.5 else Exists(v, body)


def random_diagonal_formula(rng: random.Random, var: str = "y", depth: int = 3) -> Formula:
    """A random formula with ``var`` free and no other free variable."""
    f = random_formula(rng, (var,), depth)
    if var not in f.free_vars:
        f = Or(f, Tr(Var(var))) if rng.random() < 0.5 else And(f, Not(Tr(Var(var))))
    return f


def random_grounded_seeds(rng: random.Random, codec: Codec, n: int = 6,
                          depth: int = 3) -> list:
    """Sentences built in layers, each layer only naming sentences of earlier
    layers, so every dependency path ends."""
    pool: list = [Eq(ZERO, ZERO), Eq(ZERO, Num(1))]
    for _ in range(n):
        codes = tuple(codec.encode(s) for s in pool)
        pool.append(random_formula(rng, (), depth, codes))
    return pool


# -- shipped corpora ------------------------------------------------------------

QUANTIFIED = (
    "(forall x (or (= x x) (T x)))",
    "(exists x (T x))",
    "(forall x (not (T x)))",
    "(exists x (and (= x 1) (T (code (= 0 0)))))",
    "(forall x (or (T (code (= 0 0))) (T x)))",
)

ARITHMETIC = (
    "(= (* 2 3) 6)",
    "(not (= (S 0) 0))",
    "(exists x (= (+ x x) 4))",
    "(forall x (= x x))",
    "(forall x (exists y (= (S x) y)))",
    "(exists x (= (* x x) 7))",
)

JUNK = (
    "(T 5)",
    "(not (T 7))",
    "(forall x (not (T (+ x 3))))",
    "(or (T 0) (not (T 0)))",
)


def _parse_all(texts: Iterable[str], codec: Codec) -> list:
    return [parse(t, codec.profile, codec) for t in texts]


def standard_corpus(codec: Optional[Codec] = None, seed: int = 0) -> list:
    """``(name, seeds, bound)`` triples for the regression corpus (at least
    twenty universes, each under 5,000 sentences)."""
    codec = codec if codec is not None else CodecA()
    L, TT = liar(codec).psi, truth_teller(codec).psi
    z = Eq(ZERO, ZERO)
    theta = build_theta(codec)
    rng = random.Random(seed)
    out = [(f"liar-B{b}", [L], b) for b in (0, 2, 4, 8)]
    out += [(f"truth-teller-B{b}", [TT], b) for b in (2, 8)]
    out.append(("liar-mixtures", [Or(z, L), And(L, Eq(ZERO, Num(1))), Or(L, TT), Not(L)], 2))
    out.append(("chains", chain(6, codec)[1:], 2))
    out += [(f"quantified-B{b}", _parse_all(QUANTIFIED, codec) + [L], b) for b in (2, 4, 8)]
    out.append(("arithmetic", _parse_all(ARITHMETIC, codec), 8))
    out.append(("junk-codes", _parse_all(JUNK, codec), 4))
    for name, psis in (("theta-liar", [L, z, chain(1, codec)[1]]),
                       ("theta-truth-teller", [TT, chain(2, codec)[2], Or(z, L)])):
        out.append((name, psis + [theta_instance(theta, Num(codec.encode(p))) for p in psis], 0))
    for k in range(5):
        out.append((f"random-grounded-{k}", random_grounded_seeds(rng, codec), 2))
    for k in range(3):
        d = diagonalize(random_diagonal_formula(rng), "y", codec)
        out.append((f"random-diagonal-{k}", [d.psi, d.phi_at_psi], 1))
    return out
