"""Abstract syntax of the arithmetical language extended with a truth predicate.

Terms and formulas are immutable, hash-consed-friendly dataclasses: every node
caches its hash, its free variables and (for formulas) whether the truth
predicate occurs in it.  Numerals are stored as a count (``Num(n)``) but are
semantically ``S`` applied ``n`` times to ``0``; the smart constructor
:func:`succ` keeps that representation canonical.

Surface syntax is fully parenthesised::

    formula := (= t t) | (T t) | (name t t) | (sub t t t t) | (dep t t)
             | (not f) | (and f f) | (or f f) | (forall v f) | (exists v f)
    term    := 0 | <int> | v | (S t) | (+ t t) | (* t t) | (num n)
             | (code f) | (<fn> t ...)

``(code f)`` is a reader convenience that resolves to the numeral of the code
of ``f`` under a codec supplied to :func:`parse`; it never appears in output.
"""
from __future__ import annotations

import itertools
import re
import sys
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Union

# codes of theta instances run to thousands of digits and are printed and
# parsed as numerals
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)


class ParseError(ValueError):
    """Raised on malformed input; ``pos`` is the character offset."""

    def __init__(self, message: str, pos: int = -1):
        super().__init__(f"{message} (at {pos})" if pos >= 0 else message)
        self.pos = pos


# --------------------------------------------------------------------------
# language profiles

def monus(a: int, b: int) -> int:
    return a - b if a > b else 0


@dataclass(frozen=True)
class LanguageProfile:
    """Extra function symbols available on top of 0, S, +, *.

    ``functions`` is a tuple of ``(name, arity, evaluator)`` triples; every
    evaluator is total on naturals.
    """

    name: str
    functions: tuple = ()

    def arity(self, fn: str) -> Optional[int]:
        for name, arity, _ in self.functions:
            if name == fn:
                return arity
        return None

    def evaluator(self, fn: str) -> Callable[..., int]:
        for name, _, ev in self.functions:
            if name == fn:
                return ev
        raise KeyError(fn)

    def to_json(self) -> dict:
        return {"name": self.name,
                "functions": [[n, a] for n, a, _ in self.functions]}


PA = LanguageProfile("pa")
PA_MONUS = LanguageProfile("pa+monus", (("monus", 2, monus),))
PROFILES = {"pa": PA, "monus": PA_MONUS, "pa+monus": PA_MONUS}

# designated (natively evaluated) relations and their arities:
#   name(x, y)      x is the code of the numeral for y
#   sub(b, y, v, a) b is the code of the result of substituting term a for v in y
#   dep(x, y)       sentence x immediately depends on sentence y
RELATIONS = {"name": 2, "sub": 4, "dep": 2}


# --------------------------------------------------------------------------
# terms

class Term:
    __slots__ = ()


def _finish(node, parts, fv):
    object.__setattr__(node, "_h", hash((type(node).__name__,) + parts))
    object.__setattr__(node, "_fv", fv)


@dataclass(frozen=True, eq=True)
class Num(Term):
    n: int
    _h: int = field(init=False, repr=False, compare=False)
    _fv: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("numerals denote naturals")
        _finish(self, (self.n,), frozenset())

    def __hash__(self):
        return self._h


@dataclass(frozen=True, eq=True)
class Var(Term):
    name: str
    _h: int = field(init=False, repr=False, compare=False)
    _fv: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _finish(self, (self.name,), frozenset((self.name,)))

    def __hash__(self):
        return self._h


@dataclass(frozen=True, eq=True)
class Succ(Term):
    """Successor of a term that is not itself a numeral (see :func:`succ`)."""

    arg: Term
    _h: int = field(init=False, repr=False, compare=False)
    _fv: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _finish(self, (self.arg._h,), self.arg._fv)

    def __hash__(self):
        return self._h


@dataclass(frozen=True, eq=True)
class Plus(Term):
    left: Term
    right: Term
    _h: int = field(init=False, repr=False, compare=False)
    _fv: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _finish(self, (self.left._h, self.right._h), self.left._fv | self.right._fv)

    def __hash__(self):
        return self._h


@dataclass(frozen=True, eq=True)
class Times(Term):
    left: Term
    right: Term
    _h: int = field(init=False, repr=False, compare=False)
    _fv: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _finish(self, (self.left._h, self.right._h), self.left._fv | self.right._fv)

    def __hash__(self):
        return self._h


@dataclass(frozen=True, eq=True)
class Func(Term):
    """Application of an extra function symbol from a LanguageProfile."""

    name: str
    args: tuple
    _h: int = field(init=False, repr=False, compare=False)
    _fv: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        fv = frozenset().union(*(a._fv for a in self.args))
        _finish(self, (self.name,) + tuple(a._h for a in self.args), fv)

    def __hash__(self):
        return self._h


ZERO = Num(0)


def numeral(n: int) -> Num:
    return Num(n)


def succ(t: Term) -> Term:
    if isinstance(t, Num):
        return Num(t.n + 1)
    return Succ(t)


# --------------------------------------------------------------------------
# formulas

class Formula:
    __slots__ = ()

    @property
    def free_vars(self) -> frozenset:
        return self._fv

    @property
    def has_truth(self) -> bool:
        return self._t

    @property
    def is_sentence(self) -> bool:
        return not self._fv

    def __str__(self):
        return to_text(self)


def _ffinish(node, parts, fv, has_t):
    object.__setattr__(node, "_h", hash((type(node).__name__,) + parts))
    object.__setattr__(node, "_fv", fv)
    object.__setattr__(node, "_t", has_t)


_F = dict(init=False, repr=False, compare=False)


@dataclass(frozen=True, eq=True)
class Eq(Formula):
    left: Term
    right: Term
    _h: int = field(**_F)
    _fv: frozenset = field(**_F)
    _t: bool = field(**_F)

    def __post_init__(self):
        _ffinish(self, (self.left._h, self.right._h),
                 self.left._fv | self.right._fv, False)

    def __hash__(self):
        return self._h


@dataclass(frozen=True, eq=True)
class Tr(Formula):
    arg: Term
    _h: int = field(**_F)
    _fv: frozenset = field(**_F)
    _t: bool = field(**_F)

    def __post_init__(self):
        _ffinish(self, (self.arg._h,), self.arg._fv, True)

    def __hash__(self):
        return self._h


@dataclass(frozen=True, eq=True)
class Rel(Formula):
    """A designated relation atom: ``name``, ``sub`` or ``dep``."""

    name: str
    args: tuple
    _h: int = field(**_F)
    _fv: frozenset = field(**_F)
    _t: bool = field(**_F)

    def __post_init__(self):
        if RELATIONS.get(self.name) != len(self.args):
            raise ValueError(f"bad relation {self.name}/{len(self.args)}")
        fv = frozenset().union(*(a._fv for a in self.args))
        _ffinish(self, (self.name,) + tuple(a._h for a in self.args), fv, False)

    def __hash__(self):
        return self._h


@dataclass(frozen=True, eq=True)
class Not(Formula):
    body: Formula
    _h: int = field(**_F)
    _fv: frozenset = field(**_F)
    _t: bool = field(**_F)

    def __post_init__(self):
        _ffinish(self, (self.body._h,), self.body._fv, self.body._t)

    def __hash__(self):
        return self._h


@dataclass(frozen=True, eq=True)
class And(Formula):
    left: Formula
    right: Formula
    _h: int = field(**_F)
    _fv: frozenset = field(**_F)
    _t: bool = field(**_F)

    def __post_init__(self):
        _ffinish(self, (self.left._h, self.right._h),
                 self.left._fv | self.right._fv, self.left._t or self.right._t)

    def __hash__(self):
        return self._h


@dataclass(frozen=True, eq=True)
class Or(Formula):
    left: Formula
    right: Formula
    _h: int = field(**_F)
    _fv: frozenset = field(**_F)
    _t: bool = field(**_F)

    def __post_init__(self):
        _ffinish(self, (self.left._h, self.right._h),
                 self.left._fv | self.right._fv, self.left._t or self.right._t)

    def __hash__(self):
        return self._h


@dataclass(frozen=True, eq=True)
class Forall(Formula):
    var: str
    body: Formula
    _h: int = field(**_F)
    _fv: frozenset = field(**_F)
    _t: bool = field(**_F)

    def __post_init__(self):
        _ffinish(self, (self.var, self.body._h),
                 self.body._fv - {self.var}, self.body._t)

    def __hash__(self):
        return self._h


@dataclass(frozen=True, eq=True)
class Exists(Formula):
    var: str
    body: Formula
    _h: int = field(**_F)
    _fv: frozenset = field(**_F)
    _t: bool = field(**_F)

    def __post_init__(self):
        _ffinish(self, (self.var, self.body._h),
                 self.body._fv - {self.var}, self.body._t)

    def __hash__(self):
        return self._h


TermOrFormula = Union[Term, Formula]
Quantifier = (Forall, Exists)
Binary = (And, Or)


def neg(f: Formula) -> Formula:
    return Not(f)


def neq(a: Term, b: Term) -> Formula:
    return Not(Eq(a, b))


def conj(*fs: Formula) -> Formula:
    """Right-nested conjunction ``f1 & (f2 & (...))``."""
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = And(f, out)
    return out


# --------------------------------------------------------------------------
# evaluation of closed terms

def val(t: Term, profile: LanguageProfile = PA, env: Optional[dict] = None) -> int:
    """Standard-model value of a term; ``env`` maps variable names to naturals."""
    if isinstance(t, Num):
        return t.n
    if isinstance(t, Plus):
        return val(t.left, profile, env) + val(t.right, profile, env)
    if isinstance(t, Times):
        return val(t.left, profile, env) * val(t.right, profile, env)
    if isinstance(t, Succ):
        return val(t.arg, profile, env) + 1
    if isinstance(t, Var):
        if env is None or t.name not in env:
            raise ValueError(f"free variable {t.name} in val")
        return env[t.name]
    if isinstance(t, Func):
        return profile.evaluator(t.name)(*(val(a, profile, env) for a in t.args))
    raise TypeError(t)


# --------------------------------------------------------------------------
# substitution

def _subst_term(t: Term, v: str, r: Term) -> Term:
    if v not in t._fv:
        return t
    if isinstance(t, Var):
        return r
    if isinstance(t, Succ):
        return succ(_subst_term(t.arg, v, r))
    if isinstance(t, Plus):
        return Plus(_subst_term(t.left, v, r), _subst_term(t.right, v, r))
    if isinstance(t, Times):
        return Times(_subst_term(t.left, v, r), _subst_term(t.right, v, r))
    if isinstance(t, Func):
        return Func(t.name, tuple(_subst_term(a, v, r) for a in t.args))
    raise TypeError(t)


def _replace(f: Formula, v: str, r: Term) -> Formula:
    # no capture check: callers guarantee r's variables are not bound in f
    if v not in f._fv:
        return f
    if isinstance(f, Eq):
        return Eq(_subst_term(f.left, v, r), _subst_term(f.right, v, r))
    if isinstance(f, Tr):
        return Tr(_subst_term(f.arg, v, r))
    if isinstance(f, Rel):
        return Rel(f.name, tuple(_subst_term(a, v, r) for a in f.args))
    if isinstance(f, Not):
        return Not(_replace(f.body, v, r))
    if isinstance(f, And):
        return And(_replace(f.left, v, r), _replace(f.right, v, r))
    if isinstance(f, Or):
        return Or(_replace(f.left, v, r), _replace(f.right, v, r))
    if isinstance(f, (Forall, Exists)):
        # v is free in f, so f.var != v
        return type(f)(f.var, _replace(f.body, v, r))
    raise TypeError(f)


def substitute(f: Formula, v: Union[str, Var], t: Term) -> Formula:
    """Replace the free occurrences of variable ``v`` in ``f`` by closed ``t``."""
    name = v.name if isinstance(v, Var) else v
    if t._fv:
        raise ValueError("substitute expects a closed term")
    return _replace(f, name, t)


def rename_free(f: Formula, old: str, new: str) -> Formula:
    """Rename free variable ``old`` to ``new``; ``new`` must not be bound in ``f``."""
    if new in bound_vars(f):
        raise ValueError(f"{new} is bound in the formula")
    return _replace(f, old, Var(new))


def bound_vars(f: Formula) -> set:
    out = set()
    for g in subformulas(f):
        if isinstance(g, (Forall, Exists)):
            out.add(g.var)
    return out


def all_vars(f: Formula) -> set:
    out = bound_vars(f)
    for g in subformulas(f):
        out |= g._fv
    return out


def fresh_var(avoid: Iterable[str], stem: str = "v") -> str:
    avoid = set(avoid)
    if stem not in avoid:
        return stem
    for i in itertools.count(1):
        cand = f"{stem}{i}"
        if cand not in avoid:
            return cand


def rename_bound(f: Formula, avoid: set) -> Formula:
    """Alpha-rename every bound variable of ``f`` that lies in ``avoid``."""
    if isinstance(f, Not):
        return Not(rename_bound(f.body, avoid))
    if isinstance(f, (And, Or)):
        return type(f)(rename_bound(f.left, avoid), rename_bound(f.right, avoid))
    if isinstance(f, (Forall, Exists)):
        body = rename_bound(f.body, avoid)
        if f.var in avoid:
            new = fresh_var(avoid | all_vars(body), f.var)
            body = _replace(body, f.var, Var(new))
            return type(f)(new, body)
        return type(f)(f.var, body)
    return f


def substitute_predicate(f: Formula, replacement: Formula, hole: str = "x") -> Formula:
    """Replace every ``T(t)`` in ``f`` by ``replacement`` with ``hole := t``.

    Bound variables of ``f`` that clash with variables of ``replacement`` are
    renamed first, so terms plugged into the hole are never captured.
    """
    extra = replacement._fv - {hole}
    if extra:
        raise ValueError(f"replacement has free variables besides {hole}: {sorted(extra)}")
    f = rename_bound(f, all_vars(replacement))
    inner_bound = bound_vars(replacement)

    def go(g: Formula) -> Formula:
        if isinstance(g, Tr):
            if g.arg._fv & inner_bound:
                r = rename_bound(replacement, set(g.arg._fv))
            else:
                r = replacement
            return _replace(r, hole, g.arg)
        if isinstance(g, Not):
            return Not(go(g.body))
        if isinstance(g, (And, Or)):
            return type(g)(go(g.left), go(g.right))
        if isinstance(g, (Forall, Exists)):
            return type(g)(g.var, go(g.body))
        return g

    return go(f)


def subformulas(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, Not):
            stack.append(g.body)
        elif isinstance(g, (And, Or)):
            stack.extend((g.right, g.left))
        elif isinstance(g, (Forall, Exists)):
            stack.append(g.body)


def terms_of(f: Formula) -> Iterator[Term]:
    for g in subformulas(f):
        if isinstance(g, Eq):
            yield g.left
            yield g.right
        elif isinstance(g, Tr):
            yield g.arg
        elif isinstance(g, Rel):
            yield from g.args


def is_positive(f: Formula) -> bool:
    """True when every occurrence of T lies under an even number of negations."""

    def go(g, negs):
        if isinstance(g, Tr):
            return negs % 2 == 0
        if isinstance(g, Not):
            return go(g.body, negs + 1)
        if isinstance(g, (And, Or)):
            return go(g.left, negs) and go(g.right, negs)
        if isinstance(g, (Forall, Exists)):
            return go(g.body, negs)
        return True

    return go(f, 0)


def match_instance(pattern: Formula, var: str, target: Formula) -> Optional[Term]:
    """Return ``t`` with ``substitute(pattern, var, t) == target``, or None.

    Only free occurrences of ``var`` are matched; ``pattern`` must contain one.
    """
    found: list = []

    def mt(p: Term, q: Term) -> bool:
        if var not in p._fv:
            return p == q
        if isinstance(p, Var):
            if found:
                return found[0] == q
            if q._fv:
                return False
            found.append(q)
            return True
        if isinstance(p, Succ):
            if isinstance(q, Num) and q.n > 0:
                return mt(p.arg, Num(q.n - 1))
            return isinstance(q, Succ) and mt(p.arg, q.arg)
        if type(p) is not type(q):
            return False
        if isinstance(p, (Plus, Times)):
            return mt(p.left, q.left) and mt(p.right, q.right)
        if isinstance(p, Func):
            return p.name == q.name and len(p.args) == len(q.args) and all(
                mt(a, b) for a, b in zip(p.args, q.args))
        return False

    def mf(p: Formula, q: Formula) -> bool:
        if var not in p._fv:
            return p == q
        if type(p) is not type(q):
            return False
        if isinstance(p, Eq):
            return mt(p.left, q.left) and mt(p.right, q.right)
        if isinstance(p, Tr):
            return mt(p.arg, q.arg)
        if isinstance(p, Rel):
            return p.name == q.name and all(mt(a, b) for a, b in zip(p.args, q.args))
        if isinstance(p, Not):
            return mf(p.body, q.body)
        if isinstance(p, (And, Or)):
            return mf(p.left, q.left) and mf(p.right, q.right)
        if isinstance(p, (Forall, Exists)):
            return p.var == q.var and mf(p.body, q.body)
        return False

    if var not in pattern._fv:
        return None
    return found[0] if mf(pattern, target) and found else None


# --------------------------------------------------------------------------
# printing

def term_text(t: Term) -> str:
    if isinstance(t, Num):
        return "0" if t.n == 0 else f"(num {t.n})"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Succ):
        return f"(S {term_text(t.arg)})"
    if isinstance(t, Plus):
        return f"(+ {term_text(t.left)} {term_text(t.right)})"
    if isinstance(t, Times):
        return f"(* {term_text(t.left)} {term_text(t.right)})"
    if isinstance(t, Func):
        return "(" + " ".join([t.name] + [term_text(a) for a in t.args]) + ")"
    raise TypeError(t)


def to_text(f: TermOrFormula) -> str:
    if isinstance(f, Term):
        return term_text(f)
    if isinstance(f, Eq):
        return f"(= {term_text(f.left)} {term_text(f.right)})"
    if isinstance(f, Tr):
        return f"(T {term_text(f.arg)})"
    if isinstance(f, Rel):
        return "(" + " ".join([f.name] + [term_text(a) for a in f.args]) + ")"
    if isinstance(f, Not):
        return f"(not {to_text(f.body)})"
    if isinstance(f, And):
        return f"(and {to_text(f.left)} {to_text(f.right)})"
    if isinstance(f, Or):
        return f"(or {to_text(f.left)} {to_text(f.right)})"
    if isinstance(f, Forall):
        return f"(forall {f.var} {to_text(f.body)})"
    if isinstance(f, Exists):
        return f"(exists {f.var} {to_text(f.body)})"
    raise TypeError(f)


# --------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")
_RESERVED = {"S", "T", "num", "not", "and", "or", "forall", "exists", "code",
             "+", "*", "="} | set(RELATIONS)


def _tokenize(text: str):
    pos = 0
    out = []
    while True:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError("unexpected character", pos)
            break
        start = m.start(m.lastindex)
        out.append((m.group(m.lastindex), start))
        pos = m.end()
    return out


class _Reader:
    def __init__(self, text, profile, codec):
        self.toks = _tokenize(text)
        self.i = 0
        self.profile = profile
        self.codec = codec
        self.end = len(text)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, self.end)

    def take(self):
        tok = self.peek()
        if tok[0] is None:
            raise ParseError("unexpected end of input", tok[1])
        self.i += 1
        return tok

    def expect(self, s):
        tok, pos = self.take()
        if tok != s:
            raise ParseError(f"expected {s!r}, got {tok!r}", pos)

    def ident(self):
        tok, pos = self.take()
        if tok in (None, "(", ")") or not _IDENT.match(tok) or tok in _RESERVED:
            raise ParseError(f"expected a variable, got {tok!r}", pos)
        return tok

    def term(self) -> Term:
        tok, pos = self.take()
        if tok == ")":
            raise ParseError("unexpected ')'", pos)
        if tok != "(":
            if tok.isdigit():
                return Num(int(tok))
            if _IDENT.match(tok) and tok not in _RESERVED:
                return Var(tok)
            raise ParseError(f"bad term {tok!r}", pos)
        op, opos = self.take()
        if op == "S":
            t = succ(self.term())
        elif op in ("+", "*"):
            a, b = self.term(), self.term()
            t = Plus(a, b) if op == "+" else Times(a, b)
        elif op == "num":
            n, npos = self.take()
            if n is None or not n.isdigit():
                raise ParseError("num expects a natural number", npos)
            t = Num(int(n))
        elif op == "code":
            if self.codec is None:
                raise ParseError("(code ...) needs a codec", opos)
            t = Num(self.codec.encode(self.formula()))
        else:
            arity = self.profile.arity(op)
            if arity is None:
                raise ParseError(f"unknown function symbol {op!r} in profile {self.profile.name}", opos)
            t = Func(op, tuple(self.term() for _ in range(arity)))
        self.expect(")")
        return t

    def formula(self) -> Formula:
        tok, pos = self.take()
        if tok != "(":
            raise ParseError(f"expected '(', got {tok!r}", pos)
        op, opos = self.take()
        if op == "=":
            f = Eq(self.term(), self.term())
        elif op == "T":
            f = Tr(self.term())
        elif op in RELATIONS:
            f = Rel(op, tuple(self.term() for _ in range(RELATIONS[op])))
        elif op == "not":
            f = Not(self.formula())
        elif op in ("and", "or"):
            a, b = self.formula(), self.formula()
            f = And(a, b) if op == "and" else Or(a, b)
        elif op in ("forall", "exists"):
            v = self.ident()
            body = self.formula()
            f = Forall(v, body) if op == "forall" else Exists(v, body)
        else:
            raise ParseError(f"unknown operator {op!r}", opos)
        self.expect(")")
        return f


def parse(text: str, profile: LanguageProfile = PA, codec=None) -> Formula:
    """Parse one formula; raises :class:`ParseError` with a character offset."""
    r = _Reader(text, profile, codec)
    f = r.formula()
    tok, pos = r.peek()
    if tok is not None:
        raise ParseError(f"trailing input {tok!r}", pos)
    return f


def parse_term(text: str, profile: LanguageProfile = PA, codec=None) -> Term:
    r = _Reader(text, profile, codec)
    t = r.term()
    tok, pos = r.peek()
    if tok is not None:
        raise ParseError(f"trailing input {tok!r}", pos)
    return t
