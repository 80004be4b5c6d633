"""Finite, dependency-closed sentence universes.

A universe is built from seed sentences by closing under the immediate
dependency relation (dereference of ``T(t)``, components of connectives and
negations, instances of quantified sentences).  That closure is the *core*;
each core sentence additionally contributes its negation and double
negation, so every clause of the jump that mentions ``~phi`` finds it.

Sentences are interned to integer ids; the fixed-point engine works on those
ids through the pre-compiled :attr:`Universe.rules`.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .base import DEFAULT_BOUND, DEFAULT_Q_BOUND, Semantics
from .coding import Codec
from .syntax import And, Exists, Forall, Formula, Not, Or, Tr, to_text

DEFAULT_CAP = 20_000


@dataclass
class Universe:
    semantics: Semantics
    seeds: tuple
    cap: int
    sentences: list = field(default_factory=list)
    index: dict = field(default_factory=dict)
    core: frozenset = frozenset()
    preds: list = field(default_factory=list)
    truncated: frozenset = frozenset()
    arith: dict = field(default_factory=dict)
    tainted: frozenset = frozenset()
    cut: frozenset = frozenset()
    rules: list = field(default_factory=list)

    def __len__(self):
        return len(self.sentences)

    def __contains__(self, s):
        return s in self.index

    def __iter__(self):
        return iter(self.sentences)

    @property
    def codec(self) -> Codec:
        return self.semantics.codec

    @property
    def bound(self) -> int:
        return self.semantics.bound

    def id(self, s: Formula) -> int:
        try:
            return self.index[s]
        except KeyError:
            raise KeyError(f"sentence not in universe: {to_text(s)}") from None

    def neg_id(self, i: int) -> Optional[int]:
        return self.index.get(Not(self.sentences[i]))

    def falsity_id(self, i: int) -> Optional[int]:
        """Id whose membership makes sentence ``i`` false.

        Normally the negation.  The outermost ``~~phi`` has no negation in the
        universe; ``~~~phi`` would enter exactly one stage after ``~phi``, so
        ``~phi`` stands in for it.
        """
        n = self.index.get(Not(self.sentences[i]))
        if n is None:
            s = self.sentences[i]
            if isinstance(s, Not) and isinstance(s.body, Not):
                return self.index.get(s.body)
        return n

    def predecessors(self, s: Formula) -> set:
        """The immediate predecessors of ``s`` that lie in the universe."""
        return {self.sentences[j] for j in self.preds[self.id(s)]}

    @property
    def is_truncated(self) -> bool:
        return bool(self.truncated)

    def header(self) -> dict:
        return {**self.semantics.describe(), "cap": self.cap,
                "size": len(self), "core": len(self.core),
                "truncated": len(self.truncated)}

    def to_json(self) -> dict:
        rows = []
        for i, s in enumerate(self.sentences):
            rows.append({"id": i, "sentence": to_text(s),
                         "code": str(self.codec.encode(s)),
                         "core": i in self.core,
                         "truncated": i in self.truncated,
                         "tainted": i in self.tainted})
        return {"universe": self.header(), "sentences": rows}


def close(seeds: Iterable[Formula], bound: int = DEFAULT_BOUND, cap: int = DEFAULT_CAP,
          codec: Optional[Codec] = None, q_bound: int = DEFAULT_Q_BOUND,
          semantics: Optional[Semantics] = None) -> Universe:
    """Least dependency-closed universe containing ``seeds``.

    Construction stops before the universe would exceed ``cap`` sentences;
    core sentences whose predecessors were cut off are flagged truncated.
    """
    seeds = tuple(seeds)
    if not seeds:
        raise ValueError("close() needs at least one seed sentence")
    for s in seeds:
        if not isinstance(s, Formula) or not s.is_sentence:
            raise ValueError(f"seed is not a sentence: {s}")
    if cap <= 0:
        raise ValueError("cap must be positive")
    sem = semantics if semantics is not None else Semantics(codec, bound, q_bound)
    u = Universe(sem, seeds, cap)
    sentences, index = u.sentences, u.index

    def intern(s):
        i = index.get(s)
        if i is None:
            i = index[s] = len(sentences)
            sentences.append(s)
        return i

    core: set = set()
    core_preds: dict = {}
    queue = deque(seeds)
    while queue:
        s = queue.popleft()
        if s in index and index[s] in core:
            continue
        fresh = [x for x in (s, Not(s), Not(Not(s))) if x not in index]
        if len(sentences) + len(fresh) > cap:
            break
        i = intern(s)
        intern(Not(s))
        intern(Not(Not(s)))
        core.add(i)
        ps = sem.predecessors(s)
        core_preds[i] = ps
        queue.extend(p for p in ps if not (p in index and index[p] in core))

    truncated = set()
    u.preds = [()] * len(sentences)
    for i, s in enumerate(sentences):
        ps = core_preds[i] if i in core else sem.predecessors(s)
        ids = tuple(index[p] for p in ps if p in index)
        if len(ids) != len(ps):
            truncated.add(i)
        u.preds[i] = ids
    u.core = frozenset(core)
    u.truncated = frozenset(truncated)

    bad = set(truncated)
    for i, s in enumerate(sentences):
        if not s.has_truth:
            v = sem.eval_arith(s)
            u.arith[i] = v
            if not v.exact:
                bad.add(i)
    u.tainted = frozenset(_upward_closure(u.preds, bad))
    u.cut = frozenset(_upward_closure(u.preds, set(truncated)))
    u.rules = [_compile(u, i) for i in range(len(sentences))]
    return u


def _upward_closure(preds: list, start: set) -> set:
    """All ids whose dependency cone meets ``start``."""
    users: list = [[] for _ in preds]
    for i, ps in enumerate(preds):
        for p in ps:
            users[p].append(i)
    out = set(start)
    stack = list(start)
    while stack:
        j = stack.pop()
        for i in users[j]:
            if i not in out:
                out.add(i)
                stack.append(i)
    return out


def _compile(u: Universe, i: int) -> tuple:
    s = u.sentences[i]
    get = u.index.get
    sem = u.semantics
    if not s.has_truth:
        return ("A", u.arith[i].value)
    if isinstance(s, Tr):
        d = sem.deref(s.arg)
        return ("T", get(d) if d is not None else None)
    if isinstance(s, (And, Or)):
        return ("AND" if isinstance(s, And) else "OR", get(s.left), get(s.right),
                get(Not(s.left)), get(Not(s.right)))
    if isinstance(s, (Forall, Exists)):
        inst = sem.instances(s)
        return ("ALL" if isinstance(s, Forall) else "EX",
                tuple(get(x) for x in inst), tuple(get(Not(x)) for x in inst))
    # negations
    b = s.body
    if isinstance(b, Tr):
        d = sem.deref(b.arg)
        if d is None:
            return ("NT", None, True)
        return ("NT", get(Not(d)), False)
    if isinstance(b, Not):
        return ("NN", get(b.body))
    if isinstance(b, (And, Or)):
        return ("NAND" if isinstance(b, And) else "NOR", get(b.left), get(b.right),
                get(Not(b.left)), get(Not(b.right)))
    if isinstance(b, (Forall, Exists)):
        inst = sem.instances(b)
        return ("NALL" if isinstance(b, Forall) else "NEX",
                tuple(get(x) for x in inst), tuple(get(Not(x)) for x in inst))
    raise TypeError(s)


def predecessors(u: Universe, s: Formula) -> set:
    return u.predecessors(s)
