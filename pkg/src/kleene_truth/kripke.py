"""Strong and Weak Kleene jumps and the staged least fixed-point construction.

Interpretations are single sets of sentences: ``phi`` is true when it is a
member and false when ``~phi`` is a member.  Each jump clause below mirrors
one clause of the textbook definition; truth-free sentences are decided by
the arithmetic oracle, so stage 0 already contains every truth-free sentence
the oracle accepts.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .syntax import Formula, to_text
from .universe import Universe

SK, WK, THETA, DUAL = "SK", "WK", "SK-theta", "dual"


class TruthClass(str, enum.Enum):
    TRUE = "determined-true"
    FALSE = "determined-false"
    UNGROUNDED = "ungrounded"
    TRUNCATED = "unknown-truncated"

    def __str__(self):
        return self.value

    @property
    def grounded(self) -> bool:
        return self in (TruthClass.TRUE, TruthClass.FALSE)


def _weak(scheme: str) -> bool:
    if scheme == WK:
        return True
    if scheme in (SK, THETA):
        return False
    raise ValueError(f"unknown scheme {scheme!r}")


def fires(rule: tuple, S, weak: bool) -> bool:
    """Does the jump put the sentence compiled to ``rule`` into ``J(S)``?"""
    kind = rule[0]
    if kind == "A":                      # t = s, t != s and all truth-free sentences
        return rule[1]
    if kind == "T":                      # T(t): val(t) in S
        return rule[1] in S
    if kind == "NT":                     # ~T(t): ~val(t) in S or val(t) not a sentence
        return rule[2] or rule[1] in S
    if kind == "NN":                     # ~~phi: phi in S
        return rule[1] in S
    if kind in ("AND", "OR", "NAND", "NOR"):
        _, l, r, nl, nr = rule
        if weak and not ((l in S or nl in S) and (r in S or nr in S)):
            return False
        if kind == "AND":
            return l in S and r in S
        if kind == "OR":
            return l in S or r in S
        if kind == "NAND":
            return nl in S or nr in S
        return nl in S and nr in S
    _, inst, ninst = rule
    if weak and not all(i in S or n in S for i, n in zip(inst, ninst)):
        return False
    if kind == "ALL":
        return all(i in S for i in inst)
    if kind == "EX":
        return any(i in S for i in inst)
    if kind == "NALL":
        return any(n in S for n in ninst)
    if kind == "NEX":
        return all(n in S for n in ninst)
    raise ValueError(kind)


_CLAUSE = {"A": "arithmetic", "T": "T", "NT": "not-T", "NN": "double-negation",
           "AND": "and", "OR": "or", "NAND": "not-and", "NOR": "not-or",
           "ALL": "forall", "EX": "exists", "NALL": "not-forall", "NEX": "not-exists"}


def jump_ids(u: Universe, S, scheme: str = SK) -> set:
    weak = _weak(scheme)
    return {i for i, r in enumerate(u.rules) if fires(r, S, weak)}


def _to_ids(u: Universe, S: Iterable[Formula]) -> set:
    out = set()
    for s in S:
        if s not in u.index:
            raise ValueError(f"sentence outside the universe: {to_text(s)}")
        out.add(u.index[s])
    return out


def jump_sk(S: Iterable[Formula], u: Universe) -> set:
    """Strong Kleene jump of a set of sentences, restricted to ``u``."""
    return {u.sentences[i] for i in jump_ids(u, _to_ids(u, S), SK)}


def jump_wk(S: Iterable[Formula], u: Universe) -> set:
    """Weak Kleene jump: compounds need every component determined in ``S``."""
    return {u.sentences[i] for i in jump_ids(u, _to_ids(u, S), WK)}


@dataclass
class PartialModel:
    universe: Universe
    scheme: str
    members: frozenset
    stage_of: dict = field(default_factory=dict)
    closed_at: Optional[int] = None
    clause: dict = field(default_factory=dict)
    injected: frozenset = frozenset()

    @property
    def taint(self) -> frozenset:
        return self.members & self.universe.tainted

    def __contains__(self, s: Formula) -> bool:
        i = self.universe.index.get(s)
        return i is not None and i in self.members

    def sentences(self) -> set:
        return {self.universe.sentences[i] for i in self.members}

    def stage(self, s: Formula) -> Optional[int]:
        return self.stage_of.get(self.universe.id(s))

    def settled_stage(self, i: int) -> Optional[int]:
        """Stage at which sentence ``i`` is first determined, true or false."""
        if i in self.members:
            return self.stage_of.get(i)
        u = self.universe
        n = u.falsity_id(i)
        if n is None or n not in self.members or n not in self.stage_of:
            return None
        # the stand-in for a missing negation enters one stage early
        return self.stage_of[n] + (u.neg_id(i) is None)

    def at_stage(self, n: int) -> frozenset:
        """Ids in the ``n``-th stage of the hierarchy."""
        return frozenset(i for i, k in self.stage_of.items() if k <= n)

    def class_of(self, i: int) -> TruthClass:
        u = self.universe
        if i in self.members:
            return TruthClass.TRUE
        n = u.falsity_id(i)
        if n is not None and n in self.members:
            return TruthClass.FALSE
        if i in u.cut:
            return TruthClass.TRUNCATED
        return TruthClass.UNGROUNDED

    def classify(self, s: Formula) -> TruthClass:
        return self.class_of(self.universe.id(s))

    def is_consistent(self) -> bool:
        return not self.inconsistencies()

    def inconsistencies(self) -> list:
        u = self.universe
        return sorted(i for i in self.members
                      if (n := u.neg_id(i)) is not None and n in self.members)

    def to_json(self) -> dict:
        u = self.universe
        rows = []
        for i, s in enumerate(u.sentences):
            rows.append({"sentence": to_text(s), "code": str(u.codec.encode(s)),
                         "class": self.class_of(i).value,
                         "stage": self.stage_of.get(i),
                         "taint": i in u.tainted})
        return {"scheme": self.scheme, "closed_at": self.closed_at,
                "members": len(self.members), "sentences": rows}


def iterate(u: Universe, scheme: str = SK,
            injector: Optional[Callable[[int], Iterable[int]]] = None) -> PartialModel:
    """Stage the least fixed point of the scheme's jump over ``u``.

    ``T_0`` is the oracle-accepted truth-free fragment (plus ``injector(0)``);
    ``T_{n+1} = J(T_n)`` (plus ``injector(n+1)``).  Stops at the first ``n``
    with ``T_{n+1} == T_n`` and records it as ``closed_at``.  ``injector``
    returns universe ids; with an injector the jump is always Strong Kleene.
    """
    weak = _weak(scheme)
    if injector is not None and weak:
        raise ValueError("seeded iteration is defined for the Strong Kleene jump")
    rules = u.rules
    S: set = set()
    stage_of: dict = {}
    clause: dict = {}
    injected: set = set()

    def add_injected(n):
        if injector is None:
            return
        for i in injector(n):
            injected.add(i)
            if i not in S:
                S.add(i)
                stage_of[i] = n
                clause[i] = "injected"

    for i, r in enumerate(rules):
        if r[0] == "A" and r[1]:
            S.add(i)
            stage_of[i] = 0
            clause[i] = "arithmetic"
    add_injected(0)

    pending = [i for i in range(len(rules)) if i not in S]
    n = 0
    while True:
        if n > len(rules) + 1:
            raise AssertionError("iteration did not close; the jump is not monotone")
        new = [i for i in pending if fires(rules[i], S, weak)]
        n += 1
        for i in new:
            S.add(i)
            stage_of[i] = n
            clause[i] = _CLAUSE[rules[i][0]]
        before = len(S)
        add_injected(n)
        if not new and len(S) == before:
            n -= 1
            break
        pending = [i for i in pending if i not in S]
    return PartialModel(u, THETA if injector is not None else scheme, frozenset(S),
                        stage_of, n, clause, frozenset(injected))


def classify(m: PartialModel, s: Formula) -> TruthClass:
    return m.classify(s)


def cantini_dual(m: PartialModel, check: bool = True) -> PartialModel:
    """Complete interpretation: every sentence whose negation is not in ``m``."""
    u = m.universe
    if check and not m.is_consistent():
        bad = u.sentences[m.inconsistencies()[0]]
        raise ValueError(f"cantini_dual needs a consistent model; {to_text(bad)} and its negation are both members")
    members = frozenset(i for i in range(len(u))
                        if (n := u.falsity_id(i)) is None or n not in m.members)
    return PartialModel(u, DUAL, members)


def derivation_audit(m: PartialModel) -> list:
    """Members whose recorded clause does not fire on the previous stage.

    Every member entering at stage ``n + 1`` must be produced by the jump of
    stage ``n`` through the clause matching its shape.
    """
    u = m.universe
    weak = m.scheme == WK
    by_stage: dict = {}
    for i, k in m.stage_of.items():
        by_stage.setdefault(k, []).append(i)
    bad = []
    prev: set = set()
    for k in range(0, (m.closed_at or 0) + 1):
        if k > 0:
            for i in by_stage.get(k, ()):
                if m.clause[i] == "injected":
                    continue
                r = u.rules[i]
                if _CLAUSE[r[0]] != m.clause[i] or not fires(r, prev, weak):
                    bad.append(i)
        prev |= set(by_stage.get(k, ()))
    return bad
