"""Model-check the KF and WKF truth axioms against a computed interpretation.

Each axiom is a biconditional about membership in the model.  Sentence
variables range over the sentences of the universe and term quantifiers over
the instance domain of each quantified sentence, so a verdict of "holds" is
always relative to the universe and its bound.

Transcription used (``m`` the model, ``D(p)`` for ``p in m or ~p in m``)::

    kf1   s = t in m             <->  val(s) = val(t)   (also name/sub/dep atoms)
    kf2   ~(s = t) in m          <->  val(s) != val(t)
    kf3   ~~p in m               <->  p in m
    kf4   p & q in m             <->  p in m and q in m
    kf5   ~(p & q) in m          <->  ~p in m or ~q in m
    kf6   p | q in m             <->  p in m or q in m
    kf7   ~(p | q) in m          <->  ~p in m and ~q in m
    kf8   forall x p in m        <->  p(t) in m for every t
    kf9   ~forall x p in m       <->  ~p(t) in m for some t
    kf10  exists x p in m        <->  p(t) in m for some t
    kf11  ~exists x p in m       <->  ~p(t) in m for every t
    kf12  T(t) in m              <->  val(t) is a sentence in m
    kf13  ~T(t) in m             <->  ~val(t) in m or val(t) is not a sentence

The WKF list is the same except that 5, 6, 9 and 10 also require every
component (every instance) to be determined.  ``con`` asks that no sentence
and its negation are both members; ``compl`` that one of them always is.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .kripke import PartialModel
from .syntax import And, Eq, Exists, Forall, Formula, Not, Or, Rel, Tr, to_text
from .universe import Universe

KF, WKF = "KF", "WKF"
HOLDS = "holds"
HOLDS_TAINT_FREE = "holds-on-taint-free-fragment"
FAILS = "fails"
MAX_COUNTEREXAMPLES = 5


@dataclass
class AxiomResult:
    status: str
    checked: int = 0
    skipped: int = 0
    counterexamples: list = field(default_factory=list)
    failures: list = field(default_factory=list)   # ids of taint-free failures
    tainted_failures: int = 0

    def to_json(self) -> dict:
        return {"status": self.status, "checked": self.checked, "skipped": self.skipped,
                "failures": len(self.failures), "tainted_failures": self.tainted_failures,
                "counterexamples": [list(c) for c in self.counterexamples]}


@dataclass
class AxiomReport:
    system: str
    scheme: str
    universe: dict
    results: dict
    _sentences: list = field(default=None, repr=False)

    def __getitem__(self, key: str) -> AxiomResult:
        return self.results[key]

    def status(self, key: str) -> str:
        return self.results[key].status

    def ok(self, key: str) -> bool:
        return self.results[key].status != FAILS

    @property
    def all_hold(self) -> bool:
        """Every numbered axiom holds (``con`` and ``compl`` are not axioms)."""
        return all(r.status != FAILS for k, r in self.results.items()
                   if k not in ("con", "compl"))

    def witnesses(self, key: str) -> list:
        """All taint-free sentences on which ``key`` fails."""
        return [self._sentences[i] for i in self.results[key].failures]

    def failing(self) -> list:
        return sorted(k for k, r in self.results.items() if r.status == FAILS)

    def to_json(self) -> dict:
        return {"system": self.system, "scheme": self.scheme,
                "relativized_to": "sentences of the universe; term quantifiers over "
                                  "each quantified sentence's instance domain (0..bound plus harvested values)",
                "universe": self.universe,
                "axioms": {k: r.to_json() for k, r in sorted(self.results.items())}}


class _Checker:
    def __init__(self, m: PartialModel, u: Universe):
        self.m, self.u = m, u
        self.sem = u.semantics
        self.members = m.members
        self.index = u.index
        self.rows: dict = {}

    def has(self, f: Formula) -> Optional[bool]:
        i = self.index.get(f)
        return None if i is None else i in self.members

    def det(self, f: Formula) -> Optional[bool]:
        i = self.index.get(f)
        if i is None:
            return None
        n = self.u.falsity_id(i)
        return i in self.members or (n is not None and n in self.members)

    def record(self, key: str, i: int, lhs: bool, rhs: Optional[bool], parts=()):
        r = self.rows.setdefault(key, AxiomResult(HOLDS))
        if rhs is None:
            r.skipped += 1
            return
        r.checked += 1
        if lhs == rhs:
            return
        s = self.u.sentences[i]
        if i in self.u.tainted:
            r.tainted_failures += 1
            if r.status == HOLDS:
                r.status = HOLDS_TAINT_FREE
            return
        r.status = FAILS
        r.failures.append(i)
        if len(r.counterexamples) < MAX_COUNTEREXAMPLES:
            r.counterexamples.append((to_text(s),) + tuple(to_text(p) for p in parts))


def _all(vals):
    return None if None in vals else all(vals)


def _any(vals):
    return None if None in vals else any(vals)


def check(m: PartialModel, u: Optional[Universe] = None, system: str = KF) -> AxiomReport:
    """Check every axiom of ``system`` on ``m``; see the module docstring."""
    system = system.upper()
    if system not in (KF, WKF):
        raise ValueError(f"unknown axiom system {system!r}")
    u = u if u is not None else m.universe
    if u is not m.universe:
        raise ValueError("model was computed on a different universe")
    pre = system.lower()
    weak = system == WKF
    c = _Checker(m, u)
    sem = c.sem
    for key in range(1, 14):
        c.rows[f"{pre}{key}"] = AxiomResult(HOLDS)
    c.rows["con"] = AxiomResult(HOLDS)
    c.rows["compl"] = AxiomResult(HOLDS)

    def ax(k):
        return f"{pre}{k}"

    for i, s in enumerate(u.sentences):
        inm = i in c.members
        if isinstance(s, (Eq, Rel)):
            c.record(ax(1), i, inm, sem.eval_arith(s).value)
        elif isinstance(s, Tr):
            d = sem.deref(s.arg)
            c.record(ax(12), i, inm, False if d is None else c.has(d), (d,) if d else ())
        elif isinstance(s, And):
            c.record(ax(4), i, inm, _all([c.has(s.left), c.has(s.right)]), (s.left, s.right))
        elif isinstance(s, Or):
            rhs = _any([c.has(s.left), c.has(s.right)])
            if weak and rhs is not None:
                rhs = rhs and _all([c.det(s.left), c.det(s.right)])
            c.record(ax(6), i, inm, rhs, (s.left, s.right))
        elif isinstance(s, Forall):
            inst = sem.instances(s)
            c.record(ax(8), i, inm, _all([c.has(x) for x in inst]))
        elif isinstance(s, Exists):
            inst = sem.instances(s)
            rhs = _any([c.has(x) for x in inst])
            if weak and rhs is not None:
                rhs = rhs and _all([c.det(x) for x in inst])
            c.record(ax(10), i, inm, rhs)
        else:
            b = s.body
            if isinstance(b, (Eq, Rel)):
                c.record(ax(2), i, inm, not sem.eval_arith(b).value)
            elif isinstance(b, Tr):
                d = sem.deref(b.arg)
                c.record(ax(13), i, inm, True if d is None else c.has(Not(d)), (d,) if d else ())
            elif isinstance(b, Not):
                c.record(ax(3), i, inm, c.has(b.body), (b.body,))
            elif isinstance(b, And):
                rhs = _any([c.has(Not(b.left)), c.has(Not(b.right))])
                if weak and rhs is not None:
                    rhs = rhs and _all([c.det(b.left), c.det(b.right)])
                c.record(ax(5), i, inm, rhs, (b.left, b.right))
            elif isinstance(b, Or):
                c.record(ax(7), i, inm, _all([c.has(Not(b.left)), c.has(Not(b.right))]),
                         (b.left, b.right))
            elif isinstance(b, Forall):
                inst = sem.instances(b)
                rhs = _any([c.has(Not(x)) for x in inst])
                if weak and rhs is not None:
                    rhs = rhs and _all([c.det(x) for x in inst])
                c.record(ax(9), i, inm, rhs)
            elif isinstance(b, Exists):
                inst = sem.instances(b)
                c.record(ax(11), i, inm, _all([c.has(Not(x)) for x in inst]))
        # con and compl range over sentences whose negation is in the universe
        n = u.neg_id(i)
        if n is not None:
            c.record("con", i, not (inm and n in c.members), True)
            c.record("compl", i, inm or n in c.members, True)
    return AxiomReport(system, m.scheme, u.header(), c.rows, u.sentences)
