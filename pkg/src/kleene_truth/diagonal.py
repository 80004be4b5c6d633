"""Diagonal sentences, the groundedness formula theta, and stage truth.

``diagonalize(phi, y)`` builds the textbook diagonal formula

    F(xs, y)  = exists a exists b (name(a, y) & (sub(b, y, [y], a) & phi(xs, b)))
    psi(xs)   = F(xs, m)      where m is the code of F

with ``name`` and ``sub`` as designated relations, so its shape is fixed and
the equivalence with ``phi(xs, [psi])`` holds after ``T`` is applied, not just
classically.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .base import Semantics
from .coding import Codec, CodecA
from .ground import GroundReport, analyze
from .kripke import SK, WK, PartialModel, TruthClass, iterate
from .syntax import (Exists, Formula, Not, Num, Rel, Term, Tr, Var, all_vars,
                     conj, fresh_var, match_instance, rename_free, substitute,
                     to_text)
from .universe import Universe


@dataclass(frozen=True)
class Diagonal:
    phi: Formula          # the formula diagonalised, free in ``var``
    var: str
    template: Formula     # F(xs, y)
    code: int             # code of the template
    psi: Formula          # F(xs, code)
    phi_at_psi: Formula   # phi(xs, [psi])
    codec_id: str


def diagonalize(phi: Formula, var: str = "y", codec: Optional[Codec] = None) -> Diagonal:
    codec = codec if codec is not None else CodecA()
    if var not in phi.free_vars:
        raise ValueError(f"variable {var} is not free in {to_text(phi)}")
    used = all_vars(phi) | {var}
    a = fresh_var(used, "a")
    b = fresh_var(used | {a}, "b")
    template = Exists(a, Exists(b, conj(
        Rel("name", (Var(a), Var(var))),
        Rel("sub", (Var(b), Var(var), Num(codec.encode(Var(var))), Var(a))),
        rename_free(phi, var, b))))
    m = codec.encode(template)
    psi = substitute(template, var, Num(m))
    return Diagonal(phi, var, template, m, psi,
                    substitute(phi, var, Num(codec.encode(psi))), codec.ident)


def liar(codec: Optional[Codec] = None) -> Diagonal:
    """The sentence equivalent to the denial of its own truth."""
    return diagonalize(Not(Tr(Var("y"))), "y", codec)


def truth_teller(codec: Optional[Codec] = None) -> Diagonal:
    return diagonalize(Tr(Var("y")), "y", codec)


def build_theta(codec: Optional[Codec] = None) -> Diagonal:
    """theta(x): the diagonal of ``exists z dep(z, x) & T(theta(z-bar))``.

    ``G(x) = ~theta(x)`` is the groundedness formula.
    """
    codec = codec if codec is not None else CodecA()
    x, y, z, c, s = (Var(n) for n in "xyzcs")
    # the substituted term is the numeral of z, obtained through name
    body = Exists("z", conj(
        Rel("dep", (z, x)),
        Exists("c", conj(
            Rel("name", (c, z)),
            Exists("s", conj(Rel("sub", (s, y, Num(codec.encode(x)), c)), Tr(s)))))))
    return diagonalize(body, "y", codec)


def theta_instance(theta: Diagonal, t: Term) -> Formula:
    return substitute(theta.psi, "x", t)


def theta_argument(theta: Diagonal, s: Formula) -> Optional[Term]:
    """The term ``t`` when ``s`` is ``theta(t)``, else None."""
    if not isinstance(s, Exists):
        return None
    return match_instance(theta.psi, "x", s)


def theta_seeds(psis: Iterable[Formula], codec: Codec,
                theta: Optional[Diagonal] = None) -> list:
    """Seeds ``psi`` and ``theta([psi])`` for each ``psi``."""
    theta = theta if theta is not None else build_theta(codec)
    psis = list(psis)
    return psis + [theta_instance(theta, Num(codec.encode(p))) for p in psis]


def theta_injector(u: Universe, wk_model: PartialModel,
                   theta: Diagonal) -> Callable[[int], frozenset]:
    """Ids of ``theta(t)`` in ``u`` with ``val(t)`` a WK-ungrounded sentence."""
    ids = set()
    sem = u.semantics
    for i, s in enumerate(u.sentences):
        t = theta_argument(theta, s)
        if t is None:
            continue
        target = sem.deref(t)
        if target is None or target not in u.index:
            continue
        j = u.index[target]
        if wk_model.class_of(j) == TruthClass.UNGROUNDED:
            ids.add(i)
    ids = frozenset(ids)
    return lambda n: ids


def theta_model(u: Universe, theta: Diagonal,
                wk_model: Optional[PartialModel] = None) -> PartialModel:
    """The Strong Kleene hierarchy seeded at every stage with theta of the
    WK-ungrounded sentences."""
    wk_model = wk_model if wk_model is not None else iterate(u, WK)
    return iterate(u, SK, injector=theta_injector(u, wk_model, theta))


# -- checks -----------------------------------------------------------------

def check_diagkf(m: PartialModel, psi: Formula, phi_at_psi: Formula) -> bool:
    """Membership form of ``T(psi) <-> T(phi([psi]))`` and its negated twin."""
    u = m.universe
    need = [psi, phi_at_psi, Not(psi), Not(phi_at_psi)]
    missing = [to_text(s) for s in need if s not in u]
    if missing:
        raise ValueError(f"universe lacks {missing[0]}")
    return ((psi in m) == (phi_at_psi in m)
            and (Not(psi) in m) == (Not(phi_at_psi) in m))


def random_interpretation(rng: random.Random, bias: float = 0.5) -> Callable[[int], bool]:
    memo: dict = {}

    def truth(k: int) -> bool:
        if k not in memo:
            memo[k] = rng.random() < bias
        return memo[k]

    return truth


def diagonal_equivalence_failures(d: Diagonal, semantics: Semantics, trials: int = 200,
                                  seed: int = 0, args: Iterable[Term] = ()) -> int:
    """Count random interpretations of T under which ``psi`` and ``phi([psi])``
    get different classical values.  ``args`` instantiate remaining free
    variables of ``psi`` in order of their names."""
    rng = random.Random(seed)
    psi, rhs = d.psi, d.phi_at_psi
    for name, t in zip(sorted(psi.free_vars), args):
        psi, rhs = substitute(psi, name, t), substitute(rhs, name, t)
    if not psi.is_sentence:
        raise ValueError("instantiate every parameter of the diagonal formula")
    fails = 0
    for _ in range(trials):
        truth = random_interpretation(rng)
        a = semantics.evaluate(psi, truth)[0]
        b = semantics.evaluate(rhs, truth)[0]
        fails += a != b
    return fails


# -- stage truth ------------------------------------------------------------

class StageTruth:
    """Operational reading of the stage-truth formula ``psi(s, x)``.

    For a well-founded ``s``, :meth:`true_set` is the set of ``x`` made true by
    the clause recursion, where ``exists s' < s`` ranges over the immediate
    predecessors of ``s``.  Truth-free ``x`` are decided by the oracle.  With
    ``injected`` (the theta hierarchy) an extra clause accepts those ids.
    """

    def __init__(self, u: Universe, report: GroundReport,
                 injected: Optional[frozenset] = None):
        self.u = u
        self.report = report
        self.injected = injected or frozenset()
        self._sets: dict = {}

    def true_set(self, s_id: int) -> frozenset:
        hit = self._sets.get(s_id)
        if hit is not None:
            return hit
        if s_id not in self.report.wf:
            raise ValueError(f"stage truth needs a well-founded index: {to_text(self.u.sentences[s_id])}")
        # fill bottom-up so the recursion never goes deep
        pending = [s_id]
        order: set = set()
        while pending:
            j = pending.pop()
            if j in self._sets or j in order:
                continue
            order.add(j)
            pending.extend(p for p in self.u.preds[j] if p not in self._sets)
        for j in sorted(order, key=self.report.rank.__getitem__):
            if j not in self._sets:
                self._sets[j] = self._compute(j)
        return self._sets[s_id]

    def _compute(self, s_id: int) -> frozenset:
        u = self.u
        lower = [self._sets[p] for p in u.preds[s_id]]
        below = frozenset().union(*lower) if lower else frozenset()
        has_pred = bool(lower)
        out = set()
        for x, r in enumerate(u.rules):
            kind = r[0]
            if kind == "A":
                ok = r[1]
            elif x in self.injected:
                ok = True
            elif kind == "T":
                ok = r[1] in below
            elif kind == "NT":
                ok = has_pred and (r[2] or r[1] in below)
            elif kind == "NN":
                ok = r[1] in below
            elif kind == "AND":
                ok = r[1] in below and r[2] in below
            elif kind == "OR":
                ok = r[1] in below or r[2] in below
            elif kind == "NAND":
                ok = r[3] in below or r[4] in below
            elif kind == "NOR":
                ok = r[3] in below and r[4] in below
            elif kind == "ALL":
                ok = any(all(i in low for i in r[1]) for low in lower)
            elif kind == "EX":
                ok = any(i in below for i in r[1])
            elif kind == "NALL":
                ok = any(n in below for n in r[2])
            else:   # NEX
                ok = any(all(n in low for n in r[2]) for low in lower)
            if ok:
                out.add(x)
        return frozenset(out)

    def holds(self, s: Formula, x: Formula) -> bool:
        return self.u.id(x) in self.true_set(self.u.id(s))


def stage_truth(s: Formula, x: Formula, u: Universe,
                report: Optional[GroundReport] = None) -> bool:
    """Whether ``x`` enters the Strong Kleene hierarchy by stage ``rank(s)``,
    computed by the clause recursion rather than by iteration."""
    report = report if report is not None else analyze(u)
    ev = getattr(report, "_stage_truth", None)
    if ev is None:
        ev = StageTruth(u, report)
        report._stage_truth = ev
    return ev.holds(s, x)
