"""Well-foundedness and ranks of the dependency order, with cross-checks.

A sentence is well-founded when no dependency path from it reaches a cycle
or a truncated frontier.  Ranks are heights: 0 for sentences with no
predecessors, otherwise one more than the largest predecessor rank.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .kripke import WK, PartialModel
from .syntax import Formula, to_text
from .universe import Universe


@dataclass
class GroundReport:
    universe: Universe
    wf: frozenset
    rank: dict
    sk: Optional[PartialModel] = None
    wk: Optional[PartialModel] = None
    _users: list = field(default=None, repr=False)

    def is_wf(self, s: Formula) -> bool:
        return self.universe.id(s) in self.wf

    def rank_of(self, s: Formula) -> Optional[int]:
        return self.rank.get(self.universe.id(s))

    def cycle_witness_ids(self, i: int) -> Optional[list]:
        """A dependency cycle reachable from ``i`` (ids, first element repeated
        at the end), or None when ``i`` is well-founded or only reaches a
        truncated frontier."""
        u = self.universe
        if i in self.wf or i in u.cut:
            return None
        path, seen = [i], {i: 0}
        cur = i
        while True:
            nxt = next(p for p in u.preds[cur] if p not in self.wf)
            if nxt in seen:
                return path[seen[nxt]:] + [nxt]
            seen[nxt] = len(path)
            path.append(nxt)
            cur = nxt

    def cycle_witness(self, s: Formula) -> Optional[list]:
        ids = self.cycle_witness_ids(self.universe.id(s))
        return None if ids is None else [self.universe.sentences[j] for j in ids]

    def to_json(self, violations: Optional[dict] = None) -> dict:
        u = self.universe
        rows = []
        for i, s in enumerate(u.sentences):
            row = {"sentence": to_text(s), "wf": i in self.wf,
                   "rank": self.rank.get(i), "truncated": i in u.cut,
                   "taint": i in u.tainted}
            for tag, m in (("sk", self.sk), ("wk", self.wk)):
                if m is not None:
                    row[f"class_{tag}"] = m.class_of(i).value
                    row[f"stage_{tag}"] = m.stage_of.get(i)
            cyc = self.cycle_witness_ids(i)
            row["cycle_witness"] = None if cyc is None else [to_text(u.sentences[j]) for j in cyc]
            rows.append(row)
        out = {"universe": u.header(), "sentences": rows}
        if violations is not None:
            out["violations"] = violations
        return out


def _users(u: Universe) -> list:
    users: list = [[] for _ in range(len(u))]
    for i, ps in enumerate(u.preds):
        for p in ps:
            users[p].append(i)
    return users


def analyze(u: Universe, sk: Optional[PartialModel] = None,
            wk: Optional[PartialModel] = None) -> GroundReport:
    """Peel the dependency graph from its minimal elements.

    Whatever is never peeled lies on, or above, a cycle or truncated
    frontier; everything peeled gets its height as rank.
    """
    users = _users(u)
    waiting = [len(ps) for ps in u.preds]
    rank: dict = {}
    queue = deque(i for i in range(len(u)) if waiting[i] == 0 and i not in u.truncated)
    while queue:
        i = queue.popleft()
        ps = u.preds[i]
        rank[i] = 1 + max(rank[p] for p in ps) if ps else 0
        for j in users[i]:
            waiting[j] -= 1
            if waiting[j] == 0 and j not in u.truncated:
                queue.append(j)
    return GroundReport(u, frozenset(rank), rank, sk, wk, users)


def _row(u, i, **kw):
    return {"sentence": to_text(u.sentences[i]), **kw}


def check_grwf(u: Universe, report: GroundReport, wk_model: PartialModel) -> list:
    """Taint-free sentences where well-foundedness and WK-groundedness disagree."""
    if wk_model.scheme != WK:
        raise ValueError("check_grwf needs the Weak Kleene model")
    out = []
    for i in range(len(u)):
        if i in u.tainted:
            continue
        wf = i in report.wf
        grounded = wk_model.class_of(i).grounded
        if wf != grounded:
            out.append(_row(u, i, wf=wf, grounded=grounded))
    return out


def check_stage_rank(u: Universe, report: GroundReport, model: PartialModel) -> list:
    """Members entering at stage ``a + 1`` whose rank is below ``a``."""
    out = []
    for i in model.members:
        if i in u.tainted:
            continue
        k = model.stage_of.get(i)
        if k is None or k == 0:
            continue
        r = report.rank.get(i)
        if r is None or r < k - 1:
            out.append(_row(u, i, stage=k, rank=r))
    return out


def _reach(u: Universe, i: int, memo: dict) -> frozenset:
    # strict dependency cone of a well-founded sentence, by explicit search
    hit = memo.get(i)
    if hit is None:
        seen: set = set()
        stack = list(u.preds[i])
        while stack:
            j = stack.pop()
            if j not in seen:
                seen.add(j)
                stack.extend(u.preds[j])
        hit = memo[i] = frozenset(seen)
    return hit


def check_compord(u: Universe, report: GroundReport) -> list:
    """Path decomposition and downward rank surjectivity on the wf region.

    (a) whatever lies strictly below ``s'`` lies at or below one of its
        immediate predecessors;
    (b) a sentence of rank ``r`` has sentences of every rank ``< r`` below it.
    """
    out = []
    memo: dict = {}
    for i in sorted(report.wf):
        below = _reach(u, i, memo)
        via = set(u.preds[i])
        for p in u.preds[i]:
            via |= _reach(u, p, memo)
        missing = below - via
        if missing:
            out.append(_row(u, i, part="a", missing=len(missing)))
        ranks = {report.rank[j] for j in below}
        gaps = [b for b in range(report.rank[i]) if b not in ranks]
        if gaps:
            out.append(_row(u, i, part="b", missing_ranks=gaps))
    return out
