"""Slow, direct implementations used to derive expected values.

Nothing here shares code with the engine's compiled rules or graph passes:
the jump works on formula objects clause by clause, well-foundedness is a
recursive DFS, terms are evaluated by plain recursion.
"""
from __future__ import annotations

import sys

from kleene_truth.syntax import (And, Eq, Exists, Forall, Func, Not, Num, Or, Plus,
                                 Succ, Times, Tr, Var, substitute)


def naive_val(t, env=None, fns=None):
    env = env or {}
    if isinstance(t, Num):
        return t.n
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, Succ):
        return naive_val(t.arg, env, fns) + 1
    if isinstance(t, Plus):
        return naive_val(t.left, env, fns) + naive_val(t.right, env, fns)
    if isinstance(t, Times):
        return naive_val(t.left, env, fns) * naive_val(t.right, env, fns)
    if isinstance(t, Func):
        return fns[t.name](*(naive_val(a, env, fns) for a in t.args))
    raise TypeError(t)


def naive_qf(f, env=None):
    """Classical value of a quantifier-free, truth-free formula."""
    if isinstance(f, Eq):
        return naive_val(f.left, env) == naive_val(f.right, env)
    if isinstance(f, Not):
        return not naive_qf(f.body, env)
    if isinstance(f, And):
        return naive_qf(f.left, env) and naive_qf(f.right, env)
    if isinstance(f, Or):
        return naive_qf(f.left, env) or naive_qf(f.right, env)
    raise TypeError(f)


def _instances(u, q):
    return [substitute(q.body, q.var, Num(k)) for k in u.semantics.instance_values(q)]


def naive_jump(S, u, weak=False):
    """One application of the Strong (or Weak) Kleene jump, clause by clause,
    on a set of formulas; the result is restricted to the universe."""
    sem = u.semantics
    S = set(S)

    def det(p):
        return p in S or Not(p) in S

    out = set()
    for s in u.sentences:
        if not s.has_truth:
            ok = sem.eval_arith(s).value
        elif isinstance(s, Tr):
            ok = sem.codec.decode_sentence(naive_val(s.arg)) in S
        elif isinstance(s, And):
            ok = s.left in S and s.right in S
            ok = ok and (not weak or (det(s.left) and det(s.right)))
        elif isinstance(s, Or):
            ok = s.left in S or s.right in S
            ok = ok and (not weak or (det(s.left) and det(s.right)))
        elif isinstance(s, Forall):
            inst = _instances(u, s)
            ok = all(x in S for x in inst) and (not weak or all(det(x) for x in inst))
        elif isinstance(s, Exists):
            inst = _instances(u, s)
            ok = any(x in S for x in inst) and (not weak or all(det(x) for x in inst))
        else:
            b = s.body
            if isinstance(b, Tr):
                d = sem.codec.decode_sentence(naive_val(b.arg))
                ok = d is None or Not(d) in S
            elif isinstance(b, Not):
                ok = b.body in S
            elif isinstance(b, And):
                ok = Not(b.left) in S or Not(b.right) in S
                ok = ok and (not weak or (det(b.left) and det(b.right)))
            elif isinstance(b, Or):
                ok = Not(b.left) in S and Not(b.right) in S
                ok = ok and (not weak or (det(b.left) and det(b.right)))
            elif isinstance(b, Forall):
                inst = _instances(u, b)
                ok = any(Not(x) in S for x in inst) and (not weak or all(det(x) for x in inst))
            elif isinstance(b, Exists):
                inst = _instances(u, b)
                ok = all(Not(x) in S for x in inst) and (not weak or all(det(x) for x in inst))
            else:
                raise TypeError(s)
        if ok:
            out.add(s)
    return out


def naive_stages(u, weak=False):
    """``[T_0, T_1, ...]`` up to the first repeat, as sets of formulas."""
    sem = u.semantics
    cur = {s for s in u.sentences if not s.has_truth and sem.eval_arith(s).value}
    stages = [cur]
    while True:
        nxt = naive_jump(cur, u, weak) | cur
        if nxt == cur:
            return stages
        stages.append(nxt)
        cur = nxt


def naive_predecessors(u, s):
    sem = u.semantics
    if isinstance(s, Tr):
        d = sem.codec.decode_sentence(naive_val(s.arg))
        out = [] if d is None else [d]
    elif isinstance(s, Not):
        out = [s.body]
    elif isinstance(s, (And, Or)):
        out = [s.left, s.right]
    elif isinstance(s, (Forall, Exists)):
        out = _instances(u, s)
    else:
        out = []
    return [p for p in out if p in u.index]


def naive_wf_and_rank(u):
    """Recursive DFS: ``(wf set, rank dict)``; truncated sentences are not wf."""
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10 * len(u) + 1000))
    state, rank = {}, {}

    def visit(s):
        if s in state:
            return state[s]
        state[s] = None          # on the stack: reaching it again is a cycle
        ok = u.index[s] not in u.truncated
        r = 0
        for p in naive_predecessors(u, s):
            if not visit(p):
                ok = False
            elif ok:
                r = max(r, rank[p] + 1)
        state[s] = ok
        if ok:
            rank[s] = r
        return ok

    try:
        for s in u.sentences:
            visit(s)
    finally:
        sys.setrecursionlimit(limit)
    return {s for s, ok in state.items() if ok}, rank
