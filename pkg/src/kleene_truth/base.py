"""Classical evaluation in the standard model with bounded quantifier search.

:class:`Semantics` bundles everything the finite engine treats as fixed
background: the codec (and its language profile), the instantiation bound
``bound`` and the search bound ``q_bound``.  It evaluates truth-free
sentences (:meth:`Semantics.eval_arith`), the designated relations
``name``/``sub``/``dep``, and the immediate-dependency relation between
sentences, which ``dep`` needs and the universe builder reuses.

Quantifier domains
------------------
Truth-free quantifiers are searched over ``0..q_bound`` plus *harvested*
candidates (values forced by ``name``/``sub``/``dep`` atoms on the bound
variable); a nested quantifier's range is widened by the largest value of the
enclosing variables, capped at another ``q_bound``.  A verdict is exact only when a witness (for ``exists``) or a
counterexample (for ``forall``) settled it.

Quantifiers whose body mentions ``T`` are instantiated over the finite pool
``0..bound`` plus harvested candidates, plus the oracle's own witness when the
body is truth-free.  :meth:`Semantics.instance_values` is the single source
of those domains.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .coding import Codec, CodecA
from .syntax import (And, Eq, Exists, Forall, Formula, Not, Num, Or, Rel,
                     Tr, Var, substitute, val)

DEFAULT_BOUND = 8
DEFAULT_Q_BOUND = 256


@dataclass(frozen=True)
class ArithVerdict:
    value: bool
    exact: bool
    witness: Optional[int] = None   # witness for exists, counterexample for forall


class Semantics:
    def __init__(self, codec: Optional[Codec] = None, bound: int = DEFAULT_BOUND,
                 q_bound: int = DEFAULT_Q_BOUND):
        if bound < 0 or q_bound < 0:
            raise ValueError("bounds must be natural numbers")
        self.codec = codec if codec is not None else CodecA()
        self.profile = self.codec.profile
        self.bound = bound
        self.q_bound = q_bound
        self._arith: dict = {}
        self._preds: dict = {}
        self._inst: dict = {}

    def describe(self) -> dict:
        return {"codec": self.codec.ident, "profile": self.profile.to_json(),
                "bound": self.bound, "q_bound": self.q_bound}

    # -- terms and designated relations ------------------------------------
    def val(self, t, env=None) -> int:
        return val(t, self.profile, env)

    def relation(self, name: str, args: tuple) -> bool:
        c = self.codec
        if name == "name":
            return args[0] == c.eval_name(args[1])
        if name == "sub":
            return c.eval_sub(args[1], args[2], args[3]) == args[0]
        if name == "dep":
            x, y = c.decode_sentence(args[0]), c.decode_sentence(args[1])
            return x is not None and y is not None and x in self.predecessors(y)
        raise KeyError(name)

    def harvest(self, body: Formula, var: str, env: Optional[dict] = None) -> set:
        """Values of ``var`` forced by relation atoms ``R(var, ...)`` in ``body``."""
        env = env or {}
        out: set = set()
        stack = [body]
        while stack:
            g = stack.pop()
            if isinstance(g, Not):
                stack.append(g.body)
            elif isinstance(g, (And, Or)):
                stack.extend((g.left, g.right))
            elif isinstance(g, (Forall, Exists)):
                if g.var != var:
                    stack.append(g.body)
            elif isinstance(g, Rel):
                head, rest = g.args[0], g.args[1:]
                if not (isinstance(head, Var) and head.name == var):
                    continue
                if any(not (a._fv <= env.keys()) or var in a._fv for a in rest):
                    continue
                vals = [self.val(a, env) for a in rest]
                if g.name == "name":
                    out.add(self.codec.eval_name(vals[0]))
                elif g.name == "sub":
                    r = self.codec.eval_sub(*vals)
                    if r is not None:
                        out.add(r)
                elif g.name == "dep":
                    y = self.codec.decode_sentence(vals[0])
                    if y is not None:
                        out.update(self.codec.encode(p) for p in self.predecessors(y))
        return out

    # -- classical evaluation ---------------------------------------------
    def evaluate(self, f: Formula, truth: Optional[Callable[[int], bool]] = None,
                 env: Optional[dict] = None):
        """Classical value of ``f`` as ``(value, exact, witness)``.

        ``truth`` interprets ``T`` on codes; it is required iff ``f`` mentions
        ``T``.  Truth-free subformulas are always decided by the search
        semantics, so this agrees with :meth:`eval_arith` on them.
        """
        return self._ev(f, env or {}, truth)

    def _ev(self, f, env, truth):
        if isinstance(f, Eq):
            return self.val(f.left, env) == self.val(f.right, env), True, None
        if isinstance(f, Rel):
            return self.relation(f.name, tuple(self.val(a, env) for a in f.args)), True, None
        if isinstance(f, Tr):
            if truth is None:
                raise ValueError("formula mentions T but no interpretation was given")
            return bool(truth(self.val(f.arg, env))), True, None
        if isinstance(f, Not):
            v, e, _ = self._ev(f.body, env, truth)
            return not v, e, None
        if isinstance(f, (And, Or)):
            short = isinstance(f, Or)   # value that decides the connective
            a, ea, _ = self._ev(f.left, env, truth)
            if a == short and ea:
                return short, True, None
            b, eb, _ = self._ev(f.right, env, truth)
            if b == short:
                return short, eb or (a == short and ea), None
            if a == short:
                return short, ea, None
            return not short, ea and eb, None
        if isinstance(f, (Forall, Exists)):
            if not f._fv and not env and not f._t:
                v = self.eval_arith(f)
                return v.value, v.exact, v.witness
            return self._quant(f, env, truth)
        raise TypeError(f)

    def _quant(self, f, env, truth):
        decisive = isinstance(f, Exists)   # value of an instance that settles it
        body, var = f.body, f.var
        if f._t:
            # finite instance semantics: every candidate is examined
            exact = True
            for k in self._candidates(body, var, env, searched=False):
                v, e, _ = self._ev(body, {**env, var: k}, truth)
                if v == decisive:
                    return decisive, e, k
                exact = exact and e
            return not decisive, exact, None
        seen_decisive = None
        for k in self._candidates(body, var, env, searched=True):
            v, e, _ = self._ev(body, {**env, var: k}, truth)
            if v == decisive:
                if e:
                    return decisive, True, k
                if seen_decisive is None:
                    seen_decisive = k
        if seen_decisive is not None:
            return decisive, False, seen_decisive
        return not decisive, False, None

    def _candidates(self, body, var, env, searched):
        harvested = self.harvest(body, var, env)
        top = self.q_bound if searched else self.bound
        if searched and env:
            # inner witnesses tend to track outer values (forall x exists y, y = x + 1)
            top += min(max(env.values()), self.q_bound)
        if searched:
            # harvested values first: they are the likely witnesses
            yield from sorted(harvested)
            for k in range(top + 1):
                if k not in harvested:
                    yield k
        else:
            yield from sorted(harvested | set(range(top + 1)))

    def eval_arith(self, s: Formula) -> ArithVerdict:
        """Verdict for a truth-free sentence."""
        if s._t:
            raise ValueError("eval_arith expects a sentence without T")
        if s._fv:
            raise ValueError("eval_arith expects a sentence")
        hit = self._arith.get(s)
        if hit is None:
            if isinstance(s, (Forall, Exists)):
                v, e, w = self._quant(s, {}, None)
            else:
                v, e, w = self._ev(s, {}, None)
            hit = self._arith[s] = ArithVerdict(bool(v), bool(e), w)
        return hit

    # -- instances and immediate dependency --------------------------------
    def instance_values(self, q: Formula) -> tuple:
        """Sorted naturals instantiating the quantified sentence ``q``."""
        hit = self._inst.get(q)
        if hit is None:
            vals = set(range(self.bound + 1)) | self.harvest(q.body, q.var)
            if not q._t:
                w = self.eval_arith(q).witness
                if w is not None:
                    vals.add(w)
            hit = self._inst[q] = tuple(sorted(vals))
        return hit

    def instances(self, q: Formula) -> tuple:
        return tuple(substitute(q.body, q.var, Num(k)) for k in self.instance_values(q))

    def deref(self, t) -> Optional[Formula]:
        """The sentence coded by the value of closed term ``t``, if any."""
        return self.codec.decode_sentence(self.val(t))

    def predecessors(self, s: Formula) -> tuple:
        """Sentences ``x`` with ``x`` immediately below ``s`` in the dependency order."""
        hit = self._preds.get(s)
        if hit is not None:
            return hit
        if isinstance(s, Tr):
            d = self.deref(s.arg)
            out = (d,) if d is not None else ()
        elif isinstance(s, Not):
            out = (s.body,)
        elif isinstance(s, (And, Or)):
            out = (s.left,) if s.left == s.right else (s.left, s.right)
        elif isinstance(s, (Forall, Exists)):
            out = tuple(dict.fromkeys(self.instances(s)))
        else:
            out = ()
        self._preds[s] = out
        return out


def eval_arith(s: Formula, q_bound: int = DEFAULT_Q_BOUND,
               semantics: Optional[Semantics] = None) -> ArithVerdict:
    """Module-level convenience wrapper around :meth:`Semantics.eval_arith`."""
    sem = semantics if semantics is not None else Semantics(q_bound=q_bound)
    return sem.eval_arith(s)
