"""
The liar in Strong and Weak Kleene
==================================

Build the liar, close a small universe around it, and watch the two least
fixed points disagree on a disjunction that mentions it.
"""
from kleene_truth import (KF, SK, WK, WKF, analyze, cantini_dual, check_axioms, close,
                          iterate, liar, to_text)
from kleene_truth.syntax import ZERO, Eq, Or

L = liar()
print("liar:", to_text(L.psi)[:80], "...")

# instantiate quantifiers over 0..2
mixed = Or(Eq(ZERO, ZERO), L.psi)
u = close([L.psi, L.phi_at_psi, mixed], bound=2)
print("universe:", u.header())

sk, wk = iterate(u, SK), iterate(u, WK)
for s in (L.psi, mixed):
    print(f"{to_text(s)[:40]:<42} SK={sk.classify(s).value:<16} WK={wk.classify(s).value}")

# the liar sits on a dependency cycle, so it is not well-founded
r = analyze(u, sk, wk)
print("liar well-founded:", r.is_wf(L.psi))
print("cycle:", [to_text(s)[:30] for s in r.cycle_witness(L.psi)])

# KF fits Strong Kleene; the unguarded disjunction axiom fails under Weak Kleene
print("SK |= KF :", check_axioms(sk, system=KF).all_hold)
print("WK |= WKF:", check_axioms(wk, system=WKF).all_hold)
print("WK |= KF fails on:", check_axioms(wk, system=KF).failing())

# the dual is complete and, because of the liar, inconsistent
dual = check_axioms(cantini_dual(sk))
print("dual compl:", dual.status("compl"), " con:", dual.status("con"))
