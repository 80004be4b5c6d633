"""
Deciding groundedness with theta
================================

theta(x) says "x is not the code of a Weak Kleene grounded sentence".  Seeding
the Strong Kleene hierarchy with theta of every ungrounded sentence makes the
question decidable inside the model.
"""
from kleene_truth import (WK, CodecA, build_theta, close, iterate, liar, theta_instance,
                          theta_model, truth_teller)
from kleene_truth.corpus import chain
from kleene_truth.syntax import ZERO, Eq, Num

codec = CodecA()
theta = build_theta(codec)
psis = {"liar": liar(codec).psi, "truth-teller": truth_teller(codec).psi,
        "0 = 0": Eq(ZERO, ZERO), "T[0 = 0]": chain(1, codec)[1]}
instances = {k: theta_instance(theta, Num(codec.encode(p))) for k, p in psis.items()}

# bound 0 keeps the universe under four thousand sentences
u = close(list(psis.values()) + list(instances.values()), bound=0, codec=codec)
print("universe:", u.header())

wk = iterate(u, WK)
tm = theta_model(u, theta, wk)
print(f"{'sentence':<14} {'WK class':<18} theta(sentence) in the theta model")
for k, p in psis.items():
    print(f"{k:<14} {wk.classify(p).value:<18} {tm.classify(instances[k]).value}")
print("theta model consistent:", tm.is_consistent())
