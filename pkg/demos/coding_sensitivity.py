"""
Stages under two codings
========================

The same seed file is run under two codecs and two language profiles.  The
invariants hold everywhere; the stage at which a sentence settles can move
when the sentence does arithmetic on codes.
"""
from pathlib import Path

from kleene_truth import compare_codings

seeds = (Path(__file__).resolve().parent.parent / "data" / "codes.sexp").read_text()
table = compare_codings(seeds, bound=2)
print(table.to_text())
print()
print("invariants hold under every configuration:", table.invariants_hold)
