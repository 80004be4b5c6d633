"""Coding and language sensitivity: rerun one seed file under several codecs
and language profiles and compare the stages at which its sentences settle.

Only the invariants are asserted (inclusion of the Weak Kleene model in the
Strong Kleene one, groundedness versus well-foundedness, the stage/rank
bound, the dependency-order checks).  Stage differences are recorded as
observed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .base import DEFAULT_BOUND, DEFAULT_Q_BOUND
from .coding import make_codec
from .corpus import read_labelled_seeds
from .ground import analyze, check_compord, check_grwf, check_stage_rank
from .kripke import SK, WK, iterate
from .syntax import PROFILES
from .universe import DEFAULT_CAP, close

DEFAULT_CONFIGS = (("A", "pa"), ("A", "pa+monus"), ("B", "pa"), ("B", "pa+monus"))


@dataclass
class ConfigRun:
    codec: str
    profile: str
    universe: dict
    closed_at_sk: int
    closed_at_wk: int
    stages: dict                  # label -> settled stages and classes under both schemes
    invariants: dict = field(default_factory=dict)

    @property
    def key(self) -> str:
        return f"{self.codec}/{self.profile}"

    @property
    def invariants_hold(self) -> bool:
        return all(v == 0 for v in self.invariants.values())

    def to_json(self) -> dict:
        return {"codec": self.codec, "profile": self.profile, "universe": self.universe,
                "closed_at_sk": self.closed_at_sk, "closed_at_wk": self.closed_at_wk,
                "invariant_violations": self.invariants, "stages": self.stages}


@dataclass
class StageProfileTable:
    runs: list
    divergence: list

    @property
    def invariants_hold(self) -> bool:
        return all(r.invariants_hold for r in self.runs)

    def to_json(self) -> dict:
        return {"configs": [r.to_json() for r in self.runs], "divergence": self.divergence,
                "invariants_hold": self.invariants_hold}

    def to_text(self) -> str:
        keys = [r.key for r in self.runs]
        lines = ["config          size  closed_sk  closed_wk  violations"]
        for r in self.runs:
            lines.append(f"{r.key:<14} {r.universe['size']:>5}  {r.closed_at_sk:>9}  "
                         f"{r.closed_at_wk:>9}  {sum(r.invariants.values()):>10}")
        lines.append("")
        lines.append("stage at which each seed is settled under Weak Kleene: " + "  ".join(keys))
        for label in self.runs[0].stages:
            row = [str(r.stages.get(label, {}).get("stage_wk")) for r in self.runs]
            lines.append(f"  {label[:60]:<60} " + "  ".join(f"{x:>6}" for x in row))
        lines.append("")
        lines.append(f"divergent seeds: {len(self.divergence)}")
        for d in self.divergence:
            lines.append(f"  {d['seed'][:60]}: {d['stage_wk']}")
        return "\n".join(lines)


def run_config(seed_text: str, codec_id: str, profile: str, bound: int = DEFAULT_BOUND,
               cap: int = DEFAULT_CAP, q_bound: int = DEFAULT_Q_BOUND) -> ConfigRun:
    codec = make_codec(codec_id, PROFILES[profile])
    labelled = read_labelled_seeds(seed_text, codec)
    u = close([f for _, f in labelled], bound=bound, cap=cap, codec=codec, q_bound=q_bound)
    sk, wk = iterate(u, SK), iterate(u, WK)
    report = analyze(u, sk, wk)
    stages = {}
    for label, f in labelled:
        i = u.id(f)
        stages[label] = {"stage_sk": sk.settled_stage(i), "stage_wk": wk.settled_stage(i),
                         "class_sk": sk.class_of(i).value, "class_wk": wk.class_of(i).value}
    invariants = {
        "inclusion": len(wk.members - sk.members),
        "grounded_iff_wf": len(check_grwf(u, report, wk)),
        "stage_rank": len(check_stage_rank(u, report, wk)),
        "dependency_order": len(check_compord(u, report)),
    }
    return ConfigRun(codec.ident, profile, u.header(), sk.closed_at, wk.closed_at,
                     stages, invariants)


def compare_codings(seed_text: str, configs: Optional[Iterable[Sequence[str]]] = None,
                    bound: int = DEFAULT_BOUND, cap: int = DEFAULT_CAP,
                    q_bound: int = DEFAULT_Q_BOUND) -> StageProfileTable:
    """Run ``seed_text`` under each ``(codec, profile)`` pair (at least two)."""
    configs = list(configs if configs is not None else DEFAULT_CONFIGS)
    if len(configs) < 2:
        raise ValueError("compare_codings needs at least two configurations")
    runs = [run_config(seed_text, c, p, bound, cap, q_bound) for c, p in configs]
    divergence = []
    for label in runs[0].stages:
        wk_stages = {r.key: r.stages.get(label, {}).get("stage_wk") for r in runs}
        if len(set(wk_stages.values())) > 1:
            sk_stages = {r.key: r.stages.get(label, {}).get("stage_sk") for r in runs}
            divergence.append({"seed": label, "stage_wk": wk_stages, "stage_sk": sk_stages})
    return StageProfileTable(runs, divergence)
