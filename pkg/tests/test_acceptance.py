"""The ten acceptance criteria, one test each.

Each test records PASS or FAIL under its number; the summary printed at the
end of the pytest run lists them (see ``pytest_terminal_summary`` in
conftest).
"""
import contextlib
import random

import pytest

from kleene_truth import (KF, SK, WK, WKF, CodecA, CodecB, Semantics, TruthClass, analyze,
                          build_theta, cantini_dual, check_axioms, check_compord, check_diagkf,
                          check_grwf, check_stage_rank, close, diagonalize, iterate, liar,
                          theta_instance, theta_model, truth_teller)
from kleene_truth.corpus import chain, random_diagonal_formula, random_grounded_seeds, standard_corpus
from kleene_truth.diagonal import StageTruth, diagonal_equivalence_failures, theta_argument
from kleene_truth.experiments import compare_codings
from kleene_truth.syntax import ZERO, Eq, Not, Num, Or, substitute

TITLES = {
    1: "WK fixed point included in SK fixed point",
    2: "WK-grounded iff well-founded",
    3: "stage bounded by rank; chains have stage k and rank k",
    4: "dependency-order properties",
    5: "SK satisfies KF, WK satisfies WKF, unguarded disjunction fails in WK",
    6: "dual is complete and inconsistent, liar witnesses",
    7: "diagonal equivalence and diagonal biconditionals in models",
    8: "stage truth matches the SK hierarchy; rank monotone",
    9: "theta decides groundedness",
    10: "coding and profile sensitivity harness",
}
RESULTS: dict = {}
CODECS = (CodecA(), CodecB())


@contextlib.contextmanager
def criterion(n):
    RESULTS[n] = "FAIL"
    yield
    RESULTS[n] = "PASS"


def _mixed_seeds(codec):
    out = []
    for name, seeds, _ in standard_corpus(codec):
        if not name.startswith("theta"):
            out.extend(s for s in seeds if s not in out)
    return out


@pytest.fixture(scope="module")
def universes():
    """(label, universe, sk, wk, report) for the standard corpus under both
    codecs plus one mixed universe per codec."""
    out = []
    for codec in CODECS:
        items = [(n, s, b) for n, s, b in standard_corpus(codec)]
        items.append(("mixed", _mixed_seeds(codec), 2))
        for name, seeds, bound in items:
            u = close(seeds, bound=bound, codec=codec)
            sk, wk = iterate(u, SK), iterate(u, WK)
            out.append((f"{codec.ident}/{name}", u, sk, wk, analyze(u, sk, wk)))
    return out


def test_criterion_1_inclusion(universes):
    with criterion(1):
        assert len(universes) >= 20
        assert max(len(u) for _, u, *_ in universes) <= 5000
        for label, u, sk, wk, _ in universes:
            assert wk.members <= sk.members, label


def test_criterion_2_grounded_iff_well_founded(universes):
    with criterion(2):
        assert any(len(u) >= 500 for label, u, *_ in universes if label.endswith("mixed"))
        for label, u, sk, wk, r in universes:
            assert check_grwf(u, r, wk) == [], label


def test_criterion_3_stage_rank(universes):
    with criterion(3):
        for label, u, sk, wk, r in universes:
            assert check_stage_rank(u, r, wk) == [], label
        for codec in CODECS:
            for k in range(1, 7):
                top = chain(k, codec)[-1]
                u = close([top], codec=codec)
                wk = iterate(u, WK)
                r = analyze(u, wk=wk)
                assert wk.stage(top) == k and r.rank_of(top) == k


def test_criterion_4_dependency_order(universes):
    with criterion(4):
        for label, u, sk, wk, r in universes:
            assert check_compord(u, r) == [], label


def test_criterion_5_axiom_alignment(universes):
    with criterion(5):
        for label, u, sk, wk, _ in universes:
            assert check_axioms(sk, system=KF).all_hold, label
            assert check_axioms(wk, system=WKF).all_hold, label
        for codec in CODECS:
            L = liar(codec).psi
            witness = Or(Eq(ZERO, ZERO), L)
            u = close([L, witness], bound=2, codec=codec)
            rep = check_axioms(iterate(u, WK), system=KF)
            assert rep.status("kf6") == "fails"
            assert witness in rep.witnesses("kf6")
            assert rep["kf6"].counterexamples


def test_criterion_6_cantini_dual():
    with criterion(6):
        for codec in CODECS:
            L = liar(codec)
            u = close([L.psi, L.phi_at_psi, truth_teller(codec).psi], bound=2, codec=codec)
            rep = check_axioms(cantini_dual(iterate(u, SK)), system=KF)
            assert rep.status("compl") == "holds"
            assert rep.status("con") == "fails"
            assert L.psi in rep.witnesses("con")
        rng = random.Random(6)
        checked = 0
        while checked < 50:
            codec = CODECS[checked % 2]
            seeds = random_grounded_seeds(rng, codec)
            if rng.random() < 0.5:
                seeds.append(liar(codec).psi)
            sk = iterate(close(seeds, bound=2, codec=codec), SK)
            if not sk.is_consistent():
                continue
            checked += 1
            assert check_axioms(cantini_dual(sk), system=KF).status("compl") == "holds"


def _theta_closed(codec, theta):
    arg = Num(codec.encode(Eq(ZERO, ZERO)))
    psi = theta_instance(theta, arg)
    return psi, substitute(theta.phi_at_psi, sorted(theta.psi.free_vars)[0], arg)


def test_criterion_7_diagonalization():
    with criterion(7):
        rng = random.Random(7)
        for codec in CODECS:
            sem = Semantics(codec, bound=2)
            theta = build_theta(codec)
            cases = [liar(codec), truth_teller(codec)]
            cases += [diagonalize(random_diagonal_formula(rng), "y", codec) for _ in range(10)]
            for d in cases:
                assert diagonal_equivalence_failures(d, sem, trials=200,
                                                     seed=rng.randrange(10 ** 6)) == 0
            arg = Num(codec.encode(Eq(ZERO, ZERO)))
            assert diagonal_equivalence_failures(theta, Semantics(codec, bound=0), trials=200,
                                                 args=(arg,)) == 0
            # the biconditionals in the SK and theta models
            pairs = [(d.psi, d.phi_at_psi) for d in cases]
            u = close([s for p in pairs for s in p], bound=1, codec=codec)
            sk = iterate(u, SK)
            tm = theta_model(u, theta)
            for psi, rhs in pairs:
                assert check_diagkf(sk, psi, rhs) and check_diagkf(tm, psi, rhs)
            tpsi, trhs = _theta_closed(codec, theta)
            ut = close([tpsi, trhs], bound=0, codec=codec)
            assert check_diagkf(iterate(ut, SK), tpsi, trhs)
            assert check_diagkf(theta_model(ut, theta), tpsi, trhs)


def test_criterion_8_stage_truth(universes):
    with criterion(8):
        compared = 0
        for label, u, sk, wk, r in universes:
            if len(u) > 2000:
                continue
            ev = StageTruth(u, r)
            clean = set(range(len(u))) - u.tainted
            for s in r.wf:
                got = ev.true_set(s) & clean
                assert got == sk.at_stage(r.rank[s]) & clean, (label, s)
                compared += 1
        assert compared > 1000
        rng = random.Random(8)
        pool = [(u, r, StageTruth(u, r), sorted(r.wf)) for _, u, _, _, r in universes
                if len(u) <= 2000]
        for _ in range(10_000):
            u, r, ev, wf = rng.choice(pool)
            s, s2 = rng.choice(wf), rng.choice(wf)
            if r.rank[s] > r.rank[s2]:
                s, s2 = s2, s
            x = rng.randrange(len(u))
            assert x not in ev.true_set(s) or x in ev.true_set(s2)


def test_criterion_9_theta(universes):
    with criterion(9):
        seen = 0
        for codec in CODECS:
            theta = build_theta(codec)
            for label, u, sk, wk, r in universes:
                if not label.startswith(f"{codec.ident}/theta"):
                    continue
                tm = theta_model(u, theta, wk)
                for s in u.sentences:
                    t = theta_argument(theta, s)
                    psi = None if t is None else u.semantics.deref(t)
                    if psi is None or psi not in u or u.id(psi) in u.tainted:
                        continue
                    seen += 1
                    if wk.classify(psi).grounded:
                        assert tm.classify(Not(s)) == TruthClass.TRUE
                    else:
                        assert tm.classify(s) == TruthClass.TRUE
        assert seen >= 20


def test_criterion_10_coding_sensitivity(data_dir):
    with criterion(10):
        for name, bound in (("codes.sexp", 2), ("corpus.sexp", 2)):
            table = compare_codings((data_dir / name).read_text(), bound=bound)
            assert len(table.runs) == 4
            assert {r.key for r in table.runs} == {"A/pa", "A/pa+monus", "B/pa", "B/pa+monus"}
            assert table.invariants_hold
            assert "divergence" in table.to_json()
            assert "divergent seeds" in table.to_text()
