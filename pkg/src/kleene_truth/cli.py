"""Command-line entry point.

    python -m kleene_truth fixpoint --scheme wk --seeds data/liar.sexp --bound 4

Every subcommand prints one JSON document (keys sorted) that embeds the
configuration it ran under.  Exit status: 0 on success, 1 on usage errors
and unreadable inputs, 2 when an engine invariant is violated.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import __version__
from .axioms import check as check_axioms
from .base import DEFAULT_BOUND, DEFAULT_Q_BOUND
from .coding import CODECS, make_codec
from .corpus import read_labelled_seeds
from .diagonal import build_theta, diagonalize, theta_model
from .experiments import compare_codings
from .ground import analyze, check_compord, check_grwf, check_stage_rank
from .kripke import SK, WK, cantini_dual, derivation_audit, iterate
from .syntax import PROFILES, ParseError, parse, to_text
from .universe import DEFAULT_CAP, close

OK, USAGE, VIOLATION = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def _common(p: argparse.ArgumentParser, seeds: bool = True) -> None:
    p.add_argument("--codec", default="A", type=str.upper, choices=sorted(CODECS))
    p.add_argument("--profile", default="pa", choices=sorted(PROFILES))
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND,
                   help="numerals 0..bound instantiate quantifiers that mention T")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum universe size")
    p.add_argument("--q-bound", type=int, default=DEFAULT_Q_BOUND,
                   help="search bound for quantifiers without T")
    if seeds:
        p.add_argument("--seeds", required=True, help="seed file (s-expressions, one per line)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kleene-truth", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("universe", help="dependency-closed universe of the seeds")
    _common(p)
    p = sub.add_parser("fixpoint", help="least fixed point and per-sentence classes")
    _common(p)
    p.add_argument("--scheme", default="sk", choices=("sk", "wk", "theta"))
    p = sub.add_parser("classify", help="class of one sentence")
    _common(p)
    p.add_argument("--scheme", default="sk", choices=("sk", "wk", "theta", "dual"))
    p.add_argument("--formula", required=True, help="sentence text (added to the seeds)")
    p = sub.add_parser("ground", help="well-foundedness, ranks and the groundedness checks")
    _common(p)
    p = sub.add_parser("diag", help="diagonal sentence of a formula")
    _common(p, seeds=False)
    p.add_argument("--formula", required=True, help="formula file or text")
    p.add_argument("--var", default="y", help="the variable to diagonalise on")
    p = sub.add_parser("axioms", help="check the KF or WKF axioms on a model")
    _common(p)
    p.add_argument("--scheme", default="sk", choices=("sk", "wk", "theta", "dual"))
    p.add_argument("--system", default="kf", type=str.lower, choices=("kf", "wkf"))
    p = sub.add_parser("dual", help="complete dual of the Strong Kleene least fixed point")
    _common(p)
    p = sub.add_parser("compare-codings", help="stage profiles across codecs and profiles")
    _common(p)
    p.add_argument("--configs", default="A:pa,A:pa+monus,B:pa,B:pa+monus",
                   help="comma-separated CODEC:PROFILE pairs")
    p.add_argument("--format", default="json", choices=("json", "text"))
    return parser


def _config(args) -> dict:
    out = {"codec": args.codec, "profile": PROFILES[args.profile].to_json(),
           "bound": args.bound, "cap": args.cap, "q_bound": args.q_bound,
           "version": __version__}
    if getattr(args, "seeds", None):
        out["seeds"] = str(args.seeds)
    return out


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _setup(args, extra: Optional[str] = None):
    if args.bound < 0 or args.q_bound < 0 or args.cap <= 0:
        raise UsageError("--bound and --q-bound must be natural numbers, --cap positive")
    codec = make_codec(args.codec, PROFILES[args.profile])
    text = _read(args.seeds)
    try:
        labelled = read_labelled_seeds(text, codec)
        extra_f = parse(extra, codec.profile, codec) if extra is not None else None
    except ParseError as e:
        raise UsageError(str(e)) from None
    if extra_f is not None and not extra_f.is_sentence:
        raise UsageError("--formula must be a sentence")
    seeds = [f for _, f in labelled] + ([extra_f] if extra_f is not None else [])
    if not seeds:
        raise UsageError("the seed file holds no sentences")
    u = close(seeds, bound=args.bound, cap=args.cap, codec=codec, q_bound=args.q_bound)
    return codec, labelled, extra_f, u


def _model(u, scheme: str, codec):
    if scheme == "sk":
        return iterate(u, SK)
    if scheme == "wk":
        return iterate(u, WK)
    if scheme == "theta":
        return theta_model(u, build_theta(codec))
    return cantini_dual(iterate(u, SK))


def _model_checks(m) -> dict:
    out = {"inconsistent": len(m.inconsistencies())}
    if m.scheme != "dual":
        out["derivation_audit"] = len(derivation_audit(m))
    return out


def run(argv=None) -> tuple:
    """Run one command; returns ``(exit status, report dict or text)``."""
    args = build_parser().parse_args(argv)
    cmd = args.command
    status = OK
    if cmd == "diag":
        codec = make_codec(args.codec, PROFILES[args.profile])
        src = args.formula
        text = src if src.lstrip().startswith("(") else _read(src)
        try:
            d = diagonalize(parse(text, codec.profile, codec), args.var, codec)
        except (ParseError, ValueError) as e:
            raise UsageError(str(e)) from None
        report = {"formula": to_text(d.phi), "var": d.var, "template": to_text(d.template),
                  "template_code": str(d.code), "sentence": to_text(d.psi),
                  "code": str(codec.encode(d.psi)), "unfolded": to_text(d.phi_at_psi)}
        return status, {"config": _config(args), "diagonal": report}

    if cmd == "compare-codings":
        configs = []
        for item in args.configs.split(","):
            c, _, p = item.strip().partition(":")
            if c.upper() not in CODECS or p not in PROFILES:
                raise UsageError(f"bad configuration {item!r}")
            configs.append((c.upper(), p))
        try:
            table = compare_codings(_read(args.seeds), configs, args.bound, args.cap, args.q_bound)
        except ValueError as e:
            raise UsageError(str(e)) from None
        if not table.invariants_hold:
            status = VIOLATION
        if args.format == "text":
            return status, table.to_text()
        return status, {"config": _config(args), **table.to_json()}

    codec, labelled, extra, u = _setup(args, getattr(args, "formula", None))
    out = {"config": _config(args), "universe": u.header()}
    if cmd == "universe":
        out.update(u.to_json())
    elif cmd == "fixpoint":
        m = _model(u, args.scheme, codec)
        out["model"] = m.to_json()
        out["seeds"] = {label: m.classify(f).value for label, f in labelled}
        out["checks"] = _model_checks(m)
        if any(out["checks"].values()):
            status = VIOLATION
    elif cmd == "classify":
        m = _model(u, args.scheme, codec)
        i = u.id(extra)
        out.update({"sentence": to_text(extra), "scheme": m.scheme,
                    "class": m.class_of(i).value, "stage": m.settled_stage(i),
                    "taint": i in u.tainted})
    elif cmd == "ground":
        sk, wk = iterate(u, SK), iterate(u, WK)
        report = analyze(u, sk, wk)
        violations = {"grounded_iff_wf": check_grwf(u, report, wk),
                      "stage_rank": check_stage_rank(u, report, wk),
                      "dependency_order": check_compord(u, report),
                      "inclusion": [to_text(u.sentences[i]) for i in sorted(wk.members - sk.members)]}
        out.update(report.to_json(violations))
        if any(violations.values()):
            status = VIOLATION
    elif cmd == "axioms":
        m = _model(u, args.scheme, codec)
        out["report"] = check_axioms(m, u, args.system.upper()).to_json()
    elif cmd == "dual":
        sk = iterate(u, SK)
        if not sk.is_consistent():
            status = VIOLATION
            out["error"] = "least fixed point is inconsistent"
        else:
            d = cantini_dual(sk)
            out["model"] = d.to_json()
            out["seeds"] = {label: d.classify(f).value for label, f in labelled}
            rep = check_axioms(d, u, "KF")
            out["con"] = rep["con"].to_json()
            out["compl"] = rep["compl"].to_json()
    return status, out


def main(argv=None) -> int:
    try:
        status, out = run(argv)
    except UsageError as e:
        print(f"kleene-truth: error: {e}", file=sys.stderr)
        return USAGE
    if isinstance(out, str):
        print(out)
    else:
        print(json.dumps(out, sort_keys=True, indent=2))
    return status


if __name__ == "__main__":
    sys.exit(main())
