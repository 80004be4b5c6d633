"""Kripke fixed points of truth over a finite window of arithmetic.

Strong and Weak Kleene jumps, Goedel coding and diagonal sentences,
groundedness and well-foundedness analysis, and model checks of the KF and
WKF axioms.
"""
__version__ = "0.1.0"

from .axioms import KF, WKF, AxiomReport, check as check_axioms
from .base import ArithVerdict, Semantics, eval_arith
from .coding import CODECS, Codec, CodecA, CodecB, make_codec
from .corpus import read_seeds, standard_corpus
from .diagonal import (Diagonal, StageTruth, build_theta, check_diagkf, diagonalize,
                       liar, stage_truth, theta_instance, theta_model, truth_teller)
from .experiments import compare_codings
from .ground import (GroundReport, analyze, check_compord, check_grwf,
                     check_stage_rank)
from .kripke import (DUAL, SK, THETA, WK, PartialModel, TruthClass, cantini_dual,
                     classify, iterate, jump_sk, jump_wk)
from .syntax import (PA, PA_MONUS, PROFILES, LanguageProfile, ParseError, parse,
                     parse_term, substitute, substitute_predicate, to_text, val)
from .universe import Universe, close, predecessors

__all__ = [n for n in dir() if not n.startswith("_")]
