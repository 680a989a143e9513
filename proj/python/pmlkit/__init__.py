"""Propositional modal logic workbench: parsing, Kripke semantics, embeddings,
tableau decision, countermodel search, Hilbert proofs and correspondence checks."""

from ._core import (
    Formula,
    KripkeModel,
    ParseError,
    ResourceLimit,
    check_faithfulness,
    check_proof_script,
    classify,
    correspondence_check,
    corpus,
    decide,
    enumerate_formulas,
    export_dot,
    find_countermodel,
    loeb_suite,
    parse,
    proof_corpus,
)

__all__ = [
    "Formula",
    "KripkeModel",
    "ParseError",
    "ResourceLimit",
    "check_faithfulness",
    "check_proof_script",
    "classify",
    "correspondence_check",
    "corpus",
    "decide",
    "enumerate_formulas",
    "export_dot",
    "find_countermodel",
    "loeb_suite",
    "parse",
    "proof_corpus",
]

__version__ = "0.1.0"
