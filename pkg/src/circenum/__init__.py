"""Enumeration of preferred models of circumscribed propositional theories."""

from .engine import CircInstance, EnumerationReport, circ_enumerate
from .enumerate import enumerate_models
from .solver import BOT, TOP, InfeasibleConstraint, Sat, Solver, Unsat, from_dimacs, mk_lit, neg, to_dimacs

__all__ = [
    "BOT",
    "TOP",
    "CircInstance",
    "EnumerationReport",
    "InfeasibleConstraint",
    "Sat",
    "Solver",
    "Unsat",
    "circ_enumerate",
    "enumerate_models",
    "from_dimacs",
    "mk_lit",
    "neg",
    "to_dimacs",
]
