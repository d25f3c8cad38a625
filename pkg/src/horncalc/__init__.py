"""Labelled sequent calculi with structural constraints and Horn rules.

Build calculi from initial, local, expansion, reachability and Horn rules,
check and search proofs, translate proofs between calculi related by
absorbing or fracturing Horn rules, and compute the upward and downward
spaces of a calculus.
"""

from .calculus import Calculus, f_op, g_op, horn_rules, is_explicit, is_implicit
from .formats import parse_calculus, parse_gsequent, parse_proof, print_calculus, print_gsequent, print_proof
from .gsequent import Atom, GSequent
from .lattice import CalculusSpace, SpaceConfig, bottom_of, explicate, implicate, space_isomorphism, top_of
from .proofs import ProofStep, SearchConfig, find_proof, proof_size, quantity, validate
from .reach import ReachQuery, brute_force_reach, solve_reach
from .rewriting import ESystem, Production, Sym, production, word
from .transform import TransformError, eliminate_pw, invhorn_saturate, translate, translate_down, translate_up

__version__ = "0.1.0"

__all__ = [
    "Atom",
    "Calculus",
    "CalculusSpace",
    "ESystem",
    "GSequent",
    "Production",
    "ProofStep",
    "ReachQuery",
    "SearchConfig",
    "SpaceConfig",
    "Sym",
    "TransformError",
    "bottom_of",
    "brute_force_reach",
    "eliminate_pw",
    "explicate",
    "f_op",
    "find_proof",
    "g_op",
    "horn_rules",
    "implicate",
    "invhorn_saturate",
    "is_explicit",
    "is_implicit",
    "parse_calculus",
    "parse_gsequent",
    "parse_proof",
    "print_calculus",
    "print_gsequent",
    "print_proof",
    "production",
    "proof_size",
    "quantity",
    "solve_reach",
    "space_isomorphism",
    "top_of",
    "translate",
    "translate_down",
    "translate_up",
    "validate",
    "word",
]
