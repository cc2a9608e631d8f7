"""Exact symbolic computation in Leavitt path algebras.

Normal forms over finite graphs, matrix-built endomorphisms and their
certification as automorphisms, Zhang twists, and Chen modules over infinite
paths. Scalars are exact rationals by default; ``set_field("fp:5")`` or the
``LPA_FIELD`` environment variable switches to a prime field.
"""

from .algebra import Element, basis_monomials, check_ck, in_A_subalgebra, normalize, star
from .chenmod import (
    ORACLES, EventuallyPeriodic, ModuleVector, No, OraclePath, Unknown, Yes, act, annihilator_check,
    canonicalize_path, epsilon, iso_test_irrational, iso_test_rational, monomial_decompose, oracle_path,
    sn_act_matrix, sn_act_path, tail_equivalent, twisted_act,
)
from .field import characteristic, field_name, set_field, using_field
from .graph import Graph, Path, build_graph, classify_vertex, load_graph, rose, rotations
from .matrix import AlgMatrix, InvertiblePair, U, apply_entrywise, iterate_Pm, mk_invertible, star_product
from .morphism import (
    Automorphism, Endo, WitnessRejected, certify_automorphism, compose, compose_functional, extract_matrix,
    mk_fu, mk_phi, phi, try_fixed_point_shortcut,
)
from .parse import ParseError, parse_element, parse_matrix
from .suite import verify_paper
from .twist import (
    FailsAt, InImage, IsomorphismCertified, NotFoundUpTo, TwistContext, check_iso_criterion, image_membership,
    mk_theta, twist_mul,
)

__all__ = [
    "Element", "basis_monomials", "check_ck", "in_A_subalgebra", "normalize", "star", "ORACLES",
    "EventuallyPeriodic", "ModuleVector", "No", "OraclePath", "Unknown", "Yes", "act", "annihilator_check",
    "canonicalize_path", "epsilon", "iso_test_irrational", "iso_test_rational", "monomial_decompose",
    "oracle_path", "sn_act_matrix", "sn_act_path", "tail_equivalent", "twisted_act", "characteristic",
    "field_name", "set_field", "using_field", "Graph", "Path", "build_graph", "classify_vertex", "load_graph",
    "rose", "rotations", "AlgMatrix", "InvertiblePair", "U", "apply_entrywise", "iterate_Pm", "mk_invertible",
    "star_product", "Automorphism", "Endo", "WitnessRejected", "certify_automorphism", "compose",
    "compose_functional", "extract_matrix", "mk_fu", "mk_phi", "phi", "try_fixed_point_shortcut",
    "ParseError", "parse_element", "parse_matrix", "verify_paper", "FailsAt", "InImage",
    "IsomorphismCertified", "NotFoundUpTo", "TwistContext", "check_iso_criterion", "image_membership",
    "mk_theta", "twist_mul",
]

__version__ = "0.1.0"
