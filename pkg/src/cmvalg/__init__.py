"""Composition MV-algebras: finite models, McNaughton functions, ideals,
modules over CMV-algebras, and the one-variable substitution logic."""

from .cmv import (
    FiniteCmvAlgebra,
    cayley_embed,
    cmv_from_action,
    cmv_isomorphism,
    constants_of,
    endo_monoid,
    enumerate_cmv,
    enumerate_mv_algebras,
    function_cmv,
    mu_hom,
    restricted_function_cmv,
    tilde_closure,
    validate_cmv,
)
from .logic import (
    Formula,
    Proof,
    check_proof,
    evaluate,
    format_formula,
    is_tautology,
    match_axiom,
    parse_formula,
    parse_proof,
    semantic_equiv,
)
from .mcnaughton import (
    MCNAUGHTON,
    PwlFunction,
    membership,
    pwl_canonicalize,
    pwl_compose,
    pwl_eval,
    pwl_pointwise,
    term_to_pwl,
)
from .modules import (
    ModuleAction,
    admits_a4_module,
    canonical_module,
    m1c_action,
    phi_f,
    phi_x_eval,
    validate_module,
)
from .mv import (
    FiniteMvAlgebra,
    IdealSet,
    boolean_skeleton,
    derived_ops,
    enumerate_mv_ideals,
    lukasiewicz_chain,
    mv_isomorphism,
    power_mv,
    product_mv,
    quotient_mv,
    radical_and_perfect,
    validate_mv,
)
from .structure import (
    ZerosMachinery,
    classify_subset,
    congruence_of_ideal,
    enumerate_cmv_ideals,
    ideal_image,
    is_simple_cmv,
    preimage_ideal,
    quotient_cmv,
    stabilizer_and_annihilator,
)

__version__ = "0.1.0"
