"""Finite multiplicative Lie algebras: validation, series, actions, tensors."""

from .actions import (
    CompatiblePair,
    MlaAction,
    bracket_ideal,
    check_compatibility,
    conjugation_self_action,
    derived_action_ideal,
    mixed_lie_ideal,
    trivial_action,
    validate_action,
)
from .corpus import corpus_pairs, get_group, group_names
from .coset import Presentation, coset_enumerate, make_presentation
from .errors import (
    Inapplicable,
    InputError,
    MathViolation,
    MlaError,
    ResourceError,
)
from .groups import FiniteGroup, Subgroup, quotient, subgroup_closure, validate_cayley
from .harness import CATALOGUE, CATALOGUE_IDS, Instance, Verdict, VerdictLedger, run_suite
from .mla import (
    Ideal,
    MultLieAlg,
    SeriesReport,
    check_axioms,
    check_lie_identities,
    derived_series,
    ideal_closure,
    lower_central_series,
    make_algebra,
    make_improper_star,
    make_trivial_star,
    nilpotency_class,
    quotient_algebra,
    solvable_length,
    validate_ideal,
)
from .tensor import TensorAlgebra, build_tensor_algebra, compare_seed_orders, tensor_ideal

__version__ = "0.1.0"

__all__ = [
    "CATALOGUE",
    "CATALOGUE_IDS",
    "CompatiblePair",
    "FiniteGroup",
    "Ideal",
    "Inapplicable",
    "InputError",
    "Instance",
    "MathViolation",
    "MlaAction",
    "MlaError",
    "MultLieAlg",
    "Presentation",
    "ResourceError",
    "SeriesReport",
    "Subgroup",
    "TensorAlgebra",
    "Verdict",
    "VerdictLedger",
    "bracket_ideal",
    "build_tensor_algebra",
    "check_axioms",
    "check_compatibility",
    "check_lie_identities",
    "compare_seed_orders",
    "conjugation_self_action",
    "corpus_pairs",
    "coset_enumerate",
    "derived_action_ideal",
    "derived_series",
    "get_group",
    "group_names",
    "ideal_closure",
    "lower_central_series",
    "make_algebra",
    "make_improper_star",
    "make_presentation",
    "make_trivial_star",
    "mixed_lie_ideal",
    "nilpotency_class",
    "quotient",
    "quotient_algebra",
    "run_suite",
    "solvable_length",
    "subgroup_closure",
    "tensor_ideal",
    "trivial_action",
    "validate_action",
    "validate_cayley",
    "validate_ideal",
]
