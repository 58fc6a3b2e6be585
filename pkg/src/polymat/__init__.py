"""Exact polymatroid toolkit: flats, modular cuts and filters, excess functions,
linearity, and extreme rays of the polymatroid cone."""

from .setfun import (
    GroundSet,
    InputError,
    RankFunction,
    ValidationReport,
    canonical_form,
    conic_combination,
    contract,
    modular_defect,
    restrict,
    validate_polymatroid,
)
from .flats import closure, flats, nonmodular_flat_pairs
from .cuts import (
    ModularCut,
    ModularFilter,
    cut_to_filter,
    generate_modular_cut,
    generate_modular_filter,
    is_principal_cut,
)
from .extend import (
    ExcessFunction,
    check_star,
    excess_from_filter,
    is_intersectable,
    is_linear,
    one_point_extension,
    validate_excess,
)

__all__ = [
    "GroundSet", "InputError", "RankFunction", "ValidationReport", "canonical_form",
    "conic_combination", "contract", "modular_defect", "restrict", "validate_polymatroid",
    "closure", "flats", "nonmodular_flat_pairs", "ModularCut", "ModularFilter", "cut_to_filter",
    "generate_modular_cut", "generate_modular_filter", "is_principal_cut", "ExcessFunction",
    "check_star", "excess_from_filter", "is_intersectable", "is_linear", "one_point_extension",
    "validate_excess",
]
