"""Signed and restricted signed sumsets in abelian groups.

>>> from signsum import parse_group, parse_subset, restricted_signed_sumset
>>> g = parse_group("Z17")
>>> len(restricted_signed_sumset(parse_subset(g, "1,2,3,4,5"), 2))
16
"""
from .groups import (
    INFINITY, INTEGERS, Group, GroupError, Subset, cyclic, field, format_element,
    format_elements, first_element_of_order, p_of_group, parse_group, parse_subset, product,
    subgroup_generated,
)
from .sumsets import (
    Kind, PreconditionError, hfold_sumset, interval, kind_sumset, multiplicity_set, naive_sumset,
    parse_multiplicities, restricted_signed_sumset, restricted_sumset, signed_sumset, sumset,
    union_fold,
)
from .structure import (
    APWitness, SymmetryClass, abs_set, classify, common_differences, detect_ap,
    intersect_with_negation, is_ap, is_asym, is_nsym, is_sym, sdeg, union_with_negation,
)
from .constructions import (
    interval_set, odd_spaced_ap, replacement_step, rho_s_template, rho_s_witness,
    subgroup_interval, symmetrize, symmetrize_chain,
)
from .rho import (
    MAX_SEARCH_SPACE, EmptyClassError, EnvelopeError, RhoQuery, RhoResult, SubsetFilter,
    automorphism_orbit_prune, rho, rho_parallel, rho_value,
)
from .bounds import (
    BoundResult, bound_plain, bound_restricted_classes, bound_restricted_field,
    bound_restricted_interval, bound_restricted_plain, bound_rho_s, bound_signed_field,
    coeff_h2, coeff_h3, coeff_h4, ell, is_quadratic_residue, liu_sun_K,
    symbolic_coefficient_oracle, theta,
)
from .checks import (
    DEFAULT_SEED, CheckReport, CheckSpec, Failure, UnknownCheckError, evaluate_cell,
    list_checks, run_check, run_checks,
)

__version__ = "0.1.0"
