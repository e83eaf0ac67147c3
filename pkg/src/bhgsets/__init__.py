"""Construction, verification and exact search of B_h[g] sets in abelian groups."""

from .constructions import (
    ConstructionCertificate,
    base_digits,
    golomb_set,
    modular_reduce,
    moment_curve,
    moment_curve_vectorized,
    translate_union,
)
from .errors import BudgetExceeded, CharacteristicError
from .finite_field import (
    FieldElement,
    FieldSpec,
    devectorize,
    dlog,
    field_mul,
    field_pow,
    find_irreducible,
    find_primitive,
    vectorize,
)
from .groups import BhgSet, GroupSpec, canonical_sum_key, group_add
from .search import SearchResult, bound_gap_report, exhaustive_max, greedy_bhg
from .symmetric import power_sums, roots_from_sigma, sigma_from_power_sums
from .verifier import RepProfile, is_bhg, min_g, rep_profile

__version__ = "0.1.0"
