"""Exact linear algebra over finite fields for families of subspaces with
constant pairwise intersection dimension: constructions, proven bounds on
dim S + dim I, and brute-force ground truth at small parameters."""

from .bounds import (
    BoundReport,
    NotApplicable,
    NotAScid,
    ScidParams,
    best_bound,
    bound_general,
    bound_linear,
    bound_pair3,
    bound_refined,
    check_family,
)
from .construct import (
    ConstructionTrace,
    NoBaseField,
    NotASpread,
    PreconditionViolated,
    check_max_conditions,
    construct_max,
    construct_spectrum1,
    construct_spectrum2,
    construct_sunflower,
    derive_max_components,
    desarguesian_spread,
    expected_sum,
    field_reduce,
    lift_spread_to_sunflower,
)
from .gf import (
    FieldElement,
    FieldError,
    FieldSpec,
    extension_field,
    field_from_order,
    field_new,
)
from .linalg import (
    AmbientMismatch,
    BadDims,
    Echelon,
    NotNested,
    QuotientMap,
    Subspace,
    complement_within,
    coordinate_subspace,
    embed_subspace,
    full_subspace,
    intersect,
    is_subspace_of,
    quotient_map,
    random_subspace,
    rref,
    span_sum,
    zero_subspace,
)
from .scid import (
    DuplicateMembers,
    MixedMemberDimensions,
    ScidReport,
    SubspaceFamily,
    TooFewMembers,
    analyze,
    verify_scid,
)
from .search import (
    CapExceeded,
    EnumerationCursor,
    SearchResult,
    enumerate_subspaces,
    gaussian_binomial,
    max_sum_bruteforce,
    random_scid_search,
    subspace_at,
)

__version__ = "0.1.0"

__all__ = [
    "AmbientMismatch",
    "BadDims",
    "BoundReport",
    "CapExceeded",
    "ConstructionTrace",
    "DuplicateMembers",
    "Echelon",
    "EnumerationCursor",
    "FieldElement",
    "FieldError",
    "FieldSpec",
    "MixedMemberDimensions",
    "NoBaseField",
    "NotApplicable",
    "NotAScid",
    "NotASpread",
    "NotNested",
    "PreconditionViolated",
    "QuotientMap",
    "ScidParams",
    "ScidReport",
    "SearchResult",
    "Subspace",
    "SubspaceFamily",
    "TooFewMembers",
    "analyze",
    "best_bound",
    "bound_general",
    "bound_linear",
    "bound_pair3",
    "bound_refined",
    "check_family",
    "check_max_conditions",
    "complement_within",
    "construct_max",
    "construct_spectrum1",
    "construct_spectrum2",
    "construct_sunflower",
    "coordinate_subspace",
    "derive_max_components",
    "desarguesian_spread",
    "embed_subspace",
    "enumerate_subspaces",
    "expected_sum",
    "extension_field",
    "field_from_order",
    "field_new",
    "field_reduce",
    "full_subspace",
    "gaussian_binomial",
    "intersect",
    "is_subspace_of",
    "lift_spread_to_sunflower",
    "max_sum_bruteforce",
    "quotient_map",
    "random_scid_search",
    "random_subspace",
    "rref",
    "span_sum",
    "subspace_at",
    "verify_scid",
    "zero_subspace",
]
