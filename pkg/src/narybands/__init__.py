"""Finite symmetric n-ary bands: analysis, strong semilattice decomposition,
composition, reducibility to binary semigroups, and exhaustive enumeration.
"""

__version__ = "0.1.0"

from .errors import (
    ConsistencyError,
    DomainError,
    InputError,
    NaryBandError,
    ResourceError,
    Violation,
)
from .optable import (
    AssociativityWitness,
    OpTable,
    SymmetryWitness,
    TupleCodec,
    band_violation,
    canonical_form,
    check_associative,
    check_idempotent,
    check_symmetric,
    extend,
    neutral_elements,
    relabel,
    require_band,
    table_from_doc,
    table_from_function,
    table_from_json,
    table_to_doc,
    table_to_json,
)
from .bandcore import (
    Classification,
    LambdaTable,
    QuotientSemilattice,
    SigmaPartition,
    associated_band,
    band_sigma_related,
    check_right_normal,
    classify,
    lambda_table,
    quotient,
    right_normal_sigma_related,
    sigma_partition,
)
from .structure import (
    ClassGroup,
    HomMap,
    StrongSystem,
    class_group,
    decompose,
    hom_maps,
    invariant_factors,
    system_from_doc,
    system_from_json,
    system_to_doc,
    system_to_json,
    validate_system,
)
from .compose import (
    BandCatalog,
    GroupSpec,
    brute_force_bands,
    compose,
    enumerate_bands,
    group_homs,
    make_group,
    nary_homs,
)
from .reduce import (
    Irreducible,
    NeutralSelection,
    Reduction,
    brute_force_reductions,
    build_reduction,
    decide_reducible,
    reduction_result_to_doc,
    verify_reduction,
)

__all__ = [
    "__version__",
    "NaryBandError",
    "InputError",
    "DomainError",
    "ResourceError",
    "ConsistencyError",
    "Violation",
    "OpTable",
    "TupleCodec",
    "AssociativityWitness",
    "SymmetryWitness",
    "table_from_function",
    "check_associative",
    "check_symmetric",
    "check_idempotent",
    "band_violation",
    "require_band",
    "extend",
    "neutral_elements",
    "relabel",
    "canonical_form",
    "table_to_doc",
    "table_from_doc",
    "table_to_json",
    "table_from_json",
    "Classification",
    "LambdaTable",
    "SigmaPartition",
    "QuotientSemilattice",
    "associated_band",
    "lambda_table",
    "check_right_normal",
    "band_sigma_related",
    "right_normal_sigma_related",
    "sigma_partition",
    "quotient",
    "classify",
    "ClassGroup",
    "HomMap",
    "StrongSystem",
    "invariant_factors",
    "class_group",
    "hom_maps",
    "decompose",
    "validate_system",
    "system_to_doc",
    "system_from_doc",
    "system_to_json",
    "system_from_json",
    "GroupSpec",
    "BandCatalog",
    "make_group",
    "group_homs",
    "nary_homs",
    "compose",
    "enumerate_bands",
    "brute_force_bands",
    "NeutralSelection",
    "Reduction",
    "Irreducible",
    "decide_reducible",
    "build_reduction",
    "verify_reduction",
    "brute_force_reductions",
    "reduction_result_to_doc",
]
