"""Constraint languages with a zero-defaulted domain: algebraic analysis,
tractability classification, fixed-parameter solving, and hardness-reduction
generators, all cross-checkable against a brute-force oracle."""

from .classify import (
    CcspReport,
    CcspVerdict,
    OcspReport,
    OcspVerdict,
    classify_ccsp,
    classify_ocsp,
)
from .errors import GuardError, ParseError, ZcspError
from .gadgets import (
    Gadget,
    ReductionOutput,
    build_mvm_gadget,
    clique_to_mimp,
    encode_graph_problem,
    link_imp,
    link_nand,
    reduce_implications,
    reduce_mis,
    z_constant,
    z_values,
)
from .morphisms import (
    Counterexample,
    MultiMorphism,
    SingleMorphism,
    ValueType,
    all_components,
    check_multi_morphism,
    check_single_morphism,
    component_generated,
    compose,
    core,
    find_bad_partition_set,
    find_counterexample,
    find_min_contraction,
    identity_morphism,
    is_closed,
    is_component,
    is_core,
    is_recoverable,
    is_weakly_separable,
    produces,
    retract,
    value_type,
    value_types,
    value_weakly_separable,
)
from .relations import (
    Constraint,
    Instance,
    Language,
    Relation,
    cc0_complete,
    instance,
    language,
    relation,
    restrict,
    restrict_language,
    satisfies,
    substitute_constants,
    supp_substitute,
    tuple_difference,
    tuple_union,
    zero_valid_sublanguage,
)
from .solver import (
    BoundFunctions,
    SolveResult,
    SolveStats,
    brute_force,
    disjoint_minimal_decomposition,
    minimal_assignments,
    minimal_extensions,
    ocsp_to_ccsp,
    reduce_to_0valid,
    reduce_to_frequent,
    solve_ccsp,
    solve_ocsp,
    solve_weakly_separable,
)

__version__ = "0.1.0"
