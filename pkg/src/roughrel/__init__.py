"""Rough-set approximations, relation closures and definable set families."""

from .closures import (
    closure,
    e_equals_ts_condition,
    equivalence_closure,
    reflexive_closure,
    rst_closure,
    symmetric_closure,
    transitive_closure,
    ts_closure,
)
from .definable import (
    EquivalenceReport,
    FamilyTooLargeError,
    Partition,
    PowersetTooLargeError,
    SetFamily,
    definable_components,
    definable_count,
    definable_family_fast,
    definable_family_naive,
    equivalence_classes,
    equivalence_relations_equal_iff_same_family_check,
    inner_family_naive,
    outer_family_naive,
    partition_to_relation,
    same_definable_family,
)
from .relcore import (
    Relation,
    RelationError,
    Subset,
    Universe,
    UniverseMismatchError,
    complement,
    compose,
    converse,
    identity_relation,
    intersect,
    is_equivalence,
    is_reflexive,
    is_serial,
    is_subrelation,
    is_symmetric,
    is_transitive,
    path_witness,
    power,
    predecessor,
    successor,
    union,
)
from .rough import (
    ApproxPair,
    is_definable,
    is_inner_definable,
    is_outer_definable,
    lower,
    pred_set,
    succ_set,
    upper,
    v_set,
)

__version__ = "0.1.0"
