"""Relations, canonical generators, Koszul Betti engine and closed forms."""
from .formulas import ClosedForms, IncompleteTableError, betti_closed_forms, hilbert_identity_check
from .koszul import KoszulConfig, betti_koszul, multigraded_betti
from .relations import (
    GenerationReport,
    RelationElement,
    RelationTemplate,
    canonical_relations,
    f1_terms,
    generation_check,
    linear_relation_table,
    parse_multidegree,
    parse_relation,
    relation_dims,
    relations_multidegree,
    template_orbit,
)
from .table import GradedBettiTable, serialize_table

__all__ = [
    "ClosedForms", "GenerationReport", "GradedBettiTable", "IncompleteTableError", "KoszulConfig",
    "RelationElement", "RelationTemplate", "betti_closed_forms", "betti_koszul", "canonical_relations",
    "f1_terms", "generation_check", "hilbert_identity_check", "linear_relation_table",
    "multigraded_betti", "parse_multidegree", "parse_relation", "relation_dims", "relations_multidegree", "serialize_table", "template_orbit",
]
