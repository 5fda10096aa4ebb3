"""Apolar ideals of the n x n determinant and permanent.

Exact linear algebra, the minor basis of the apolar algebra, Koszul Betti
numbers, relation generation checks, the Cayley-graph model of relations
and weight-multiplicity checks of the conjectured hook decompositions.
"""
from .apolar import (
    Det,
    GeneratorSet,
    MinorBasisElement,
    Perm,
    PolyKind,
    build_polynomial,
    contract,
    minor_basis,
    quotient_dim,
    shafiei_generators,
    variable_action,
    verify_annihilation,
)
from .cayley import (
    CayleyGraph,
    CycleWord,
    EdgeLabeling,
    Permutation,
    build_graph,
    check_certificate,
    commutator_reduce,
    cycle_labeling,
    is_zero_magic,
    zero_magic_basis,
)
from .config import RunConfig
from .exactalg import GF, QQ, SparseMatrix, kernel_basis, parse_field, rank, rank_crosscheck
from .polyring import Monomial, Multidegree, Polynomial, parse_polynomial
from .repcheck import conjectured_linear_strand, hook_dim, weight_refined_check
from .syzygy import (
    GradedBettiTable,
    KoszulConfig,
    RelationElement,
    betti_closed_forms,
    betti_koszul,
    canonical_relations,
    generation_check,
    hilbert_identity_check,
    relations_multidegree,
    serialize_table,
)

__version__ = "0.1.0"

__all__ = [
    "CayleyGraph",
    "CycleWord",
    "Det",
    "EdgeLabeling",
    "GF",
    "GeneratorSet",
    "GradedBettiTable",
    "KoszulConfig",
    "MinorBasisElement",
    "Monomial",
    "Multidegree",
    "Perm",
    "Permutation",
    "PolyKind",
    "Polynomial",
    "QQ",
    "RelationElement",
    "RunConfig",
    "SparseMatrix",
    "betti_closed_forms",
    "betti_koszul",
    "build_graph",
    "build_polynomial",
    "canonical_relations",
    "check_certificate",
    "commutator_reduce",
    "conjectured_linear_strand",
    "contract",
    "cycle_labeling",
    "generation_check",
    "hilbert_identity_check",
    "hook_dim",
    "is_zero_magic",
    "kernel_basis",
    "minor_basis",
    "parse_field",
    "parse_polynomial",
    "quotient_dim",
    "rank",
    "rank_crosscheck",
    "relations_multidegree",
    "serialize_table",
    "shafiei_generators",
    "variable_action",
    "verify_annihilation",
    "weight_refined_check",
    "zero_magic_basis",
]
