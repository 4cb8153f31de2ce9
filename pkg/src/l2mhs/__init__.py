"""Exact weight/Hodge spectral sequences, mixed Hodge numbers and
l2-dimensions for complements of normal-crossing divisor configurations,
equivariantly under a finite deck group, cross-checked by a brute-force
simplicial computation."""

from .arrangement import Arrangement, GysinData, StratumComponent, assemble_weight_e1
from .complexes import CochainComplex, DoubleComplex, froelicher
from .covers import CoverSpec, LocalSystemComplex, equivariant_cohomology, stratum_vn_dims
from .dualgraph import dual_graph, graph_l2_homology, intersection_form, is_negative_definite
from .groups import FiniteGroup, GMap, GModule, check_equivariance, vn_dim
from .ratlinalg import Rat, RatMatrix, Subspace, kernel_basis, rank
from .simplicial import SimplicialComplex, complement_cohomology, cover_complex
from .spectral import (
    FilteredComplex,
    SSPage,
    abutment_check,
    degeneration_page,
    spectral_sequence,
)
from .weights import (
    MHSTable,
    build_dual_complex,
    check_mhs_table,
    euler_l2,
    gr0_restriction_image,
    mixed_hodge_numbers,
    weight_graded_dims,
)

__version__ = "0.1.0"

__all__ = [
    "Arrangement",
    "CochainComplex",
    "CoverSpec",
    "DoubleComplex",
    "FilteredComplex",
    "FiniteGroup",
    "GMap",
    "GModule",
    "GysinData",
    "LocalSystemComplex",
    "MHSTable",
    "Rat",
    "RatMatrix",
    "SSPage",
    "SimplicialComplex",
    "StratumComponent",
    "Subspace",
    "abutment_check",
    "assemble_weight_e1",
    "build_dual_complex",
    "check_equivariance",
    "check_mhs_table",
    "complement_cohomology",
    "cover_complex",
    "degeneration_page",
    "dual_graph",
    "equivariant_cohomology",
    "euler_l2",
    "froelicher",
    "gr0_restriction_image",
    "graph_l2_homology",
    "intersection_form",
    "is_negative_definite",
    "kernel_basis",
    "mixed_hodge_numbers",
    "rank",
    "spectral_sequence",
    "stratum_vn_dims",
    "vn_dim",
    "weight_graded_dims",
]
