"""Exact-arithmetic Yang-Baxter operators from Lie algebras.

Builds the self-distributive (rack) object attached to a finite-dimensional
Lie or 3-Lie algebra over the rationals, derives the Yang-Baxter operator,
computes Lie / SD / YB second cohomology, and integrates infinitesimal
deformations into hbar-truncated perturbative series -- every identity is
verified as an exact matrix equation.
"""

__version__ = "0.1.0"

from .ratlin import RatMatrix, Subspace, rank, rank_nullspace, solve_linear, quotient_dim
from .liealg import (
    LieAlgebra,
    ValidationResult,
    StructureReport,
    DerivationSpaces,
    validate,
    structure_report,
    derivation_spaces,
    catalog_get,
    catalog_names,
)
from .cohomology import (
    LieCochain,
    CohomologyResult,
    bracket_cochain,
    ce_differential,
    ce_cohomology,
    quadratic_term,
    obstruction_test,
)
from .rack import (
    RackObject,
    SDCochain,
    NotSpecial,
    build_rack,
    verify_sd,
    sd_cochain_space,
    sd_differential,
    sd_h2,
    theta,
    theta_series,
    special_decompose,
    verify_sd_deformation,
)
from .yb import (
    YBOperator,
    YBCochain,
    CocycleTriple,
    build_yb,
    verify_ybe,
    yb_differential,
    lambda2,
    yb_h2_brute,
    yb_h2_structured,
    lemma_conditions,
    ternary_literal_matrix,
)
from .perturb import (
    DeformationSeries,
    HbarOperator,
    Obstructed,
    integrate_deformation,
    assemble_series,
    verify_ybe_mod,
)
