"""Exact-arithmetic construction of graded Artinian quotient algebras and
decision procedures for their weak/strong Lefschetz properties, via Jordan
types and central simple modules."""

from .scalar import (
    DEFAULT_PRIME,
    EchelonBasis,
    FieldSpec,
    Matrix,
    RATIONALS,
    det,
    kernel_basis,
    rank,
    rref,
)
from .poly import (
    FactoredGenerator,
    LinearForm,
    Poly,
    PolyParseError,
    coefficient_vector,
    monomials_of_degree,
    parse_poly,
    poly_from_vector,
)
from .graded import (
    ArtinianAlgebra,
    ContainmentError,
    GradedModule,
    GradedSubspace,
    NotArtinianError,
    algebra_as_module,
    build_algebra,
    hilbert_function,
    ideal_colon,
    multiplication_matrix,
    normal_form,
    principal_ideal,
    quotient_algebra,
    quotient_module,
    subspace_sum,
)
from .jordan import (
    LefschetzReport,
    Order,
    Partition,
    Verdict,
    certify_sl_element,
    compare_partitions,
    dual_partition,
    find_sl_element,
    full_rank_profile,
    hilbert_partition,
    is_unimodal,
    jordan_type,
)
from .csm import (
    CsmChain,
    NotGorensteinError,
    all_csm_have_slp,
    csm_chain,
    gorenstein_certificate,
    last_csm_check,
    slp_csm_crosscheck,
)
from .families import (
    GenericProductsInstance,
    RetriesExhaustedError,
    TriangularInstance,
    build_generic_products,
    build_triangular,
    ci_hilbert_certificate,
    ci_minors_check,
    koszul_hilbert,
    verify_generic_products,
    verify_triangular,
)

__all__ = [
    "ArtinianAlgebra",
    "ContainmentError",
    "CsmChain",
    "DEFAULT_PRIME",
    "EchelonBasis",
    "FactoredGenerator",
    "FieldSpec",
    "GenericProductsInstance",
    "GradedModule",
    "GradedSubspace",
    "LefschetzReport",
    "LinearForm",
    "Matrix",
    "NotArtinianError",
    "NotGorensteinError",
    "Order",
    "Partition",
    "Poly",
    "PolyParseError",
    "RATIONALS",
    "RetriesExhaustedError",
    "TriangularInstance",
    "Verdict",
    "algebra_as_module",
    "all_csm_have_slp",
    "build_algebra",
    "build_generic_products",
    "build_triangular",
    "certify_sl_element",
    "ci_hilbert_certificate",
    "ci_minors_check",
    "coefficient_vector",
    "compare_partitions",
    "csm_chain",
    "det",
    "dual_partition",
    "find_sl_element",
    "full_rank_profile",
    "gorenstein_certificate",
    "hilbert_function",
    "hilbert_partition",
    "ideal_colon",
    "is_unimodal",
    "jordan_type",
    "kernel_basis",
    "koszul_hilbert",
    "last_csm_check",
    "monomials_of_degree",
    "multiplication_matrix",
    "normal_form",
    "parse_poly",
    "poly_from_vector",
    "principal_ideal",
    "quotient_algebra",
    "quotient_module",
    "rank",
    "rref",
    "slp_csm_crosscheck",
    "subspace_sum",
    "verify_generic_products",
    "verify_triangular",
]

__version__ = "0.1.0"
