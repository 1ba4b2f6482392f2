"""Exact arithmetic for polynomial functions over finite rings.

The library models finite residue rings and fields, their dual-number
extensions, and the functions polynomials induce on them.  Everything is
exhaustive and exact: predicates come in brute-force and criterion form,
counts in enumerated and closed form, and the group structure of the dual
permutations is built and checked element by element.
"""

from .canonical import (
    CanonicalForm,
    UnitValuedCanonicalForm,
    beta,
    canonicalize,
    canonicalize_unit_valued,
    count_polynomial_functions,
    count_unit_valued_functions,
    enumerate_canonical_forms,
    enumerate_kernel,
    enumerate_unit_valued_forms,
    falling_factorial,
    kernel_basis,
    kernel_count,
    vp_factorial,
)
from .dual import (
    DualElement,
    DualPolynomial,
    DualRing,
    dual_ring,
    eval_dual,
    eval_dual_poly,
    format_dual_element,
    parse_dual_element,
)
from .funcspace import (
    FunctionTable,
    induce,
    induced_tables,
    invert_unit_table,
    is_null,
    is_permutation,
    is_unit_valued,
    lagrange,
    null_degree_bound,
    permutation_tables,
    permutes_dual,
    permutes_prime_power,
    realize_pair,
    unit_valued_tables,
)
from .groups import (
    DualPermutation,
    EmbeddingReport,
    GroupAxiomsReport,
    SemidirectElement,
    StabilizerElement,
    dual_degree_bound,
    embed_dual_permutation,
    enumerate_dual_permutations,
    enumerate_stabilizer,
    null_polynomials,
    precompose_units,
    semidirect_group,
    verify_embedding,
    verify_group_axioms,
)
from .poly import ParseError, Polynomial, X, format_polynomial, parse
from .rings import (
    FiniteField,
    ModularRing,
    PrimePowerRing,
    Ring,
    RingElement,
    SizeCapError,
    find_irreducible,
    make_ring,
)

__version__ = "0.1.0"

__all__ = [
    "CanonicalForm",
    "DualElement",
    "DualPermutation",
    "DualPolynomial",
    "DualRing",
    "EmbeddingReport",
    "FiniteField",
    "FunctionTable",
    "GroupAxiomsReport",
    "ModularRing",
    "ParseError",
    "Polynomial",
    "PrimePowerRing",
    "Ring",
    "RingElement",
    "SemidirectElement",
    "SizeCapError",
    "StabilizerElement",
    "UnitValuedCanonicalForm",
    "X",
    "beta",
    "canonicalize",
    "canonicalize_unit_valued",
    "count_polynomial_functions",
    "count_unit_valued_functions",
    "dual_degree_bound",
    "dual_ring",
    "embed_dual_permutation",
    "enumerate_canonical_forms",
    "enumerate_dual_permutations",
    "enumerate_kernel",
    "enumerate_stabilizer",
    "enumerate_unit_valued_forms",
    "eval_dual",
    "eval_dual_poly",
    "falling_factorial",
    "find_irreducible",
    "format_dual_element",
    "format_polynomial",
    "induce",
    "induced_tables",
    "invert_unit_table",
    "is_null",
    "is_permutation",
    "is_unit_valued",
    "kernel_basis",
    "kernel_count",
    "lagrange",
    "make_ring",
    "null_degree_bound",
    "null_polynomials",
    "parse",
    "parse_dual_element",
    "permutation_tables",
    "permutes_dual",
    "permutes_prime_power",
    "precompose_units",
    "realize_pair",
    "semidirect_group",
    "unit_valued_tables",
    "verify_embedding",
    "verify_group_axioms",
    "vp_factorial",
]
