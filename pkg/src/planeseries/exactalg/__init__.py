"""Exact arithmetic substrate: finite fields, univariate and trivariate
polynomials, linear algebra, and field towers."""

from .gf import Elem, ExactAlgError, Field, gf_build, is_prime
from .unipoly import (
    UniPoly,
    squarefree_parts,
    uni_factor,
    uni_gcd,
    uni_interpolate,
    uni_resultant,
    uni_roots,
)
from .forms import (
    BiPoly,
    Form,
    bipoly_gcd,
    form_gcd,
    homogenize,
    monomial_index,
    monomials,
    n_monomials,
    resultant,
    subres_values,
)
from .linalg import (
    complement_in,
    mat_kernel,
    mat_mul_vec,
    mat_rank,
    mat_rref,
    mat_solve,
)
from .towers import (
    Embedding,
    canonical_field,
    embed,
    extension_of,
    field_from_quotient,
    find_root,
    roots_in_field,
)

__all__ = [
    "Elem",
    "ExactAlgError",
    "Field",
    "gf_build",
    "is_prime",
    "UniPoly",
    "squarefree_parts",
    "uni_factor",
    "uni_gcd",
    "uni_interpolate",
    "uni_resultant",
    "uni_roots",
    "BiPoly",
    "Form",
    "bipoly_gcd",
    "form_gcd",
    "homogenize",
    "monomial_index",
    "monomials",
    "n_monomials",
    "resultant",
    "subres_values",
    "complement_in",
    "mat_kernel",
    "mat_mul_vec",
    "mat_rank",
    "mat_rref",
    "mat_solve",
    "Embedding",
    "canonical_field",
    "embed",
    "extension_of",
    "field_from_quotient",
    "find_root",
    "roots_in_field",
]
