"""Exact scalars, sparse polynomials and linear algebra over QQ and GF(p)."""

from .fields import GF, QQ, DomainError, Mod, PrimeField, RationalField
from .linalg import (
    Matrix,
    ShapeError,
    det_poly_matrix,
    determinant,
    evaluate_poly_matrix,
    kernel_basis,
    rank,
    rref,
    solve,
)
from .poly import ParseError, Poly, PolyRing, format_poly, monomials, parse_poly
from .primes import DEFAULT_PRIME, check_prime, random_prime
from .unipoly import binary_form_roots, roots_mod_p


def substitute(f: Poly, images, ring: PolyRing | None = None) -> Poly:
    """Image of ``f`` under the substitution ``x_i -> images[i]``."""
    return f.substitute(images, ring)


__all__ = [
    "GF", "QQ", "DomainError", "Mod", "PrimeField", "RationalField",
    "Matrix", "ShapeError", "det_poly_matrix", "determinant", "evaluate_poly_matrix",
    "kernel_basis", "rank", "rref", "solve", "substitute",
    "ParseError", "Poly", "PolyRing", "format_poly", "monomials", "parse_poly",
    "DEFAULT_PRIME", "check_prime", "random_prime", "binary_form_roots", "roots_mod_p",
]
