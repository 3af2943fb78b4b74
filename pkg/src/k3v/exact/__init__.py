"""Exact arithmetic substrate: rationals, polynomials, matrices, fields."""

from fractions import Fraction

from .cyclo import CycloElem, RamificationError, cyclo_reduce, prime_above
from .ff import F9, F81, GF, FqElem, prime_field
from .fpoly import factor as _factor_fp
from .matrix import (DimensionError, RatMatrix, SingularMatrixError, charpoly, determinant,
                     matrix_inverse, smith_normal_form)
from .mpoly import HomForm, MPoly
from .poly import Poly, cyclotomic, padic_valuation
from .sturm import sturm_count

ExactScalar = Fraction
IntPoly = Poly


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def factor_mod_p(f: Poly, p: int):
    """Irreducible factorization of f mod p: (leading unit, [(factor Poly, multiplicity)])."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    g = f.mod_p(p)
    if not g:
        raise ValueError(f"polynomial vanishes mod {p}")
    lc, facs = _factor_fp(g, p)
    return lc, [(Poly(h), m) for h, m in facs]


__all__ = [
    "ExactScalar", "IntPoly", "Poly", "RatMatrix", "CycloElem", "GF", "FqElem", "F9", "F81",
    "MPoly", "HomForm", "charpoly", "matrix_inverse", "determinant", "smith_normal_form",
    "factor_mod_p", "sturm_count", "padic_valuation", "cyclo_reduce", "cyclotomic",
    "prime_above", "prime_field", "DimensionError", "SingularMatrixError", "RamificationError",
]
