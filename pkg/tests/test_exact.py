"""Exact arithmetic against sympy as an independent oracle."""

from fractions import Fraction
import random

import pytest
import sympy as sp

from k3v.exact import (CycloElem, F9, F81, RatMatrix, charpoly, cyclo_reduce, factor_mod_p, matrix_inverse,
                       padic_valuation, prime_field, smith_normal_form, sturm_count)
from k3v.exact.ff import conway_like
from k3v.exact.matrix import DimensionError, SingularMatrixError, nullspace, rank
from k3v.exact.mpoly import MPoly, parse
from k3v.exact.poly import Poly, cyclotomic, gcd, is_squarefree, resultant

X = sp.Symbol("x")


def _sym(f: Poly):
    return sp.Poly(list(reversed([sp.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c
                                  for c in f.c])), X)


def _rand_matrix(rng, n, lo=-5, hi=5):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]


@pytest.mark.parametrize("seed", range(12))
def test_charpoly_matches_sympy(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 7)
    A = _rand_matrix(rng, n)
    ours = charpoly(RatMatrix(A))
    assert [int(c) for c in reversed(ours.c)] == [int(c) for c in sp.Matrix(A).charpoly(X).all_coeffs()]


def test_charpoly_rational_entries():
    A = [[Fraction(1, 2), 3], [Fraction(-2, 3), 1]]
    ours = charpoly(RatMatrix(A))
    theirs = sp.Matrix([[sp.Rational(1, 2), 3], [sp.Rational(-2, 3), 1]]).charpoly(X).all_coeffs()
    assert list(reversed(ours.c)) == [Fraction(int(c.p), int(c.q)) for c in theirs]


@pytest.mark.parametrize("seed", range(8))
def test_inverse_and_rank(seed):
    rng = random.Random(100 + seed)
    n = rng.randint(2, 6)
    A = _rand_matrix(rng, n)
    M = sp.Matrix(A)
    assert rank(A) == M.rank()
    if M.det() != 0:
        inv = matrix_inverse(RatMatrix(A))
        Minv = M.inv()
        assert all(inv[i, j] == Fraction(int(Minv[i, j].p), int(Minv[i, j].q)) for i in range(n) for j in range(n))
    else:
        with pytest.raises(SingularMatrixError):
            matrix_inverse(RatMatrix(A))


def test_nullspace_vectors_are_kernel():
    A = [[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 1, 0]]
    basis = nullspace(A, 4)
    assert len(basis) == 4 - sp.Matrix(A).rank()
    for v in basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in A)


def test_dimension_error():
    with pytest.raises(DimensionError):
        RatMatrix([[1, 2]]) * RatMatrix([[1, 2]])


@pytest.mark.parametrize("seed", range(10))
def test_smith_normal_form_matches_sympy(seed):
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf
    rng = random.Random(200 + seed)
    r, c = rng.randint(1, 5), rng.randint(1, 5)
    A = [[rng.randint(-6, 6) for _ in range(c)] for _ in range(r)]
    ours, _ = smith_normal_form(A)
    S = sympy_snf(sp.Matrix(A), domain=sp.ZZ)
    theirs = [abs(int(S[i, i])) for i in range(min(r, c))]
    assert [abs(d) for d in ours] == theirs


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_factor_mod_p_matches_sympy(p):
    rng = random.Random(p)
    for _ in range(10):
        deg = rng.randint(1, 9)
        c = [rng.randint(-9, 9) for _ in range(deg)] + [1]
        _, facs = factor_mod_p(Poly(c), p)
        ours = sorted((tuple(int(x) % p for x in f.c), m) for f, m in facs)
        _, sf = sp.Poly(_sym(Poly(c)).as_expr(), X, modulus=p).factor_list()
        theirs = sorted((tuple(int(x) % p for x in reversed(g.monic().all_coeffs())), m) for g, m in sf)
        assert ours == theirs


@pytest.mark.parametrize("seed", range(10))
def test_sturm_count_matches_sympy(seed):
    rng = random.Random(300 + seed)
    c = [rng.randint(-5, 5) for _ in range(rng.randint(2, 7))] + [1]
    f = Poly(c)
    roots = set(sp.real_roots(_sym(f)))
    assert sturm_count(f) == len(roots)
    assert sturm_count(f, -1, 2) == sum(1 for r in roots if -1 < r < 2)


def test_poly_gcd_resultant_squarefree():
    f, g = Poly([-1, 0, 1]), Poly([1, 2, 1])
    assert gcd(f, g) == Poly([1, 1])
    assert resultant(f, Poly([-2, 1])) == sp.resultant(X ** 2 - 1, X - 2)
    assert not is_squarefree(g) and is_squarefree(f)


@pytest.mark.parametrize("n", [1, 2, 5, 8, 12, 16, 20, 40, 80])
def test_cyclotomic_matches_sympy(n):
    assert [int(c) for c in reversed(cyclotomic(n).c)] == [int(c) for c in sp.Poly(sp.cyclotomic_poly(n, X)).all_coeffs()]


def test_padic_valuation():
    assert padic_valuation(Fraction(12, 5), 2) == 2
    assert padic_valuation(Fraction(12, 25), 5) == -2


@pytest.mark.parametrize("K", [prime_field(7), F9(), F81(), conway_like(5, 2), conway_like(2, 3)])
def test_finite_field_axioms(K):
    els = list(K.elements())
    assert len(els) == K.q
    nonzero = [a for a in els if a]
    assert all(a * a.inverse() == K.one() for a in nonzero)
    assert all(a ** (K.q - 1) == K.one() for a in nonzero)
    assert max(a.order() for a in nonzero) == K.q - 1
    assert all(K.parse(K.format(a.v)) == a for a in els)


def test_F9_has_i():
    K = F9()
    i = K.parse("i")
    assert i * i == -K.one()


def test_cyclo_field_ops():
    z = CycloElem.zeta(5)
    assert z ** 5 == CycloElem.const(5, 1)
    assert (z + 1).inverse() * (z + 1) == CycloElem.const(5, 1)
    assert sum((z ** k for k in range(5)), CycloElem.const(5, 0)) == CycloElem.const(5, 0)


def test_cyclo_reduce_zeta80_order():
    K = F81()
    assert cyclo_reduce(CycloElem.zeta(80), 3, K).order() == 80


def test_mpoly_parse_compose_evaluate():
    f = parse("x^2*y - 3*y + 1", ["x", "y"])
    assert f.evaluate([2, 5]) == 20 - 15 + 1
    x, y = MPoly.gens(2)
    g = f.compose([x + y, y])
    assert g.evaluate([1, 1]) == f.evaluate([2, 1])
    assert f.derivative(0) == parse("2*x*y", ["x", "y"])
    F = prime_field(5)
    h = parse("x^5 + 1", ["x"], coerce=F)
    assert h.evaluate([F(2)]) == F(3)
