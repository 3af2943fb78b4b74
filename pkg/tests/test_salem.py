import pytest
import sympy as sp

from k3v.exact.poly import Poly, cyclotomic
from k3v.salem import (is_irreducible_over_Z, is_reciprocal, is_salem, kronecker_factor, modular_degree_sets,
                       non_extendability_checks, salem_check, salem_report, strip_cyclotomic, trace_polynomial)

LEHMER = Poly([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
X = sp.Symbol("x")


def test_lehmer_is_salem():
    chk = salem_check(LEHMER)
    assert chk.salem and (chk.above_2, chk.inside) == (1, 4)
    assert is_reciprocal(LEHMER)


def test_trace_polynomial_degree_2():
    # x^2 - 3x + 1 = x (y - 3) with y = x + 1/x
    assert trace_polynomial(Poly([1, -3, 1])) == Poly([-3, 1])
    assert is_salem(Poly([1, -3, 1]))


@pytest.mark.parametrize("f, why", [
    (Poly([1, 0, 1]), "trace"),
    (Poly([2, 1, 1]), "reciprocal"),
    (Poly([1, 1, 1, 1]), "odd"),
])
def test_not_salem(f, why):
    assert not is_salem(f)


def test_strip_cyclotomic():
    f = LEHMER * cyclotomic(1) ** 2 * cyclotomic(4) * cyclotomic(12)
    parts, resid = strip_cyclotomic(f)
    assert sorted(parts) == [(1, 2), (4, 1), (12, 1)]
    assert resid == LEHMER


def test_irreducibility_certificate_matches_sympy():
    res = is_irreducible_over_Z(LEHMER)
    assert res.irreducible
    assert sp.Poly(list(reversed(LEHMER.c)), X).is_irreducible


def test_reducible_found():
    f = Poly([2, 1, 1]) * Poly([3, -1, 1])
    res = is_irreducible_over_Z(f)
    assert res.verdict == "no"
    g = kronecker_factor(f)
    assert g is not None and 0 < g.degree < f.degree and f.divmod(g)[1] == Poly([])


def test_modular_degree_sets_are_subset_sums():
    for p, degs, sums in modular_degree_sets(LEHMER, (2, 3)):
        assert sum(degs) == 10 and 0 in sums and 10 in sums


def test_report_and_criteria():
    ident = Poly([-1, 1]) ** 22
    assert non_extendability_checks(ident, 22) == []
    # 12 eigenvalues that are roots of unity: criterion b needs 12 < 22 - rho
    f = LEHMER * cyclotomic(1) ** 12
    assert non_extendability_checks(f, 10) == []
    assert {c["criterion"] for c in non_extendability_checks(f, 8)} == {"b"}
    assert {c["criterion"] for c in non_extendability_checks(f, 10, finite_order=True)} == {"c"}
    rep = salem_report(LEHMER * cyclotomic(2))
    assert rep.residual_is_salem and rep.cyclotomic_part == [(2, 1)]
    assert rep.as_json()["irreducible"] == "yes"
    with pytest.raises(ValueError):
        non_extendability_checks(LEHMER, 22)
