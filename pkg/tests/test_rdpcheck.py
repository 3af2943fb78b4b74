import pytest

from k3v.exact.ff import prime_field
from k3v.exact.mpoly import MPoly, parse
from k3v.rdpcheck import (DoubleCover, an_classify, census, dynkin_total, load_germ, mutation_cases, run_mutation,
                          surface_singular_scan, symplectic_weight_audit, verify_section3_identities)

XYZ = ["x", "y", "z"]


@pytest.mark.parametrize("expr, p, want", [
    ("x*y + z^2", 0, "A1"),
    ("x*y + z^5", 0, "A4"),
    ("x^2 + y^2 + z^7", 5, "A6"),
    ("x*y + z^3", 3, "A2"),
    ("x*y + z^4 + z^3*x", 2, "A3"),
])
def test_an_classify(expr, p, want):
    F = parse(expr, XYZ) if not p else parse(expr, XYZ, coerce=prime_field(p))
    assert str(an_classify(F)) == want


def test_an_classify_non_A():
    t = an_classify(parse("x^2 + y^3 + z^3", XYZ))
    assert t.family != "A"


def test_load_germ_rational_coefficients():
    F, pt = load_germ({"char": 7, "F": "x*y + z^3/2 + 1/3*z^4"})
    assert str(an_classify(F, pt)) == "A2"
    F0, _ = load_germ({"F": "x*y - 1/2*z^2"})
    assert str(an_classify(F0)) == "A1"


def test_scan_dynkin_total():
    K = prime_field(5)
    S = parse("x0^4 + x1^4 + x2^4 + x3^4 + x0*x1*x2*x3", ["x0", "x1", "x2", "x3"])
    pts = surface_singular_scan(S, K)
    assert dynkin_total(pts) == sum(int(str(sp.type)[1:]) for sp in pts)


def test_double_cover_census():
    f = parse("(x^3-x*z^2)^2+(y^3-y*z^2)^2", XYZ)
    pts = surface_singular_scan(DoubleCover(f), prime_field(5))
    assert census(pts) == {"A1": 9}


@pytest.mark.parametrize("case", ["Dm", "E6", "D4-alt", "Am-ideal", "A1-ideal"])
def test_identities(case):
    assert verify_section3_identities(case).status == "PASS"


def test_identity_precondition():
    rep = verify_section3_identities("Dm", {"m": 4, "beta": [1, 2]})
    assert rep.status == "PRECONDITION" and rep.checks == []


def test_mutations_detected():
    cases = mutation_cases()
    assert len(cases) >= 20
    assert all(run_mutation(case, params, m) for _, case, params, m in cases)


def test_weight_audit():
    audit = symplectic_weight_audit()
    assert audit and all(r["symplectic"] for r in audit)


def test_unknown_case():
    with pytest.raises(ValueError):
        verify_section3_identities("E9")
