from fractions import Fraction

import pytest

from k3v.exact.ff import prime_field
from k3v.exact.mpoly import parse
from k3v.exact.poly import Poly
from k3v.weierstrass import (Curve, NonEllipticError, WeierstrassModel, components_of, dynkin_of, order11_case,
                             shioda_tate_bound, singular_fiber_table, surface_singularity_table, tate_classify,
                             torsion_test, wild_model, wild_section, x_p_model)


@pytest.mark.parametrize("a4, a6, kod, vd, dyn", [
    ("0", "t^5", "II*", 10, "E8"),
    ("t", "0", "III", 3, "A1"),
    ("0", "t^2", "IV", 4, "A2"),
    ("t^2", "t^3+t^4", "I0*", 6, "D4"),
    ("-3*t^2", "2*t^3+t^5", "I2*", 8, "D6"),
    ("0", "t", "II", 2, None),
    ("t^3", "0", "III*", 9, "E7"),
    ("0", "t^4", "IV*", 8, "E6"),
])
def test_tate_textbook_types(a4, a6, kod, vd, dyn):
    m = WeierstrassModel(["0", "0", "0", a4, a6], base="Q")
    f = tate_classify(m, 0)
    assert (f.kodaira, f.vdelta, f.dynkin) == (kod, vd, dyn)


def test_multiplicative_In():
    # y^2 + xy = x^3 + t^n has split I_n at t = 0
    for n in (1, 2, 5, 9):
        m = WeierstrassModel(["1", "0", "0", "0", f"t^{n}"], base="Q")
        f = tate_classify(m, 0)
        assert (f.kodaira, f.vdelta) == (f"I{n}", n)


def test_kodaira_tables():
    assert dynkin_of("I5") == "A4" and dynkin_of("I3*") == "D7" and dynkin_of("I1") is None
    assert components_of("I0*") == 5 and components_of("II*") == 9 and components_of("II") == 1


def test_euler_number_24():
    # a place of degree d contributes d v(Delta); the total is 24 for a K3 fibration
    for p in (5, 7, 11, 13, 17, 19):
        fibers = singular_fiber_table(x_p_model(p))
        deg = lambda f: 1 if f.place == "inf" else parse(f.place, ["t"]).total_degree()  # noqa: E731
        assert sum(f.vdelta * deg(f) for f in fibers) == 24


def test_chart_and_inf():
    m = x_p_model(5)
    inf = [f for f in singular_fiber_table(m) if f.place == "inf"][0]
    f = tate_classify(m.chart(), 0)
    assert (f.kodaira, f.vdelta) == (inf.kodaira, inf.vdelta)


def test_fp_place_and_poly_place():
    m = x_p_model(7).reduce()
    F = prime_field(7)
    assert tate_classify(m, 4).kodaira == tate_classify(m, Poly([F(-4), F(1)])).kodaira == "I7"


def test_nonelliptic_rejected():
    with pytest.raises(NonEllipticError):
        WeierstrassModel(["0", "0", "0", "0", "t^5-t"], base="Fp", p=3)
    with pytest.raises(ValueError):
        WeierstrassModel(["0", "0", "0", "0", "t^13"], base="Q")


def test_quasi_elliptic_char3():
    m = WeierstrassModel(["0", "0", "0", "0", "t^7+t^5"], base="Fp", p=3, check=False)
    got = [(f.place, f.dynkin) for f in surface_singularity_table(m)]
    assert got == [("t", "E8"), ("t + 1", "A2"), ("t + 2", "A2"), ("inf", "E8")]
    bad = WeierstrassModel(["0", "0", "0", "0", "t^5-t"], base="Fp", p=3, check=False)
    assert [f.dynkin for f in surface_singularity_table(bad) if f.place == "inf"] == ["non-RDP"]


def test_shioda_tate():
    assert shioda_tate_bound(singular_fiber_table(x_p_model(3))) == 20


def test_torsion():
    assert torsion_test([0, 0, 0, 0, 1], (2, 3)) == {"torsion": True, "order": 6}
    assert torsion_test([0, 0, 0, 0, 1], (0, 1)) == {"torsion": True, "order": 3}
    assert torsion_test([0, 0, 0, 0, -2], (3, 5)) == {"torsion": False, "order": None}
    with pytest.raises(ValueError):
        torsion_test([0, 0, 0, 0, 1], (1, 1))


def test_wild_section():
    for p in (5, 7):
        m = wild_model(p)
        a = [ai(2) for ai in m.a]
        assert Curve(a).on_curve(wild_section(p, 2))
    assert wild_section(5, 1)[0] == Fraction(1 + 5 ** 6, 5 ** 12)


def test_order11_normalizations():
    s = order11_case(0)
    assert (s["branch"], s["agrees"]) == ("non-extendable", True)
    inv = order11_case(0, "inverse")
    assert inv["branch"] == "extendable" and not inv["agrees"]
    with pytest.raises(ValueError):
        order11_case(0, "other")


def test_model_json_roundtrip(tmp_path):
    path = tmp_path / "m.json"
    path.write_text('{"a4": "t^3", "a6": "t^7", "base": "Q", "p": 5}')
    m = WeierstrassModel.load(path)
    assert [f.dynkin for f in singular_fiber_table(m) if f.dynkin] == ["E7", "E8"]
    path.write_text('{"a5": "t"}')
    with pytest.raises(ValueError):
        WeierstrassModel.load(path)
