from collections import Counter

import pytest

from k3v.exact.ff import F9, prime_field
from k3v.exact.mpoly import parse
from k3v.fqgeom import (DivisorClass, ProjLine, ProjPoint, class_pairing, enumerate_lines, identity_mod_form,
                        line_count_P3, line_on_surface, lines_meet, plane_curve_singularities, projective_points,
                        proportional)
from k3v import k3pipeline

WXYZ = ["w", "x", "y", "z"]


def test_point_counts():
    assert len(projective_points(F9(), 3)) == 91
    assert line_count_P3(3) == 130


def test_fermat_line_configuration():
    ctx = k3pipeline.fermat_context()
    assert len(ctx.lines) == 112
    assert Counter(sum(1 for m in ctx.lines if m != l and lines_meet(l, m)) for l in ctx.lines) == {30: 112}


def test_lines_on_plane_union():
    # wx (w^2 - x^2) contains every line in the planes w = 0, x = 0, w = x, w = -x
    K = prime_field(3)
    S = parse("w*x*(w^2 - x^2)", WXYZ, coerce=K)
    lines = enumerate_lines(S, K)
    assert all(line_on_surface(l, S) for l in lines)
    # 4 planes of 13 lines each, all sharing the line w = x = 0
    assert len(lines) == 4 * 12 + 1


def test_line_identity_and_literal():
    K = F9()
    a = ProjLine(ProjPoint.parse("1:0:0:0", K), ProjPoint.parse("0:1:0:0", K))
    b = ProjLine(ProjPoint.parse("1:1:0:0", K), ProjPoint.parse("1:-1:0:0", K))
    assert a == b and hash(a) == hash(b)
    assert len(a.points()) == 10


def test_class_pairing_hyperplane():
    inc = lambda i, j: 1 if i == j else 0  # noqa: E731
    h = DivisorClass.hyperplane()
    assert class_pairing(h, h, inc) == 4
    assert class_pairing(h, DivisorClass.line(3), inc) == 1


def test_plane_curve_singularities():
    K = prime_field(7)
    node = parse("y^2*z - x^3 - x^2*z", ["x", "y", "z"], coerce=K)
    cusp = parse("y^2*z - x^3", ["x", "y", "z"], coerce=K)
    assert [k for _, k in plane_curve_singularities(node, K)] == ["node"]
    assert [k for _, k in plane_curve_singularities(cusp, K)] == ["cusp"]


def test_proportional_and_identity_mod():
    K = prime_field(5)
    f = parse("x^2 + y^2", ["x", "y"], coerce=K)
    assert proportional(f, f * K(3))
    assert not proportional(f, parse("x^2", ["x", "y"], coerce=K))
    g = parse("x^2", ["x", "y"], coerce=K)
    assert identity_mod_form(f, parse("y^2 + 3*x^2*y", ["x", "y"], coerce=K), g, 0)
    assert not identity_mod_form(f, parse("2*y^2", ["x", "y"], coerce=K), g, 0)
