"""Property checks shared by the hypothesis suites and acceptance criterion 13."""

from __future__ import annotations


from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from k3v.exact.cyclo import CycloElem, cyclo_reduce
from k3v.exact.ff import F81, prime_field
from k3v.exact.matrix import RatMatrix, charpoly, matrix_inverse
from k3v.exact.mpoly import MPoly
from k3v.exact.poly import Poly, cyclotomic
from k3v.rdpcheck import an_classify
from k3v.salem import strip_cyclotomic
from k3v.weierstrass import NonEllipticError, WeierstrassModel, tate_classify

N_CASES = 200
MAX_EXAMPLES = 240
SETTINGS = settings(max_examples=MAX_EXAMPLES, deadline=None, derandomize=True,
                    suppress_health_check=list(HealthCheck))
COUNTS = {"charpoly": 0, "cyclo": 0, "strip": 0, "tate": 0, "an": 0}

small = st.integers(-4, 4)


# -- charpoly conjugation invariance ---------------------------------------------

@st.composite
def matrix_and_unimodular(draw):
    n = draw(st.integers(2, 5))
    A = [[draw(small) for _ in range(n)] for _ in range(n)]
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(draw(st.integers(1, 6))):
        i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if i != j:
            c = draw(st.integers(-2, 2))
            P = [row[:] for row in P]
            for k in range(n):
                P[i][k] += c * P[j][k]
    return RatMatrix(A), RatMatrix(P)


@SETTINGS
@given(matrix_and_unimodular())
def prop_charpoly_conjugation(data):
    A, P = data
    B = P * A * matrix_inverse(P)
    assert charpoly(B) == charpoly(A)
    COUNTS["charpoly"] += 1


# -- cyclo_reduce is a ring homomorphism --------------------------------------------

def _coeff():
    return st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(
        lambda q: q.denominator % 3 != 0)


@st.composite
def cyclo_pair(draw):
    n = draw(st.sampled_from([5, 8, 16, 20, 40, 80]))
    deg = len(CycloElem.const(n, 0).c)
    x = CycloElem(n, [draw(_coeff()) for _ in range(deg)])
    y = CycloElem(n, [draw(_coeff()) for _ in range(deg)])
    return x, y


@SETTINGS
@given(cyclo_pair())
def prop_cyclo_reduce_hom(data):
    x, y = data
    K = F81()
    r = lambda u: cyclo_reduce(u, 3, K)  # noqa: E731
    assert r(x + y) == r(x) + r(y)
    assert r(x * y) == r(x) * r(y)
    assert r(x - y) == r(x) - r(y)
    assert r(CycloElem.const(x.n, 1)) == K.one()
    assert r(CycloElem.zeta(x.n)) ** x.n == K.one()
    COUNTS["cyclo"] += 1


# -- strip_cyclotomic reconstruction ---------------------------------------------

@st.composite
def cyclotomic_product(draw):
    parts = draw(st.lists(st.tuples(st.sampled_from([1, 2, 3, 4, 5, 6, 8, 10, 12]), st.integers(1, 2)),
                          max_size=3))
    tail_deg = draw(st.integers(0, 4))
    tail = Poly([draw(small) for _ in range(tail_deg)] + [1])
    f = tail
    for n, m in parts:
        f = f * cyclotomic(n) ** m
    return f


@SETTINGS
@given(cyclotomic_product())
def prop_strip_cyclotomic(f):
    parts, resid = strip_cyclotomic(f)
    g = resid
    for n, m in parts:
        g = g * cyclotomic(n) ** m
    assert g == f
    assert strip_cyclotomic(resid)[0] == []
    COUNTS["strip"] += 1


# -- Tate chart consistency -------------------------------------------------------

@st.composite
def model_and_place(draw):
    p = draw(st.sampled_from([2, 3, 5, 7, 11]))
    F = prime_field(p)
    c = draw(st.integers(1, p - 1))
    lin = Poly([F(-c), F(1)])
    a = []
    for w in (1, 2, 3, 4, 6):
        k = draw(st.integers(0, w))
        body = Poly([F(draw(st.integers(0, p - 1))) for _ in range(2 * w - k + 1)])
        a.append(body * lin ** k)
    return p, c, a


@SETTINGS
@given(model_and_place())
def prop_tate_chart(data):
    p, c, a = data
    try:
        m = WeierstrassModel(a, base="Fp", p=p)
    except NonEllipticError:
        assume(False)
    f_t = tate_classify(m, c)
    inv_c = pow(c, -1, p)
    f_s = tate_classify(m.chart(), inv_c)
    assert (f_t.kodaira, f_t.vdelta) == (f_s.kodaira, f_s.vdelta)
    COUNTS["tate"] += 1


# -- an_classify coordinate-change invariance ---------------------------------------

@st.composite
def germ_change(draw):
    p = draw(st.sampled_from([0, 2, 3, 5, 7]))
    one = prime_field(p).one() if p else 1
    n = draw(st.integers(1, 8))
    x, y, z = MPoly.gens(3, one)
    G = x * y + z ** (n + 1)
    while True:
        L = [[draw(st.integers(-2, 2)) for _ in range(3)] for _ in range(3)]
        det = (L[0][0] * (L[1][1] * L[2][2] - L[1][2] * L[2][1]) - L[0][1] * (L[1][0] * L[2][2] - L[1][2] * L[2][0])
               + L[0][2] * (L[1][0] * L[2][1] - L[1][1] * L[2][0]))
        if det % p if p else det:
            break
    unit = MPoly.const(3, one) + x * draw(small) + z * draw(small)
    return p, n, G, L, unit


@SETTINGS
@given(germ_change())
def prop_an_invariance(data):
    p, n, G, L, unit = data
    one = prime_field(p).one() if p else 1
    v = MPoly.gens(3, one)
    subs = [sum((v[j] * L[i][j] for j in range(3)), MPoly(3)) for i in range(3)]
    H = G.compose(subs) * unit
    t0, t1 = an_classify(G), an_classify(H)
    assert (t0.family, t0.n) == ("A", n)
    assert (t1.family, t1.n) == (t0.family, t0.n)
    COUNTS["an"] += 1


PROPERTIES = {
    "charpoly": prop_charpoly_conjugation,
    "cyclo": prop_cyclo_reduce_hom,
    "strip": prop_strip_cyclotomic,
    "tate": prop_tate_chart,
    "an": prop_an_invariance,
}


def run_all():
    """Run every suite; returns {name: cases run}."""
    out = {}
    for name, fn in PROPERTIES.items():
        before = COUNTS[name]
        fn()
        out[name] = COUNTS[name] - before
    return out


__all__ = ["PROPERTIES", "COUNTS", "N_CASES", "run_all"]
