"""Rational double points: A_n germs, singular-point scans and the normal-form identities.

an_classify handles germs whose quadratic part has a rank-2 hyperbolic
piece: after a linear change F = Q(X, Y) + ..., the critical curve
F_X = F_Y = 0 is solved as a power series (X(Z), Y(Z)) and the order of
F along it is n + 1 for an A_n point.  Germs of corank >= 2 (D and E
candidates) come back unresolved; those are typed by Tate's algorithm
when they live on a Weierstrass model.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact.cyclo import CycloElem
from .exact.ff import GF, FqElem, prime_field
from .exact.matrix import nullspace
from .exact.mpoly import MPoly, parse
from .fqgeom import ProjPoint, ResourceError, _as_field_form, projective_points, surface_singular_points

DEGREE_BOUND = 16


@dataclass(frozen=True)
class ADEType:
    family: str  # "A", "D", "E" or "unresolved"
    n: int | None = None
    reason: str = ""

    def __str__(self):
        return f"{self.family}{self.n}" if self.family != "unresolved" else "unresolved"

    @property
    def resolved(self):
        return self.family != "unresolved"


def _char_of(F: MPoly) -> int:
    for c in F.terms.values():
        if isinstance(c, FqElem):
            return c.field.p
    return 0


def _one(F: MPoly):
    for c in F.terms.values():
        if isinstance(c, FqElem):
            return c.field.one()
    return 1


def _inv(c):
    return Fraction(1, c) if isinstance(c, int) else 1 / c


# -- truncated power series in one variable ------------------------------------

def _smul(a, b, L, zero):
    out = [zero] * L
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j in range(min(len(b), L - i)):
            y = b[j]
            if y != 0:
                out[i + j] = out[i + j] + x * y
    return out


def _series_eval(F: MPoly, series, L, zero):
    """F(series[0], series[1], series[2]) mod Z^L."""
    cache = [{} for _ in series]

    def power(i, k):
        if k not in cache[i]:
            if k == 0:
                cache[i][k] = [zero + 1] + [zero] * (L - 1)
            else:
                cache[i][k] = _smul(power(i, k - 1), series[i], L, zero)
        return cache[i][k]

    acc = [zero] * L
    for e, c in F.terms.items():
        term = [zero + c] + [zero] * (L - 1)
        for i, k in enumerate(e):
            if k:
                term = _smul(term, power(i, k), L, zero)
        acc = [x + y for x, y in zip(acc, term)]
    return acc


# -- the A_n classifier -----------------------------------------------------------

def _bilinear(Q: MPoly, n: int):
    B = [[None] * n for _ in range(n)]
    zero = _one(Q) * 0
    for i in range(n):
        for j in range(n):
            e = [0] * n
            e[i] += 1
            e[j] += 1
            c = Q.terms.get(tuple(e), zero)
            B[i][j] = c * 2 if i == j else c
    return B


def _quad_value(Q: MPoly, v):
    return Q.evaluate(list(v))


def _complete_basis(r, one):
    """Two standard basis vectors completing r to a basis."""
    k = next(i for i, c in enumerate(r) if c != 0)
    out = []
    for i in range(3):
        if i != k:
            out.append([one if j == i else one * 0 for j in range(3)])
    return out


def an_classify(F: MPoly, point=None, degree_bound: int = DEGREE_BOUND) -> ADEType:
    """A_n type of the germ of F = 0 at `point` (default: the origin)."""
    if F.n != 3:
        raise ValueError("germs live in three variables")
    one = _one(F)
    zero = one * 0
    G = F.translate(list(point)) if point is not None else F
    if G.constant_term() != 0:
        raise ValueError("point is not on the surface")
    if any(G.homogeneous_part(1).terms.values()):
        raise ValueError("smooth point: the linear part does not vanish")
    Q = G.homogeneous_part(2)
    if not Q:
        return ADEType("unresolved", None, "not a double point (quadratic part vanishes)")
    p = _char_of(G)
    B = _bilinear(Q, 3)
    rad = nullspace(B, 3, one)
    rank = 3 - len(rad)
    if p != 2 and rank == 3:
        return ADEType("A", 1)
    if rank <= 1 or (p == 2 and rank == 0):
        return ADEType("unresolved", None, "corank >= 2")
    r = rad[0]
    if p == 2 and _quad_value(Q, r) != 0:
        return ADEType("A", 1)
    e1, e2 = _complete_basis(r, one)
    X, Y, Z = MPoly.gens(3, one)
    subs = [X * e1[i] + Y * e2[i] + Z * r[i] for i in range(3)]
    H = G.compose(subs)
    HX, HY = H.derivative(0), H.derivative(1)
    # linear part of (H_X, H_Y) in (X, Y)
    b11, b12 = HX.coefficient((1, 0, 0)), HX.coefficient((0, 1, 0))
    b21, b22 = HY.coefficient((1, 0, 0)), HY.coefficient((0, 1, 0))
    b11, b12, b21, b22 = (c if c is not None else zero for c in (b11, b12, b21, b22))
    det = b11 * b22 - b12 * b21
    if det == 0:
        return ADEType("unresolved", None, "hyperbolic block is degenerate")
    idet = _inv(det)
    lin = {(1, 0, 0), (0, 1, 0)}
    NX = MPoly(3, {e: c for e, c in HX.terms.items() if e not in lin})
    NY = MPoly(3, {e: c for e, c in HY.terms.items() if e not in lin})
    L = degree_bound + 2
    zs = [zero, one] + [zero] * (L - 2)
    xs = [zero] * L
    ys = [zero] * L
    for _ in range(L + 1):
        nx = _series_eval(NX, [xs, ys, zs], L, zero)
        ny = _series_eval(NY, [xs, ys, zs], L, zero)
        # solve [[b11, b12], [b21, b22]] (x, y) = -(nx, ny)
        new_x = [-(b22 * a - b12 * b) * idet for a, b in zip(nx, ny)]
        new_y = [-(-b21 * a + b11 * b) * idet for a, b in zip(nx, ny)]
        if new_x == xs and new_y == ys:
            break
        xs, ys = new_x, new_y
    g = _series_eval(H, [xs, ys, zs], L, zero)
    order = next((i for i, c in enumerate(g) if c != 0), None)
    if order is None or order - 1 > degree_bound:
        return ADEType("unresolved", None, f"order along the critical curve exceeds {degree_bound + 1}")
    if order < 2:
        raise ArithmeticError("critical-curve order below 2 at a singular point")
    return ADEType("A", order - 1)


def load_germ(obj) -> tuple:
    """Germ JSON {char, F, point} -> (MPoly over F_p or Q, point)."""
    p = obj.get("char", 0)
    names = obj.get("vars", ["x", "y", "z"])
    if p:
        f = prime_field(p)
        F = parse(obj["F"], names, coerce=lambda c: f(Fraction(c).numerator) / f(Fraction(c).denominator))
        pt = [f(int(c)) for c in obj.get("point", [0, 0, 0])]
    else:
        F = parse(obj["F"], names)
        pt = [Fraction(c) for c in obj.get("point", [0, 0, 0])]
    return F, pt


# -- singular point scans --------------------------------------------------------

@dataclass
class DoubleCover:
    """w^2 + h w = f over P^2 with f a sextic and h a cubic (or zero)."""
    f: MPoly
    h: MPoly | None = None


@dataclass
class SingularPoint:
    point: tuple
    type: ADEType
    chart: int

    def as_json(self):
        return {"point": [str(c) for c in self.point], "type": str(self.type),
                "reason": self.type.reason or None}


def _dehomogenize_at(S: MPoly, pt: ProjPoint):
    i = next(k for k, c in enumerate(pt.coords) if c != 0)
    F = S.substitute(i, pt.coords[i]).drop_var(i)
    rest = [c for k, c in enumerate(pt.coords) if k != i]
    return F, rest, i


def surface_singular_scan(S, field: GF, degree_bound: int = DEGREE_BOUND, max_points: int = 200000):
    """All singular F_q-points of a quartic (HomForm in 4 variables) or a double cover."""
    if isinstance(S, DoubleCover):
        return _double_cover_scan(S, field, degree_bound, max_points)
    if S.n != 4:
        raise ValueError("surface scan expects a form in four variables or a DoubleCover")
    Sf = _as_field_form(S, field)
    out = []
    for pt in surface_singular_points(Sf, field, max_points):
        F, rest, i = _dehomogenize_at(Sf, pt)
        out.append(SingularPoint(pt.coords, an_classify(F, rest, degree_bound), i))
    return out


def _double_cover_scan(D: DoubleCover, field: GF, degree_bound, max_points):
    q = field.q
    if q * q + q + 1 > max_points:
        raise ResourceError(f"P^2(F_{q}) exceeds the scan limit")
    f = _as_field_form(D.f, field)
    h = _as_field_form(D.h, field) if D.h is not None else MPoly(3)
    one, zero = field.one(), field.zero()
    p = field.p
    out = []
    for pt in projective_points(field, 3):
        i = next(k for k, c in enumerate(pt.coords) if c != 0)
        fa = f.substitute(i, one).drop_var(i)
        ha = h.substitute(i, one).drop_var(i) if h else MPoly(2)
        rest = [c for k, c in enumerate(pt.coords) if k != i]
        fv = fa.evaluate(rest)
        hv = ha.evaluate(rest) if ha else zero
        if p == 2:
            if hv != 0:
                continue
            w0 = fv.sqrt()
        else:
            w0 = -hv * _inv(one * 2)
        # local equation G(u, v, w) = w^2 + h w - f
        u, v, w = MPoly.gens(3, one)
        lift = lambda m: m.compose([u, v]) if m else MPoly(3)  # noqa: E731
        G = w * w + lift(ha) * w - lift(fa)
        loc = rest + [w0]
        if G.evaluate(loc) != 0 or any(g.evaluate(loc) != 0 for g in G.gradient()):
            continue
        coords = tuple(pt.coords) + (w0,)
        out.append(SingularPoint(coords, an_classify(G, loc, degree_bound), i))
    return out


def census(points):
    """Multiset of types as a sorted {label: count} dict."""
    out = {}
    for sp in points:
        out[str(sp.type)] = out.get(str(sp.type), 0) + 1
    return dict(sorted(out.items()))


def dynkin_total(points) -> int:
    return sum(sp.type.n for sp in points if sp.type.resolved)


# -- normal-form identities -------------------------------------------------------

@dataclass
class IdentityReport:
    case: str
    params: dict
    constraints_ok: bool
    checks: list = field(default_factory=list)  # (name, bool)

    @property
    def status(self):
        if not self.constraints_ok:
            return "PRECONDITION"
        return "PASS" if all(ok for _, ok in self.checks) else "FAIL"

    def as_json(self):
        return {"case": self.case, "status": self.status,
                "checks": [{"name": n, "ok": ok} for n, ok in self.checks]}


def _poly_from_coeffs(coeffs, var: MPoly, one=1):
    acc = MPoly(var.n)
    pw = MPoly.const(var.n, one)
    for c in coeffs:
        if c != 0:
            acc = acc + pw * c
        pw = pw * var
    return acc


def _in_linear_span(f: MPoly, gens, one=1):
    """Is the affine-linear f a constant combination of the affine-linear gens?"""
    monos = sorted({e for g in gens + [f] for e in g.terms})
    rows = [[g.terms.get(m, 0) for g in gens] + [f.terms.get(m, 0)] for m in monos]
    # f in span iff appending f does not raise the rank
    from .exact.matrix import rank
    A = [r[:-1] for r in rows]
    return rank(A) == rank(rows) if A and A[0] else not f


# case D_m ----------------------------------------------------------------------

def _dm_default():
    return {"m": 4, "beta": [1, 2, 3]}


def _dm(params, mutate=None):
    m, beta = params["m"], [Fraction(b) for b in params["beta"]]
    ok = m >= 4 and len(beta) == m - 1
    i = CycloElem.zeta(4)
    one = CycloElem.const(4, 1)
    x, y, z = MPoly.gens(3, one)
    # prod (beta_i + u) = E(u^2) + u O(u^2) as coefficient lists in u
    P = [one]
    for b in beta:
        nxt = [one * 0] * (len(P) + 1)
        for k, c in enumerate(P):
            nxt[k] = nxt[k] + c * b
            nxt[k + 1] = nxt[k + 1] + c
        P = nxt
    even = [P[k] for k in range(0, len(P), 2)]
    odd = [P[k] for k in range(1, len(P), 2)]
    # u^2 = -y
    E = [c * (-1) ** k for k, c in enumerate(even)]
    O = [c * (-1) ** k for k, c in enumerate(odd)]
    A = _poly_from_coeffs(E, y, one) * (-i)
    Bp = _poly_from_coeffs(O, y, one) * (-i)
    if mutate == "A":
        A = A + one
    if mutate == "B":
        Bp = Bp + y
    N = MPoly.const(3, one)
    for b in beta:
        N = N * (y + one * (b * b))
    if mutate == "N":
        N = N + one
    F = x * x + y * z * z + N
    checks = [
        ("N = -(A^2 + y B^2)", N == -(A * A + y * Bp * Bp)),
        ("F = (x+A)(x-A) + y(z+B)(z-B)", F == (x + A) * (x - A) + y * (z + Bp) * (z - Bp)),
    ]
    # the involution (x, y, z) -> (-x, y, -z) swaps the two factor ideals
    swap = lambda g: g.compose([-x, y, -z])  # noqa: E731
    checks.append(("S2 swaps (x+A, z+B) and (x-A, z-B)",
                   swap(x + A) == -(x - A) and swap(z + Bp) == -(z - Bp)))
    return ok, checks


# case D_4, alternative form ---------------------------------------------------------

def _d4_default():
    # p != 2 shape: H = 1, a1 = b1 = 1, a0 = -b0, r1 = 0, gamma = -delta
    return {"a": [-3, 1], "b": [3, 1], "h": [1, 0], "r": [1, 0], "gamma": -2, "delta": 2}


def d4_params(a, b, h, gamma, delta):
    """Complete (a, b, h, gamma, delta) by solving the constraint for r."""
    gd = Fraction(gamma) * delta
    r = [-(Fraction(gamma) * b[j] + Fraction(delta) * a[j] + gd * gd * h[j]) / gd for j in (0, 1)]
    return {"a": list(a), "b": list(b), "h": list(h), "r": r, "gamma": gamma, "delta": delta}


def _d4(params, mutate=None):
    a = [Fraction(c) for c in params["a"]]
    b = [Fraction(c) for c in params["b"]]
    h = [Fraction(c) for c in params["h"]]
    r = [Fraction(c) for c in params["r"]]
    g, d = Fraction(params["gamma"]), Fraction(params["delta"])
    if mutate is not None:
        kind, j = mutate
        if kind in ("a", "b", "h", "r"):
            {"a": a, "b": b, "h": h, "r": r}[kind][j] += 1
        if kind == "gamma":
            g += 1
        if kind == "delta":
            d += 1
    cons = [g * b[j] + d * a[j] + g * d * r[j] + (g * d) ** 2 * h[j] for j in (0, 1)]
    ok = all(c == 0 for c in cons) and g != 0 and d != 0
    x, y1, y2, y3 = MPoly.gens(4)
    ys = [y1, y2, y3]
    H = x * h[1] + h[0]
    R = x * r[1] + r[0]
    Aform = x * a[1] + a[0]
    Bform = x * b[1] + b[0]
    Q = H * Aform * Bform
    F1 = y1 * y2 * y3 + Q
    F2 = y1 + y2 + y3 - R
    checks = []
    for k in range(3):
        yi, yj, yk = ys[k], ys[(k + 1) % 3], ys[(k + 2) % 3]
        main = H * (Aform + yi * g) * (Bform + yi * d) + yi * (yj + H * (g * d)) * (yk + H * (g * d))
        eps = F1 - main
        checks.append((f"epsilon_{k + 1} = -gamma delta H y_{k + 1} F2", eps == -(H * yi * F2) * (g * d)))
        # reduce modulo F2 by eliminating y3 = R - y1 - y2
        red = eps.substitute(3, R - y1 - y2)
        checks.append((f"epsilon_{k + 1} in (F2)", not red))
    # ideals I_i = (a1 x + a0 + gamma y_{i-1}, y_i + gamma delta H)
    gens = [[Aform + ys[(k - 1) % 3] * g, ys[k] + H * (g * d)] for k in range(3)]
    rot = lambda f: f.compose([x, y2, y3, y1])  # noqa: E731  (123): y_i -> y_{i+1}
    stable = all(_in_linear_span(rot(gg), gens[(k + 1) % 3] + [F2]) for k in range(3) for gg in gens[k])
    checks.append(("(123) I_i = I_{i+1}", stable))
    if h[1] == 0 and r[1] == 0:
        # transpositions exist only in the p != 2 shape
        tr = lambda f: f.compose([-x, y2, y1, y3])  # noqa: E731  (12)
        t_ok = all(_in_linear_span(tr(gg), gens[1] + [F2]) for gg in gens[0])
        checks.append(("(12) I_1 = I_2 modulo F2", t_ok))
    return ok, checks


# case E_6 --------------------------------------------------------------------------

E6_VARS = ["x", "y", "z", "a0", "a1", "a2", "b", "r0", "r1", "r2", "c0", "c1"]


def _e6_default():
    return {"symbolic": True}


def _e6(params, mutate=None):
    if params.get("symbolic", True):
        V = MPoly.gens(len(E6_VARS))
        x, y, z, a0, a1, a2, b, r0, r1, r2, c0, c1 = V
    else:
        V = MPoly.gens(3)
        x, y, z = V
        n = 3
        cst = lambda v: MPoly.const(n, Fraction(v))  # noqa: E731
        a0, a1, a2 = (cst(v) for v in params["A"])
        b = cst(params["b"])
        r0, r1, r2 = (cst(v) for v in params["R"])
        c0, c1 = (cst(v) for v in params["C"])
    A = a0 + a1 * y + a2 * y * y
    R = r0 + r1 * y + r2 * y * y
    C = c0 + c1 * y
    # constraint 1 solved for H, constraint 2 solved for T
    H = -A + b * b * R * 2
    if mutate == "H0":
        H = H + 1
    if mutate == "H1":
        H = H + y
    if mutate == "H2":
        H = H + y * y
    T = (H * H - A * A - R * C * C * 4) * Fraction(1, 4)
    if mutate == "T0":
        T = T + 1
    if mutate == "T1":
        T = T + y
    S = b * b * (H - A) * Fraction(1, 2) - C * C
    if mutate == "S":
        S = S + 1
    F = x * x - (z * z - H) * (z * z - H) + T * 4
    dec = (x + z * z + A) * (x - z * z - A) + R * (b * z + C) * (b * z - C) * 4
    checks = [
        ("H = -A + 2 b^2 R", H == -A + b * b * R * 2),
        ("-H^2 + 4T = -A^2 - 4 R C^2", -(H * H) + T * 4 == -(A * A) - R * C * C * 4),
        ("F = (x + z^2 + A)(x - z^2 - A) + 4R(bz + C)(bz - C)", F == dec),
        ("T = R S", T == R * S),
        ("b^4 R - b^2 H + S = -C^2", b ** 4 * R - b * b * H + S == -(C * C)),
    ]
    swap = lambda g: g.compose([-x, y, -z] + list(V[3:]))  # noqa: E731
    checks.append(("S2 swaps (x+z^2+A, bz+C) and (x-z^2-A, bz-C)",
                   swap(x + z * z + A) == -(x - z * z - A) and swap(b * z + C) == -(b * z - C)))
    return True, checks


# cases A_m and A_1 -------------------------------------------------------------------

def _am_default():
    return {"m": 3, "alpha": [1, 2, -2, -1], "n": 4}


def _am(params, mutate=None):
    m = params["m"]
    alpha = [Fraction(c) for c in params["alpha"]]
    if mutate is not None:
        alpha[mutate] += 1
    ok = len(alpha) == m + 1 and len(set(alpha)) == m + 1
    sym = all(alpha[m + 1 - k] == -alpha[k - 1] for k in range(1, m + 2))
    if params.get("dihedral", True):
        ok = ok and sym
    n = params.get("n", 4)
    zeta = CycloElem.zeta(n)
    one = CycloElem.const(n, 1)
    x, y, z = MPoly.gens(3, one)
    lin = [z - one * a for a in alpha]

    def g(j):
        acc = MPoly.const(3, one)
        for f in lin[:j]:
            acc = acc * f
        return acc

    def hh(j):
        acc = MPoly.const(3, one)
        for f in lin[j:]:
            acc = acc * f
        return acc

    F = x * y + g(m + 1)
    checks = []
    for j in range(1, m + 1):
        checks.append((f"x y + g_{j} h_{j} = F", x * y + g(j) * hh(j) == F))
        sig = lambda f: f.compose([x * zeta, y * zeta.inverse(), z])  # noqa: E731
        checks.append((f"sigma I_{j} = I_{j}", sig(x) == x * zeta and sig(g(j)) == g(j)))
        if params.get("dihedral", True):
            tau = lambda f: f.compose([y, x, -z])  # noqa: E731
            tg = tau(g(j))
            target = hh(m + 1 - j)
            checks.append((f"tau I_{j} = (y, h_{m + 1 - j})", tg == target or tg == -target))
    return ok, checks


def _a1_default():
    return {"alpha": [1, -1]}


def _a1(params, mutate=None):
    a1, a2 = (Fraction(c) for c in params["alpha"])
    ok = a1 != a2
    x, y, z = MPoly.gens(3)
    F = x * y + (z - a1) * (z - a2)
    b1 = a1 + 1 if mutate is not None else a1
    # y (x, z - a1) = (z - a1)(y, z - a2) as ideals once x y = -(z - a1)(z - a2)
    checks = [("x y + (z - a1)(z - a2) = F", x * y + (z - b1) * (z - a2) == F)]
    tau = lambda f: f.compose([y, x, -z])  # noqa: E731
    if a2 == -a1:
        checks.append(("tau (x, z - a1) = (y, z - a2)", tau(z - b1) == -(z - a2)))
    return ok, checks


CASES = {
    "Dm": (_dm, _dm_default),
    "D4-alt": (_d4, _d4_default),
    "E6": (_e6, _e6_default),
    "Am-ideal": (_am, _am_default),
    "A1-ideal": (_a1, _a1_default),
}


def verify_section3_identities(case_id: str, params: dict | None = None) -> IdentityReport:
    if case_id not in CASES:
        raise ValueError(f"unknown case {case_id!r}; choose from {sorted(CASES)}")
    fn, default = CASES[case_id]
    params = params if params is not None else default()
    ok, checks = fn(params)
    if not ok:
        return IdentityReport(case_id, params, False, [])
    return IdentityReport(case_id, params, True, checks)


def mutation_cases():
    """(label, case, params, mutation) tuples; each must break some identity."""
    out = []
    for mut in ("A", "B", "N"):
        out.append((f"Dm:{mut}+1", "Dm", _dm_default(), mut))
        out.append((f"Dm5:{mut}+1", "Dm", {"m": 5, "beta": [1, 2, 3, 5]}, mut))
    for kind in ("a", "b", "h", "r"):
        for j in (0, 1):
            out.append((f"D4:{kind}{j}+1", "D4-alt", _d4_default(), (kind, j)))
    for kind in ("gamma", "delta"):
        out.append((f"D4:{kind}+1", "D4-alt", _d4_default(), (kind, 0)))
    for mut in ("H0", "H1", "H2", "T0", "T1", "S"):
        out.append((f"E6:{mut}+1", "E6", _e6_default(), mut))
    for k in range(4):
        out.append((f"Am:alpha{k + 1}+1", "Am-ideal", _am_default(), k))
    out.append(("A1:alpha1+1", "A1-ideal", _a1_default(), 0))
    return out


def run_mutation(case_id, params, mutation) -> bool:
    """True when the mutated data break at least one identity."""
    fn, _ = CASES[case_id]
    _, checks = fn(params, mutation)
    return not all(ok for _, ok in checks)


# -- symplectic weights ------------------------------------------------------------

def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    acc = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        acc = acc + (-1) ** j * m[0][j] * _det(minor)
    return acc


def _action_matrix(images, nvars):
    """Matrix of a linear substitution given as coefficient rows."""
    return [[img.coefficient(tuple(int(i == j) for i in range(nvars))) or 0 for j in range(nvars)]
            for img in images]


def weight_table(n: int = 5, m_odd: int = 3, m_even: int = 2):
    """(case, generator, F, [substitution], [equations]) for the Prop. 3.4 normal forms."""
    z = CycloElem.zeta(n)
    z3 = CycloElem.zeta(3)
    one_n = CycloElem.const(n, 1)
    one3 = CycloElem.const(3, 1)
    one4 = CycloElem.const(4, 1)
    x, y, w = MPoly.gens(3)
    rows = []
    rows.append(("E6", "S2", [x * x + y ** 3 + w ** 4], [-x, y, -w]))
    rows.append(("Dm", "S2", [x * x + y * w * w + y ** 3], [-x, y, -w]))
    xc, yc, wc = MPoly.gens(3, one3)
    d4 = xc * xc + yc ** 3 + wc ** 3
    rows.append(("D4", "(123)", [d4], [xc, yc * z3, wc * z3.inverse()]))
    rows.append(("D4", "(12)", [d4], [-xc, wc, yc]))
    X, Y1, Y2, Y3 = MPoly.gens(4)
    alt = [Y1 * Y2 * Y3 + X * X, Y1 + Y2 + Y3]
    rows.append(("D4-alt", "(123)", alt, [X, Y2, Y3, Y1]))
    rows.append(("D4-alt", "(12)", alt, [-X, Y2, Y1, Y3]))
    xn, yn, wn = MPoly.gens(3, one_n)
    rows.append(("A_m,C_n", "sigma", [xn * yn + wn ** (m_even + 1)], [xn * z, yn * z.inverse(), wn]))
    rows.append(("A_m,Dih_n", "sigma", [xn * yn + wn ** (m_odd + 1)], [xn * z, yn * z.inverse(), wn]))
    rows.append(("A_m,Dih_n", "tau", [x * y + w ** (m_odd + 1)], [y, x, -w]))
    x4, y4, w4 = MPoly.gens(3, one4)
    rows.append(("A_m,Dic_n", "sigma", [x4 * y4 + w4 ** (m_even + 1)], [x4 * CycloElem.zeta(4), y4 * CycloElem.zeta(4).inverse(), w4]))
    rows.append(("A_m,Dic_n", "tau", [x * y + w ** (m_even + 1)], [y, -x, -w]))
    return rows


def _scale_factor(G: MPoly, F: MPoly):
    e0, c0 = next(iter(F.terms.items()))
    c = G.terms.get(e0)
    if c is None:
        return None
    e = c * _inv(c0) if not isinstance(c0, int) else c * Fraction(1, c0)
    return e if G == F * e else None


def _fmt(c):
    if isinstance(c, CycloElem) and c.is_rational():
        return str(c.c[0])
    return str(c)


def symplectic_weight_audit(**kw):
    """For each normal form and generator: det(action) / prod(e_j) with g(F_j) = e_j F_j."""
    out = []
    for case, gen, eqs, subs in weight_table(**kw):
        nv = subs[0].n
        es = []
        for F in eqs:
            e = _scale_factor(F.compose(subs), F)
            if e is None:
                raise ValueError(f"{case} {gen}: action does not preserve the equations")
            es.append(e)
        det = _det(_action_matrix(subs, nv))
        prod = 1
        for e in es:
            prod = prod * e
        weight = det * _inv(prod) if not isinstance(prod, int) else det * Fraction(1, prod)
        out.append({"case": case, "generator": gen, "det": _fmt(det), "e": [_fmt(e) for e in es],
                    "weight": _fmt(weight), "symplectic": weight == 1})
    return out


__all__ = [
    "ADEType", "an_classify", "load_germ", "DoubleCover", "SingularPoint", "surface_singular_scan",
    "census", "dynkin_total", "verify_section3_identities", "IdentityReport", "mutation_cases",
    "run_mutation", "symplectic_weight_audit", "d4_params", "DEGREE_BOUND",
]
