"""Projective geometry over small finite fields.

Lines on quartic surfaces in P^3, the incidence pairing on lines,
images of lines under rational maps to P^2, singular points of plane
curves, and polynomial identities modulo a surface equation.
"""

from __future__ import annotations

from itertools import product

from .exact.ff import GF, FqElem
from .exact.matrix import nullspace, rank
from .exact.mpoly import HomForm, MPoly, binary_restriction, monomials


class ResourceError(RuntimeError):
    pass


class IndeterminacyError(ValueError):
    pass


# -- points and lines ------------------------------------------------------

class ProjPoint:
    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = tuple(coords)
        for k, c in enumerate(coords):
            if c:
                if c != 1:
                    inv = c.inverse()
                    coords = tuple(x * inv for x in coords)
                break
        else:
            raise ValueError("the zero vector is not a projective point")
        self.coords = coords

    @property
    def field(self) -> GF:
        return self.coords[0].field

    def key(self):
        return tuple(c.v for c in self.coords)

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        return self.key() < other.key()

    def __repr__(self):
        return "(" + " : ".join(str(c) for c in self.coords) + ")"

    def literal(self) -> str:
        return ":".join(str(c).replace(" ", "") for c in self.coords)

    @classmethod
    def parse(cls, text: str, field: GF) -> "ProjPoint":
        parts = text.strip().split(":")
        return cls([field.parse(s) for s in parts])


def projective_points(field: GF, n: int):
    """All points of P^(n-1)(F_q) as canonical ProjPoints (n coordinates)."""
    out = []
    els = field.elements()
    zero, one = field.zero(), field.one()
    for lead in range(n):
        for tail in product(els, repeat=n - lead - 1):
            out.append(ProjPoint([zero] * lead + [one] + list(tail)))
    return out


def _rref2(p, q):
    """Canonical reduced row echelon basis of the span of two vectors."""
    rows, piv = _rref_rows([list(p), list(q)])
    if len(piv) != 2:
        raise ValueError("points do not span a line")
    return tuple(tuple(r) for r in rows[:2])


def _rref_rows(rows):
    from .exact.matrix import rref
    return rref(rows)


class ProjLine:
    __slots__ = ("basis", "pluecker")

    def __init__(self, p0, p1):
        a = p0.coords if isinstance(p0, ProjPoint) else tuple(p0)
        b = p1.coords if isinstance(p1, ProjPoint) else tuple(p1)
        self.basis = _rref2(a, b)
        r1, r2 = self.basis
        n = len(r1)
        pl = [r1[i] * r2[j] - r1[j] * r2[i] for i in range(n) for j in range(i + 1, n)]
        self.pluecker = ProjPoint(pl).coords

    @property
    def field(self):
        return self.basis[0][0].field

    def key(self):
        return tuple(c.v for c in self.pluecker)

    def __eq__(self, other):
        return isinstance(other, ProjLine) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        return self.key() < other.key()

    def span(self):
        return ProjPoint(self.basis[0]), ProjPoint(self.basis[1])

    def points(self):
        """All F_q-points of the line."""
        r1, r2 = self.basis
        out = [ProjPoint(r2)]
        for a in self.field.elements():
            out.append(ProjPoint([x + a * y for x, y in zip(r1, r2)]))
        return out

    def parametrization(self):
        return self.basis

    def contains_point(self, pt: ProjPoint) -> bool:
        return rank([list(self.basis[0]), list(self.basis[1]), list(pt.coords)]) == 2

    def __repr__(self):
        a, b = self.span()
        return f"Line[{a!r}, {b!r}]"

    def literal(self):
        a, b = self.span()
        return a.literal(), b.literal()

    def transform(self, mat) -> "ProjLine":
        """Image under v -> v * mat (row-vector convention, mat a list of rows)."""
        imgs = []
        for r in self.basis:
            imgs.append([sum((r[i] * mat[i][j] for i in range(len(r))), r[0] * 0) for j in range(len(mat[0]))])
        return ProjLine(imgs[0], imgs[1])


def lines_meet(a: ProjLine, b: ProjLine) -> bool:
    return rank([list(a.basis[0]), list(a.basis[1]), list(b.basis[0]), list(b.basis[1])]) <= 3


def intersection_number(a: ProjLine, b: ProjLine) -> int:
    """Pairing of two lines on a smooth quartic: -2, 1 or 0."""
    if a == b:
        return -2
    return 1 if lines_meet(a, b) else 0


# -- fast evaluation on int-encoded points ---------------------------------

class _Compiled:
    def __init__(self, form: MPoly, field: GF):
        self.field = field
        self.terms = [(field(c).v if not isinstance(c, int) else c % field.p, e) for e, c in form.terms.items()]

    def __call__(self, pt):
        f = self.field
        q = f.q
        mul, add = f.mul_t, f.add_t
        acc = 0
        for c, e in self.terms:
            v = c
            for x, k in zip(pt, e):
                if k:
                    if x == 0:
                        v = 0
                        break
                    v = mul[v * q + f.pow(x, k)]
            if v:
                acc = add[acc * q + v]
        return acc


def enumerate_lines(S: MPoly, field: GF, max_q: int = 128, stats: dict | None = None):
    """All lines of P^3(F_q) on the surface S = 0, sorted canonically.

    Lines are enumerated by Schubert cell (row echelon pivots of a 2x4
    basis).  The first row and the second row must each lie on S; for such
    pairs the restricted binary form of degree d is tested at d + 1 points
    when q >= d (equivalent to vanishing of its d + 1 coefficients), and
    by expanding the coefficients otherwise.
    """
    if S.n != 4:
        raise ValueError("surface must be a form in 4 variables")
    if not S:
        raise ValueError("surface equation is zero")
    q = field.q
    if q > max_q:
        raise ResourceError(f"line enumeration over F_{q} exceeds the limit F_{max_q}")
    d = S.total_degree()
    ev = _Compiled(S, field)
    add, mul = field.add_t, field.mul_t
    scanned = 0
    found = []
    nonzero = list(range(1, q))
    use_points = q >= d
    for i in range(4):
        for j in range(i + 1, 4):
            free1 = [k for k in range(i + 1, 4) if k != j]
            free2 = [k for k in range(j + 1, 4)]
            scanned += q ** (len(free1) + len(free2))
            P_cands = []
            for vals in product(range(q), repeat=len(free1)):
                P = [0, 0, 0, 0]
                P[i] = 1
                for k, v in zip(free1, vals):
                    P[k] = v
                if ev(P) == 0:
                    P_cands.append(P)
            Q_cands = []
            for vals in product(range(q), repeat=len(free2)):
                Q = [0, 0, 0, 0]
                Q[j] = 1
                for k, v in zip(free2, vals):
                    Q[k] = v
                if ev(Q) == 0:
                    Q_cands.append(Q)
            for P in P_cands:
                for Q in Q_cands:
                    if use_points:
                        ok = True
                        for a in nonzero[: d - 1]:
                            pt = [add[x * q + mul[a * q + y]] for x, y in zip(P, Q)]
                            if ev(pt):
                                ok = False
                                break
                    else:
                        Pe = [FqElem(field, x) for x in P]
                        Qe = [FqElem(field, x) for x in Q]
                        ok = all(not c for c in binary_restriction(_as_field_form(S, field), Pe, Qe))
                    if ok:
                        found.append(ProjLine([FqElem(field, x) for x in P], [FqElem(field, x) for x in Q]))
    if stats is not None:
        stats["scanned"] = scanned
    found = sorted(set(found))
    return found


def _as_field_form(S: MPoly, field: GF) -> MPoly:
    return S.map_coeffs(lambda c: field(c) if not isinstance(c, FqElem) else c)


def line_count_P3(q: int) -> int:
    return (q ** 4 - 1) * (q ** 4 - q) // ((q ** 2 - 1) * (q ** 2 - q))


def line_on_surface(line: ProjLine, S: MPoly) -> bool:
    """Pointwise re-test over all q + 1 points (plus exact coefficients)."""
    Sf = _as_field_form(S, line.field)
    if not all(not Sf(list(pt.coords)) for pt in line.points()):
        return False
    return all(not c for c in binary_restriction(Sf, line.basis[0], line.basis[1]))


def incidence_gram(lines):
    n = len(lines)
    g = [[0] * n for _ in range(n)]
    for a in range(n):
        g[a][a] = -2
        for b in range(a + 1, n):
            v = 1 if lines_meet(lines[a], lines[b]) else 0
            g[a][b] = g[b][a] = v
    return g


# -- divisor classes -------------------------------------------------------

class DivisorClass:
    """Integer vector over the basis {h} + lines (labelled 1..N)."""

    __slots__ = ("h", "lines")

    def __init__(self, h: int = 0, lines=None):
        self.h = h
        self.lines = {k: v for k, v in (lines or {}).items() if v}

    @classmethod
    def line(cls, k: int):
        return cls(0, {k: 1})

    @classmethod
    def hyperplane(cls):
        return cls(1)

    def __add__(self, other):
        out = dict(self.lines)
        for k, v in other.lines.items():
            out[k] = out.get(k, 0) + v
        return DivisorClass(self.h + other.h, out)

    def __neg__(self):
        return DivisorClass(-self.h, {k: -v for k, v in self.lines.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c: int):
        return DivisorClass(c * self.h, {k: c * v for k, v in self.lines.items()})

    __mul__ = __rmul__

    def __eq__(self, other):
        return isinstance(other, DivisorClass) and self.h == other.h and self.lines == other.lines

    def __hash__(self):
        return hash((self.h, frozenset(self.lines.items())))

    def __repr__(self):
        parts = []
        if self.h:
            parts.append(f"{self.h}h")
        for k in sorted(self.lines):
            parts.append(f"{self.lines[k]:+d}l{k}")
        return " ".join(parts) or "0"

    def indices(self):
        return set(self.lines)


def class_pairing(u: DivisorClass, v: DivisorClass, incidence) -> int:
    """Bilinear pairing with h^2 = 4, h.l = 1 and l.l' from `incidence`.

    `incidence` maps a pair (i, j) of line labels to l_i . l_j; a dict of
    dicts or a callable is accepted.
    """
    def il(i, j):
        if callable(incidence):
            return incidence(i, j)
        try:
            return incidence[i][j]
        except (KeyError, IndexError):
            raise ValueError(f"line index {i} or {j} is outside the basis") from None

    total = 4 * u.h * v.h
    total += u.h * sum(v.lines.values()) + v.h * sum(u.lines.values())
    for i, a in u.lines.items():
        for j, b in v.lines.items():
            total += a * b * il(i, j)
    return total


# -- maps to P^2 -----------------------------------------------------------

def image_under_map(line: ProjLine, comps):
    """Image of a line under the rational map given by forms `comps`.

    Returns ("point", ProjPoint) when the map is constant on the line, or
    ("nonconstant", [witness images]).  The constancy test is exact: the
    restricted binary forms must be pairwise proportional.
    """
    degs = {c.total_degree() for c in comps if c}
    if len(degs) > 1:
        raise ValueError("map components must have equal degree")
    field = line.field
    forms = [_as_field_form(c, field) for c in comps]
    r0, r1 = line.basis
    restr = [binary_restriction(f, r0, r1) if f else [] for f in forms]
    width = max(len(r) for r in restr)
    restr = [r + [field.zero()] * (width - len(r)) for r in restr]
    if all(not c for r in restr for c in r):
        raise IndeterminacyError("all map components vanish identically on the line")
    if rank([list(r) for r in restr]) == 1:
        k = next(k for k in range(width) if any(r[k] for r in restr))
        return "point", ProjPoint([r[k] for r in restr])
    seen = []
    for pt in line.points():
        vals = [f(list(pt.coords)) for f in forms]
        if any(vals):
            img = ProjPoint(vals)
            if img not in seen:
                seen.append(img)
            if len(seen) == 2:
                break
    return "nonconstant", seen


# -- plane curves ----------------------------------------------------------

def _affine_chart(G: MPoly, pt: ProjPoint):
    """Dehomogenize at the first nonzero coordinate and translate pt to 0."""
    k = next(i for i, c in enumerate(pt.coords) if c)
    g = G.drop_var(k)
    rest = [c for i, c in enumerate(pt.coords) if i != k]
    return g.translate(rest)


def plane_curve_singularities(G: MPoly, field: GF):
    """Singular F_q-points of the plane curve G = 0, with node/cusp/worse."""
    if G.n != 3:
        raise ValueError("plane curve needs a form in 3 variables")
    Gf = _as_field_form(G, field)
    grads = [_Compiled(g, field) for g in Gf.gradient()]
    ev = _Compiled(Gf, field)
    out = []
    for pt in projective_points(field, 3):
        key = pt.key()
        if ev(key) or any(g(key) for g in grads):
            continue
        loc = _affine_chart(Gf, pt)
        q2 = loc.homogeneous_part(2)
        a = q2.coefficient((2, 0))
        b = q2.coefficient((1, 1))
        c = q2.coefficient((0, 2))
        if not q2:
            kind = "worse"
        elif b * b - 4 * a * c:
            kind = "node"
        else:
            kind = "cusp"
        out.append((pt, kind))
    return out


def interpolate_singular_sextics(points, field: GF, degree: int = 6):
    """Basis of degree-`degree` forms singular at every given point.

    Conditions per point: G(P) = 0 and the three partials vanish.  In
    characteristic dividing the degree the Euler relation no longer
    implies G(P) = 0 from the partials, so the value condition is kept
    explicitly; redundancy is absorbed by the rank computation.
    """
    mons = monomials(3, degree)
    rows = []
    for pt in points:
        x = pt.coords
        vals = [_mono_value(e, x) for e in mons]
        rows.append(vals)
        for i in range(3):
            row = []
            for e in mons:
                if e[i] == 0:
                    row.append(field.zero())
                else:
                    e2 = list(e)
                    e2[i] -= 1
                    row.append(_mono_value(e2, x) * e[i])
            rows.append(row)
    basis = nullspace(rows, len(mons), one=field.one()) if rows else [
        [field.one() if i == j else field.zero() for i in range(len(mons))] for j in range(len(mons))]
    return [HomForm(3, {e: c for e, c in zip(mons, v) if c}) for v in basis]


def _mono_value(e, x):
    v = x[0].field.one()
    for xi, k in zip(x, e):
        if k:
            v = v * xi ** k
    return v


def proportional(f: MPoly, g: MPoly) -> bool:
    """True iff f and g are nonzero scalar multiples of each other."""
    if not f or not g or f.terms.keys() != g.terms.keys():
        return False
    e0 = next(iter(f.terms))
    ratio = g.terms[e0] / f.terms[e0]
    return all(g.terms[e] == f.terms[e] * ratio for e in f.terms)


def identity_mod_form(lhs: MPoly, rhs: MPoly, modulus: MPoly, var: int) -> bool:
    """lhs == rhs after reduction modulo `modulus` (monic in variable `var`)."""
    diff = lhs - rhs
    if not diff:
        return True
    return not diff.reduce_monic(modulus, var)


# -- singular points of surfaces -------------------------------------------

def surface_singular_points(S: MPoly, field: GF, max_points: int = 200000):
    """F_q-points of P^(n-1) where S and all partials vanish."""
    n = S.n
    count = (field.q ** n - 1) // (field.q - 1)
    if count > max_points:
        raise ResourceError(f"P^{n - 1}(F_{field.q}) has {count} points, above the limit {max_points}")
    Sf = _as_field_form(S, field)
    ev = _Compiled(Sf, field)
    grads = [_Compiled(g, field) for g in Sf.gradient()]
    out = []
    for pt in projective_points(field, n):
        key = pt.key()
        if ev(key) == 0 and not any(g(key) for g in grads):
            out.append(pt)
    return out
