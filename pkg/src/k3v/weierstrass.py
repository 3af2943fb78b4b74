"""Weierstrass elliptic surfaces over F[t]: Tate's algorithm and friends.

Models are stored in the standard form

    y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6,    deg a_i <= 2i,

over F_p or Q.  A model may also be given in the other common sign
convention y^2 + a1 xy + a3 y + x^3 + a2 x^2 + a4 x + a6 = 0 ("cubic-left"
convention); it is converted by x -> -x and points are reported back in
the convention the model was given in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exact.ff import FqElem, prime_field
from .exact.fpoly import factor as fp_factor
from .exact.mpoly import MPoly, parse
from .exact.poly import Poly, gcd, padic_valuation, squarefree_decomposition, xgcd

INF = math.inf
KODAIRA_COMPONENTS = {"II": 1, "III": 2, "IV": 3, "IV*": 7, "III*": 8, "II*": 9}
# standard v(Delta) of additive fibers in residue characteristic >= 5
STANDARD_VDELTA = {"II": 2, "III": 3, "IV": 4, "IV*": 8, "III*": 9, "II*": 10}


class NonEllipticError(ValueError):
    pass


def dynkin_of(kodaira: str):
    if kodaira.startswith("I") and kodaira[1:].isdigit():
        n = int(kodaira[1:])
        return f"A{n - 1}" if n >= 2 else None
    if kodaira.endswith("*") and kodaira[1:-1].isdigit():
        return f"D{int(kodaira[1:-1]) + 4}"
    if kodaira == "?":
        return "non-RDP"
    return {"II": None, "III": "A1", "IV": "A2", "IV*": "E6", "III*": "E7", "II*": "E8"}[kodaira]


def components_of(kodaira: str) -> int | None:
    if kodaira == "?":
        return None
    if kodaira.startswith("I") and kodaira[1:].isdigit():
        return max(int(kodaira[1:]), 1)
    if kodaira.endswith("*") and kodaira[1:-1].isdigit():
        return int(kodaira[1:-1]) + 5
    return KODAIRA_COMPONENTS[kodaira]


# -- small helpers ----------------------------------------------------------

def _val(f: Poly, pi: Poly):
    if not f:
        return INF
    k = 0
    while True:
        q, r = f.divmod(pi)
        if r:
            return k
        f, k = q, k + 1


def _fmt_coeff(c) -> str:
    if isinstance(c, FqElem):
        return str(c.v)
    return str(c)


def format_poly(f: Poly, var: str = "t") -> str:
    if not f:
        return "0"
    out = []
    for i in range(len(f.c) - 1, -1, -1):
        c = f.c[i]
        if c == 0:
            continue
        s = _fmt_coeff(c)
        neg = s.startswith("-")
        if neg:
            s = s[1:]
        if "/" in s and i:
            s = f"({s})"
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono:
            s = mono if s == "1" else f"{s}*{mono}"
        if not out:
            out.append(("-" if neg else "") + s)
        else:
            out.append((" - " if neg else " + ") + s)
    return "".join(out)


def invariants(a):
    a1, a2, a3, a4, a6 = a
    b2 = a1 * a1 + a2 * 4
    b4 = a4 * 2 + a1 * a3
    b6 = a3 * a3 + a6 * 4
    b8 = a1 * a1 * a6 + a2 * a6 * 4 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - b4 * 24
    c6 = -(b2 * b2 * b2) + b2 * b4 * 36 - b6 * 216
    disc = -(b2 * b2 * b8) - b4 * b4 * b4 * 8 - b6 * b6 * 27 + b2 * b4 * b6 * 9
    return {"b2": b2, "b4": b4, "b6": b6, "b8": b8, "c4": c4, "c6": c6, "disc": disc}


def rst(a, r, s, t):
    """Coefficients after x = x' + r, y = y' + s x' + t."""
    a1, a2, a3, a4, a6 = a
    return [
        a1 + s * 2,
        a2 - s * a1 + r * 3 - s * s,
        a3 + r * a1 + t * 2,
        a4 - s * a3 + r * a2 * 2 - (t + r * s) * a1 + r * r * 3 - s * t * 2,
        a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1,
    ]


class _Residue:
    """The residue field F[t]/(pi) with elements kept as reduced polynomials."""

    def __init__(self, pi: Poly, p: int, one):
        self.pi = pi
        self.p = p
        self.one = one
        self.q = p ** pi.degree if p else None

    def c(self, n) -> Poly:
        return Poly([self.one * n])

    def red(self, f: Poly) -> Poly:
        return f % self.pi

    def is0(self, f: Poly) -> bool:
        return not (f % self.pi)

    def inv(self, f: Poly) -> Poly:
        d, s, _ = xgcd(f % self.pi, self.pi)
        if d.degree != 0:
            raise ZeroDivisionError("not invertible in the residue field")
        return s % self.pi

    def root(self, f: Poly) -> Poly:
        """The p-th root (Frobenius is bijective on the finite residue field)."""
        e = self.q // self.p
        acc, base = self.c(1), f % self.pi
        while e:
            if e & 1:
                acc = acc * base % self.pi
            base = base * base % self.pi
            e >>= 1
        return acc


def _div(f: Poly, pi: Poly, k: int) -> Poly:
    for _ in range(k):
        f = f.exact_div(pi)
    return f


@dataclass
class TateResult:
    kodaira: str
    vdelta: int
    point: tuple | None
    log: list = field(default_factory=list)
    deviation: bool = False


def tate_local(a, pi: Poly, p: int, one=1) -> TateResult:
    """Tate's algorithm at the place pi of F[t] (F = F_p, or Q when p = 0)."""
    K = _Residue(pi, p, one)
    a = [Poly(x.c) for x in a]
    log = []
    point = None
    while True:
        inv = invariants(a)
        vd = _val(inv["disc"], pi)
        if vd == INF:
            raise NonEllipticError("discriminant vanishes identically")
        if vd == 0:
            return TateResult("I0", 0, None, log)
        a1, a2, a3, a4, a6 = a
        b2, b4, b6 = inv["b2"], inv["b4"], inv["b6"]
        # step 2: move the singular point of the reduction to (0, 0)
        if p == 2:
            if K.is0(b2):
                r = K.root(a4)
                t = K.root(((r + a2) * r + a4) * r + a6)
            else:
                ia1 = K.inv(a1)
                r = ia1 * a3
                t = ia1 * (a4 + r * r)
        elif p == 3:
            r = K.root(-b6) if K.is0(b2) else -K.inv(b2) * b4
            t = a1 * r + a3
        else:
            c4, c6 = inv["c4"], inv["c6"]
            if K.is0(c4):
                r = -K.inv(K.c(12)) * b2
            else:
                r = -K.inv(c4 * 12) * (c6 + b2 * c4)
            t = -K.inv(K.c(2)) * (a1 * r + a3)
        r, t = K.red(r), K.red(t)
        if point is None:
            point = (r, t)
        a = rst(a, r, K.c(0), t)
        a1, a2, a3, a4, a6 = a
        if not (K.is0(a3) and K.is0(a4) and K.is0(a6)):
            raise ArithmeticError("singular point not moved to the origin")
        inv = invariants(a)
        # step 3: multiplicative reduction
        if not K.is0(inv["b2"]):
            return TateResult(f"I{vd}", vd, point, log)
        # steps 4, 5
        if _val(a6, pi) < 2:
            return _additive("II", vd, point, log, p)
        if _val(inv["b8"], pi) < 3:
            return _additive("III", vd, point, log, p)
        if _val(inv["b6"], pi) < 3:
            return _additive("IV", vd, point, log, p)
        # step 6
        if p == 2:
            s = K.root(a2)
            t = pi * K.root(_div(a6, pi, 2))
        elif p == 3:
            s, t = a1, a3
        else:
            h = K.inv(K.c(2))
            s, t = -a1 * h, -a3 * h
        a = rst(a, K.c(0), K.red(s), t)
        a1, a2, a3, a4, a6 = a
        if not (_val(a1, pi) >= 1 and _val(a2, pi) >= 1 and _val(a3, pi) >= 2
                and _val(a4, pi) >= 2 and _val(a6, pi) >= 3):
            raise ArithmeticError("step 6 divisibility failed")
        b = K.red(_div(a2, pi, 1))
        c = K.red(_div(a4, pi, 2))
        d = K.red(_div(a6, pi, 3))
        w = K.red(d * d * 27 - b * b * c * c + b * b * b * d * 4 - b * c * d * 18 + c * c * c * 4)
        x = K.red(c * 3 - b * b)
        if not K.is0(w):
            return _additive("I0*", vd, point, log, p)
        if not K.is0(x):
            # step 7: double root, then the I_n^* subprocedure
            if p == 2:
                r0 = K.root(c)
            elif p == 3:
                r0 = c * K.inv(b)
            else:
                r0 = (b * c - d * 9) * K.inv(x * 2)
            a = rst(a, pi * K.red(r0), K.c(0), K.c(0))
            n = 1
            while True:
                a1, a2, a3, a4, a6 = a
                if n % 2:
                    k = (n + 3) // 2
                    A = K.red(_div(a3, pi, k))
                    B = K.red(_div(a6, pi, 2 * k))
                    if not K.is0(A * A + B * 4):
                        break
                    y0 = K.root(B) if p == 2 else -A * K.inv(K.c(2))
                    a = rst(a, K.c(0), K.c(0), pi ** k * K.red(y0))
                else:
                    k = n // 2 + 2
                    qa = K.red(_div(a2, pi, 1))
                    qb = K.red(_div(a4, pi, k))
                    qc = K.red(_div(a6, pi, 2 * k - 1))
                    if not K.is0(qb * qb - qa * qc * 4):
                        break
                    x0 = K.root(qc * K.inv(qa)) if p == 2 else -qb * K.inv(qa * 2)
                    a = rst(a, pi ** (k - 1) * K.red(x0), K.c(0), K.c(0))
                n += 1
            return _additive(f"I{n}*", vd, point, log, p, expected=6 + n)
        # step 8: triple root
        r0 = K.root(-d) if p == 3 else -b * K.inv(K.c(3))
        a = rst(a, pi * K.red(r0), K.c(0), K.c(0))
        a1, a2, a3, a4, a6 = a
        if not (_val(a2, pi) >= 2 and _val(a4, pi) >= 3 and _val(a6, pi) >= 4):
            raise ArithmeticError("step 8 divisibility failed")
        A = K.red(_div(a3, pi, 2))
        B = K.red(_div(a6, pi, 4))
        if not K.is0(A * A + B * 4):
            return _additive("IV*", vd, point, log, p)
        y0 = K.root(B) if p == 2 else -A * K.inv(K.c(2))
        a = rst(a, K.c(0), K.c(0), pi * pi * K.red(y0))
        a1, a2, a3, a4, a6 = a
        # steps 9, 10
        if _val(a4, pi) < 4:
            return _additive("III*", vd, point, log, p)
        if _val(a6, pi) < 6:
            return _additive("II*", vd, point, log, p)
        # step 11: not minimal, rescale and start over
        a = [_div(ai, pi, e) for ai, e in zip(a, (1, 2, 3, 4, 6))]
        log.append(f"non-minimal at {format_poly(pi)}: scaled x, y by pi^2, pi^3")


def _additive(kod, vd, point, log, p, expected=None):
    exp = expected if expected is not None else (6 if kod == "I0*" else STANDARD_VDELTA[kod])
    dev = vd != exp
    if dev and p not in (2, 3):
        raise ArithmeticError(f"{kod} with v(Delta) = {vd} in residue characteristic {p}")
    return TateResult(kod, vd, point, log, dev)


# -- models -------------------------------------------------------------------

@dataclass
class KodairaFiber:
    place: str
    kodaira: str
    vdelta: int
    chart: str = "t"
    point: tuple | None = None
    deviation: bool = False
    log: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def dynkin(self):
        return dynkin_of(self.kodaira)

    @property
    def components(self) -> int:
        return components_of(self.kodaira)

    def as_json(self):
        d = {"place": self.place, "kodaira": self.kodaira, "dynkin": self.dynkin,
             "components": self.components, "vDelta": self.vdelta}
        if self.point is not None and self.dynkin is not None:
            d["point"] = list(self.point)
            d["coords"] = "x,y,t" if self.chart == "t" else "x',y',s"
        if self.deviation:
            d["deviation"] = True
        if self.log or self.notes:
            d["notes"] = self.log + self.notes
        return d


class WeierstrassModel:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F_p[t] or Q[t]."""

    def __init__(self, coeffs, base: str = "Q", p: int | None = None,
                 convention: str = "standard", check: bool = True):
        if base not in ("Q", "Fp"):
            raise ValueError("base must be 'Q' or 'Fp'")
        if base == "Fp" and not p:
            raise ValueError("base Fp needs a prime p")
        if convention not in ("standard", "cubic-left"):
            raise ValueError("convention must be 'standard' or 'cubic-left'")
        self.base = base
        self.p = p
        self.convention = convention
        self.field = prime_field(p) if base == "Fp" else None
        a = [self._coerce_poly(c) for c in coeffs]
        if len(a) != 5:
            raise ValueError("need a1, a2, a3, a4, a6")
        if convention == "cubic-left":
            a = [-a[0], -a[1], a[2], a[3], -a[4]]
        self.a = a
        if check:
            for ai, w in zip(a, (1, 2, 3, 4, 6)):
                if ai.degree > 2 * w:
                    raise ValueError(f"deg a{w} = {ai.degree} exceeds {2 * w}")
            if not self.discriminant():
                raise NonEllipticError("discriminant vanishes identically")

    # -- construction ----------------------------------------------------
    @property
    def one(self):
        return self.field.one() if self.field else 1

    @property
    def char(self) -> int:
        return self.p if self.base == "Fp" else 0

    def _coerce_poly(self, c) -> Poly:
        if isinstance(c, Poly):
            cs = c.c
        elif isinstance(c, str):
            return self._parse(c)
        elif isinstance(c, (int, Fraction)):
            cs = [c]
        else:
            cs = list(c)
        if self.field is not None:
            return Poly([self._to_field(x) for x in cs])
        return Poly([Fraction(x) if not isinstance(x, int) else x for x in cs])

    def _to_field(self, x):
        if isinstance(x, FqElem):
            return x
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise ZeroDivisionError(f"coefficient {x} is not {self.p}-integral")
        return self.field(x.numerator) / self.field(x.denominator)

    def _parse(self, s: str) -> Poly:
        consts = {"p": self.p} if self.p else {}
        m = parse(s, ["t"], constants=consts)
        coeffs = m.as_univariate(0) if m else []
        return self._coerce_poly(coeffs)

    @classmethod
    def from_json(cls, obj) -> "WeierstrassModel":
        if not isinstance(obj, dict):
            raise ValueError("model must be a JSON object")
        base = obj.get("base", "Q")
        p = obj.get("p")
        conv = obj.get("convention", "standard")
        coeffs = [str(obj.get(k, "0")) for k in ("a1", "a2", "a3", "a4", "a6")]
        unknown = set(obj) - {"base", "p", "convention", "a1", "a2", "a3", "a4", "a6", "name"}
        if unknown:
            raise ValueError(f"unknown model keys {sorted(unknown)}")
        return cls(coeffs, base=base, p=p, convention=conv)

    @classmethod
    def load(cls, path) -> "WeierstrassModel":
        import json
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def _replace(self, a, **kw) -> "WeierstrassModel":
        m = WeierstrassModel.__new__(WeierstrassModel)
        m.base, m.p, m.convention, m.field = self.base, self.p, self.convention, self.field
        m.__dict__.update(kw)
        m.a = a
        return m

    def reduce(self, p: int | None = None) -> "WeierstrassModel":
        """The special fiber over F_p (p defaults to the distinguished prime)."""
        p = p or self.p
        if self.base == "Fp":
            return self
        if not p:
            raise ValueError("no prime given")
        f = prime_field(p)

        def red(x):
            x = Fraction(x)
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"coefficient {x} is not {p}-integral")
            return f(x.numerator) / f(x.denominator)

        a = [Poly([red(x) for x in ai.c]) for ai in self.a]
        m = self._replace(a, base="Fp", p=p, field=f)
        return m

    def chart(self) -> "WeierstrassModel":
        """The s = 1/t chart: a'_i(s) = s^{2i} a_i(1/s)."""
        out = []
        for ai, w in zip(self.a, (1, 2, 3, 4, 6)):
            cs = list(ai.c) + [self.one * 0] * (2 * w + 1 - len(ai.c))
            out.append(Poly(cs[::-1]))
        return self._replace(out)

    # -- invariants --------------------------------------------------------
    def invariants(self):
        return invariants(self.a)

    def discriminant(self) -> Poly:
        return invariants(self.a)["disc"]

    def lift(self, f: Poly) -> MPoly:
        """A polynomial in t as an MPoly in (x, y, t)."""
        return MPoly(3, {(0, 0, i): c for i, c in enumerate(f.c) if c != 0})

    def equation(self) -> MPoly:
        """F(x, y, t) = y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6."""
        x, y, t = MPoly.gens(3, self.one)
        a1, a2, a3, a4, a6 = (self.lift(f) for f in self.a)
        return y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6

    def involution(self):
        """The inversion (x, y, t) -> (x, -y - a1 x - a3, t) as a substitution."""
        x, y, t = MPoly.gens(3, self.one)
        return (x, -y - self.lift(self.a[0]) * x - self.lift(self.a[2]), t)

    def _point_out(self, pt, pi: Poly):
        if pt is None:
            return None
        x, y = pt
        if self.convention == "cubic-left":
            x = -x
        if pi.degree == 1:
            vals = [x.c[0] if x else self.one * 0, y.c[0] if y else self.one * 0]
            return tuple(_fmt_coeff(v) for v in vals)
        return tuple(f"{format_poly(v)} mod ({format_poly(pi)})" for v in (x, y))


def place_label(pi: Poly | str) -> str:
    if isinstance(pi, str):
        return pi
    return format_poly(pi)


def _as_place(m: WeierstrassModel, place):
    if isinstance(place, str):
        if place in ("inf", "oo", "infinity"):
            return "inf"
        try:
            place = Fraction(place)
        except ValueError:
            return m._coerce_poly(place).monic()
    if isinstance(place, (int, Fraction)):
        c = m._to_field(place) if m.field else place
        return Poly([-c, m.one])
    if isinstance(place, Poly):
        return m._coerce_poly(place).monic()
    raise TypeError("place must be a polynomial, a constant or 'inf'")


def tate_classify(m: WeierstrassModel, place) -> KodairaFiber:
    """Kodaira type of the fiber over a place (monic irreducible pi, a constant c, or 'inf')."""
    if not m.discriminant():
        raise NonEllipticError("discriminant vanishes identically")
    pi = _as_place(m, place)
    if pi == "inf":
        mm, pi, chart, label = m.chart(), Poly([m.one * 0, m.one]), "s", "inf"
    else:
        mm, chart, label = m, "t", place_label(pi)
    if m.base == "Q" and pi.degree > 1:
        if not _certified_irreducible(pi):
            raise ValueError(f"place {label} is not certified irreducible over Q")
    elif m.base == "Fp":
        from .exact.fpoly import is_irreducible
        if not is_irreducible([c.v for c in pi.c], m.p):
            raise ValueError(f"place {label} is not irreducible over F_{m.p}")
    res = tate_local(mm.a, pi, mm.char, mm.one)
    return KodairaFiber(label, res.kodaira, res.vdelta, chart, mm._point_out(res.point, pi),
                        res.deviation, res.log)


# -- fiber tables ---------------------------------------------------------------

def _split_by_valuation(g: Poly, f: Poly, cap: int):
    """Split squarefree g by the order of vanishing of f at its roots: {k: piece}."""
    out = {}
    if not f:
        out[cap] = g
        return out
    A, cur, k = g, f, 0
    while A.degree > 0:
        B = gcd(A, cur)
        piece = A.exact_div(B)
        if piece.degree > 0:
            out[k] = piece.monic()
        if B.degree <= 0 or k >= cap:
            if B.degree > 0:
                out[cap] = B.monic()
            break
        cur = cur.exact_div(B)
        A, k = B, k + 1
    return out


_CHAR0_TABLE = {2: "II", 3: "III", 4: "IV", 8: "IV*", 9: "III*", 10: "II*"}


def _char0_type(v4, v6, vd):
    if vd == 0:
        return "I0"
    if v4 == 0:
        return f"I{vd}"
    if v4 >= 4 and v6 >= 6 and vd >= 12:
        return None
    if v4 == 2 and v6 == 3 and vd >= 6:
        return "I0*" if vd == 6 else f"I{vd - 6}*"
    if vd in _CHAR0_TABLE:
        return _CHAR0_TABLE[vd]
    raise ArithmeticError(f"impossible invariants v(c4)={v4}, v(c6)={v6}, v(D)={vd}")


def _int_primitive(h: Poly) -> Poly:
    den = math.lcm(*[Fraction(c).denominator for c in h.c])
    return Poly([int(c * den) for c in h.c]).primitive_part()


def _small_divisors(n: int, limit: int = 10 ** 6):
    n = abs(n)
    if n > limit:
        return [1, 2] if n % 2 == 0 else [1]
    return [d for d in range(1, n + 1) if n % d == 0]


def _rational_roots(h: Poly):
    """Rational roots of h by the rational root test (candidates capped for huge coefficients)."""
    hz = _int_primitive(h)
    roots = []
    if hz.c[0] == 0:
        roots.append(Fraction(0))
    k = next(i for i, c in enumerate(hz.c) if c)
    lo, hi = hz.c[k], hz.lc()
    for a in _small_divisors(lo):
        for b in _small_divisors(hi):
            for r in (Fraction(a, b), Fraction(-a, b)):
                if r not in roots and hz(r) == 0:
                    roots.append(r)
    return sorted(roots)


def _certified_irreducible(h: Poly) -> bool:
    from .salem import modular_degree_sets
    hz = _int_primitive(h)
    n = hz.degree
    common = set(range(n + 1))
    for _, _, sums in modular_degree_sets(hz):
        common &= sums
        if common == {0, n}:
            return True
    return False


def _q_places(disc: Poly):
    """[(piece, v(Delta), certified_irreducible)] for a rational discriminant."""
    out = []
    for g, mult in squarefree_decomposition(disc):
        g = g.monic()
        if mult == 1:
            out.append((g, 1, g.degree == 1))
            continue
        rest = g
        for r in _rational_roots(g):
            lin = Poly([-r, 1])
            out.append((lin, mult, True))
            rest = rest.exact_div(lin)
        if rest.degree > 0:
            out.append((rest.monic(), mult, _certified_irreducible(rest)))
    return out


def _inf_fiber(m: WeierstrassModel):
    s = Poly([m.one * 0, m.one])
    mc = m.chart()
    if _val(mc.discriminant(), s) == 0:
        return None
    res = tate_local(mc.a, s, m.char, m.one)
    return KodairaFiber("inf", res.kodaira, res.vdelta, "s", mc._point_out(res.point, s),
                        res.deviation, res.log)


def singular_fiber_table(m: WeierstrassModel):
    """Every bad fiber, finite places first (sorted by degree then coefficients), then inf."""
    disc = m.discriminant()
    if not disc:
        raise NonEllipticError("discriminant vanishes identically")
    fibers = []
    if m.base == "Fp":
        _, facs = fp_factor([c.v for c in disc.c], m.p)
        for g, _ in facs:
            pi = Poly([m.field(c) for c in g])
            res = tate_local(m.a, pi, m.p, m.one)
            fibers.append(KodairaFiber(place_label(pi), res.kodaira, res.vdelta, "t",
                                       m._point_out(res.point, pi), res.deviation, res.log))
    else:
        inv = m.invariants()
        for g, vd, certified in _q_places(disc):
            if vd == 1:
                note = [] if certified else ["place may be reducible; type I1 at every root"]
                fibers.append(KodairaFiber(place_label(g), "I1", 1, "t", notes=note))
                continue
            if certified:
                res = tate_local(m.a, g, 0, 1)
                fibers.append(KodairaFiber(place_label(g), res.kodaira, res.vdelta, "t",
                                           m._point_out(res.point, g), res.deviation, res.log))
                continue
            # fall back on the invariant table, uniform over the roots of each piece
            for v4, h4 in _split_by_valuation(g, inv["c4"], 99).items():
                for v6, h in _split_by_valuation(h4, inv["c6"], 99).items():
                    kod = _char0_type(v4, v6, vd)
                    if kod is None:
                        raise ArithmeticError(f"non-minimal model at {format_poly(h)}")
                    note = ["place may be reducible; typed from (v(c4), v(c6), v(Delta))"]
                    fibers.append(KodairaFiber(place_label(h), kod, vd, "t", notes=note))
    fibers.sort(key=lambda f: (len(f.place), f.place))
    inf = _inf_fiber(m)
    if inf is not None:
        fibers.append(inf)
    return fibers


def singularities(fibers):
    """Surface singularities from a fiber table: [(place, dynkin, point, chart)]."""
    return [(f.place, f.dynkin, f.point, f.chart) for f in fibers if f.dynkin]


def shioda_tate_bound(fibers) -> int:
    if any(f.components is None for f in fibers):
        raise ValueError("fiber with unknown component count")
    return 2 + sum(f.components - 1 for f in fibers)


# -- quasi-elliptic models in characteristic 3 ------------------------------------

def _hasse_derivative(f: Poly, j: int) -> Poly:
    return Poly([f.c[n] * math.comb(n, j) for n in range(j, len(f.c))])


_CUSP_TYPES = {1: None, 2: ("IV", "A2"), 4: ("IV*", "E6"), 5: ("II*", "E8")}


def quasi_elliptic_singularities(m: WeierstrassModel):
    """Singular points of a characteristic-3 model with b2 = b4 = 0 (every fiber cuspidal).

    After completing the square the surface is y^2 = x^3 + f(t).  At a
    place t0 the germ is y^2 = X^3 + (f(t) - f(t0)); if the second term has
    order k in t - t0, the point is A2, E6 or E8 for k = 2, 4, 5.
    Returns a list of KodairaFiber records (kodaira type of the resolved fiber).
    """
    if m.base != "Fp" or m.p != 3:
        raise ValueError("quasi-elliptic analysis is implemented for characteristic 3 only")
    inv = m.invariants()
    if inv["b2"] or inv["b4"]:
        raise ValueError("model is not of the form y^2 = x^3 + f(t) after completing the square")
    out = []
    for chart, mm in (("t", m), ("s", m.chart())):
        a1, _, a3, _, _ = mm.a
        f = mm.invariants()["b6"] * m.field(4).inverse()  # x^3 + f, f = b6/4
        d1 = _hasse_derivative(f, 1)
        if not d1:
            raise ValueError("singular locus is not isolated")
        if chart == "t":
            _, facs = fp_factor([c.v for c in d1.c], 3)
            places = [Poly([m.field(c) for c in g]) for g, _ in facs]
        else:
            places = [Poly([m.one * 0, m.one])] if d1.c[0] == 0 else []
        for pi in places:
            k = 1
            while K0(_hasse_derivative(f, k), pi):
                k += 1
            K = _Residue(pi, 3, m.one)
            x0 = K.root(-f % pi)
            y0 = K.red(-(a1 * x0 + a3) * K.inv(K.c(2)))
            typ = _CUSP_TYPES.get(k)
            label = "inf" if chart == "s" else place_label(pi)
            if typ is None:
                note = ["not a rational double point"] if k != 1 else []
                if k == 1:
                    continue
                out.append(KodairaFiber(label, "?", 0, chart, mm._point_out((x0, y0), pi), notes=note))
                continue
            out.append(KodairaFiber(label, typ[0], 0, chart, mm._point_out((x0, y0), pi),
                                    notes=["quasi-elliptic: v(Delta) undefined"]))
    return out


def K0(f: Poly, pi: Poly) -> bool:
    return not (f % pi)


def surface_singularity_table(m: WeierstrassModel):
    """Fibers carrying surface singularities, elliptic or (char 3) quasi-elliptic."""
    if m.discriminant():
        return [f for f in singular_fiber_table(m) if f.dynkin]
    return quasi_elliptic_singularities(m)


# -- torsion over Q -------------------------------------------------------------------

class Curve:
    """A Weierstrass cubic over Q with exact group law; points are (x, y) or None."""

    def __init__(self, a):
        self.a = [Fraction(c) for c in a]
        inv = invariants(self.a)
        if inv["disc"] == 0:
            raise ValueError("singular cubic")

    def on_curve(self, P) -> bool:
        if P is None:
            return True
        a1, a2, a3, a4, a6 = self.a
        x, y = P
        return y * y + a1 * x * y + a3 * y == x ** 3 + a2 * x * x + a4 * x + a6

    def neg(self, P):
        if P is None:
            return None
        a1, _, a3, _, _ = self.a
        x, y = P
        return (x, -y - a1 * x - a3)

    def add(self, P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        a1, a2, a3, a4, a6 = self.a
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if y1 + y2 + a1 * x2 + a3 == 0:
                return None
            lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
        else:
            lam = (y2 - y1) / (x2 - x1)
        nu = y1 - lam * x1
        x3 = lam * lam + a1 * lam - a2 - x1 - x2
        y3 = -(lam + a1) * x3 - nu - a3
        return (x3, y3)

    def mul(self, n: int, P):
        if n < 0:
            return self.mul(-n, self.neg(P))
        acc, base = None, P
        while n:
            if n & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            n >>= 1
        return acc


def _constant_coeffs(E) -> list:
    if isinstance(E, WeierstrassModel):
        if E.base != "Q":
            raise ValueError("torsion test needs a model over Q")
        out = []
        for ai in E.a:
            if ai.degree > 0:
                raise ValueError("model must be constant in t")
            out.append(ai.c[0] if ai.c else 0)
        return out
    return list(E)


def torsion_test(E, P, bound: int = 12):
    """Order of P if n P = O for some n <= bound, else 'non-torsion'.

    Torsion points on elliptic curves over Q have order at most 12 (Mazur),
    so the scan is a proof.  E is a WeierstrassModel constant in t or the
    list (a1, a2, a3, a4, a6) in standard form.
    """
    C = Curve(_constant_coeffs(E))
    P = (Fraction(P[0]), Fraction(P[1]))
    if not C.on_curve(P):
        raise ValueError(f"point {P} is not on the curve")
    Q = P
    for n in range(1, bound + 1):
        if Q is None:
            return {"torsion": True, "order": n}
        Q = C.add(Q, P)
    return {"torsion": False, "order": None}


# -- 2-form weights -------------------------------------------------------------------

def two_form_weight(action, m: WeierstrassModel, F: MPoly | None = None):
    """lambda with g*(omega) = lambda omega for omega = Res(dx dy dt / F).

    `action` is a triple of MPolys in (x, y, t) (the substitution), or a
    triple of scalars (diagonal action).  It must satisfy F o g = e F for a
    constant e, and the Jacobian determinant J must be constant; then
    lambda = J / e.  Over F_p, or with cyclotomic scalars, the coefficient
    types mix through the MPoly arithmetic.
    """
    F = F if F is not None else m.equation()
    gens = MPoly.gens(3, m.one)
    subs = []
    for i, g in enumerate(action):
        if isinstance(g, MPoly):
            subs.append(g)
        else:
            subs.append(gens[i] * g)
    G = F.compose(subs)
    e = _proportionality(G, F)
    if e is None:
        raise ValueError("action does not preserve the model up to a constant")
    J = _det3([[s.derivative(j) for j in range(3)] for s in subs])
    if J.total_degree() > 0:
        raise ValueError("Jacobian of the action is not constant")
    return J.constant_term() / e


def _proportionality(G: MPoly, F: MPoly):
    if not F:
        return None
    e0, c0 = next(iter(F.terms.items()))
    if e0 not in G.terms:
        return None
    e = G.terms[e0] / c0 if not isinstance(c0, int) else G.terms[e0] * Fraction(1, c0)
    if not e:
        return None
    return e if G == F * e else None


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


# -- the order-11 comparator ------------------------------------------------------

ORDER11_THRESHOLD = Fraction(-22, 10)


def _v11(x):
    from .exact.cyclo import CycloElem, valuation
    if isinstance(x, CycloElem):
        if x.n % 11:
            raise ValueError("cyclotomic input must live in Q(zeta_11^k)")
        v = valuation(x, 11)
        if v is None:
            raise ValueError("valuation of zero")
        # valuation() is normalized by v(11) = 1
        return Fraction(v)
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero")
    return Fraction(padic_valuation(x, 11))


def order11_case(q, normalization: str = "standard"):
    """Which branch of the order-11 dichotomy applies to y^2 = x^3 + x + (t^11 - q).

    The printed criterion compares |q^2 + 4/27| with |11|^(-22/10).  With
    |x| = c^(v(x)) the inequality is -v < 2.2 for c = 1/11 ("standard") and
    v < -2.2 for c = 11 ("inverse").  The intrinsic form |r(zeta - 1)| < 1,
    r^11 = q + 2b^3, b^2 = -1/3, is evaluated from v(q + 2b^3) = v/2 (the two
    conjugate factors q +- 2b^3 have equal valuation above 11).
    """
    if normalization not in ("standard", "inverse"):
        raise ValueError("normalization must be 'standard' or 'inverse'")
    from .exact.cyclo import CycloElem
    if isinstance(q, CycloElem):
        val = q * q + Fraction(4, 27)
    else:
        val = Fraction(q) ** 2 + Fraction(4, 27)
    v = _v11(val)
    if normalization == "standard":
        less = -v < -ORDER11_THRESHOLD
    else:
        less = v < ORDER11_THRESHOLD
    branch = "non-extendable" if less else "extendable"
    v_r = v / 2 / 11 + Fraction(1, 10)  # v(r (zeta - 1))
    intrinsic = "non-extendable" if v_r > 0 else "extendable"
    return {"branch": branch, "v": v, "threshold": ORDER11_THRESHOLD, "normalization": normalization,
            "comparison": "<" if less else ">=", "v_r_zeta": v_r, "intrinsic": intrinsic,
            "agrees": branch == intrinsic}


# -- catalogue of models ---------------------------------------------------------------

_XLP_A6 = {11: "(t^11 - p)", 7: "(t^7 - p)", 5: "(t^5 - p)*(t^5 - 1)",
           3: "(t^3 - p)*(t^9 - 1)", 2: "(t^2 - p)*(t^8 - 1)"}


def x_lp_model(l: int, p: int) -> WeierstrassModel:
    """X_{l,p}: y^2 + yx + x^3 - a(t) = 0 (sign convention with the cubic on the left)."""
    if l not in _XLP_A6:
        raise ValueError(f"l must be one of {sorted(_XLP_A6)}")
    return WeierstrassModel(["1", "0", "0", "0", f"-{_XLP_A6[l]}"], base="Q", p=p,
                            convention="cubic-left")


_XP = {3: ("0", "-t^5*(t-1)^5*(t+1)^2"), 5: ("t^3", "t^7"), 7: ("t^3", "t^8"),
       11: ("t^5", "t^2"), 13: ("t^5", "t"), 17: ("t^7", "t^2"), 19: ("t^7", "t")}


def x_p_model(p: int) -> WeierstrassModel:
    """X_p: y^2 = x^3 + a4(t) x + a6(t)."""
    a4, a6 = _XP[p]
    return WeierstrassModel(["0", "0", "0", a4, a6], base="Q", p=p)


def wild_model(p: int) -> WeierstrassModel:
    """y^2 + xy = x^3 - p^12 x + t^6 (t^6 + p^6)."""
    return WeierstrassModel(["1", "0", "0", "-p^12", "t^6*(t^6 + p^6)"], base="Q", p=p)


def wild_section(p: int, t) -> tuple:
    t = Fraction(t)
    return (t ** 6 * (t ** 6 + p ** 6) / Fraction(p) ** 12,
            t ** 12 * (t ** 6 + p ** 6) / Fraction(p) ** 18)


__all__ = [
    "WeierstrassModel", "KodairaFiber", "NonEllipticError", "tate_classify", "tate_local",
    "singular_fiber_table", "surface_singularity_table", "quasi_elliptic_singularities",
    "shioda_tate_bound", "torsion_test", "two_form_weight", "order11_case", "x_lp_model",
    "x_p_model", "wild_model", "wild_section", "dynkin_of", "components_of", "Curve",
]
