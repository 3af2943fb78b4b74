"""Dense univariate polynomials with exact coefficients.

Coefficients are stored lowest degree first.  They may be ints,
Fractions, FqElem or CycloElem values; anything that mixes with int and
supports == 0.  Division needs the leading coefficient to be invertible.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Sequence


def _is_zero(c) -> bool:
    return c == 0


def _inv(c):
    if isinstance(c, int):
        return Fraction(1, c)
    return 1 / c


class Poly:
    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = list(coeffs)
        while c and _is_zero(c[-1]):
            c.pop()
        self.c = c

    # -- construction ------------------------------------------------
    @classmethod
    def x(cls, one=1):
        return cls([one * 0, one])

    @classmethod
    def monomial(cls, n: int, coeff=1):
        return cls([coeff * 0] * n + [coeff])

    @classmethod
    def from_strings(cls, items: Sequence[str]) -> "Poly":
        out = []
        for s in items:
            if not isinstance(s, str):
                raise ValueError(f"coefficient {s!r} must be a decimal string")
            try:
                out.append(int(s))
            except ValueError:
                raise ValueError(f"coefficient {s!r} is not a decimal integer") from None
        return cls(out)

    @classmethod
    def load_json(cls, path) -> "Poly":
        with open(path) as fh:
            data = json.load(fh)
        if not isinstance(data, list):
            raise ValueError("polynomial file must hold a JSON array of decimal strings")
        p = cls.from_strings(data)
        if not p.c:
            raise ValueError("polynomial file describes the zero polynomial")
        return p

    def to_strings(self):
        return [str(c) for c in self.c]

    # -- basic queries -----------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def lc(self):
        return self.c[-1]

    def __getitem__(self, i):
        return self.c[i] if 0 <= i < len(self.c) else 0

    def __iter__(self):
        return iter(self.c)

    def __len__(self):
        return len(self.c)

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return len(self.c) == len(other.c) and all(a == b for a, b in zip(self.c, other.c))

    def __hash__(self):
        return hash(tuple(self.c))

    def __repr__(self):
        if not self.c:
            return "0"
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if _is_zero(a):
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            s = str(a)
            if mono:
                if s == "1":
                    s = mono
                elif s == "-1":
                    s = "-" + mono
                else:
                    s = f"({s})*{mono}" if any(ch in s[1:] for ch in "+-/") else f"{s}*{mono}"
            terms.append(s)
        out = terms[0]
        for t in terms[1:]:
            out += (" - " + t[1:]) if t.startswith("-") else (" + " + t)
        return out

    def is_integral(self) -> bool:
        return all(isinstance(c, int) or (isinstance(c, Fraction) and c.denominator == 1) for c in self.c)

    def as_int(self) -> "Poly":
        if not self.is_integral():
            raise ValueError("polynomial has non-integral coefficients")
        return Poly([int(c) for c in self.c])

    # -- arithmetic --------------------------------------------------
    def _lift(self, other):
        if isinstance(other, Poly):
            return other
        return Poly([other])

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.c), len(o.c))
        return Poly([self[i] + o[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly([a * other for a in self.c])
        if not self.c or not other.c:
            return Poly()
        zero = self.c[0] * 0 + other.c[0] * 0
        out = [zero] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.c):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        one = self.c[-1] ** 0 if self.c else 1
        result = Poly([one])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other: "Poly"):
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        dg = other.degree
        inv = _inv(other.lc())
        if len(r) - 1 < dg:
            return Poly(), Poly(r)
        q = [None] * (len(r) - dg)
        for s in range(len(r) - 1 - dg, -1, -1):
            coef = r[s + dg] * inv
            q[s] = coef
            if not _is_zero(coef):
                for i, b in enumerate(other.c):
                    r[s + i] = r[s + i] - coef * b
        return Poly(q), Poly(r[:dg])

    def __floordiv__(self, other):
        return self.divmod(self._lift(other))[0]

    def __mod__(self, other):
        return self.divmod(self._lift(other))[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def monic(self) -> "Poly":
        if not self.c:
            return self
        return self * _inv(self.lc())

    def derivative(self) -> "Poly":
        return Poly([self.c[i] * i for i in range(1, len(self.c))])

    def __call__(self, x):
        acc = x * 0
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def compose(self, g: "Poly") -> "Poly":
        acc = Poly()
        for a in reversed(self.c):
            acc = acc * g + Poly([a])
        return acc

    def reciprocal(self) -> "Poly":
        return Poly(list(reversed(self.c)))

    def content(self) -> int:
        from math import gcd
        g = 0
        for a in self.as_int().c:
            g = gcd(g, int(a))
        return g

    def primitive_part(self) -> "Poly":
        g = self.content()
        if g == 0:
            return self
        if self.c[-1] < 0:
            g = -g
        return Poly([int(a) // g for a in self.as_int().c])

    def mod_p(self, p: int):
        """Coefficient list mod p (an FpPoly)."""
        from . import fpoly
        out = []
        for a in self.c:
            a = Fraction(a)
            if a.denominator % p == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            out.append(a.numerator * pow(a.denominator, -1, p) % p)
        return fpoly.norm(out, p)


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd over a field."""
    while g:
        f, g = g, f % g
    return f.monic()


def xgcd(f: Poly, g: Poly):
    """(d, s, t) with s f + t g = d, d monic."""
    r0, r1 = f, g
    s0, s1 = Poly([1]), Poly()
    t0, t1 = Poly(), Poly([1])
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = _inv(r0.lc())
    return r0 * inv, s0 * inv, t0 * inv


def squarefree_part(f: Poly) -> Poly:
    """Over a field of characteristic 0."""
    return f.exact_div(gcd(f, f.derivative())) if f.degree > 0 else f


def is_squarefree(f: Poly) -> bool:
    return gcd(f, f.derivative()).degree == 0


def squarefree_decomposition(f: Poly):
    """Yun's algorithm over Q: list of (g_i, i) with f = lc * prod g_i^i."""
    out = []
    if f.degree <= 0:
        return out
    f = f.monic()
    a = gcd(f, f.derivative())
    b = f.exact_div(a)
    c = f.derivative().exact_div(a)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return out


def resultant(f: Poly, g: Poly):
    """Resultant over a field via the Euclidean algorithm."""
    if not f or not g:
        return 0
    m, n = f.degree, g.degree
    if n == 0:
        return g.lc() ** m
    if m == 0:
        return f.lc() ** n
    r = f % g
    if not r:
        return 0
    s = (-1) ** (m * n) * g.lc() ** (m - r.degree)
    return s * resultant(g, r)


def interpolate(xs, ys) -> Poly:
    """Newton interpolation through (xs[i], ys[i]) with exact arithmetic."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    p = Poly([coef[-1]])
    for i in range(n - 2, -1, -1):
        p = p * Poly([-xs[i], 1]) + Poly([coef[i]])
    return Poly([_normalize(c) for c in p.c])


def _normalize(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def cyclotomic(n: int) -> Poly:
    return Poly(_cyclotomic(n))


_CYC_CACHE: dict = {}


def _cyclotomic(n: int):
    if n in _CYC_CACHE:
        return _CYC_CACHE[n]
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    f = Poly([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            f = f.exact_div(Poly(_cyclotomic(d)))
    out = [int(c) for c in f.c]
    _CYC_CACHE[n] = out
    return out


def euler_phi(n: int) -> int:
    result, m, d = n, n, 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


def padic_valuation(x, p: int):
    """v_p of a nonzero rational; None stands for +infinity at 0."""
    x = Fraction(x)
    if x == 0:
        return None
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v
