"""Cyclotomic fields Q(zeta_n) and reduction modulo a prime above p."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from . import fpoly
from .ff import GF, FqElem, embed
from .poly import Poly, cyclotomic, euler_phi, padic_valuation, resultant, xgcd


class RamificationError(ValueError):
    pass


class CycloElem:
    __slots__ = ("n", "c")

    def __init__(self, n: int, coeffs=()):
        phi = _phi_poly(n)
        p = Poly([Fraction(x) for x in coeffs])
        if p.degree >= phi.degree:
            p = p % phi
        c = [_q(x) for x in p.c]
        self.n = n
        self.c = tuple(c + [0] * (phi.degree - len(c)))

    @classmethod
    def zeta(cls, n: int, k: int = 1):
        k %= n
        return cls(n, [0] * k + [1])

    @classmethod
    def const(cls, n: int, a):
        return cls(n, [a])

    def poly(self) -> Poly:
        return Poly(self.c)

    def _coerce(self, other):
        if isinstance(other, CycloElem):
            if other.n != self.n:
                raise ValueError(f"mixing Q(zeta_{self.n}) and Q(zeta_{other.n})")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloElem(self.n, [other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloElem(self.n, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.n, [-a for a in self.c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloElem(self.n, [a - b for a, b in zip(self.c, o.c)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloElem(self.n, [a * other for a in self.c])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloElem(self.n, (self.poly() * o.poly()).c)

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of 0 in a cyclotomic field")
        d, s, _ = xgcd(self.poly(), _phi_poly(self.n))
        if d.degree != 0:  # pragma: no cover - Phi_n is irreducible
            raise ArithmeticError("non-invertible cyclotomic element")
        return CycloElem(self.n, s.c)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = CycloElem(self.n, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        if all(x == 0 for x in self.c[1:]):
            return hash(self.c[0])
        return hash((self.n, self.c))

    def __bool__(self):
        return any(self.c)

    def __repr__(self):
        terms = []
        for k, a in enumerate(self.c):
            if a == 0:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            s = str(a)
            if mono:
                s = mono if s == "1" else ("-" + mono if s == "-1" else f"{s}*{mono}")
            terms.append(s)
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += t if t.startswith("-") else "+" + t
        return f"{out} [Q(zeta_{self.n})]"

    def is_rational(self):
        return all(x == 0 for x in self.c[1:])

    def norm(self):
        """Field norm down to Q, as a resultant with Phi_n."""
        return _q(Fraction(resultant(_phi_poly(self.n), self.poly())))

    def conjugate(self, k: int):
        """Image under zeta -> zeta^k (k prime to n)."""
        acc = CycloElem(self.n)
        for j, a in enumerate(self.c):
            if a:
                acc = acc + CycloElem.zeta(self.n, j * k) * a
        return acc


def _q(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else x


@lru_cache(maxsize=None)
def _phi_poly(n: int) -> Poly:
    return cyclotomic(n)


def valuation(x: CycloElem, p: int) -> Fraction | None:
    """v(x) normalized by v(p) = 1, valid when a single prime lies above p.

    That holds for n a power of p (total ramification) and for the inert
    case; the caller is responsible for that hypothesis.
    """
    if not x:
        return None
    n = x.n
    return Fraction(padic_valuation(x.norm(), p), euler_phi(n))


def single_prime_above(n: int, p: int) -> bool:
    """True iff exactly one prime of Q(zeta_n) lies above p."""
    m = n
    while m % p == 0:
        m //= p
    if m == 1:
        return True
    order = 1
    x = p % m
    while x != 1 % m:
        x = x * p % m
        order += 1
    return order == euler_phi(m)


# -- reduction modulo a prime above p -------------------------------------

@lru_cache(maxsize=None)
def prime_above(n: int, p: int):
    """Lexicographically least monic irreducible factor of Phi_n mod p."""
    if n % p == 0:
        raise RamificationError(f"{p} ramifies in Q(zeta_{n})")
    _, facs = fpoly.factor(cyclotomic(n).mod_p(p), p)
    return tuple(min((f for f, _ in facs), key=fpoly.lex_key))


def reduction_root(n: int, p: int, field: GF, anchor=None) -> FqElem:
    """The image of zeta_n in `field` for the fixed prime above p.

    The residue field F_p[x]/(pi) is identified with `field` through the
    root r of pi in `field`; when several roots exist, `anchor = (k, t)`
    picks the unique one with r^k == t.  Without an anchor, the generator
    is used when `field` is literally F_p[x]/(pi), else the first root in
    encoding order.
    """
    pi = prime_above(n, p)
    if anchor is None and tuple(field.modulus) == pi:
        return field.gen()
    roots = [r for r in field.elements() if _eval_fp_poly(pi, r) == 0]
    if not roots:
        raise ValueError(f"the residue field of the prime above {p} does not embed in {field!r}")
    if anchor is not None:
        k, t = anchor
        roots = [r for r in roots if r ** k == t]
        if len(roots) != 1:
            raise ValueError("anchor does not single out one root")
    return roots[0]


def _eval_fp_poly(f, x: FqElem):
    acc = x.field.zero()
    for c in reversed(f):
        acc = acc * x + c
    return acc


def cyclo_reduce(x: CycloElem, p: int, field: GF, zeta_image: FqElem | None = None) -> FqElem:
    """Reduce x modulo the fixed prime above p into `field`."""
    if x.n % p == 0:
        raise RamificationError(f"{p} ramifies in Q(zeta_{x.n})")
    if zeta_image is None:
        zeta_image = reduction_root(x.n, p, field)
    acc = field.zero()
    for a in reversed(x.c):
        a = Fraction(a)
        if a.denominator % p == 0:
            raise ValueError(f"coefficient {a} is not {p}-integral")
        acc = acc * zeta_image + (a.numerator * pow(a.denominator, -1, p))
    return acc


def zeta80_design_image() -> FqElem:
    """Image of zeta_80 in F_81 under the design convention (zeta_80^16 -> zeta)."""
    from .ff import F81
    K = F81()
    return reduction_root(80, 3, K, anchor=(16, K.gen()))


__all__ = ["CycloElem", "cyclo_reduce", "prime_above", "reduction_root", "valuation",
           "RamificationError", "embed", "single_prime_above", "zeta80_design_image"]
