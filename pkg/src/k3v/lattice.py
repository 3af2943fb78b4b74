"""Integral lattices, isometries and the symplectic fixed-point formulas."""

from __future__ import annotations

import math
import warnings
from fractions import Fraction

from .exact.matrix import DimensionError, RatMatrix, charpoly, rank
from .exact.poly import squarefree_decomposition
from .exact.sturm import sturm_count

MAX_SYMPLECTIC_ORDER = 8


class DomainError(ValueError):
    pass


class GramLattice:
    def __init__(self, gram, labels=None):
        g = gram if isinstance(gram, RatMatrix) else RatMatrix(gram)
        if not g.is_square():
            raise DimensionError("Gram matrix must be square")
        if not g.is_symmetric():
            raise ValueError("Gram matrix must be symmetric")
        if not g.is_integral():
            raise ValueError("Gram matrix must be integral")
        if labels is not None and len(labels) != g.rows:
            raise ValueError("one label per basis vector")
        self.gram = g
        self.labels = list(labels) if labels is not None else None

    @property
    def rank(self):
        return self.gram.rows

    def pair(self, u, v):
        gu = self.gram.apply(list(v))
        return sum(Fraction(a) * b for a, b in zip(u, gu))

    def signature(self):
        """(positive, negative, zero) inertia from Sturm counts on charpoly(gram)."""
        cp = charpoly(self.gram)
        pos = neg = 0
        for g, m in squarefree_decomposition(cp):
            pos += m * sturm_count(g, 0, None)
            neg += m * sturm_count(g, None, 0)
        return pos, neg, self.rank - pos - neg

    def check_hyperbolic(self):
        """Advisory check of signature (1, n-1); returns a warning string or None."""
        pos, neg, zero = self.signature()
        if (pos, neg, zero) != (1, self.rank - 1, 0):
            msg = f"signature is ({pos},{neg}) with {zero}-dimensional kernel, expected (1,{self.rank - 1})"
            warnings.warn(msg)
            return msg
        return None


def is_isometry(m, L: GramLattice) -> bool:
    m = m if isinstance(m, RatMatrix) else RatMatrix(m)
    if (m.rows, m.cols) != (L.rank, L.rank):
        raise DimensionError(f"{m.rows}x{m.cols} matrix on a rank-{L.rank} lattice")
    return m.T() * L.gram * m == L.gram


class IsometryMatrix:
    def __init__(self, m, L: GramLattice):
        m = m if isinstance(m, RatMatrix) else RatMatrix(m)
        if not is_isometry(m, L):
            raise ValueError("matrix does not preserve the Gram form")
        self.m = m
        self.lattice = L


def eigenrank(m, lam) -> int:
    """dim ker(m - lam I) over Q."""
    m = m if isinstance(m, RatMatrix) else RatMatrix(m)
    if not m.is_square():
        raise DimensionError("eigenrank needs a square matrix")
    shifted = m - RatMatrix.identity(m.rows) * Fraction(lam)
    return m.rows - rank(shifted.a)


def _prime_divisors(n: int):
    ps, d = [], 2
    while d * d <= n:
        if n % d == 0:
            ps.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        ps.append(n)
    return ps


def epsilon(n: int) -> Fraction:
    """24 / (n prod_{q | n} (1 + 1/q))."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_SYMPLECTIC_ORDER:
        warnings.warn(f"symplectic automorphisms have order <= {MAX_SYMPLECTIC_ORDER}; epsilon({n}) is formal")
    denom = Fraction(n)
    for q in _prime_divisors(n):
        denom *= 1 + Fraction(1, q)
    v = Fraction(24) / denom
    return v


def symplectic_trace(n: int) -> int:
    if not 1 <= n <= MAX_SYMPLECTIC_ORDER:
        raise DomainError(f"order {n} is impossible for a symplectic automorphism (ord(g) <= 8)")
    e = epsilon(n)
    return int(e) - 2


def mu(orders) -> Fraction:
    items = _order_items(orders)
    total = sum(c for _, c in items)
    return sum((epsilon(o) * c for o, c in items), Fraction(0)) / total


def _order_items(orders):
    items = sorted(orders.items()) if isinstance(orders, dict) else sorted(orders)
    if not items:
        raise ValueError("empty order multiset")
    for o, c in items:
        if c < 0:
            raise ValueError("negative count")
        if o > MAX_SYMPLECTIC_ORDER:
            raise DomainError(f"order {o} exceeds the symplectic bound 8")
        if o < 1:
            raise ValueError("orders are positive")
    if dict(items).get(1, 0) < 1:
        raise ValueError("the identity must be counted")
    return items


def burnside_warnings(orders):
    items = _order_items(orders)
    size = sum(c for _, c in items)
    out = []
    for o, c in items:
        if size % o:
            out.append(f"order {o} does not divide |G| = {size}")
        phi = sum(1 for k in range(1, o + 1) if math.gcd(k, o) == 1)
        if c % phi:
            out.append(f"{c} elements of order {o} is not a multiple of phi({o}) = {phi}")
    if dict(items)[1] != 1:
        out.append("more than one identity element")
    return out


def picard_lower_bound(orders) -> int:
    """ceil(25 - mu(G)) for a finite symplectic group given by order counts."""
    for w in burnside_warnings(orders):
        warnings.warn(w)
    return math.ceil(25 - mu(orders))


def isometry_charpoly_audit(m, L: GramLattice):
    """Charpoly of an isometry: residual after cyclotomic stripping is 1 or Salem."""
    from .salem import is_salem, strip_cyclotomic
    m = m if isinstance(m, RatMatrix) else RatMatrix(m)
    if not is_isometry(m, L):
        raise ValueError("not an isometry")
    cp = charpoly(m)
    parts, resid = strip_cyclotomic(cp)
    ok = resid.degree == 0 or is_salem(resid)
    return ok, parts, resid
