"""Sturm sequences for real root counting over Q."""

from __future__ import annotations

from fractions import Fraction

from .poly import Poly, gcd


def sturm_sequence(f: Poly):
    seq = [f, f.derivative()]
    while seq[-1].degree > 0:
        r = seq[-2] % seq[-1]
        if not r:
            break
        seq.append(-r)
    return seq


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _sign_at(p: Poly, x):
    if x == "+inf":
        return _sign(p.lc())
    if x == "-inf":
        return _sign(p.lc()) * (-1) ** p.degree
    return _sign(p(Fraction(x)))


def _variations(seq, x) -> int:
    signs = [s for s in (_sign_at(p, x) for p in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(f: Poly, lo=None, hi=None) -> int:
    """Number of distinct real roots of f in the open interval (lo, hi).

    None stands for an infinite endpoint.  f is replaced by its squarefree
    part first, so multiple roots are counted once.
    """
    if not f:
        raise ValueError("the zero polynomial has no Sturm count")
    if f.degree == 0:
        return 0
    f = f.exact_div(gcd(f, f.derivative()))
    a = "-inf" if lo is None else Fraction(lo)
    b = "+inf" if hi is None else Fraction(hi)
    if a != "-inf" and b != "+inf" and a >= b:
        return 0
    seq = sturm_sequence(f)
    n = _variations(seq, a) - _variations(seq, b)
    if b != "+inf" and f(b) == 0:
        n -= 1
    return n
