"""Dense univariate polynomials over a prime field F_p.

A polynomial is a list of ints in [0, p), lowest degree first, with no
trailing zeros.  The zero polynomial is the empty list.  Factoring is
squarefree decomposition, then distinct-degree, then equal-degree
splitting (Cantor-Zassenhaus; the trace map replaces the half-power
exponent when p = 2).
"""

from __future__ import annotations

import random
from collections import Counter

FpPoly = list  # list[int]


def norm(f, p):
    g = [c % p for c in f]
    while g and g[-1] == 0:
        g.pop()
    return g


def deg(f):
    return len(f) - 1


def add(f, g, p):
    n = max(len(f), len(g))
    out = [((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p for i in range(n)]
    return norm(out, p)


def sub(f, g, p):
    n = max(len(f), len(g))
    out = [((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)]
    return norm(out, p)


def scale(f, c, p):
    return norm([a * c for a in f], p)


def mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return norm(out, p)


def divmod_(f, g, p):
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    f = list(f)
    inv = pow(g[-1], p - 2, p)
    dg = len(g) - 1
    q = [0] * max(len(f) - dg, 0)
    while len(f) - 1 >= dg and f:
        c = f[-1] * inv % p
        s = len(f) - 1 - dg
        q[s] = c
        for i, b in enumerate(g):
            f[s + i] = (f[s + i] - c * b) % p
        while f and f[-1] == 0:
            f.pop()
    return norm(q, p), f


def rem(f, g, p):
    return divmod_(f, g, p)[1]


def monic(f, p):
    if not f:
        return f
    inv = pow(f[-1], p - 2, p)
    return [c * inv % p for c in f]


def gcd(f, g, p):
    f, g = norm(f, p), norm(g, p)
    while g:
        f, g = g, rem(f, g, p)
    return monic(f, p)


def derivative(f, p):
    return norm([i * f[i] for i in range(1, len(f))], p)


def powmod(f, e, m, p):
    result = [1]
    base = rem(f, m, p)
    while e:
        if e & 1:
            result = rem(mul(result, base, p), m, p)
        base = rem(mul(base, base, p), m, p)
        e >>= 1
    return result


def evaluate(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def _pth_root(f, p):
    # f(x) = g(x^p) in char p, and coefficients are fixed by Frobenius
    return [f[i] for i in range(0, len(f), p)]


def squarefree_decomposition(f, p):
    """Return [(g, m)] with f = lc * prod g^m, each g monic and squarefree."""
    f = monic(norm(f, p), p)
    out = []
    if len(f) <= 1:
        return out
    fp = derivative(f, p)
    if not fp:
        for g, m in squarefree_decomposition(_pth_root(f, p), p):
            out.append((g, m * p))
        return out
    c = gcd(f, fp, p)
    w = divmod_(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = gcd(w, c, p)
        z = divmod_(w, y, p)[0]
        if len(z) > 1:
            out.append((monic(z, p), i))
        i += 1
        w = y
        c = divmod_(c, y, p)[0]
    if len(c) > 1:
        for g, m in squarefree_decomposition(_pth_root(c, p), p):
            out.append((g, m * p))
    return out


def distinct_degree(f, p):
    """Split a monic squarefree f into products of irreducibles of equal degree."""
    out = []
    h = [0, 1]
    d = 0
    f = list(f)
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, f, p)
        g = gcd(sub(h, [0, 1], p), f, p)
        if len(g) > 1:
            out.append((g, d))
            f = divmod_(f, g, p)[0]
            h = rem(h, f, p)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def equal_degree(f, d, p, rng):
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = norm([rng.randrange(p) for _ in range(n)], p)
        if len(a) <= 1:
            continue
        if p == 2:
            t = a
            acc = a
            for _ in range(d - 1):
                t = rem(mul(t, t, p), f, p)
                acc = add(acc, t, p)
            b = acc
        else:
            b = sub(powmod(a, (p ** d - 1) // 2, f, p), [1], p)
        g = gcd(b, f, p)
        if 1 < len(g) < len(f):
            h = divmod_(f, g, p)[0]
            return equal_degree(g, d, p, rng) + equal_degree(monic(h, p), d, p, rng)


def factor(f, p, seed=0):
    """Monic irreducible factorization: (leading coeff, sorted [(g, mult)])."""
    f = norm(f, p)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    lc = f[-1]
    rng = random.Random(seed)
    acc = Counter()
    for g, m in squarefree_decomposition(f, p):
        for h, d in distinct_degree(g, p):
            for irr in equal_degree(h, d, p, rng):
                acc[tuple(irr)] += m
    facs = sorted(((list(g), m) for g, m in acc.items()), key=lambda t: (len(t[0]), t[0][::-1]))
    return lc, facs


def is_irreducible(f, p):
    f = norm(f, p)
    if len(f) <= 1:
        return False
    _, facs = factor(f, p)
    return len(facs) == 1 and facs[0][1] == 1


def lex_key(f):
    """Order used to pick a canonical factor: degree, then coefficients from the top."""
    return (len(f), tuple(reversed(f)))
