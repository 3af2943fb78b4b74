"""Sparse multivariate polynomials over an exact coefficient domain.

Terms map exponent tuples to nonzero coefficients.  The coefficient type
is whatever the caller supplies (int, Fraction, FqElem, CycloElem); ints
mix with all of them.  HomForm is an MPoly that checks homogeneity.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from itertools import product


class MPoly:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        t = {}
        if terms:
            for e, c in (terms.items() if isinstance(terms, dict) else terms):
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not have {n} entries")
                if c:
                    e = tuple(e)
                    if e in t:
                        s = t[e] + c
                        if s:
                            t[e] = s
                        else:
                            del t[e]
                    else:
                        t[e] = c
        self.terms = t

    # -- constructors ------------------------------------------------
    @classmethod
    def var(cls, n: int, i: int, one=1):
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): one})

    @classmethod
    def const(cls, n: int, c):
        return cls(n, {(0,) * n: c})

    @classmethod
    def gens(cls, n: int, one=1):
        return [cls.var(n, i, one) for i in range(n)]

    @classmethod
    def linear(cls, coeffs):
        n = len(coeffs)
        return cls(n, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)})

    # -- queries -----------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def homogeneous_part(self, d: int) -> "MPoly":
        return MPoly(self.n, {e: c for e, c in self.terms.items() if sum(e) == d})

    def low_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=-1)

    def constant_term(self):
        return self.terms.get((0,) * self.n, 0)

    def coefficient(self, e):
        return self.terms.get(tuple(e), 0)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            if other.n != self.n:
                return False
            return self.terms.keys() == other.terms.keys() and all(
                self.terms[e] == other.terms[e] for e in self.terms)
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms))

    def __repr__(self):
        return self.format()

    def format(self, names=None) -> str:
        names = names or [f"x{i}" for i in range(self.n)]
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.terms[e]
            mono = "*".join(f"{names[i]}^{k}" if k > 1 else names[i] for i, k in enumerate(e) if k)
            cs = str(c)
            if not mono:
                parts.append(cs if not _needs_paren(cs) else f"({cs})")
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append((f"({cs})" if _needs_paren(cs) else cs) + "*" + mono)
        out = parts[0]
        for t in parts[1:]:
            out += (" - " + t[1:]) if t.startswith("-") else (" + " + t)
        return out

    # -- arithmetic --------------------------------------------------
    def _lift(self, other):
        if isinstance(other, MPoly):
            if other.n != self.n:
                raise ValueError("variable count mismatch")
            return other
        return MPoly.const(self.n, other)

    def __add__(self, other):
        o = self._lift(other)
        t = dict(self.terms)
        for e, c in o.terms.items():
            if e in t:
                s = t[e] + c
                if s:
                    t[e] = s
                else:
                    del t[e]
            else:
                t[e] = c
        r = MPoly(self.n)
        r.terms = t
        return r

    __radd__ = __add__

    def __neg__(self):
        r = MPoly(self.n)
        r.terms = {e: -c for e, c in self.terms.items()}
        return r

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            if not other:
                return MPoly(self.n)
            r = MPoly(self.n)
            r.terms = {e: c * other for e, c in self.terms.items() if c * other}
            return r
        if other.n != self.n:
            raise ValueError("variable count mismatch")
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                if e in t:
                    t[e] = t[e] + v
                else:
                    t[e] = v
        r = MPoly(self.n)
        r.terms = {e: c for e, c in t.items() if c}
        return r

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MPoly.const(self.n, _one_like(self))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def map_coeffs(self, f) -> "MPoly":
        return MPoly(self.n, {e: f(c) for e, c in self.terms.items()})

    def derivative(self, i: int) -> "MPoly":
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                v = c * e[i]
                if v:
                    t[tuple(e2)] = v
        r = MPoly(self.n)
        r.terms = t
        return r

    def gradient(self):
        return [self.derivative(i) for i in range(self.n)]

    def __call__(self, *vals):
        if len(vals) == 1 and isinstance(vals[0], (list, tuple)):
            vals = vals[0]
        return self.evaluate(vals)

    def evaluate(self, vals):
        if len(vals) != self.n:
            raise ValueError("wrong number of values")
        acc = None
        powers = [dict() for _ in range(self.n)]
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    pk = powers[i].get(k)
                    if pk is None:
                        pk = vals[i] ** k
                        powers[i][k] = pk
                    v = v * pk
            acc = v if acc is None else acc + v
        if acc is None:
            return vals[0] * 0 if vals else 0
        return acc

    def compose(self, subs) -> "MPoly":
        """Substitute MPoly values (all in the same number of variables) for each variable."""
        if len(subs) != self.n:
            raise ValueError("wrong number of substitutions")
        m = subs[0].n
        acc = MPoly(m)
        cache = [dict() for _ in range(self.n)]
        for e, c in self.terms.items():
            v = MPoly.const(m, c)
            for i, k in enumerate(e):
                if k:
                    pk = cache[i].get(k)
                    if pk is None:
                        pk = subs[i] ** k
                        cache[i][k] = pk
                    v = v * pk
            acc = acc + v
        return acc

    def substitute(self, i: int, value) -> "MPoly":
        """Replace variable i by an MPoly (same arity) or a constant."""
        subs = MPoly.gens(self.n, _one_like(self))
        subs[i] = value if isinstance(value, MPoly) else MPoly.const(self.n, value)
        return self.compose(subs)

    def translate(self, point) -> "MPoly":
        one = _one_like(self)
        subs = [MPoly.var(self.n, i, one) + MPoly.const(self.n, point[i]) for i in range(self.n)]
        return self.compose(subs)

    def drop_var(self, i: int) -> "MPoly":
        """Set variable i to 1 and remove it (dehomogenization)."""
        t = {}
        for e, c in self.terms.items():
            e2 = e[:i] + e[i + 1:]
            t[e2] = t[e2] + c if e2 in t else c
        return MPoly(self.n - 1, {e: c for e, c in t.items() if c})

    def as_univariate(self, i: int):
        """Coefficient list in variable i (other variables must be absent)."""
        deg = self.degree_in(i)
        out = [0] * (deg + 1)
        for e, c in self.terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError("polynomial involves other variables")
            out[e[i]] = c
        return out

    def reduce_monic(self, modulus: "MPoly", i: int) -> "MPoly":
        """Remainder on division by `modulus`, monic in variable i after scaling."""
        d = modulus.degree_in(i)
        lead = [(e, c) for e, c in modulus.terms.items() if e[i] == d]
        if d <= 0 or len(lead) != 1 or any(k for j, k in enumerate(lead[0][0]) if j != i):
            raise ValueError("modulus is not monic in the reduction variable")
        inv = 1 / lead[0][1] if not isinstance(lead[0][1], int) else Fraction(1, lead[0][1])
        tail = (modulus - MPoly(self.n, {lead[0][0]: lead[0][1]})) * (-inv)
        # x_i^d == tail
        r = self
        while True:
            high = {e: c for e, c in r.terms.items() if e[i] >= d}
            if not high:
                return r
            low = MPoly(self.n, {e: c for e, c in r.terms.items() if e[i] < d})
            acc = low
            for e, c in high.items():
                e2 = list(e)
                e2[i] -= d
                acc = acc + MPoly(self.n, {tuple(e2): c}) * tail
            r = acc


def _needs_paren(s: str) -> bool:
    return any(ch in s[1:] for ch in "+-") or " " in s


def _one_like(p: MPoly):
    for c in p.terms.values():
        return c ** 0 if not isinstance(c, int) else 1
    return 1


class HomForm(MPoly):
    """A homogeneous form (checked on construction)."""

    __slots__ = ()

    def __init__(self, n: int, terms=None):
        super().__init__(n, terms)
        if not self.is_homogeneous():
            raise ValueError("form is not homogeneous")

    @classmethod
    def of(cls, p: MPoly) -> "HomForm":
        return cls(p.n, p.terms)

    @property
    def degree(self) -> int:
        return self.total_degree()


def monomials(n: int, d: int):
    """All exponent vectors of total degree d in n variables (lex order)."""
    if n == 1:
        return [(d,)]
    out = []
    for k in range(d, -1, -1):
        for rest in monomials(n - 1, d - k):
            out.append((k,) + rest)
    return out


# -- parsing ---------------------------------------------------------------

def parse(expr: str, names, coerce=lambda c: c, constants=None) -> MPoly:
    """Parse an arithmetic expression in the given variable names.

    Supports + - * / ^ ** and parentheses; integer literals go through
    `coerce`; `constants` maps extra symbol names to coefficient values
    (for example 'i' in F_9).  Division is allowed by constants only.
    """
    constants = constants or {}
    n = len(names)
    index = {nm: k for k, nm in enumerate(names)}
    try:
        tree = ast.parse(expr.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse polynomial {expr!r}: {exc.msg}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return MPoly.const(n, coerce(node.value))
        if isinstance(node, ast.Name):
            if node.id in index:
                return MPoly.var(n, index[node.id], coerce(1))
            if node.id in constants:
                return MPoly.const(n, constants[node.id])
            raise ValueError(f"unknown symbol {node.id!r} in {expr!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise ValueError("exponents must be integer literals")
                return ev(node.left) ** node.right.value
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if b.total_degree() > 0 or not b:
                    raise ValueError("division only by nonzero constants")
                c = b.constant_term()
                inv = Fraction(1, c) if isinstance(c, int) else 1 / c
                return a * inv
        raise ValueError(f"unsupported syntax in polynomial {expr!r}")

    return ev(tree)


def binary_restriction(form: MPoly, p0, p1):
    """Coefficients of form(s*p0 + t*p1) as a binary form, s^d first."""
    one = _one_like(form)
    s, t = MPoly.gens(2, one)
    subs = [s * p0[i] + t * p1[i] for i in range(form.n)]
    r = form.compose(subs)
    d = form.total_degree()
    zero = one * 0
    return [r.coefficient((d - k, k)) or zero for k in range(d + 1)]


__all__ = ["MPoly", "HomForm", "monomials", "parse", "binary_restriction", "product"]
