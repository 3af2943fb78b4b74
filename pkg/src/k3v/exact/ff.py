"""Small finite fields F_q = F_p[z]/(m(z)) with table arithmetic.

Elements are encoded as ints: the residue c0 + c1 z + ... is stored as
c0 + c1 p + c2 p^2 + ...  Addition uses a q x q table, multiplication
uses discrete logs against a primitive element.  This keeps the inner
loops of line and singularity scans cheap; FqElem wraps the encoding for
everything else.
"""

from __future__ import annotations

import re
from functools import lru_cache

from . import fpoly

MAX_ORDER = 1024


class GF:
    def __init__(self, p: int, modulus=None, var: str = "z"):
        if modulus is None:
            modulus = [0, 1]
        modulus = fpoly.norm(modulus, p)
        if modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        if not fpoly.is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is not irreducible mod {p}")
        self.p = p
        self.k = len(modulus) - 1
        self.q = p ** self.k
        if self.q > MAX_ORDER:
            raise ValueError(f"field order {self.q} exceeds table limit {MAX_ORDER}")
        self.modulus = tuple(modulus)
        self.var = var
        q = self.q
        self._digits = [self._to_digits(v) for v in range(q)]
        add = [0] * (q * q)
        for a in range(q):
            da = self._digits[a]
            for b in range(a, q):
                db = self._digits[b]
                s = self._from_digits([(x + y) % p for x, y in zip(da, db)])
                add[a * q + b] = s
                add[b * q + a] = s
        self.add_t = add
        self.neg_t = [self._from_digits([(-x) % p for x in self._digits[a]]) for a in range(q)]
        self._build_logs()

    # -- encoding ----------------------------------------------------
    def _to_digits(self, v):
        out = []
        for _ in range(self.k):
            out.append(v % self.p)
            v //= self.p
        return out

    def _from_digits(self, ds):
        v = 0
        for c in reversed(ds):
            v = v * self.p + c
        return v

    def _polymul(self, a, b):
        r = fpoly.rem(fpoly.mul(fpoly.norm(self._digits[a], self.p),
                                fpoly.norm(self._digits[b], self.p), self.p),
                      list(self.modulus), self.p)
        return self._from_digits(r + [0] * (self.k - len(r)))

    def _build_logs(self):
        q = self.q
        order = q - 1
        for g in range(1, q):
            exp = [1]
            x = 1
            for _ in range(order - 1):
                x = self._polymul(x, g)
                if x == 1:
                    break
                exp.append(x)
            if len(exp) == order:
                break
        else:  # pragma: no cover
            raise RuntimeError("no primitive element found")
        self.primitive = g
        self.exp_t = exp + exp
        log = [None] * q
        for i, x in enumerate(exp):
            log[x] = i
        self.log_t = log
        mul = [0] * (q * q)
        for a in range(1, q):
            la = log[a]
            for b in range(1, q):
                mul[a * q + b] = self.exp_t[la + log[b]]
        self.mul_t = mul
        self.inv_t = [0] + [exp[(order - log[a]) % order] for a in range(1, q)]

    # -- raw int ops (hot paths) -------------------------------------
    def add(self, a, b):
        return self.add_t[a * self.q + b]

    def sub(self, a, b):
        return self.add_t[a * self.q + self.neg_t[b]]

    def mul(self, a, b):
        return self.mul_t[a * self.q + b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in " + repr(self))
        return self.inv_t[a]

    def pow(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 1 if e == 0 else 0
        return self.exp_t[(self.log_t[a] * e) % (self.q - 1)]

    def from_int(self, n):
        return n % self.p

    # -- element level -----------------------------------------------
    def __call__(self, x) -> "FqElem":
        if isinstance(x, FqElem):
            if x.field is not self:
                raise ValueError("element belongs to a different field")
            return x
        if isinstance(x, int):
            return FqElem(self, x % self.p)
        if isinstance(x, (list, tuple)):
            r = fpoly.rem(fpoly.norm(list(x), self.p), list(self.modulus), self.p)
            return FqElem(self, self._from_digits(r + [0] * (self.k - len(r))))
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")

    def zero(self):
        return FqElem(self, 0)

    def one(self):
        return FqElem(self, 1)

    def gen(self):
        return self([0, 1])

    def elements(self):
        return [FqElem(self, v) for v in range(self.q)]

    def coeffs(self, a: int):
        return list(self._digits[a])

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k}, {self.var})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    # -- literals ----------------------------------------------------
    def format(self, a: int) -> str:
        ds = self._digits[a]
        p = self.p
        terms = []
        for i, c in enumerate(ds):
            if c == 0:
                continue
            c = c if c <= p // 2 else c - p
            if i == 0:
                mono = ""
            elif i == 1:
                mono = self.var
            else:
                mono = f"{self.var}^{i}"
            if mono == "":
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        if not terms:
            return "0"
        s = terms[0]
        for t in terms[1:]:
            s += t if t.startswith("-") else "+" + t
        return s

    _TERM = re.compile(r"\s*([+-]?)\s*(\d*)\s*\*?\s*([a-zA-Z]\w*)?\s*(?:\^\s*(\d+))?\s*")

    def parse(self, s: str) -> "FqElem":
        """Parse a literal such as '1-i', '2+z^3' or '-z+1'."""
        s = s.replace(" ", "")
        if not s:
            raise ValueError("empty field literal")
        coeffs = [0] * self.k
        pos = 0
        while pos < len(s):
            m = self._TERM.match(s, pos)
            if not m or m.end() == pos:
                raise ValueError(f"bad field literal {s!r}")
            sign, num, var, ex = m.groups()
            if not num and not var:
                raise ValueError(f"bad field literal {s!r}")
            c = int(num) if num else 1
            if sign == "-":
                c = -c
            if var is None:
                e = 0
                if ex:
                    raise ValueError(f"bad field literal {s!r}")
            else:
                if var != self.var:
                    raise ValueError(f"unknown symbol {var!r} in literal for {self!r}")
                e = int(ex) if ex else 1
            r = fpoly.rem(fpoly.norm([0] * e + [c], self.p), list(self.modulus), self.p)
            for i, x in enumerate(r):
                coeffs[i] = (coeffs[i] + x) % self.p
            pos = m.end()
        return FqElem(self, self._from_digits(coeffs))


class FqElem:
    __slots__ = ("field", "v")

    def __init__(self, field: GF, v: int):
        self.field = field
        self.v = v

    def _coerce(self, other):
        if isinstance(other, FqElem):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("mixing elements of different fields")
            return other.v
        if isinstance(other, int):
            return other % self.field.p
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FqElem(self.field, self.field.add(self.v, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FqElem(self.field, self.field.sub(self.v, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FqElem(self.field, self.field.sub(o, self.v))

    def __neg__(self):
        return FqElem(self.field, self.field.neg_t[self.v])

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FqElem(self.field, self.field.mul(self.v, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FqElem(self.field, self.field.mul(self.v, self.field.inv(o)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FqElem(self.field, self.field.mul(o, self.field.inv(self.v)))

    def __pow__(self, e: int):
        return FqElem(self.field, self.field.pow(self.v, e))

    def inverse(self):
        return FqElem(self.field, self.field.inv(self.v))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.v == o

    def __hash__(self):
        return hash((self.field.q, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return self.field.format(self.v)

    __str__ = __repr__

    def coeffs(self):
        return self.field.coeffs(self.v)

    def frobenius(self, times: int = 1):
        return self ** (self.field.p ** times)

    def order(self) -> int:
        if self.v == 0:
            raise ValueError("0 has no multiplicative order")
        n = self.field.q - 1
        d = n // _gcd(n, self.field.log_t[self.v])
        return d

    def is_square(self) -> bool:
        if self.v == 0 or self.field.p == 2:
            return True
        return self.field.log_t[self.v] % 2 == 0

    def roots_of_unity_power(self, n: int):
        """All x with x^n == self."""
        return [x for x in self.field.elements() if x ** n == self]

    def sqrt(self):
        """Some square root, or None."""
        if self.v == 0:
            return self
        q1 = self.field.q - 1
        lg = self.field.log_t[self.v]
        if self.field.p == 2:
            return FqElem(self.field, self.field.exp_t[(lg * (q1 + 1) // 2) % q1])
        if lg % 2:
            return None
        return FqElem(self.field, self.field.exp_t[lg // 2])

    def nth_root(self, n: int):
        """Some n-th root, or None (brute force over the exponent)."""
        if self.v == 0:
            return self
        q1 = self.field.q - 1
        lg = self.field.log_t[self.v]
        for e in range(q1):
            if (e * n - lg) % q1 == 0:
                return FqElem(self.field, self.field.exp_t[e])
        return None


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@lru_cache(maxsize=None)
def prime_field(p: int) -> GF:
    return GF(p)


@lru_cache(maxsize=None)
def F9() -> GF:
    """F_9 = F_3[i]/(i^2 + 1)."""
    return GF(3, [1, 0, 1], var="i")


@lru_cache(maxsize=None)
def F81() -> GF:
    """F_81 = F_3[z]/(z^4 + z^3 + z^2 + z + 1), z a primitive 5th root of unity."""
    return GF(3, [1, 1, 1, 1, 1], var="z")


@lru_cache(maxsize=None)
def conway_like(p: int, k: int) -> GF:
    """Some fixed F_{p^k}: the least monic irreducible of degree k in lex_key order."""
    if k == 1:
        return prime_field(p)
    import itertools
    for tail in itertools.product(range(p), repeat=k):
        f = list(reversed(tail)) + [1]
        if f[0] and fpoly.is_irreducible(f, p):
            return GF(p, f)
    raise RuntimeError("unreachable")


def embed(x: FqElem, target: GF, gen_image: FqElem) -> FqElem:
    """Image of x under the map sending the generator of x.field to gen_image."""
    acc = target.zero()
    for c in reversed(x.coeffs()):
        acc = acc * gen_image + c
    return acc


def i_in_F81() -> FqElem:
    """The square root of -1 in F_81 used to embed F_9: i = -1 + z + z^4."""
    return F81().parse("-1+z+z^4")


def F9_to_F81(x: FqElem) -> FqElem:
    return embed(x, F81(), i_in_F81())
