"""Dense exact matrices over Q, plus field-generic row reduction."""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd, lcm

from .poly import Poly, interpolate


class DimensionError(ValueError):
    pass


class SingularMatrixError(ArithmeticError):
    def __init__(self, rank: int, size: int, name: str | None = None):
        self.rank = rank
        self.size = size
        self.name = name
        label = f"matrix {name}" if name else "matrix"
        super().__init__(f"{label} is singular (rank {rank} < {size})")


def _q(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    return x


def parse_entry(s):
    if isinstance(s, int):
        return s
    if not isinstance(s, str):
        raise ValueError(f"matrix entry {s!r} must be a string 'n' or 'n/d'")
    s = s.strip()
    if "/" in s:
        n, d = s.split("/")
        if int(d) == 0:
            raise ValueError(f"zero denominator in entry {s!r}")
        return _q(Fraction(int(n), int(d)))
    return int(s)


class RatMatrix:
    __slots__ = ("rows", "cols", "a")

    def __init__(self, data):
        a = [[_q(Fraction(x)) if not isinstance(x, int) else x for x in row] for row in data]
        if not a:
            raise DimensionError("empty matrix")
        cols = len(a[0])
        if any(len(r) != cols for r in a):
            raise DimensionError("ragged rows")
        self.rows = len(a)
        self.cols = cols
        self.a = a

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, entries):
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r, c):
        return cls([[0] * c for _ in range(r)])

    @classmethod
    def from_strings(cls, rows):
        if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
            raise ValueError("matrix file must hold a JSON array of rows")
        return cls([[parse_entry(x) for x in r] for r in rows])

    @classmethod
    def load_json(cls, path):
        with open(path) as fh:
            return cls.from_strings(json.load(fh))

    def to_strings(self):
        return [[str(x) for x in r] for r in self.a]

    def __getitem__(self, ij):
        i, j = ij
        return self.a[i][j]

    def row(self, i):
        return list(self.a[i])

    def col(self, j):
        return [r[j] for r in self.a]

    def is_square(self):
        return self.rows == self.cols

    def is_integral(self):
        return all(isinstance(x, int) for r in self.a for x in r)

    def __eq__(self, other):
        return isinstance(other, RatMatrix) and self.a == other.a

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.a))

    def __repr__(self):
        return f"RatMatrix({self.rows}x{self.cols})"

    def T(self):
        return RatMatrix([list(c) for c in zip(*self.a)])

    transpose = T

    def __add__(self, other):
        self._same_shape(other)
        return RatMatrix([[x + y for x, y in zip(r, s)] for r, s in zip(self.a, other.a)])

    def __sub__(self, other):
        self._same_shape(other)
        return RatMatrix([[x - y for x, y in zip(r, s)] for r, s in zip(self.a, other.a)])

    def __neg__(self):
        return RatMatrix([[-x for x in r] for r in self.a])

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError(f"shape mismatch {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def __mul__(self, other):
        if isinstance(other, RatMatrix):
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
            bt = list(zip(*other.a))
            return RatMatrix([[sum(x * y for x, y in zip(r, c) if x and y) for c in bt] for r in self.a])
        return RatMatrix([[x * other for x in r] for r in self.a])

    __rmul__ = __mul__

    def apply(self, v):
        if len(v) != self.cols:
            raise DimensionError("vector length mismatch")
        return [_q(Fraction(sum(x * y for x, y in zip(r, v)))) for r in self.a]

    def __pow__(self, e: int):
        if not self.is_square():
            raise DimensionError("power of a non-square matrix")
        if e < 0:
            return matrix_inverse(self) ** (-e)
        result = RatMatrix.identity(self.rows)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def denominator(self) -> int:
        d = 1
        for r in self.a:
            for x in r:
                if isinstance(x, Fraction):
                    d = lcm(d, x.denominator)
        return d

    def scaled_int(self, d: int):
        return [[int(x * d) for x in r] for r in self.a]

    def is_symmetric(self):
        return self.is_square() and all(self.a[i][j] == self.a[j][i]
                                        for i in range(self.rows) for j in range(i))


# -- determinants and charpoly ------------------------------------------

def bareiss_det(a) -> int:
    """Fraction-free determinant of a square integer matrix (list of lists)."""
    n = len(a)
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            mik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (pk * ri[j] - mik * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * m[n - 1][n - 1] if n else 1


def determinant(m: RatMatrix):
    if not m.is_square():
        raise DimensionError("determinant of a non-square matrix")
    d = m.denominator()
    n = m.rows
    return _q(Fraction(bareiss_det(m.scaled_int(d)), d ** n))


def charpoly(m: RatMatrix) -> Poly:
    """det(xI - m) by Bareiss evaluation at n+1 integer points and interpolation."""
    if not m.is_square():
        raise DimensionError(f"charpoly needs a square matrix, got {m.rows}x{m.cols}")
    n = m.rows
    d = m.denominator()
    a = m.scaled_int(d)
    xs, ys = [], []
    for k in range(n + 1):
        b = [[(k * d if i == j else 0) - a[i][j] for j in range(n)] for i in range(n)]
        xs.append(k)
        ys.append(Fraction(bareiss_det(b), d ** n))
    p = interpolate(xs, ys)
    if p.degree != n or p.lc() != 1:  # pragma: no cover - interpolation invariant
        raise ArithmeticError("charpoly interpolation lost monicity")
    return p


# -- field-generic elimination ------------------------------------------

def _inv(x):
    if isinstance(x, int):
        return Fraction(1, x)
    return 1 / x


def rref(rows, ncols=None):
    """Reduced row echelon form over a field; returns (matrix, pivot columns).

    Entries may be ints/Fractions, FqElem or CycloElem.
    """
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = _inv(m[r][c])
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    if isinstance(rows, RatMatrix):
        rows = rows.a
    return len(rref(rows)[1])


def nullspace(rows, ncols=None, one=1):
    """Basis of {v : rows * v = 0} over the field of the entries."""
    if isinstance(rows, RatMatrix):
        rows = rows.a
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[one if i == j else one * 0 for i in range(ncols)] for j in range(ncols)]
    red, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    zero = one * 0
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for i, pc in enumerate(piv):
            v[pc] = -red[i][fc]
        basis.append(v)
    return basis


def matrix_inverse(m: RatMatrix, name: str | None = None) -> RatMatrix:
    if not m.is_square():
        raise DimensionError("inverse of a non-square matrix")
    n = m.rows
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.a)]
    red, piv = rref(aug, n)
    if len(piv) < n:
        raise SingularMatrixError(len(piv), n, name)
    return RatMatrix([r[n:] for r in red])


def solve(m: RatMatrix, rhs):
    """Unique solution of m v = rhs (m invertible)."""
    n = m.rows
    aug = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(m.a, rhs)]
    red, piv = rref(aug, m.cols)
    if len(piv) < m.cols:
        raise SingularMatrixError(len(piv), m.cols)
    return [_q(red[i][n]) for i in range(m.cols)]


# -- Smith normal form ---------------------------------------------------

def smith_normal_form(m):
    """Elementary divisors d1 | d2 | ... (including zeros) and det (square only)."""
    if isinstance(m, RatMatrix):
        if not m.is_integral():
            raise ValueError("Smith normal form needs integer entries")
        a = [list(r) for r in m.a]
    else:
        a = [list(r) for r in m]
    rows, cols = len(a), len(a[0])
    det = bareiss_det(a) if rows == cols else None
    t = 0
    while t < min(rows, cols):
        # pick the smallest nonzero pivot in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for r in a:
            r[t], r[j] = r[j], r[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ai, at = a[i], a[t]
                        for j in range(t, cols):
                            ai[j] -= q * at[j]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for r in a:
                            r[j] -= q * r[t]
                    if a[t][j]:
                        done = False
            if done:
                # divisibility of the remaining block
                bad = None
                for i in range(t + 1, rows):
                    for j in range(t + 1, cols):
                        if a[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                at, ab = a[t], a[bad]
                for j in range(t, cols):
                    at[j] += ab[j]
                continue
            # move the smallest entry of row/col t to the pivot
            best = (t, t)
            for i in range(t, rows):
                if a[i][t] and abs(a[i][t]) < abs(a[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t, cols):
                if a[t][j] and abs(a[t][j]) < abs(a[best[0]][best[1]]):
                    best = (t, j)
            i, j = best
            a[t], a[i] = a[i], a[t]
            for r in a:
                r[t], r[j] = r[j], r[t]
        t += 1
    invariants = [abs(a[i][i]) for i in range(min(rows, cols))]
    return invariants, det


def integer_rank(m) -> int:
    inv, _ = smith_normal_form(m)
    return sum(1 for d in inv if d)
