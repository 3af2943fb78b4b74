"""Cyclotomic stripping, Salem tests and irreducibility certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .exact import factor_mod_p
from .exact.poly import Poly, cyclotomic, euler_phi, interpolate, is_squarefree
from .exact.sturm import sturm_count

SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _check_monic(f: Poly):
    if not f:
        raise ValueError("zero polynomial")
    if f.lc() != 1:
        raise ValueError("polynomial must be monic")


def _phi_inverse_bound(d: int):
    """All n with phi(n) <= d."""
    # phi(n) >= sqrt(n/2), so n <= 2 d^2 is a safe search range
    return [n for n in range(1, 2 * d * d + 3) if euler_phi(n) <= d]


def strip_cyclotomic(f: Poly):
    """Divide out every cyclotomic factor to full multiplicity.

    Returns ([(n, mult), ...], residual) with prod Phi_n^mult * residual == f.
    """
    _check_monic(f)
    parts = []
    r = f
    for n in _phi_inverse_bound(f.degree):
        if euler_phi(n) > r.degree:
            continue
        phi = cyclotomic(n)
        mult = 0
        while r.degree >= phi.degree:
            q, rem = r.divmod(phi)
            if rem:
                break
            r = q
            mult += 1
        if mult:
            parts.append((n, mult))
    return parts, r


def cyclotomic_eigen_count(parts) -> int:
    """Number of root-of-unity roots with multiplicity."""
    return sum(euler_phi(n) * m for n, m in parts)


def is_reciprocal(f: Poly) -> bool:
    return f.c == f.c[::-1]


def trace_polynomial(f: Poly) -> Poly:
    """g with f(x) = x^m g(x + 1/x) for self-reciprocal f of degree 2m."""
    if f.degree % 2 or not is_reciprocal(f):
        raise ValueError("trace polynomial needs a self-reciprocal polynomial of even degree")
    m = f.degree // 2
    y = Poly([0, 1])
    # x^j + x^-j = T_j(y):  T_0 = 2, T_1 = y, T_{j+1} = y T_j - T_{j-1}
    cheb = [Poly([2]), y]
    for _ in range(2, m + 1):
        cheb.append(y * cheb[-1] - cheb[-2])
    g = Poly([f.c[m]])
    for j in range(1, m + 1):
        g = g + cheb[j] * f.c[m + j]
    return g


@dataclass
class SalemCheck:
    salem: bool
    reason: str
    above_2: int | None = None
    inside: int | None = None
    trace: Poly | None = None


def salem_check(f: Poly) -> SalemCheck:
    if not f:
        raise ValueError("zero polynomial")
    if f.lc() != 1:
        return SalemCheck(False, "not monic")
    if f.c[0] == 0:
        return SalemCheck(False, "zero constant term")
    if f.degree % 2:
        return SalemCheck(False, "odd degree")
    if not is_reciprocal(f):
        return SalemCheck(False, "not self-reciprocal")
    g = trace_polynomial(f)
    if not is_squarefree(g):
        return SalemCheck(False, "trace polynomial has repeated roots", trace=g)
    m = g.degree
    above = sturm_count(g, 2, None)
    inside = sturm_count(g, -2, 2)
    ok = above == 1 and inside == m - 1
    why = "ok" if ok else f"trace roots: {above} in (2,inf), {inside} in (-2,2) of {m}"
    return SalemCheck(ok, why, above, inside, g)


def is_salem(f: Poly) -> bool:
    return salem_check(f).salem


# -- irreducibility --------------------------------------------------------

def _subset_sums(degs):
    sums = {0}
    for d in degs:
        sums |= {s + d for s in sums}
    return sums


def modular_degree_sets(f: Poly, primes=SMALL_PRIMES):
    """Yield (p, factor degrees, possible factor degrees over Z) per prime.

    Every factor over Z reduces to a product of irreducible factors mod p,
    so its degree is a subset sum of the multiset of modular factor
    degrees.  Primes dividing the leading coefficient are skipped.
    """
    for p in primes:
        if f.lc() % p == 0:
            continue
        _, facs = factor_mod_p(f, p)
        degs = [g.degree for g, m in facs for _ in range(m)]
        yield p, sorted(degs), _subset_sums(degs)


def _divisors(n: int):
    n = abs(n)
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    ds = sorted(set(small + [n // d for d in small]))
    return ds + [-d for d in ds]


def kronecker_factor(f: Poly, max_degree: int = 3, budget: int = 200000):
    """Search for a factor of degree <= max_degree by Kronecker's method."""
    n = f.degree
    for d in range(1, min(max_degree, n // 2) + 1):
        cands = []
        for a in range(-12, 13):
            v = f(a)
            if v == 0:
                return Poly([-a, 1])
            cands.append((len(_divisors(v)), a, v))
        cands.sort()
        pts = cands[: d + 1]
        size = 1
        for k, _, _ in pts:
            size *= k
        if size > budget:
            continue
        xs = [a for _, a, _ in pts]
        found = []
        for ys in product(*[_divisors(v) for _, _, v in pts]):
            g = interpolate(xs, list(ys))
            if g.degree != d or not g.is_integral():
                continue
            g = g.as_int()
            if g.lc() < 0:
                g = -g
            q, r = f.divmod(g)
            if not r and q.is_integral():
                found.append(g)
        if found:
            return min(found, key=lambda g: g.c)
    return None


@dataclass
class IrreducibilityResult:
    verdict: str  # "yes", "no" or "inconclusive"
    certificate: str
    primes: tuple = ()
    factor: Poly | None = None
    notes: list = field(default_factory=list)

    @property
    def irreducible(self):
        return self.verdict == "yes"


def is_irreducible_over_Z(f: Poly) -> IrreducibilityResult:
    if not f or f.degree < 1:
        raise ValueError("need a polynomial of degree >= 1")
    if not f.is_integral():
        raise ValueError("integer coefficients required")
    notes = []
    c = f.content()
    if c != 1:
        notes.append(f"normalized by content {c}")
        f = f.primitive_part()
    if f.lc() < 0:
        f = -f
    if f.degree == 1:
        return IrreducibilityResult("yes", "linear", notes=notes)
    for r in (0, 1, -1, 2, -2):
        if f(r) == 0:
            return IrreducibilityResult("no", "rational-root", factor=Poly([-r, 1]), notes=notes)

    n = f.degree
    common = set(range(n + 1))
    used = []
    for p, _, sums in modular_degree_sets(f):
        used.append(p)
        common &= sums
        if common == {0, n}:
            return IrreducibilityResult("yes", "modular-degree-sets", tuple(used), notes=notes)

    if f.lc() == 1 and is_reciprocal(f):
        parts, _ = strip_cyclotomic(f)
        if not parts and is_salem(f):
            # exactly one root off the unit circle up to inversion; any
            # other factor has all roots on the circle, so it is cyclotomic
            return IrreducibilityResult("yes", "salem-cyclotomic", notes=notes)

    g = kronecker_factor(f)
    if g is not None:
        return IrreducibilityResult("no", "explicit-factor", factor=g, notes=notes)
    return IrreducibilityResult("inconclusive", "none", tuple(used), notes=notes)


# -- criteria --------------------------------------------------------------

def non_extendability_checks(cp_special: Poly, rho: int, finite_order: bool | None = None,
                             cp_generic: Poly | None = None):
    """Which of the characteristic-polynomial criteria fire.

    Returns a list of dicts {criterion, detail}; an empty list means the
    data are inconclusive.
    """
    if cp_special.degree != 22:
        raise ValueError(f"expected degree 22, got {cp_special.degree}")
    if not 1 <= rho <= 22:
        raise ValueError(f"Picard number {rho} outside 1..22")
    ident = Poly([-1, 1]) ** 22
    parts, _ = strip_cyclotomic(cp_special)
    count = cyclotomic_eigen_count(parts)
    out = []
    if cp_generic is not None and cp_generic != ident and cp_special == ident:
        out.append({"criterion": "a", "detail": "generic action nontrivial, special action trivial"})
    if count < 22 - rho:
        out.append({"criterion": "b", "detail": f"{count} root-of-unity eigenvalues < {22 - rho}"})
    if finite_order and count <= 22 - rho:
        out.append({"criterion": "c", "detail": f"finite order and {count} <= {22 - rho}"})
    if cp_special.is_integral() and is_irreducible_over_Z(cp_special).irreducible:
        out.append({"criterion": "irr", "detail": "special characteristic polynomial is irreducible"})
    if cp_generic is not None and cp_generic != cp_special:
        out.append({"criterion": "mismatch", "detail": "generic and special characteristic polynomials differ"})
    return out


@dataclass
class SalemReport:
    input: Poly
    cyclotomic_part: list
    residual: Poly
    residual_is_salem: bool
    salem_trace_roots: dict
    irreducible: IrreducibilityResult
    criteria: list = field(default_factory=list)

    def as_json(self):
        return {
            "input": self.input.to_strings(),
            "cyclotomic": [{"n": n, "mult": m} for n, m in self.cyclotomic_part],
            "residual": self.residual.to_strings(),
            "salem": self.residual_is_salem,
            "irreducible": self.irreducible.verdict,
            "certificate": self.irreducible.certificate,
            "primes": list(self.irreducible.primes),
            "trace_roots": self.salem_trace_roots,
            "criteria": self.criteria,
        }


def salem_report(f: Poly, rho: int | None = None) -> SalemReport:
    parts, resid = strip_cyclotomic(f)
    if resid.degree >= 1 and not resid.is_integral():
        chk = SalemCheck(False, "non-integral coefficients")
        irr = IrreducibilityResult("inconclusive", "non-integral")
    elif resid.degree >= 1:
        chk = salem_check(resid)
        irr = is_irreducible_over_Z(resid)
    else:
        chk = SalemCheck(False, "no residual")
        irr = IrreducibilityResult("inconclusive", "constant residual")
    roots = {"above_2": chk.above_2, "inside": chk.inside}
    crit = non_extendability_checks(f, rho) if rho is not None and f.degree == 22 else []
    return SalemReport(f, parts, resid, chk.salem, roots, irr, crit)
