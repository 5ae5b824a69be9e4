"""Stirling numbers of both kinds associated with a delta series.

Triangles store EGF-normalized entries: entry (n, k) is n! times the
ordinary t^n coefficient of the k-th column generating function.  The
series layer stores ordinary coefficients; every conversion between the
two conventions goes through :func:`deltaseries.fps.egf_coeff`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
import random

from . import classical as cl
from . import fps
from . import scalar as sc
from .errors import (
    ArityTooSmall,
    InsufficientOrder,
    NonRepresentablePower,
    NonUnitBaseForRationalPower,
)

# ---------------------------------------------------------------------------
# triangles


class Triangle:
    """Lower-triangular table of scalars indexed (n, k), 0 <= k <= n <= max_n."""

    __slots__ = ("kind", "max_n", "rows", "ring", "f_fingerprint")

    def __init__(self, kind, max_n, rows, ring, f_fingerprint=""):
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "max_n", max_n)
        object.__setattr__(self, "rows", tuple(tuple(r) for r in rows))
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "f_fingerprint", f_fingerprint)

    def __setattr__(self, name, value):
        raise AttributeError("Triangle is immutable")

    def entry(self, n, k):
        if k < 0 or k > n or n > self.max_n:
            return Fraction(0)
        return self.rows[n][k]

    def with_entry(self, n, k, value):
        """Copy with one cell replaced (used for negative-control tests)."""
        rows = [list(r) for r in self.rows]
        rows[n][k] = value
        return Triangle(self.kind, self.max_n, rows, self.ring, self.f_fingerprint)

    def to_json(self, f_label=None):
        return {
            "kind": self.kind,
            "f": f_label if f_label is not None else self.f_fingerprint,
            "ring": self.ring,
            "max_n": self.max_n,
            "rows": [[sc.format_scalar(c) for c in row] for row in self.rows],
        }

    def to_csv(self):
        lines = ["n,k,value"]
        for n in range(self.max_n + 1):
            for k in range(n + 1):
                val = sc.format_scalar(self.rows[n][k])
                if "/" in val or "," in val:
                    val = '"%s"' % val
                lines.append("%d,%d,%s" % (n, k, val))
        return "\n".join(lines) + "\n"


def _triangle_from_powers(base, max_n, kind, fingerprint):
    """Triangle whose column k is the EGF of base^k / k!."""
    cols = []
    p = fps.one(max_n, base.ring)
    for k in range(max_n + 1):
        cols.append(p)
        if k < max_n:
            p = fps.scale(fps.mul(p, base), Fraction(1, k + 1))
    rows = []
    for n in range(max_n + 1):
        rows.append([fps.egf_coeff(cols[k], n) for k in range(n + 1)])
    return Triangle(kind, max_n, rows, base.ring, fingerprint)


@lru_cache(maxsize=None)
def compositional_inverse(f):
    """Cached Newton inverse of a delta series."""
    return fps.invert_newton(f)


def _fingerprint(f):
    return fps.series_to_json_str(f.series)


def _log1p(order):
    return fps.Series(order, [Fraction(0)] + [Fraction((-1) ** (n - 1), n) for n in range(1, order + 1)])


@lru_cache(maxsize=None)
def s2_assoc(f, max_n):
    """Triangle of S2(n, k; f): EGF coefficients of (e^{fbar} - 1)^k / k!."""
    if f.order < max_n:
        raise InsufficientOrder("delta series order %d < max_n %d" % (f.order, max_n))
    m = max(max_n, 1)
    fb = compositional_inverse(f.truncate(m))
    base = fps.sub(fps.exp_series(fb.series), fps.one(m, fb.ring)).truncate(max_n)
    return _triangle_from_powers(base, max_n, "s2", _fingerprint(f))


@lru_cache(maxsize=None)
def s1_assoc(f, max_n):
    """Triangle of S1(n, k; f): EGF coefficients of the associated-log powers."""
    if f.order < max_n:
        raise InsufficientOrder("delta series order %d < max_n %d" % (f.order, max_n))
    base = assoc_log(f).truncate(max_n)
    return _triangle_from_powers(base, max_n, "s1", _fingerprint(f))


@lru_cache(maxsize=None)
def assoc_log(f):
    """The logarithm associated with f: f(log(1+t))."""
    return fps.compose(f.series, _log1p(f.order))


# ---------------------------------------------------------------------------
# Bernoulli families


class BernoulliFamily:
    """Order-alpha Bernoulli numbers (and optional x-polynomials) for a base."""

    __slots__ = ("base", "order_alpha", "values", "xpolys")

    def __init__(self, base, order_alpha, values, xpolys=None):
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "order_alpha", order_alpha)
        object.__setattr__(self, "values", tuple(values))
        object.__setattr__(self, "xpolys", tuple(xpolys) if xpolys is not None else None)

    def __setattr__(self, name, value):
        raise AttributeError("BernoulliFamily is immutable")


@lru_cache(maxsize=None)
def bernoulli_assoc(g, alpha, max_n, with_x=False):
    """Numbers n! [t^n] (t/(e^{g(t)}-1))^alpha, optionally with e^{x g(t)}."""
    alpha = Fraction(alpha)
    if g.order < max_n + 1:
        raise InsufficientOrder("base order %d < max_n+1 = %d" % (g.order, max_n + 1))
    gs = g.series.truncate(max_n + 1)
    w = fps.shift_down(fps.sub(fps.exp_series(gs), fps.one(max_n + 1, gs.ring)), 1)
    if alpha.denominator == 1:
        base = fps.pow_int(w, -int(alpha))
    else:
        if w.coeffs[0] != 1:
            raise NonUnitBaseForRationalPower(
                "rational order needs g'(0) = 1, got %s" % sc.format_scalar(w.coeffs[0])
            )
        base = fps.pow_ratio(w, -alpha)
    values = [fps.egf_coeff(base, n) for n in range(max_n + 1)]
    xpolys = None
    if with_x:
        gt = gs.truncate(max_n)
        cols = []
        p = base.truncate(max_n)
        for k in range(max_n + 1):
            cols.append(p)
            if k < max_n:
                p = fps.scale(fps.mul(p, gt), Fraction(1, k + 1))
        xpolys = [
            XPoly([fps.egf_coeff(cols[k], n) for k in range(n + 1)], BASIS_MONOMIAL)
            for n in range(max_n + 1)
        ]
    return BernoulliFamily(g, alpha, values, xpolys)


def scalar_rat_pow(s, e):
    """s**e for rational e; only integer e or base 1 are representable."""
    e = Fraction(e)
    if e.denominator == 1:
        return sc.scalar_pow(s, int(e))
    if s == 1:
        return Fraction(1)
    raise NonRepresentablePower("cannot raise %s to power %s exactly" % (sc.format_scalar(s), e))


# ---------------------------------------------------------------------------
# partial Bell polynomials


def partial_bell(n, k, xs):
    """B_{n,k}(x1, ..., x_{n-k+1}) via the truncated k-th power EGF."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    if k == 0:
        return Fraction(1) if n == 0 else Fraction(0)
    if len(xs) < n - k + 1:
        raise ArityTooSmall("need %d arguments, got %d" % (n - k + 1, len(xs)))
    coeffs = [Fraction(0)] * (n + 1)
    for m in range(1, min(n, n - k + 1) + 1):
        coeffs[m] = sc.simplify(xs[m - 1] * Fraction(1, math.factorial(m)))
    s = fps.Series(n, coeffs)
    p = fps.scale(fps.pow_int(s, k), Fraction(1, math.factorial(k)))
    return fps.egf_coeff(p, n)


# ---------------------------------------------------------------------------
# the theorems of the core section as executable formulas


def s1_via_bernoulli(f, n, k):
    """First-kind entry as C(n-1, k-1) times an order-n Bernoulli number."""
    c = cl.binom_shift(n, k)
    if c == 0:
        return Fraction(0)
    m = n - k
    fb = compositional_inverse(f)
    fam = bernoulli_assoc(fb, Fraction(n), m)
    return sc.simplify(fam.values[m] * c)


def moment_sequence(f, max_m):
    """EGF coefficients p_m of e^{fbar(t)} for m <= max_m."""
    if f.order < max_m:
        raise InsufficientOrder("order %d < %d" % (f.order, max_m))
    fb = compositional_inverse(f)
    e = fps.exp_series(fb.series)
    return [fps.egf_coeff(e, m) for m in range(max_m + 1)]


def lemma_bell_moments(f, n, k):
    """Left side of the Bell-moment lemma: B_{n,k}(p2/2, p3/3, ...)."""
    ps = moment_sequence(f, n - k + 2)
    xs = [sc.simplify(ps[m] * Fraction(1, m)) for m in range(2, n - k + 3)]
    return partial_bell(n, k, xs)


def lemma_bell_moments_sum(f, n, k, s2=None):
    """Right side of the Bell-moment lemma, from second-kind entries."""
    if s2 is None:
        s2 = s2_assoc(f, n + k)
    p1 = sc.scalar_inv(f[1])
    acc = Fraction(0)
    ratio = Fraction(math.factorial(n), math.factorial(n + k))
    for j in range(k + 1):
        c = cl.comb0(n + k, k - j)
        if c == 0:
            continue
        acc = acc + (c * ratio) * sc.scalar_pow(-p1, k - j) * s2.entry(n + j, j)
    return sc.simplify(acc)


def bernoulli_via_lemma24(f, alpha, n):
    """Order-alpha Bernoulli number from the Bell-moment expansion."""
    ps = moment_sequence(f, n + 2)
    p1 = ps[1]
    xs = [sc.simplify(ps[m] * Fraction(1, m)) for m in range(2, n + 3)]
    acc = Fraction(0)
    for k in range(n + 1):
        fk = cl.falling_factorial(-alpha, k)
        if fk == 0:
            continue
        acc = acc + fk * scalar_rat_pow(p1, -alpha - k) * partial_bell(n, k, xs)
    return sc.simplify(acc)


def bernoulli_via_s2(f, alpha, n, s2=None):
    """Order-alpha Bernoulli number from the double second-kind sum."""
    alpha = Fraction(alpha)
    if s2 is None:
        s2 = s2_assoc(f, 2 * n)
    p1 = sc.scalar_inv(f[1])
    acc = Fraction(0)
    for k in range(n + 1):
        bk = cl.binom_general(alpha + k - 1, k)
        if sc.is_zero_scalar(bk):
            continue
        for j in range(k + 1):
            c = cl.comb0(k, j)
            if c == 0:
                continue
            coef = bk * Fraction(c * (-1) ** j, cl.comb0(n + j, j))
            acc = acc + coef * scalar_rat_pow(p1, -alpha - j) * s2.entry(n + j, j)
    return sc.simplify(acc)


def bernoulli_via_s2_alpha1(f, n, s2=None):
    """Order-1 Bernoulli number from the single-sum corollary."""
    if s2 is None:
        s2 = s2_assoc(f, 2 * n)
    p1 = sc.scalar_inv(f[1])
    acc = Fraction(0)
    for j in range(n + 1):
        coef = Fraction(cl.comb0(n + 1, j + 1) * (-1) ** j, cl.comb0(n + j, j))
        acc = acc + coef * sc.scalar_pow(p1, -1 - j) * s2.entry(n + j, j)
    return sc.simplify(acc)


def schloemilch_s1(f, n, k, s2=None):
    """First-kind entry by the explicit second-kind (Schloemilch-type) sum."""
    if k < 0 or k > n:
        return Fraction(0)
    if s2 is None:
        s2 = s2_assoc(f, max(2 * (n - k), 0))
    p1 = sc.scalar_inv(f[1])
    acc = Fraction(0)
    for j in range(n - k + 1):
        c = cl.comb0(n + j - 1, n + j - k) * cl.comb0(2 * n - k, n - k - j)
        if c == 0:
            continue
        acc = acc + Fraction(c * (-1) ** j) * sc.scalar_pow(p1, -(n + j)) * s2.entry(n - k + j, j)
    return sc.simplify(acc)


def assoc_log_expansion(f, max_n, s2=None):
    """The associated logarithm rebuilt from second-kind entries only."""
    need = max(2 * max_n - 2, max_n)
    if s2 is None:
        s2 = s2_assoc(f, need)
    p1 = sc.scalar_inv(f[1])
    egf = [Fraction(0)]
    for n in range(1, max_n + 1):
        acc = Fraction(0)
        for j in range(n):
            c = cl.comb0(2 * n - 1, n - 1 - j)
            if c == 0:
                continue
            acc = acc + Fraction(c * (-1) ** j) * sc.scalar_pow(p1, -(n + j)) * s2.entry(n - 1 + j, j)
        egf.append(sc.simplify(acc))
    return fps.from_egf(egf)


# ---------------------------------------------------------------------------
# polynomials in x

BASIS_MONOMIAL = "monomial"
BASIS_FALLING = "falling"
BASIS_FALLING_LAMBDA = "falling_l"


class XPoly:
    """Polynomial in x with scalar coefficients, in a tagged basis.

    The falling_l basis always refers to the symbolic parameter l.
    """

    __slots__ = ("coeffs", "basis")

    def __init__(self, coeffs, basis=BASIS_MONOMIAL):
        cs = [sc.simplify(c) for c in coeffs]
        while len(cs) > 1 and sc.is_zero_scalar(cs[-1]):
            cs.pop()
        if not cs:
            cs = [Fraction(0)]
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("XPoly is immutable")

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def to_monomial(self):
        if self.basis == BASIS_MONOMIAL:
            return self
        out = [Fraction(0)] * len(self.coeffs)
        for k, c in enumerate(self.coeffs):
            if sc.is_zero_scalar(c):
                continue
            if self.basis == BASIS_FALLING:
                base = [Fraction(cl.classical_s1(k, m)) for m in range(k + 1)]
            else:
                base = cl.deg_falling_coeffs(k, sc.LAMBDA)
            for m, b in enumerate(base):
                out[m] = out[m] + c * b
        return XPoly(out, BASIS_MONOMIAL)

    def convert(self, target):
        if target == self.basis:
            return self
        mono = self.to_monomial().coeffs
        if target == BASIS_MONOMIAL:
            return XPoly(mono, BASIS_MONOMIAL)
        if target == BASIS_FALLING:
            out = [Fraction(0)] * len(mono)
            for m, c in enumerate(mono):
                if sc.is_zero_scalar(c):
                    continue
                for k in range(m + 1):
                    s = cl.classical_s2(m, k)
                    if s:
                        out[k] = out[k] + c * s
            return XPoly(out, BASIS_FALLING)
        if target == BASIS_FALLING_LAMBDA:
            return XPoly(cl.to_deg_falling_basis(list(mono), sc.LAMBDA), BASIS_FALLING_LAMBDA)
        raise ValueError("unknown basis %r" % (target,))

    def eval(self, x):
        mono = self.to_monomial().coeffs
        acc = Fraction(0)
        for c in reversed(mono):
            acc = acc * x + c
        return sc.simplify(acc)

    def __eq__(self, other):
        if not isinstance(other, XPoly):
            return NotImplemented
        a, b = self.to_monomial().coeffs, other.to_monomial().coeffs
        if len(a) != len(b):
            return False
        return all(x == y for x, y in zip(a, b))

    def __hash__(self):
        return hash(self.to_monomial().coeffs)

    def __repr__(self):
        return "XPoly(%s, basis=%s)" % (
            [sc.format_scalar(c) for c in self.coeffs],
            self.basis,
        )


def basis_convert(p, target):
    """Exact change of basis for an XPoly; round trips are identities."""
    return p.convert(target)


def poly_seq(f, max_n):
    """The associated sequence p_n(x): EGF coefficients of e^{x fbar(t)}."""
    if f.order < max_n:
        raise InsufficientOrder("order %d < max_n %d" % (f.order, max_n))
    fb = compositional_inverse(f).series.truncate(max_n)
    cols = []
    p = fps.one(max_n, fb.ring)
    for k in range(max_n + 1):
        cols.append(p)
        if k < max_n:
            p = fps.scale(fps.mul(p, fb), Fraction(1, k + 1))
    return [
        XPoly([fps.egf_coeff(cols[k], n) for k in range(n + 1)], BASIS_MONOMIAL)
        for n in range(max_n + 1)
    ]


def bell_assoc(f, max_n):
    """Bell polynomials associated with f: rows of the second-kind triangle."""
    tri = s2_assoc(f, max_n)
    return [XPoly(tri.rows[n], BASIS_MONOMIAL) for n in range(max_n + 1)]


# ---------------------------------------------------------------------------
# orthogonality


class OrthogonalityReport:
    __slots__ = ("ok", "failures")

    def __init__(self, failures):
        object.__setattr__(self, "ok", not failures)
        object.__setattr__(self, "failures", tuple(failures))

    def __setattr__(self, name, value):
        raise AttributeError("OrthogonalityReport is immutable")

    def __repr__(self):
        if self.ok:
            return "OrthogonalityReport(ok)"
        return "OrthogonalityReport(%d failures, first=%r)" % (len(self.failures), self.failures[0])


def check_orthogonality_triangles(s2, s1, seed=0):
    """Verify both delta sums and the randomized inverse-pair relations."""
    max_n = min(s2.max_n, s1.max_n)
    failures = []
    for n in range(max_n + 1):
        for l in range(n + 1):
            lhs = Fraction(0)
            rhs = Fraction(0)
            for k in range(l, n + 1):
                lhs = lhs + s2.entry(n, k) * s1.entry(k, l)
                rhs = rhs + s1.entry(n, k) * s2.entry(k, l)
            want = Fraction(1 if n == l else 0)
            if sc.simplify(lhs) != want:
                failures.append(("s2*s1", n, l, sc.simplify(lhs), want))
            if sc.simplify(rhs) != want:
                failures.append(("s1*s2", n, l, sc.simplify(rhs), want))
    rng = random.Random(seed)
    a = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(max_n + 1)]
    # relation (b): b from S1 then back through S2
    b = [sum((s1.entry(n, k) * a[k] for k in range(n + 1)), Fraction(0)) for n in range(max_n + 1)]
    back = [sum((s2.entry(n, k) * b[k] for k in range(n + 1)), Fraction(0)) for n in range(max_n + 1)]
    for n in range(max_n + 1):
        if sc.simplify(back[n]) != sc.simplify(a[n]):
            failures.append(("inverse-pair-b", n, None, sc.simplify(back[n]), sc.simplify(a[n])))
    # relation (c): transposed sums over k >= n
    m = max_n
    bc = [sum((s1.entry(k, n) * a[k] for k in range(n, m + 1)), Fraction(0)) for n in range(m + 1)]
    backc = [sum((s2.entry(k, n) * bc[k] for k in range(n, m + 1)), Fraction(0)) for n in range(m + 1)]
    for n in range(m + 1):
        if sc.simplify(backc[n]) != sc.simplify(a[n]):
            failures.append(("inverse-pair-c", n, None, sc.simplify(backc[n]), sc.simplify(a[n])))
    return OrthogonalityReport(failures)


def orthogonality_check(f, max_n, seed=0):
    return check_orthogonality_triangles(s2_assoc(f, max_n), s1_assoc(f, max_n), seed)
