"""The fifteen built-in delta series families and their closed-form oracles.

Each preset pairs a programmatic construction of its delta series f with
independent evaluators for the first/second-kind triangles and for the
associated logarithm, so the core machinery can be checked against stated
closed forms.  Oracles use only classical recurrences, direct products,
and the raw series primitives -- never the triangle builders themselves.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from . import classical as cl
from . import fps
from . import scalar as sc
from .errors import LambdaModeRequired, NoOracle, UnknownPreset, ZeroFirstMoment

LAMBDA_ABSENT = sc.LAMBDA_ABSENT
LAMBDA_SYMBOLIC = sc.LAMBDA_SYMBOLIC
resolve_lambda_mode = sc.resolve_lambda_mode


# ---------------------------------------------------------------------------
# series construction helpers

def _series_from_coeff_fn(order, fn):
    return fps.Series(order, [sc.simplify(fn(n)) for n in range(order + 1)])


def _log1p(order):
    return fps.Series(order, [Fraction(0)] + [Fraction((-1) ** (n - 1), n) for n in range(1, order + 1)])


def deg_log1p_of(u, lam):
    """log_lam(1 + u(t)) for a series u with zero constant term.

    Expanded as sum_{k>=1} lam^{k-1} L^k / k! with L = log(1+u), which stays
    polynomial in lam.
    """
    order = u.order
    one = fps.one(order, u.ring)
    L = fps.log_series(fps.add(one, u))
    acc = L
    p = L
    for k in range(2, order + 1):
        p = fps.mul(p, L)
        w = sc.simplify((lam ** (k - 1)) * Fraction(1, math.factorial(k)))
        acc = fps.add(acc, fps.scale(p, w))
    return acc


def deg_log1p_direct(order, lam):
    """log_lam(1+t) from the closed product: EGF coefficient (lam-1)_{n-1}."""
    egf = [Fraction(0)]
    for n in range(1, order + 1):
        egf.append(sc.simplify(cl.falling_factorial(lam - 1, n - 1)))
    return fps.from_egf(egf)


def _exp_am1(order, a):
    """e^{a t} - 1 as a series: coefficients a^n / n!."""
    return _series_from_coeff_fn(order, lambda n: Fraction(0) if n == 0 else (a ** n) * Fraction(1, math.factorial(n)))


def _central_bell_w(order, inner=None):
    """w = (u + sqrt(u^2 + 4)) / 2 with w(0) = 1, for u = t or a given series."""
    u = inner if inner is not None else fps.t_series(order)
    u2 = fps.mul(u, u)
    s = fps.pow_ratio(fps.add(fps.one(order, u.ring), fps.scale(u2, Fraction(1, 4))), Fraction(1, 2))
    return fps.add(fps.scale(u, Fraction(1, 2)), s)


# ---------------------------------------------------------------------------
# per-preset builders

def _build_identity(order, lam):
    return fps.t_series(order)


def _build_deg_falling(order, lam):
    return _series_from_coeff_fn(
        order, lambda n: Fraction(0) if n == 0 else (lam ** (n - 1)) * Fraction(1, math.factorial(n))
    )


def _build_rising(order, lam):
    return _series_from_coeff_fn(
        order, lambda n: Fraction(0) if n == 0 else Fraction(-((-1) ** n), math.factorial(n))
    )


def _build_deg_rising(order, lam):
    return _series_from_coeff_fn(
        order,
        lambda n: Fraction(0) if n == 0 else ((-1) ** (n + 1)) * (lam ** (n - 1)) * Fraction(1, math.factorial(n)),
    )


def _build_central(order, lam):
    half = Fraction(1, 2)
    return _series_from_coeff_fn(
        order, lambda n: (half ** n - (-half) ** n) * Fraction(1, math.factorial(n))
    )


def _build_central_bell(order, lam):
    return fps.scale(fps.log_series(_central_bell_w(order)), 2)


def _build_deg_central_bell(order, lam):
    w = _central_bell_w(order)
    w2m1 = fps.sub(fps.mul(w, w), fps.one(order))
    return deg_log1p_of(w2m1, lam)


def _build_lah_bell(order, lam):
    return _series_from_coeff_fn(order, lambda n: Fraction(0) if n == 0 else Fraction((-1) ** (n - 1)))


def _build_deg_lah_bell(order, lam):
    # (e^{lam t}-1)/(lam + e^{lam t}-1) with the shared factor lam cancelled
    num = _build_deg_falling(order, lam)
    den = fps.add(fps.one(order, num.ring), num)
    return fps.div(num, den)


def _build_bell(order, lam):
    return _log1p(order)


def _build_partial_deg_bell(order, lam):
    return deg_log1p_of(fps.t_series(order), lam)


def _build_full_deg_bell(order, lam):
    return deg_log1p_of(_build_deg_falling(order, lam), lam)


def _build_mittag_leffler(order, lam):
    e = _exp_am1(order, Fraction(1))
    return fps.div(e, fps.add(e, fps.scale(fps.one(order), 2)))


def _build_laguerre_m1(order, lam):
    return _series_from_coeff_fn(order, lambda n: Fraction(0) if n == 0 else Fraction(-1))


def _build_probabilistic(order, lam):
    return moment_delta(uniform_moments(lam), order).series


# ---------------------------------------------------------------------------
# registry

class Preset:
    """A ready-made delta series family with optional closed-form oracles."""

    __slots__ = ("id", "letter", "lam", "f", "expr", "formula", "classical_partner")

    def __init__(self, pid, letter, lam, f, expr, formula, classical_partner):
        object.__setattr__(self, "id", pid)
        object.__setattr__(self, "letter", letter)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "expr", expr)
        object.__setattr__(self, "formula", formula)
        object.__setattr__(self, "classical_partner", classical_partner)

    def __setattr__(self, name, value):
        raise AttributeError("Preset is immutable")

    def oracle_s2(self, n, k):
        return oracle_s2(self.id, n, k, self.lam)

    def oracle_s1(self, n, k):
        return oracle_s1(self.id, n, k, self.lam)

    def oracle_log(self, order):
        return oracle_log(self.id, order, self.lam)


# id -> (letter, degenerate?, builder, grammar expr or None, display formula, classical partner)
_REGISTRY = {
    "identity": ("b", False, _build_identity, "t", "t", None),
    "deg_falling": ("c", True, _build_deg_falling, "(exp(lambda*t)-1)/lambda", "(e^(lambda*t)-1)/lambda", "identity"),
    "rising": ("d", False, _build_rising, "1-exp(-t)", "1-e^(-t)", None),
    "deg_rising": ("e", True, _build_deg_rising, "(1-exp(-lambda*t))/lambda", "(1-e^(-lambda*t))/lambda", "identity"),
    "central": ("f", False, _build_central, "exp(t/2)-exp(-t/2)", "e^(t/2)-e^(-t/2)", None),
    "central_bell": ("g", False, _build_central_bell, "2*log((t+sqrt(t^2+4))/2)", "2*log((t+sqrt(t^2+4))/2)", None),
    "deg_central_bell": ("h", True, _build_deg_central_bell, None, "log_lambda(((t+sqrt(t^2+4))/2)^2)", "central_bell"),
    "lah_bell": ("i", False, _build_lah_bell, "t/(1+t)", "t/(1+t)", None),
    "deg_lah_bell": ("j", True, _build_deg_lah_bell, "(exp(lambda*t)-1)/(lambda+exp(lambda*t)-1)", "(e^(lambda*t)-1)/(lambda+e^(lambda*t)-1)", "lah_bell"),
    "bell": ("k", False, _build_bell, "log(1+t)", "log(1+t)", None),
    "partial_deg_bell": ("l", True, _build_partial_deg_bell, None, "log_lambda(1+t)", "bell"),
    "full_deg_bell": ("m", True, _build_full_deg_bell, None, "log_lambda(1+(e^(lambda*t)-1)/lambda)", "bell"),
    "mittag_leffler": ("n", False, _build_mittag_leffler, "(exp(t)-1)/(exp(t)+1)", "(e^t-1)/(e^t+1)", None),
    "laguerre_m1": ("o", False, _build_laguerre_m1, "t/(t-1)", "t/(t-1)", None),
    "probabilistic": ("a", True, _build_probabilistic, None, "inverse of log E[e_lambda^Y(t)], Y ~ U[0,1]", None),
}

PRESET_IDS = tuple(_REGISTRY)


def is_degenerate(pid):
    if pid not in _REGISTRY:
        raise UnknownPreset(pid)
    return _REGISTRY[pid][1]


@lru_cache(maxsize=None)
def make_preset(pid, order, lambda_mode=LAMBDA_ABSENT):
    if pid not in _REGISTRY:
        raise UnknownPreset(pid)
    if order < 1:
        raise ValueError("order must be at least 1")
    letter, degenerate, builder, expr, formula, partner = _REGISTRY[pid]
    lam = resolve_lambda_mode(lambda_mode)
    if degenerate and lam is None:
        raise LambdaModeRequired("preset %r needs a lambda mode" % pid)
    f = fps.DeltaSeries(builder(order, lam))
    return Preset(pid, letter, lam, f, expr, formula, partner)


def registry_json():
    """Machine-readable registry: id -> example letter and formula."""
    return {
        pid: {"letter": letter, "formula": formula, "degenerate": degenerate, "expr": expr}
        for pid, (letter, degenerate, _b, expr, formula, _p) in _REGISTRY.items()
    }


# ---------------------------------------------------------------------------
# central factorial numbers: direct expansions of their generating functions

@lru_cache(maxsize=None)
def _powers_table(pid, max_n, lam=None):
    """EGF triangle of base^k/k! for the named generating function."""
    max_n = max(max_n, 1)
    if pid == "t2":
        base = _build_central(max_n, None)
    elif pid == "t1":
        base = _build_central_bell(max_n, None)
    elif pid == "t2_deg":
        base = _series_from_coeff_fn(
            max_n,
            lambda n: (
                cl.deg_falling_value(Fraction(1, 2), n, lam)
                - cl.deg_falling_value(Fraction(-1, 2), n, lam)
            )
            * Fraction(1, math.factorial(n)),
        )
    elif pid == "t1_deg":
        base = _build_deg_central_bell(max_n, lam)
    else:
        raise ValueError(pid)
    cols = []
    p = fps.one(max_n, base.ring)
    for k in range(max_n + 1):
        cols.append(p)
        if k < max_n:
            p = fps.scale(fps.mul(p, base), Fraction(1, k + 1))
    return tuple(
        tuple(fps.egf_coeff(cols[k], n) for k in range(n + 1)) for n in range(max_n + 1)
    )


def central_t2(n, k):
    if k < 0 or k > n:
        return Fraction(0)
    return _powers_table("t2", n)[n][k]


def central_t1(n, k):
    if k < 0 or k > n:
        return Fraction(0)
    return _powers_table("t1", n)[n][k]


def central_t2_deg(n, k, lam):
    if k < 0 or k > n:
        return Fraction(0)
    return _powers_table("t2_deg", n, lam)[n][k]


def central_t1_deg(n, k, lam):
    if k < 0 or k > n:
        return Fraction(0)
    return _powers_table("t1_deg", n, lam)[n][k]


# ---------------------------------------------------------------------------
# closed-form triangle oracles

def _sum_prod(outer, inner, n, k):
    acc = Fraction(0)
    for l in range(k, n + 1):
        acc = acc + outer(n, l) * inner(l, k)
    return sc.simplify(acc)


def _need_lambda(pid, lam):
    if lam is None:
        raise LambdaModeRequired("oracle for %r needs lambda" % pid)
    return lam


def oracle_s2(pid, n, k, lam=None):
    """The independent closed form for S2(n, k; f) of the given preset."""
    if pid not in _REGISTRY:
        raise UnknownPreset(pid)
    if k < 0 or k > n:
        return Fraction(0)
    if pid == "identity":
        return Fraction(cl.classical_s2(n, k))
    if pid == "deg_falling":
        return cl.deg_s2(n, k, _need_lambda(pid, lam))
    if pid == "rising":
        return Fraction(cl.lah(n, k))
    if pid == "deg_rising":
        return cl.deg_lah(n, k, _need_lambda(pid, lam))
    if pid == "central":
        return _sum_prod(central_t1, lambda a, b: Fraction(cl.classical_s2(a, b)), n, k)
    if pid == "central_bell":
        return _sum_prod(central_t2, lambda a, b: Fraction(cl.classical_s2(a, b)), n, k)
    if pid == "deg_central_bell":
        lam = _need_lambda(pid, lam)
        return _sum_prod(
            lambda a, b: central_t2_deg(a, b, lam), lambda a, b: Fraction(cl.classical_s2(a, b)), n, k
        )
    if pid == "lah_bell":
        return _sum_prod(lambda a, b: Fraction(cl.lah(a, b)), lambda a, b: Fraction(cl.classical_s2(a, b)), n, k)
    if pid == "deg_lah_bell":
        lam = _need_lambda(pid, lam)
        return _sum_prod(lambda a, b: Fraction(cl.lah(a, b)), lambda a, b: cl.deg_lah(a, b, -lam), n, k)
    if pid == "bell":
        return _sum_prod(
            lambda a, b: Fraction(cl.classical_s2(a, b)), lambda a, b: Fraction(cl.classical_s2(a, b)), n, k
        )
    if pid == "partial_deg_bell":
        lam = _need_lambda(pid, lam)
        return _sum_prod(lambda a, b: cl.deg_s2(a, b, lam), lambda a, b: Fraction(cl.classical_s2(a, b)), n, k)
    if pid == "full_deg_bell":
        lam = _need_lambda(pid, lam)
        return _sum_prod(lambda a, b: cl.deg_s2(a, b, lam), lambda a, b: cl.deg_lah(a, b, -lam), n, k)
    if pid == "mittag_leffler":
        return Fraction(2 ** k * cl.lah(n, k))
    if pid == "laguerre_m1":
        return _sum_prod(
            lambda a, b: Fraction((-1) ** b * cl.lah(a, b)), lambda a, b: Fraction(cl.classical_s2(a, b)), n, k
        )
    raise NoOracle("no second-kind closed form for preset %r" % pid)


def oracle_s1(pid, n, k, lam=None):
    """The independent closed form for S1(n, k; f) of the given preset."""
    if pid not in _REGISTRY:
        raise UnknownPreset(pid)
    if k < 0 or k > n:
        return Fraction(0)
    if pid == "identity":
        return Fraction(cl.classical_s1(n, k))
    if pid == "deg_falling":
        return cl.deg_s1(n, k, _need_lambda(pid, lam))
    if pid == "rising":
        return Fraction((-1) ** (n - k) * cl.lah(n, k))
    if pid == "deg_rising":
        return cl.deg_s1(n, k, -_need_lambda(pid, lam))
    if pid == "central":
        return _sum_prod(lambda a, b: Fraction(cl.classical_s1(a, b)), central_t2, n, k)
    if pid == "central_bell":
        return _sum_prod(lambda a, b: Fraction(cl.classical_s1(a, b)), central_t1, n, k)
    if pid == "deg_central_bell":
        lam = _need_lambda(pid, lam)
        return _sum_prod(
            lambda a, b: Fraction(cl.classical_s1(a, b)), lambda a, b: central_t1_deg(a, b, lam), n, k
        )
    if pid == "lah_bell":
        return _signed_sum_s1_lah(lambda a, b: Fraction(cl.classical_s1(a, b)), n, k)
    if pid == "deg_lah_bell":
        lam = _need_lambda(pid, lam)
        return _signed_sum_s1_lah(lambda a, b: cl.deg_s1(a, b, lam), n, k)
    if pid == "bell":
        return _sum_prod(
            lambda a, b: Fraction(cl.classical_s1(a, b)), lambda a, b: Fraction(cl.classical_s1(a, b)), n, k
        )
    if pid == "partial_deg_bell":
        lam = _need_lambda(pid, lam)
        return _sum_prod(lambda a, b: Fraction(cl.classical_s1(a, b)), lambda a, b: cl.deg_s1(a, b, lam), n, k)
    if pid == "full_deg_bell":
        lam = _need_lambda(pid, lam)
        return _sum_prod(lambda a, b: cl.deg_s1(a, b, lam), lambda a, b: cl.deg_s1(a, b, lam), n, k)
    if pid == "mittag_leffler":
        return Fraction((-1) ** (n - k) * cl.lah(n, k), 2 ** n)
    if pid == "laguerre_m1":
        acc = Fraction(0)
        for l in range(k, n + 1):
            acc += Fraction(cl.classical_s1(n, l) * cl.lah(l, k))
        return Fraction((-1) ** k) * acc
    raise NoOracle("no first-kind closed form for preset %r" % pid)


def _signed_sum_s1_lah(s1_fn, n, k):
    """sum_l (-1)^{l-k} S1-like(n, l) L(l, k)."""
    acc = Fraction(0)
    for l in range(k, n + 1):
        acc = acc + ((-1) ** (l - k)) * s1_fn(n, l) * cl.lah(l, k)
    return sc.simplify(acc)


def oracle_log(pid, order, lam=None):
    """The independent closed form of the associated logarithm."""
    if pid not in _REGISTRY:
        raise UnknownPreset(pid)
    one = fps.one(order)
    u = _log1p(order)
    if pid == "identity":
        return u
    if pid == "deg_falling":
        return deg_log1p_direct(order, _need_lambda(pid, lam))
    if pid == "rising":
        return _series_from_coeff_fn(order, lambda n: Fraction(0) if n == 0 else Fraction((-1) ** (n - 1)))
    if pid == "deg_rising":
        return deg_log1p_direct(order, -_need_lambda(pid, lam))
    if pid == "central":
        g = fps.add(one, fps.t_series(order))
        return fps.sub(fps.pow_ratio(g, Fraction(1, 2)), fps.pow_ratio(g, Fraction(-1, 2)))
    if pid == "central_bell":
        return fps.scale(fps.log_series(_central_bell_w(order, inner=u)), 2)
    if pid == "deg_central_bell":
        w = _central_bell_w(order, inner=u)
        return deg_log1p_of(fps.sub(fps.mul(w, w), one), _need_lambda(pid, lam))
    if pid == "lah_bell":
        return fps.div(u, fps.add(one, u))
    if pid == "deg_lah_bell":
        dl = deg_log1p_direct(order, _need_lambda(pid, lam))
        return fps.div(dl, fps.add(fps.one(order, dl.ring), dl))
    if pid == "bell":
        return fps.log_series(fps.add(one, u))
    if pid == "partial_deg_bell":
        return deg_log1p_of(u, _need_lambda(pid, lam))
    if pid == "full_deg_bell":
        lam = _need_lambda(pid, lam)
        inner = deg_log1p_direct(order, lam)
        return deg_log1p_of(inner, lam)
    if pid == "mittag_leffler":
        return _series_from_coeff_fn(
            order, lambda n: Fraction(0) if n == 0 else Fraction((-1) ** (n - 1), 2 ** n)
        )
    if pid == "laguerre_m1":
        return fps.scale(fps.div(u, fps.sub(one, u)), -1)
    raise NoOracle("no closed-form logarithm for preset %r" % pid)


# ---------------------------------------------------------------------------
# probabilistic presets: exact moment sequences

class MomentSeq:
    """Exact moments E[(Y)_{n,lam}] (or E[Y^n] when lam is absent)."""

    __slots__ = ("_fn", "label")

    def __init__(self, fn, label=""):
        if fn(0) != 1:
            raise ValueError("moments(0) must be 1")
        object.__setattr__(self, "_fn", fn)
        object.__setattr__(self, "label", label)

    def __setattr__(self, name, value):
        raise AttributeError("MomentSeq is immutable")

    def moments(self, n):
        return sc.simplify(self._fn(n))


def uniform_moments(lam=None):
    """Y ~ U[0,1]: termwise integration of the degenerate falling factorial."""

    def fn(n):
        if lam is None:
            return Fraction(1, n + 1)
        coeffs = cl.deg_falling_coeffs(n, lam)
        acc = Fraction(0)
        for m, c in enumerate(coeffs):
            acc = acc + c * Fraction(1, m + 1)
        return acc

    return MomentSeq(fn, "uniform")


def point_mass_moments(c, lam=None):
    """Deterministic Y = c."""
    c = Fraction(c)

    def fn(n):
        if lam is None:
            return c ** n
        return cl.deg_falling_value(c, n, lam)

    return MomentSeq(fn, "point_mass(%s)" % c)


def two_point_moments(a, pa, b, lam=None):
    """Y = a with probability pa, else b."""
    a, b, pa = Fraction(a), Fraction(b), Fraction(pa)

    def fn(n):
        if lam is None:
            return pa * a ** n + (1 - pa) * b ** n
        return pa * cl.deg_falling_value(a, n, lam) + (1 - pa) * cl.deg_falling_value(b, n, lam)

    return MomentSeq(fn, "two_point")


def moment_delta(m, order):
    """The delta series whose second-kind triangle gives the probabilistic
    Stirling numbers of the supplied moment sequence."""
    m1 = m.moments(1)
    if sc.is_zero_scalar(m1):
        raise ZeroFirstMoment("first moment must be nonzero")
    g = fps.Series(
        order,
        [Fraction(0)] + [sc.simplify(m.moments(n) * Fraction(1, math.factorial(n))) for n in range(1, order + 1)],
    )
    fbar = fps.log_series(fps.add(fps.one(order, g.ring), g))
    return fps.invert_newton(fps.DeltaSeries(fbar))


def a2_series(order):
    """EGF numbers generated by (t^2/2)/(e^t - 1 - t), as a Series."""
    h = _series_from_coeff_fn(order, lambda n: Fraction(1, math.factorial(n + 2)))
    return fps.div(fps.constant(Fraction(1, 2), order), h)


def uniform_s1_multinomial(n, lam):
    """S1(n, 1) for the uniform moment preset via the stated multinomial sum.

    The inner sum over compositions j_1+...+j_n = m of multinomial
    coefficients times products of A_2 numbers is the m-th EGF coefficient
    of the n-th power of the A_2 exponential generating function.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    a = a2_series(max(n - 1, 1))
    an = fps.pow_int(a, n)
    acc = 0
    for m in range(n):
        acc = acc + math.comb(n - 1, m) * fps.egf_coeff(an, m) * lam ** (n - m - 1)
    return sc.simplify(Fraction(2) ** n * acc)


# ---------------------------------------------------------------------------
# the verification corpus

class CorpusEntry:
    __slots__ = ("label", "f", "preset")

    def __init__(self, label, f, preset=None):
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "preset", preset)

    def __setattr__(self, name, value):
        raise AttributeError("CorpusEntry is immutable")


@lru_cache(maxsize=None)
def corpus(order, include_probabilistic=True):
    """Every preset (b)-(o) (symbolic lambda for degenerate ones) plus the
    two probabilistic moment presets."""
    entries = []
    for pid in PRESET_IDS:
        if pid == "probabilistic":
            continue
        mode = LAMBDA_SYMBOLIC if is_degenerate(pid) else LAMBDA_ABSENT
        p = make_preset(pid, order, mode)
        entries.append(CorpusEntry(pid, p.f, p))
    if include_probabilistic:
        entries.append(CorpusEntry("prob_uniform", moment_delta(uniform_moments(sc.LAMBDA), order)))
        entries.append(CorpusEntry("prob_one", moment_delta(point_mass_moments(1, sc.LAMBDA), order)))
    return tuple(entries)
