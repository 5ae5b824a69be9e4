"""Exact coefficient arithmetic in three rings: Q, Q[l], and Q(l).

Scalars are plain values of one of three types:

  * ``fractions.Fraction``   -- rationals (ring tag "Q"),
  * ``LPoly``                -- polynomials in the parameter l over Q ("QL"),
  * ``LRat``                 -- reduced rational functions in l ("QLrat").

All three are immutable, hashable, and interoperate through the usual
arithmetic operators with automatic upward promotion.  Canonical normal
forms (trailing-nonzero LPoly, monic reduced LRat) make ``==`` an exact
structural equality across types.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import (
    BothZero,
    DivisionByZero,
    PoleAtValue,
    ScalarParseError,
    ZeroDenominator,
)

RING_Q = "Q"
RING_QL = "QL"
RING_QLRAT = "QLrat"
_RING_RANK = {RING_Q: 0, RING_QL: 1, RING_QLRAT: 2}

Rat = Fraction  # the Q scalar type is just stdlib Fraction


def _as_frac(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError("not a rational: %r" % (v,))


class LPoly:
    """Dense polynomial in l with Fraction coefficients, trailing term nonzero."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_as_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("LPoly is immutable")

    @staticmethod
    def const(v):
        return LPoly((v,))

    @property
    def degree(self):
        # degree of the zero polynomial reported as -1
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def constant_value(self):
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def leading(self):
        if not self.coeffs:
            raise DivisionByZero("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, LPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LPoly.const(other)
        if not isinstance(other, LPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return LPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, LPoly)):
            return self + (-other if isinstance(other, LPoly) else LPoly.const(-_as_frac(other)))
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return LPoly.const(other) + (-self)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return LPoly()
            return LPoly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, LPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return LPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return LPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero rational")
            return self * (Fraction(1) / _as_frac(other))
        if isinstance(other, LPoly):
            return lrat_reduce(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return lrat_reduce(LPoly.const(other), self)
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return scalar_inv(self) ** (-k) if not self.is_constant() else LPoly.const(self.constant_value() ** k)
        result = LPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other):
        """Polynomial division over Q; returns (quotient, remainder)."""
        if not isinstance(other, LPoly) or other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lb = other.leading()
        if len(rem) - 1 < db:
            return LPoly(), self
        quot = [Fraction(0)] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if not c:
                continue
            q = c / lb
            quot[i - db] = q
            for j, cb in enumerate(other.coeffs):
                rem[i - db + j] -= q * cb
        return LPoly(quot), LPoly(rem)

    def monic(self):
        if self.is_zero():
            return self
        return self * (Fraction(1) / self.leading())

    def eval(self, value):
        """Horner evaluation at a rational value."""
        value = _as_frac(value)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def derivative(self):
        return LPoly(tuple(i * c for i, c in enumerate(self.coeffs))[1:] if self.coeffs else ())

    def __repr__(self):
        return "LPoly(%r)" % (list(self.coeffs),)

    def __str__(self):
        return format_scalar(self)


LAMBDA = LPoly((0, 1))


class LRat:
    """Reduced rational function num/den in l; den monic and coprime to num."""

    __slots__ = ("num", "den")

    def __init__(self, num, den, _reduced=False):
        num = as_lpoly(num)
        den = as_lpoly(den)
        if den.is_zero():
            raise ZeroDenominator("zero denominator in rational function")
        if not _reduced:
            if num.is_zero():
                num, den = LPoly(), LPoly.const(1)
            else:
                g = lpoly_gcd(num, den)
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
                lc = den.leading()
                num = num * (Fraction(1) / lc)
                den = den * (Fraction(1) / lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("LRat is immutable")

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den == 1

    def __bool__(self):
        return not self.is_zero()

    def __hash__(self):
        if self.is_polynomial():
            return hash(self.num)
        return hash((self.num.coeffs, self.den.coeffs))

    def __eq__(self, other):
        if isinstance(other, LRat):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, LPoly)):
            return self.is_polynomial() and self.num == other
        return NotImplemented

    def __add__(self, other):
        other = _as_lrat(other)
        if other is NotImplemented:
            return NotImplemented
        return LRat(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return LRat(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = _as_lrat(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_lrat(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_lrat(other)
        if other is NotImplemented:
            return NotImplemented
        return LRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_lrat(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by zero rational function")
        return LRat(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _as_lrat(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if self.is_zero():
                raise DivisionByZero("zero has no negative power")
            return LRat(self.den, self.num) ** (-k)
        return LRat(self.num ** k, self.den ** k)

    def eval(self, value):
        value = _as_frac(value)
        d = self.den.eval(value)
        if d == 0:
            raise PoleAtValue("denominator vanishes at l=%s" % value)
        return self.num.eval(value) / d

    def __repr__(self):
        return "LRat(%r, %r)" % (list(self.num.coeffs), list(self.den.coeffs))

    def __str__(self):
        return format_scalar(self)


def _as_lrat(v):
    if isinstance(v, LRat):
        return v
    if isinstance(v, (int, Fraction, LPoly)):
        return LRat(as_lpoly(v), LPoly.const(1), _reduced=True)
    return NotImplemented


def as_lpoly(v):
    if isinstance(v, LPoly):
        return v
    if isinstance(v, (int, Fraction)):
        return LPoly.const(v)
    raise TypeError("cannot view %r as a polynomial in l" % (v,))


# ---------------------------------------------------------------------------
# ring tags and promotion

def ring_of(s):
    if isinstance(s, (int, Fraction)):
        return RING_Q
    if isinstance(s, LPoly):
        return RING_QL
    if isinstance(s, LRat):
        return RING_QLRAT
    raise TypeError("not a scalar: %r" % (s,))


def join_ring(a, b):
    return a if _RING_RANK[a] >= _RING_RANK[b] else b


def ring_le(a, b):
    return _RING_RANK[a] <= _RING_RANK[b]


def simplify(s):
    """Demote a scalar to its simplest representative type."""
    if isinstance(s, LRat):
        if s.is_polynomial():
            s = s.num
        else:
            return s
    if isinstance(s, LPoly) and s.is_constant():
        return s.constant_value()
    if isinstance(s, int):
        return Fraction(s)
    return s


def coerce_to_ring(s, ring):
    """Promote a scalar into the representation of the given ring."""
    if ring == RING_Q:
        s = simplify(s)
        if not isinstance(s, Fraction):
            raise TypeError("scalar %s does not lie in Q" % (s,))
        return s
    if ring == RING_QL:
        s = simplify(s)
        if isinstance(s, Fraction):
            return LPoly.const(s)
        if isinstance(s, LPoly):
            return s
        raise TypeError("scalar %s does not lie in Q[l]" % (s,))
    if ring == RING_QLRAT:
        r = _as_lrat(simplify(s))
        if r is NotImplemented:
            raise TypeError("not a scalar: %r" % (s,))
        return r
    raise ValueError("unknown ring tag %r" % (ring,))


# ---------------------------------------------------------------------------
# lambda-mode resolution

def rat_arith(a, b, op):
    """Exact rational arithmetic; op is one of add/sub/mul/div."""
    a, b = _as_frac(a), _as_frac(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise DivisionByZero("rational division by zero")
        return a / b
    raise ValueError("unknown op %r" % (op,))


def lpoly_gcd(a, b):
    """Monic gcd over Q by the Euclidean algorithm."""
    a, b = as_lpoly(a), as_lpoly(b)
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


def lrat_reduce(num, den):
    """Canonical num/den as the simplest scalar (LRat, LPoly, or Fraction)."""
    num, den = as_lpoly(num), as_lpoly(den)
    if den.is_zero():
        raise ZeroDenominator("zero denominator")
    return simplify(LRat(num, den))


def scalar_inv(s):
    s = simplify(s)
    if isinstance(s, Fraction):
        if s == 0:
            raise DivisionByZero("inverse of zero")
        return Fraction(1) / s
    if isinstance(s, LPoly):
        if s.is_zero():
            raise DivisionByZero("inverse of zero")
        return simplify(LRat(LPoly.const(1), s))
    if isinstance(s, LRat):
        if s.is_zero():
            raise DivisionByZero("inverse of zero")
        return simplify(LRat(s.den, s.num))
    raise TypeError("not a scalar: %r" % (s,))


def scalar_pow(s, k):
    """Integer power of a scalar, negative exponents allowed."""
    if k >= 0:
        return simplify(s ** k) if not isinstance(s, (int, Fraction)) else _as_frac(s) ** k
    return scalar_pow(scalar_inv(s), -k)


def scalar_div(a, b):
    return simplify_mul(a, scalar_inv(b))


def simplify_mul(a, b):
    r = a * b
    return simplify(r) if isinstance(r, (LPoly, LRat)) else _as_frac(r)


def eval_lambda(s, value):
    """Exact substitution l = value; raises PoleAtValue at a pole."""
    value = _as_frac(value)
    s = simplify(s)
    if isinstance(s, Fraction):
        return s
    return s.eval(value)


def is_zero_scalar(s):
    if isinstance(s, (int, Fraction)):
        return s == 0
    return s.is_zero()


# ---------------------------------------------------------------------------
# exact roots of rationals

def iroot(x, n):
    """Floor of the integer n-th root of x >= 0."""
    if x < 0:
        raise ValueError("negative radicand")
    if x == 0:
        return 0
    g = 1 << ((x.bit_length() + n - 1) // n)
    while True:
        # Newton step for r^n = x
        t = ((n - 1) * g + x // g ** (n - 1)) // n
        if t >= g:
            return g
        g = t


def rat_nth_root(q, n):
    """Exact rational n-th root of q, or None when no exact root exists."""
    q = _as_frac(q)
    if n <= 0:
        raise ValueError("root index must be positive")
    neg = q < 0
    if neg and n % 2 == 0:
        return None
    a, b = abs(q.numerator), q.denominator
    ra, rb = iroot(a, n), iroot(b, n)
    if ra ** n != a or rb ** n != b:
        return None
    r = Fraction(ra, rb)
    return -r if neg else r


# ---------------------------------------------------------------------------
# textual forms: Rat "p/q", LPoly "c0 + c1*l + ...", LRat "(num)/(den)"

def _fmt_lpoly(p):
    if p.is_zero():
        return "0"
    parts = []
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append("%s*l" % c)
        else:
            parts.append("%s*l^%d" % (c, i))
    return " + ".join(parts).replace("+ -", "- ")


def format_scalar(s):
    s = simplify(s)
    if isinstance(s, Fraction):
        return str(s)
    if isinstance(s, LPoly):
        return _fmt_lpoly(s)
    if isinstance(s, LRat):
        return "(%s)/(%s)" % (_fmt_lpoly(s.num), _fmt_lpoly(s.den))
    raise TypeError("not a scalar: %r" % (s,))


_TERM_RE = re.compile(
    r"^(?P<sign>[+-]?)(?:(?P<coef>\d+(?:/\d+)?)(?:\*(?P<var>l(?:\^(?P<pow>\d+))?))?|(?P<bare>l(?:\^(?P<bpow>\d+))?))$"
)


def _parse_lpoly(text):
    src = text.replace(" ", "")
    if not src:
        raise ScalarParseError("empty polynomial text")
    # split into signed terms; '-' only ever starts a term
    terms = re.findall(r"[+-]?[^+-]+", src)
    if "".join(terms) != src:
        raise ScalarParseError("malformed polynomial %r" % text)
    coeffs = {}
    for term in terms:
        m = _TERM_RE.match(term)
        if not m:
            raise ScalarParseError("malformed term %r in %r" % (term, text))
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("bare"):
            coef = Fraction(1)
            power = int(m.group("bpow")) if m.group("bpow") else 1
        else:
            coef = Fraction(m.group("coef"))
            if m.group("var"):
                power = int(m.group("pow")) if m.group("pow") else 1
            else:
                power = 0
        coeffs[power] = coeffs.get(power, Fraction(0)) + sign * coef
    size = max(coeffs) + 1 if coeffs else 0
    out = [Fraction(0)] * size
    for p, c in coeffs.items():
        out[p] = c
    return LPoly(out)


def parse_scalar(text):
    """Parse the canonical textual scalar form back to a value (bit-exact)."""
    src = text.strip()
    if not src:
        raise ScalarParseError("empty scalar text")
    if src.startswith("(") and src.endswith(")") and ")/(" in src:
        num_txt, den_txt = src[1:-1].split(")/(", 1)
        return simplify(LRat(_parse_lpoly(num_txt), _parse_lpoly(den_txt)))
    if "l" in src:
        return simplify(_parse_lpoly(src))
    try:
        return Fraction(src)
    except (ValueError, ZeroDivisionError) as exc:
        raise ScalarParseError("malformed rational %r" % text) from exc

LAMBDA_ABSENT = "absent"
LAMBDA_SYMBOLIC = "symbolic"


def resolve_lambda_mode(mode):
    """Map a lambda mode (absent / symbolic / rational) to the scalar it denotes."""
    if mode is None or mode == LAMBDA_ABSENT:
        return None
    if mode == LAMBDA_SYMBOLIC:
        return LAMBDA
    if isinstance(mode, (int, Fraction, str)):
        return Fraction(mode)
    if isinstance(mode, LPoly):
        return mode
    raise ValueError("bad lambda mode %r" % (mode,))
