"""Scalar tower: exact rationals, quadratic extensions Q(sqrt(d)), and floats.

Exact scalars are ``fractions.Fraction`` (or int) and :class:`QuadExt`
(a + b*sqrt(d) with rational a, b and square-free d > 1).  Floats form a
separate mode; arithmetic never silently mixes an exact scalar with a
float -- conversion goes through :func:`to_float` explicitly.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import ScalarModeError

RAT = Fraction

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def squarefree_split(n: int) -> tuple[int, int]:
    """Write n > 0 as s^2 * d with d square-free; return (s, d)."""
    if n <= 0:
        raise ValueError("positive integer required")
    s, d = 1, 1
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            d *= p
    # n is now free of small primes; check the remaining part
    r = math.isqrt(n)
    if r * r == n:
        return s * r, d
    # remainder is square-free unless it has a prime-square factor > 47^2;
    # trial divide the rest (desk-scale inputs keep this cheap)
    p = 53
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 2
    return s, d * n


class QuadExt:
    """Exact element a + b*sqrt(d) of Q(sqrt(d)), d square-free, d > 1.

    Arithmetic with Fraction/int coerces the rational operand; arithmetic
    with float raises (mode mixing must be explicit).  A QuadExt with
    b == 0 compares and hashes equal to the corresponding rational.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        if d <= 1:
            raise ValueError("d must be > 1")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    # -- helpers ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.d == self.d:
                return other
            if other.b == 0:
                return QuadExt(other.a, 0, self.d)
            if self.b == 0:
                return None  # handled by caller re-dispatch
            raise ScalarModeError(
                f"cannot mix Q(sqrt({self.d})) with Q(sqrt({other.d}))")
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, 0, self.d)
        return NotImplemented

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return QuadExt(self.a, 0, other.d) + other
        if o is NotImplemented:
            return NotImplemented
        return _normalize(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return QuadExt(self.a, 0, other.d) - other
        if o is NotImplemented:
            return NotImplemented
        return _normalize(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return QuadExt(self.a, 0, other.d) * other
        if o is NotImplemented:
            return NotImplemented
        return _normalize(self.a * o.a + self.b * o.b * self.d,
                          self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return QuadExt(self.a, 0, other.d) / other
        if o is NotImplemented:
            return NotImplemented
        den = o.a * o.a - o.b * o.b * o.d
        if den == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(d))")
        # multiply by the conjugate
        na = self.a * o.a - self.b * o.b * self.d
        nb = self.b * o.a - self.a * o.b
        return _normalize(na / den, nb / den, self.d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented or o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return 1 / (self ** (-k))
        out = QuadExt(1, 0, self.d)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return _normalize(out.a, out.b, self.d) if isinstance(out, QuadExt) else out

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- comparisons -----------------------------------------------------
    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d)."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with b^2 d
        t = a * a - b * b * self.d
        if a > 0:  # b < 0
            return (t > 0) - (t < 0)
        return (t < 0) - (t > 0)

    def _cmp(self, other) -> int:
        diff = self - other
        if isinstance(diff, QuadExt):
            return diff.sign()
        return (diff > 0) - (diff < 0)

    def __eq__(self, other):
        if isinstance(other, float):
            return False
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadExt):
            if other.d == self.d:
                return self.a == other.a and self.b == other.b
            return self.b == 0 and other.b == 0 and self.a == other.a
        return NotImplemented

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __floor__(self):
        # float guess, then exact fix-up
        n = math.floor(float(self))
        while self._cmp(n) < 0:
            n -= 1
        while self._cmp(n + 1) >= 0:
            n += 1
        return n

    def __repr__(self):
        return f"QuadExt({self.a}, {self.b}, {self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}*sqrt({self.d})"


def _normalize(a: Fraction, b: Fraction, d: int):
    """Collapse to Fraction when the irrational part vanishes."""
    if b == 0:
        return a
    return QuadExt(a, b, d)


def sqrt_exact(x):
    """Exact square root of a nonnegative rational: Fraction or QuadExt."""
    x = Fraction(x) if not isinstance(x, Fraction) else x
    if x < 0:
        raise ValueError("negative radicand")
    if x == 0:
        return Fraction(0)
    # sqrt(p/q) = sqrt(p*q)/q
    pq = x.numerator * x.denominator
    s, d = squarefree_split(pq)
    if d == 1:
        return Fraction(s, x.denominator)
    return QuadExt(0, Fraction(s, x.denominator), d)


def sign_of(x) -> int:
    """Exact sign for exact scalars, float sign for floats."""
    if isinstance(x, QuadExt):
        return x.sign()
    return (x > 0) - (x < 0)


def sign_of_sqrt_sum(terms) -> int:
    """Exact sign of sum_i c_i * sqrt(r_i) with rational c_i, r_i >= 0.

    Supports up to three distinct radicands via recursive squaring.
    """
    # merge identical radicands, drop zeros, pull squares into coefficients
    merged: dict[int, Fraction] = {}
    for c, r in terms:
        c = Fraction(c)
        r = Fraction(r)
        if c == 0 or r == 0:
            continue
        if r < 0:
            raise ValueError("negative radicand")
        # sqrt(p/q) = sqrt(pq)/q
        s, d = squarefree_split(r.numerator * r.denominator)
        merged[d] = merged.get(d, Fraction(0)) + c * Fraction(s, r.denominator)
    merged = {d: c for d, c in merged.items() if c != 0}
    if not merged:
        return 0
    items = sorted(merged.items())
    if len(items) == 1:
        d, c = items[0]
        return 1 if c > 0 else -1
    if len(items) == 2:
        (d1, c1), (d2, c2) = items
        if c1 > 0 and c2 > 0:
            return 1
        if c1 < 0 and c2 < 0:
            return -1
        t = c1 * c1 * d1 - c2 * c2 * d2
        s = (t > 0) - (t < 0)
        return s if c1 > 0 else -s
    if len(items) == 3:
        # sign(A + B) with A = first two terms, B = last term
        (d1, c1), (d2, c2), (d3, c3) = items
        sa = sign_of_sqrt_sum([(c1, d1), (c2, d2)])
        sb = 1 if c3 > 0 else -1
        if sa == 0:
            return sb
        if sa == sb:
            return sa
        # compare A^2 with B^2: A^2 = c1^2 d1 + c2^2 d2 + 2 c1 c2 sqrt(d1 d2)
        t = sign_of_sqrt_sum([
            (c1 * c1 * d1 + c2 * c2 * d2 - c3 * c3 * d3, 1),
            (2 * c1 * c2, d1 * d2),
        ])
        return sa if t > 0 else (sb if t < 0 else 0)
    raise ValueError("at most three distinct radicands supported")


# -- mode handling --------------------------------------------------------

MODE_RATIONAL = "rational"
MODE_QUADRATIC = "quadratic"
MODE_FLOAT = "float"


def scalar_mode(x) -> str:
    if isinstance(x, float):
        return MODE_FLOAT
    if isinstance(x, QuadExt):
        return MODE_QUADRATIC
    if isinstance(x, (int, Fraction)):
        return MODE_RATIONAL
    raise ScalarModeError(f"unsupported scalar type {type(x)!r}")


def infer_mode(entries) -> str:
    """Common mode of an iterable of scalars; exact+float mixing rejected."""
    modes = {scalar_mode(x) for x in entries}
    if not modes:
        raise ScalarModeError("empty scalar collection")
    if MODE_FLOAT in modes:
        if modes - {MODE_FLOAT}:
            raise ScalarModeError("exact and float scalars mixed")
        return MODE_FLOAT
    if MODE_QUADRATIC in modes:
        ds = {x.d for x in entries if isinstance(x, QuadExt)}
        if len(ds) > 1:
            raise ScalarModeError(f"mixed quadratic fields {sorted(ds)}")
        return MODE_QUADRATIC
    return MODE_RATIONAL


def is_exact_mode(mode: str) -> bool:
    return mode in (MODE_RATIONAL, MODE_QUADRATIC)


def to_float(x) -> float:
    return float(x)


def exact_floor(x) -> int:
    if isinstance(x, float):
        return math.floor(x)
    if isinstance(x, QuadExt):
        return x.__floor__()
    return math.floor(x)


def exact_ceil(x) -> int:
    if isinstance(x, float):
        return math.ceil(x)
    return -exact_floor(-x)


# -- parsing / serialization ----------------------------------------------

def parse_rational(s) -> Fraction:
    """Parse "p/q" / "p" strings, ints, or decimal strings exactly."""
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, Fraction):
        return s
    if isinstance(s, str):
        return Fraction(s)
    raise ScalarModeError(f"cannot parse rational from {s!r}")


def scalar_to_json(x):
    if isinstance(x, float):
        return x
    if isinstance(x, QuadExt):
        return [str(x.a), str(x.b)]
    return str(Fraction(x))


def scalar_from_json(v, mode: str, d: int | None = None):
    if mode == MODE_FLOAT:
        return float(v)
    if mode == MODE_RATIONAL:
        return parse_rational(v)
    if mode == MODE_QUADRATIC:
        if d is None:
            raise ScalarModeError("quadratic mode requires 'd'")
        if isinstance(v, (list, tuple)):
            a, b = v
            return _normalize(parse_rational(a), parse_rational(b), d)
        return parse_rational(v)
    raise ScalarModeError(f"unknown mode {mode!r}")
