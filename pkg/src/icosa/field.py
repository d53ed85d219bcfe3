"""Exact arithmetic in the golden-ratio field Q(w), w^2 = w + 1.

Elements are pairs of rationals ``a + b*w``.  Rationals are ``gmpy2.mpq``
values, always reduced with positive denominator, so structural equality is
field equality.  Reduction modulo split primes lives here as well.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

import gmpy2
from gmpy2 import mpq
from sympy.ntheory import sqrt_mod

Rational = Union[int, Fraction, "gmpy2.mpq"]


class BadPrime(ArithmeticError):
    """A denominator is not invertible modulo the chosen prime."""


def _q(v) -> "mpq":
    if isinstance(v, Fraction):
        return mpq(v.numerator, v.denominator)
    return mpq(v)


class FieldElement:
    """An element ``a + b*w`` of Q(w)."""

    __slots__ = ("a", "b")

    def __init__(self, a: Rational = 0, b: Rational = 0):
        self.a = _q(a)
        self.b = _q(b)

    @classmethod
    def coerce(cls, v) -> "FieldElement":
        if isinstance(v, FieldElement):
            return v
        if isinstance(v, (int, Fraction)) or type(v) is type(mpq()):
            return cls(v, 0)
        raise TypeError(f"cannot coerce {type(v).__name__} to FieldElement")

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, FieldElement):
            try:
                other = FieldElement.coerce(other)
            except TypeError:
                return NotImplemented
        r = FieldElement.__new__(FieldElement)
        r.a = self.a + other.a
        r.b = self.b + other.b
        return r

    __radd__ = __add__

    def __neg__(self):
        r = FieldElement.__new__(FieldElement)
        r.a = -self.a
        r.b = -self.b
        return r

    def __sub__(self, other):
        if not isinstance(other, FieldElement):
            try:
                other = FieldElement.coerce(other)
            except TypeError:
                return NotImplemented
        r = FieldElement.__new__(FieldElement)
        r.a = self.a - other.a
        r.b = self.b - other.b
        return r

    def __rsub__(self, other):
        return FieldElement.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, FieldElement):
            if isinstance(other, int):
                r = FieldElement.__new__(FieldElement)
                r.a = self.a * other
                r.b = self.b * other
                return r
            try:
                other = FieldElement.coerce(other)
            except TypeError:
                return NotImplemented
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        bb = b1 * b2
        r = FieldElement.__new__(FieldElement)
        r.a = a1 * a2 + bb
        r.b = a1 * b2 + a2 * b1 + bb
        return r

    __rmul__ = __mul__

    def norm(self) -> "mpq":
        """Field norm N(a + b w) = a^2 + a b - b^2."""
        return self.a * self.a + self.a * self.b - self.b * self.b

    def conjugate(self) -> "FieldElement":
        # w -> 1 - w
        return FieldElement(self.a + self.b, -self.b)

    def inverse(self) -> "FieldElement":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(w)")
        c = self.conjugate()
        return FieldElement(c.a / n, c.b / n)

    def __truediv__(self, other):
        if not isinstance(other, FieldElement):
            try:
                other = FieldElement.coerce(other)
            except TypeError:
                return NotImplemented
        if other.b == 0:
            if other.a == 0:
                raise ZeroDivisionError("division by zero in Q(w)")
            return FieldElement(self.a / other.a, self.b / other.a)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return FieldElement.coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison / hashing ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)) or type(other) is type(mpq()):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return self.b == 0

    @property
    def denominator(self) -> int:
        """Least common denominator of both rational parts."""
        return int(gmpy2.lcm(self.a.denominator, self.b.denominator))

    def to_float(self) -> float:
        return float(self.a) + float(self.b) * GOLDEN_FLOAT

    # text ---------------------------------------------------------------
    def __str__(self):
        b = self.b
        sign = "-" if b < 0 else "+"
        return f"{_fmt_q(self.a)}{sign}{_fmt_q(abs(b))}*w"

    def __repr__(self):
        return f"FieldElement({_fmt_q(self.a)}, {_fmt_q(self.b)})"

    def pretty(self) -> str:
        """Human-readable form using the symbol ω, e.g. ``ω−1`` or ``3/2``."""
        a, b = self.a, self.b
        if b == 0:
            return _fmt_q(a).replace("-", "−")
        if b == 1:
            wt = "ω"
        elif b == -1:
            wt = "−ω"
        else:
            wt = _fmt_q(b).replace("-", "−") + "ω"
        if a == 0:
            return wt
        if a > 0:
            return f"{wt}+{_fmt_q(a)}"
        return f"{wt}−{_fmt_q(-a)}"

    @classmethod
    def parse(cls, text: str) -> "FieldElement":
        return parse_element(text)


def _fmt_q(q) -> str:
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*(\*?\s*w)?")


def parse_element(text: str) -> FieldElement:
    """Parse ``"a+b*w"`` (also ``"w"``, ``"-3/2"``, ``"2*w-1"``)."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty field element")
    a = mpq(0)
    b = mpq(0)
    pos = 0
    seen = False
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse field element {text!r}")
        sign, num, wpart = m.groups()
        if num is None and wpart is None:
            raise ValueError(f"cannot parse field element {text!r}")
        if seen and not sign:
            raise ValueError(f"missing operator in {text!r}")
        if wpart is not None and num is None and wpart.startswith("*"):
            raise ValueError(f"cannot parse field element {text!r}")
        val = mpq(num) if num is not None else mpq(1)
        if sign == "-":
            val = -val
        if wpart is not None:
            b += val
        else:
            a += val
        seen = True
        pos = m.end()
    return FieldElement(a, b)


ZERO = FieldElement(0, 0)
ONE = FieldElement(1, 0)
OMEGA = FieldElement(0, 1)
GOLDEN_FLOAT = (1 + 5 ** 0.5) / 2


def fe(v) -> FieldElement:
    """Shorthand coercion: ints, Fractions, strings or FieldElements."""
    if isinstance(v, str):
        return parse_element(v)
    return FieldElement.coerce(v)


# modular reduction ------------------------------------------------------

def omega_roots(p: int) -> tuple[int, int]:
    """Both roots of x^2 - x - 1 modulo a prime p = +-1 (mod 5), sorted."""
    if p % 5 not in (1, 4):
        raise ValueError(f"x^2-x-1 does not split modulo {p}")
    s = sqrt_mod(5, p)
    inv2 = pow(2, -1, p)
    r1 = (1 + s) * inv2 % p
    r2 = (1 - s) * inv2 % p
    return tuple(sorted((r1, r2)))


def valid_primes(start: int = 10007) -> Iterator[int]:
    """Primes >= start ending in 1 or 9 (exactly those with p = +-1 mod 5)."""
    p = int(gmpy2.next_prime(start - 1))
    while True:
        if p % 10 in (1, 9):
            yield p
        p = int(gmpy2.next_prime(p))


@dataclass(frozen=True)
class ModularImage:
    """Reduction context Q(w) -> F_p sending w to the root ``r``."""

    p: int
    r: int

    def __post_init__(self):
        if (self.r * self.r - self.r - 1) % self.p:
            raise ValueError(f"{self.r} is not a root of x^2-x-1 mod {self.p}")

    def reduce_rational(self, q) -> int:
        q = _q(q)
        den = int(q.denominator) % self.p
        if den == 0:
            raise BadPrime(f"denominator {q.denominator} vanishes mod {self.p}")
        return int(q.numerator) * pow(den, -1, self.p) % self.p

    def reduce(self, x) -> int:
        x = FieldElement.coerce(x)
        return (self.reduce_rational(x.a) + self.reduce_rational(x.b) * self.r) % self.p

    @classmethod
    def pair(cls, p: int) -> tuple["ModularImage", "ModularImage"]:
        r1, r2 = omega_roots(p)
        return cls(p, r1), cls(p, r2)


def fe_reduce(x, img: ModularImage) -> int:
    return img.reduce(x)


def lift_pair(v1: int, v2: int, img1: ModularImage, img2: ModularImage) -> tuple[int, int]:
    """Recover (a, b) mod p from the two images a + b*r1 and a + b*r2."""
    p = img1.p
    b = (v1 - v2) * pow(img1.r - img2.r, -1, p) % p
    a = (v1 - b * img1.r) % p
    return a, b


def rational_reconstruction(u: int, m: int):
    """Rational n/d with n = u d (mod m), |n|, d <= sqrt(m/2); None if absent."""
    u %= m
    bound = gmpy2.isqrt(m // 2)
    r0, r1 = m, u
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if gmpy2.gcd(r1, s1) != 1:
        return None
    return mpq(int(r1), int(s1))
