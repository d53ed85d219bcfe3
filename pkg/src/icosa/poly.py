"""Sparse homogeneous polynomials in x, y, z over Q(w), and projective points.

A :class:`Poly` maps exponent triples ``(i, j, k)`` with ``i + j + k = degree``
to nonzero coefficients.  Values are treated as immutable once built.
"""

from __future__ import annotations

import random
import re
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

from .field import ONE, ZERO, FieldElement, fe, parse_element
from . import linalg

Exp = tuple[int, int, int]

VARS = ("x", "y", "z")


class NotDivisible(ArithmeticError):
    pass


class InfiniteMultiplicity(ValueError):
    """Raised when asking for the multiplicity of the zero polynomial."""


def _ff(n: int, k: int) -> int:
    """Falling factorial n (n-1) ... (n-k+1)."""
    r = 1
    for t in range(k):
        r *= n - t
    return r


@lru_cache(maxsize=None)
def exponents(degree: int) -> tuple[Exp, ...]:
    """All exponent triples of the given degree, in decreasing lex order."""
    out = []
    for i in range(degree, -1, -1):
        for j in range(degree - i, -1, -1):
            out.append((i, j, degree - i - j))
    return tuple(out)


class Poly:
    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Mapping[Exp, object] | None = None):
        self.degree = degree
        clean = {}
        if terms:
            for e, c in terms.items():
                if sum(e) != degree:
                    raise ValueError(f"exponent {e} does not have degree {degree}")
                c = fe(c)
                if c:
                    clean[tuple(e)] = c
        self.terms: dict[Exp, FieldElement] = clean

    @classmethod
    def _raw(cls, degree: int, terms: dict) -> "Poly":
        p = cls.__new__(cls)
        p.degree = degree
        p.terms = terms
        return p

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, degree: int = 0) -> "Poly":
        return cls._raw(degree, {})

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls(0, {(0, 0, 0): c})

    @classmethod
    def linear(cls, a, b, c) -> "Poly":
        return cls(1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})

    @classmethod
    def monomial(cls, e: Exp, c=1) -> "Poly":
        return cls(sum(e), {tuple(e): c})

    @classmethod
    def from_vector(cls, degree: int, values: Sequence) -> "Poly":
        """Inverse of :meth:`to_vector` over :func:`exponents` ordering."""
        return cls(degree, dict(zip(exponents(degree), values)))

    def to_vector(self) -> list[FieldElement]:
        return [self.terms.get(e, ZERO) for e in exponents(self.degree)]

    # basic queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def leading(self) -> tuple[Exp, FieldElement]:
        e = max(self.terms)  # lex x > y > z; grlex coincides on forms
        return e, self.terms[e]

    # arithmetic ---------------------------------------------------------
    def _check_deg(self, other: "Poly") -> int:
        if not self.terms:
            return other.degree
        if not other.terms:
            return self.degree
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch {self.degree} vs {other.degree}")
        return self.degree

    def __add__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        d = self._check_deg(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e)
            if v is None:
                t[e] = c
            else:
                v = v + c
                if v:
                    t[e] = v
                else:
                    del t[e]
        return Poly._raw(d, t)

    def __neg__(self):
        return Poly._raw(self.degree, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "Poly":
        c = fe(c)
        if not c:
            return Poly.zero(self.degree)
        return Poly._raw(self.degree, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Poly):
            t: dict[Exp, FieldElement] = {}
            for (a0, a1, a2), c in self.terms.items():
                for (b0, b1, b2), d in other.terms.items():
                    e = (a0 + b0, a1 + b1, a2 + b2)
                    v = t.get(e)
                    t[e] = c * d if v is None else v + c * d
            return Poly._raw(self.degree + other.degree, {e: c for e, c in t.items() if c})
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        result = Poly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # calculus / evaluation ----------------------------------------------
    def derivative(self, var: int) -> "Poly":
        t = {}
        for e, c in self.terms.items():
            if e[var]:
                ne = list(e)
                ne[var] -= 1
                t[tuple(ne)] = c * e[var]
        return Poly._raw(max(self.degree - 1, 0), t)

    def evaluate(self, point) -> FieldElement:
        coords = point.coords if isinstance(point, ProjectivePoint) else tuple(fe(c) for c in point)
        pw = _powers(coords, self.degree)
        total = ZERO
        for (i, j, k), c in self.terms.items():
            v = pw[0][i]
            if not v:
                continue
            w = pw[1][j]
            if not w:
                continue
            u = pw[2][k]
            if not u:
                continue
            total = total + c * v * w * u
        return total

    def partials_at(self, point, order: int) -> dict[Exp, FieldElement]:
        """All partial derivatives of the given total order, evaluated at point."""
        coords = point.coords if isinstance(point, ProjectivePoint) else tuple(fe(c) for c in point)
        pw = _powers(coords, self.degree)
        betas = exponents(order)
        out = {b: ZERO for b in betas}
        if order > self.degree:
            return out
        nz = [bool(c) for c in coords]
        for e, c in self.terms.items():
            for b in betas:
                r0, r1, r2 = e[0] - b[0], e[1] - b[1], e[2] - b[2]
                if r0 < 0 or r1 < 0 or r2 < 0:
                    continue
                if (r0 and not nz[0]) or (r1 and not nz[1]) or (r2 and not nz[2]):
                    continue
                k = _ff(e[0], b[0]) * _ff(e[1], b[1]) * _ff(e[2], b[2])
                out[b] = out[b] + c * k * pw[0][r0] * pw[1][r1] * pw[2][r2]
        return out

    def vanishes_to_order(self, point, m: int) -> bool:
        """True iff the multiplicity at ``point`` is at least m (zero poly: True)."""
        if m <= 0 or not self.terms:
            return True
        if m - 1 > self.degree:
            return False
        vals = self.partials_at(point, m - 1)
        return not any(vals.values())

    def multiplicity_at(self, point) -> int:
        """Largest m such that every partial of order < m vanishes at point."""
        if not self.terms:
            raise InfiniteMultiplicity("the zero polynomial has infinite multiplicity")
        m = 0
        while m <= self.degree:
            vals = self.partials_at(point, m)
            if any(vals.values()):
                return m
            m += 1
        return m  # unreachable for nonzero forms; kept for safety

    def act(self, g) -> "Poly":
        """Substitute (x, y, z) -> g.(x, y, z); ``act(act(f, g), h) == act(f, g h)``."""
        rows = g.entries if hasattr(g, "entries") else g
        L = [Poly.linear(*[fe(v) for v in rows[r]]) for r in range(3)]
        return substitute_linear(self, L)

    # divisibility -------------------------------------------------------
    def divide_exact(self, g: "Poly") -> "Poly":
        if not g.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return Poly.zero(max(self.degree - g.degree, 0))
        if g.degree > self.degree:
            raise NotDivisible("divisor has larger degree")
        ge, gc = g.leading()
        ginv = gc.inverse()
        rem = dict(self.terms)
        q: dict[Exp, FieldElement] = {}
        while rem:
            e = max(rem)
            c = rem[e]
            qe = (e[0] - ge[0], e[1] - ge[1], e[2] - ge[2])
            if min(qe) < 0:
                raise NotDivisible(f"leading monomial {e} not divisible by {ge}")
            qc = c * ginv
            q[qe] = qc
            for (b0, b1, b2), d in g.terms.items():
                te = (qe[0] + b0, qe[1] + b1, qe[2] + b2)
                v = rem.get(te, ZERO) - qc * d
                if v:
                    rem[te] = v
                else:
                    rem.pop(te, None)
        return Poly._raw(self.degree - g.degree, q)

    def divides(self, f: "Poly") -> bool:
        try:
            f.divide_exact(self)
            return True
        except NotDivisible:
            return False

    def proportional_to(self, other: "Poly") -> FieldElement | None:
        """Return c with self == c * other, or None."""
        if self.degree != other.degree or not self.terms or not other.terms:
            return None
        if self.terms.keys() != other.terms.keys():
            return None
        e = next(iter(self.terms))
        c = self.terms[e] / other.terms[e]
        for e, v in self.terms.items():
            if v != c * other.terms[e]:
                return None
        return c

    def monic(self) -> "Poly":
        """Scale so that the leading coefficient is 1."""
        if not self.terms:
            return self
        return self.scale(self.leading()[1].inverse())

    # text ---------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            parts.append(f"({self.terms[e]})*x^{e[0]}*y^{e[1]}*z^{e[2]}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly(degree={self.degree}, terms={len(self.terms)})"

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(
                v if n == 1 else f"{v}^{n}" for v, n in zip(VARS, e) if n
            )
            c = self.terms[e]
            cs = c.pretty()
            if not mono:
                parts.append(f"({cs})")
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> "Poly":
        return parse_poly(text, degree)


def _powers(coords, n: int):
    out = []
    for c in coords:
        row = [ONE]
        for _ in range(n):
            row.append(row[-1] * c)
        out.append(row)
    return out


_VARPOW = re.compile(r"^([xyz])(?:\^(\d+))?$")


def parse_poly(text: str, degree: int | None = None) -> Poly:
    """Parse ``(c)*x^i*y^j*z^k + ...``; looser forms like ``3*w*x^2-(w+1)*y*z`` too."""
    s = "".join(text.split())
    if s == "0":
        return Poly.zero(degree or 0)
    terms: dict[Exp, FieldElement] = {}
    deg = None
    for chunk in _split_top(s):
        coeff = ONE
        e = [0, 0, 0]
        if chunk.startswith("-"):
            coeff, chunk = -ONE, chunk[1:]
        elif chunk.startswith("+"):
            chunk = chunk[1:]
        for f in _split_factors(chunk):
            m = _VARPOW.match(f)
            if m:
                e[VARS.index(m.group(1))] += int(m.group(2) or 1)
            elif f.startswith("(") and f.endswith(")"):
                coeff = coeff * parse_element(f[1:-1])
            else:
                coeff = coeff * parse_element(f)
        te = tuple(e)
        if deg is None:
            deg = sum(te)
        elif sum(te) != deg:
            raise ValueError("polynomial is not homogeneous")
        terms[te] = terms.get(te, ZERO) + coeff
    if degree is not None and deg != degree:
        raise ValueError(f"expected degree {degree}, got {deg}")
    return Poly(deg, terms)


def _split_factors(s: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "*" and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    if any(not f for f in out):
        raise ValueError(f"bad term {s!r}")
    return out


def _split_top(s: str) -> list[str]:
    """Split on '+' / '-' separators outside parentheses (keeping '-' signs)."""
    out, depth, cur = [], 0, ""
    i = 0
    while i < len(s):
        ch = s[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and cur.strip() and not cur.rstrip().endswith(("^", "*")):
            out.append(cur)
            cur = "" if ch == "+" else "-"
        else:
            cur += ch
        i += 1
    if cur.strip():
        out.append(cur)
    return out


X = Poly.monomial((1, 0, 0))
Y = Poly.monomial((0, 1, 0))
Z = Poly.monomial((0, 0, 1))


def substitute_linear(f: Poly, L: Sequence[Poly]) -> Poly:
    """f(L0, L1, L2) for linear forms L, by nested homogeneous Horner schemes."""
    d = f.degree
    if not f.terms:
        return Poly.zero(d)
    zpow = [Poly.constant(1)]
    for _ in range(d):
        zpow.append(zpow[-1] * L[2])
    by_i: dict[int, dict[int, FieldElement]] = {}
    for (i, j, k), c in f.terms.items():
        by_i.setdefault(i, {})[j] = c
    inner = {}
    for i, row in by_i.items():
        jmax = max(row)
        h = Poly.constant(row[jmax])
        for j in range(jmax - 1, -1, -1):
            h = h * L[1]
            c = row.get(j)
            if c is not None:
                h = h + zpow[jmax - j].scale(c)
        inner[i] = h * zpow[d - i - jmax]
    imax = max(inner)
    acc = inner[imax]
    for i in range(imax - 1, -1, -1):
        acc = acc * L[0]
        g = inner.get(i)
        if g is not None:
            acc = acc + g
    return acc


def jacobian_det(f1: Poly, f2: Poly, f3: Poly) -> Poly:
    """Determinant of the 3x3 matrix of first partials (rows = the forms)."""
    J = [[f.derivative(v) for v in range(3)] for f in (f1, f2, f3)]
    deg = f1.degree + f2.degree + f3.degree - 3
    if any(f.degree == 0 for f in (f1, f2, f3)):
        return Poly.zero(max(deg, 0))

    def m(a, b):
        return a * b

    t1 = m(J[0][0], m(J[1][1], J[2][2]) - m(J[1][2], J[2][1]))
    t2 = m(J[0][1], m(J[1][0], J[2][2]) - m(J[1][2], J[2][0]))
    t3 = m(J[0][2], m(J[1][0], J[2][1]) - m(J[1][1], J[2][0]))
    res = t1 - t2 + t3
    if not res.terms:
        return Poly.zero(deg)
    return res


def product(polys: Iterable[Poly]) -> Poly:
    out = Poly.constant(1)
    for p in polys:
        out = out * p
    return out


# projective points ----------------------------------------------------------

class ProjectivePoint:
    """A point of P^2 over Q(w), normalized so the first nonzero coordinate is 1."""

    __slots__ = ("coords",)

    def __init__(self, *coords):
        if len(coords) == 1 and not isinstance(coords[0], (int, str, FieldElement)):
            coords = tuple(coords[0])
        c = [fe(v) for v in coords]
        if len(c) != 3:
            raise ValueError("a projective point needs three coordinates")
        for v in c:
            if v:
                inv = v.inverse()
                self.coords = tuple(x * inv for x in c)
                break
        else:
            raise ValueError("[0:0:0] is not a projective point")

    def __eq__(self, other):
        return isinstance(other, ProjectivePoint) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "[" + ":".join(c.pretty() for c in self.coords) + "]"

    __str__ = __repr__

    def transform(self, g) -> "ProjectivePoint":
        rows = g.entries if hasattr(g, "entries") else g
        return ProjectivePoint(
            *[rows[r][0] * self.coords[0] + rows[r][1] * self.coords[1] + rows[r][2] * self.coords[2]
              for r in range(3)]
        )

    def on(self, f: Poly) -> bool:
        return not f.evaluate(self)

    def linear_form(self) -> Poly:
        """The polar linear form <(x, y, z), p>."""
        return Poly.linear(*self.coords)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coords]

    @classmethod
    def from_json(cls, data) -> "ProjectivePoint":
        return cls(*[parse_element(s) for s in data])


def line_through(p: ProjectivePoint, q: ProjectivePoint) -> Poly:
    a, b = p.coords, q.coords
    return Poly.linear(
        a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]
    ).monic()


def meet(l1: Poly, l2: Poly) -> ProjectivePoint:
    """Intersection point of two distinct lines (cross product)."""
    a = [l1.terms.get(e, ZERO) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    b = [l2.terms.get(e, ZERO) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    return ProjectivePoint(
        a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]
    )


# univariate helpers for resultants ------------------------------------------

def _upoly_trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _upoly_eval_binary(f: Poly, t: FieldElement) -> list[FieldElement]:
    """Coefficients (in z, ascending) of f(t, 1, z)."""
    out = [ZERO] * (f.degree + 1)
    tp = [ONE]
    for _ in range(f.degree):
        tp.append(tp[-1] * t)
    for (i, j, k), c in f.terms.items():
        out[k] = out[k] + c * tp[i]
    return out


def sylvester(a: list, b: list) -> list[list]:
    """Sylvester matrix of two univariate polys given ascending coefficient lists."""
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    ra = list(reversed(a))
    rb = list(reversed(b))
    for i in range(n):
        rows.append([ZERO] * i + ra + [ZERO] * (size - i - m - 1))
    for i in range(m):
        rows.append([ZERO] * i + rb + [ZERO] * (size - i - n - 1))
    return rows


def _interpolate(xs: list, ys: list) -> list:
    """Newton interpolation; ascending coefficient list."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [ZERO] * n
    poly_cur = [coef[n - 1]]
    for k in range(n - 2, -1, -1):
        # poly_cur = poly_cur * (t - xs[k]) + coef[k]
        new = [ZERO] * (len(poly_cur) + 1)
        for i, c in enumerate(poly_cur):
            new[i + 1] = new[i + 1] + c
            new[i] = new[i] - c * xs[k]
        new[0] = new[0] + coef[k]
        poly_cur = new
    poly[: len(poly_cur)] = poly_cur
    return _upoly_trim(poly)


def _udivmod_rem(a: list, b: list) -> list:
    a = list(a)
    inv = b[-1].inverse()
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = a[-1] * inv
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] = a[shift + i] - c * bc
        a.pop()
        _upoly_trim(a)
    return a


def upoly_gcd(a: list, b: list) -> list:
    a, b = _upoly_trim(list(a)), _upoly_trim(list(b))
    while b:
        a, b = b, _udivmod_rem(a, b)
        if b:
            inv = b[-1].inverse()
            b = [c * inv for c in b]
    if a:
        inv = a[-1].inverse()
        a = [c * inv for c in a]
    return a


def resultant_binary(f: Poly, g: Poly) -> list[FieldElement]:
    """Res_z(f, g) as a binary form in (x, y), returned via its y = 1 chart.

    The list holds ascending coefficients in t = x/y of R(t, 1); the true
    binary form has degree ``f.degree * g.degree`` and any shortfall is a
    root at [1:0].  Requires the z^deg coefficients of f, g to be nonzero.
    """
    D = f.degree * g.degree
    xs, ys = [], []
    for t in range(D + 1):
        tv = fe(t)
        a = _upoly_eval_binary(f, tv)
        b = _upoly_eval_binary(g, tv)
        ys.append(linalg.det_bareiss(sylvester(a, b)))
        xs.append(tv)
    return _interpolate(xs, ys)


def _random_change(rng: random.Random):
    while True:
        M = [[fe(rng.randint(-4, 4)) for _ in range(3)] for _ in range(3)]
        if linalg.det_bareiss(M):
            return M


def intersection_count(f: Poly, g: Poly, seed: int = 0, attempts: int = 6) -> dict:
    """Number of distinct intersection points and total intersection multiplicity.

    Projects from a random center after a random coordinate change; two
    independent changes must agree on the distinct count.
    """
    if not f.terms or not g.terms:
        raise ValueError("zero polynomial")
    rng = random.Random(seed)
    counts = []
    total = None
    for _ in range(attempts):
        M = _random_change(rng)
        F = f.act(M)
        G = g.act(M)
        if not F.terms.get((0, 0, F.degree)) or not G.terms.get((0, 0, G.degree)):
            continue
        R = resultant_binary(F, G)
        if not R:
            raise ValueError("curves share a common component")
        D = f.degree * g.degree
        at_inf = D - (len(R) - 1)
        deriv = [c * i for i, c in enumerate(R)][1:]
        sq = len(R) - 1 - (len(upoly_gcd(R, deriv)) - 1) if len(R) > 1 else 0
        distinct = sq + (1 if at_inf else 0)
        total = D
        counts.append(distinct)
        if len(counts) >= 2 and counts[-1] == counts[-2]:
            return {"distinct_points": distinct, "total_multiplicity": total}
    if not counts:
        raise RuntimeError("no admissible projection found")
    return {"distinct_points": max(counts), "total_multiplicity": total}
