"""The icosahedral reflection group G = A5 x Z2 acting on P^2 over Q(w)."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from .field import ONE, ZERO, FieldElement, OMEGA, fe
from .poly import Poly, ProjectivePoint

Entries = tuple[tuple[FieldElement, ...], ...]


class BadGenerators(RuntimeError):
    pass


class GroupElement:
    __slots__ = ("entries", "_key")

    def __init__(self, rows):
        self.entries: Entries = tuple(tuple(fe(v) for v in row) for row in rows)
        if len(self.entries) != 3 or any(len(r) != 3 for r in self.entries):
            raise ValueError("expected a 3x3 matrix")
        self._key = None

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        a, b = self.entries, other.entries
        return GroupElement(
            [[a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j] for j in range(3)]
             for i in range(3)]
        )

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "GroupElement(" + "; ".join(" ".join(c.pretty() for c in r) for r in self.entries) + ")"

    @property
    def trace(self) -> FieldElement:
        e = self.entries
        return e[0][0] + e[1][1] + e[2][2]

    def det(self) -> FieldElement:
        a = self.entries
        return (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))

    def inverse(self) -> "GroupElement":
        a = self.entries
        d = self.det()
        if not d:
            raise ZeroDivisionError("singular matrix")
        cof = [[ZERO] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                r = [k for k in range(3) if k != i]
                c = [k for k in range(3) if k != j]
                m = a[r[0]][c[0]] * a[r[1]][c[1]] - a[r[0]][c[1]] * a[r[1]][c[0]]
                cof[j][i] = m if (i + j) % 2 == 0 else -m
        inv = d.inverse()
        return GroupElement([[v * inv for v in row] for row in cof])

    def is_identity(self) -> bool:
        return self == IDENTITY

    def is_scalar(self) -> bool:
        e = self.entries
        return (all(e[i][j] == ZERO for i in range(3) for j in range(3) if i != j)
                and e[0][0] == e[1][1] == e[2][2])

    @property
    def canonical_projective(self) -> Entries:
        """The matrix rescaled so its first nonzero entry is 1."""
        if self._key is None:
            flat = [v for row in self.entries for v in row]
            lead = next(v for v in flat if v)
            inv = lead.inverse()
            self._key = tuple(tuple(v * inv for v in row) for row in self.entries)
        return self._key

    def order(self, limit: int = 240) -> int:
        g = self
        for k in range(1, limit + 1):
            if g.is_identity():
                return k
            g = g * self
        raise ValueError("element order exceeds limit")

    def projective_order(self, limit: int = 240) -> int:
        g = self
        for k in range(1, limit + 1):
            if g.is_scalar():
                return k
            g = g * self
        raise ValueError("element order exceeds limit")

    def to_json(self) -> list[list[str]]:
        return [[str(v) for v in row] for row in self.entries]


IDENTITY = GroupElement([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
MINUS_IDENTITY = GroupElement([[-1, 0, 0], [0, -1, 0], [0, 0, -1]])

_w = OMEGA
_h = fe("-1/2")
RHO_G = GroupElement([[-1, 0, 0], [0, 1, 0], [0, 0, 1]])
RHO_H = GroupElement([[1, 0, 0], [0, -1, 0], [0, 0, 1]])
RHO_I = GroupElement([
    [_h * (_w - 1), _h * _w, _h],
    [_h * _w, -_h, _h * (_w - 1)],
    [_h, _h * (_w - 1), -_h * _w],
])
GENERATORS = (RHO_G, RHO_H, RHO_I)


def generate_group(generators=GENERATORS, limit: int = 240) -> list[GroupElement]:
    """Closure of the generators under multiplication (breadth-first)."""
    seen = {IDENTITY}
    order = [IDENTITY]
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for a in frontier:
            for g in generators:
                b = a * g
                if b not in seen:
                    seen.add(b)
                    order.append(b)
                    nxt.append(b)
                    if len(seen) > limit:
                        raise BadGenerators(f"closure exceeds {limit} elements")
        frontier = nxt
    return order


@lru_cache(maxsize=1)
def group() -> tuple[GroupElement, ...]:
    return tuple(generate_group())


@lru_cache(maxsize=1)
def projective_group() -> tuple[GroupElement, ...]:
    """One representative matrix per element of the image in PGL(3)."""
    reps = {}
    for g in group():
        reps.setdefault(g.canonical_projective, g)
    return tuple(reps.values())


@dataclass
class ConjugacyClass:
    size: int
    trace: FieldElement
    element_order: int
    representative: GroupElement


def class_data() -> list[ConjugacyClass]:
    G = group()
    inverses = {g: g.inverse() for g in G}
    remaining = set(G)
    out = []
    for x in G:
        if x not in remaining:
            continue
        cls = {g * x * inverses[g] for g in G}
        remaining -= cls
        out.append(ConjugacyClass(len(cls), x.trace, x.order(), x))
    return out


def pseudoreflections() -> list[GroupElement]:
    """Order-2 elements with trace 1 (2-dimensional fixed space)."""
    return [g for g in group() if g.trace == ONE and (g * g).is_identity() and not g.is_identity()]


def is_pseudoreflection(r: GroupElement) -> bool:
    return (r * r).is_identity() and r.trace == ONE


def mirror_line(r: GroupElement) -> Poly:
    """Linear form cutting out the fixed plane of a pseudoreflection (monic)."""
    if not is_pseudoreflection(r):
        raise ValueError("not a pseudoreflection")
    e = r.entries
    for i in range(3):
        row = [e[i][j] - (ONE if i == j else ZERO) for j in range(3)]
        if any(row):
            return Poly.linear(*row).monic()
    raise AssertionError("unreachable: r - I has rank 1")


def mirror_lines() -> list[Poly]:
    seen = []
    for r in pseudoreflections():
        l = mirror_line(r)
        if l not in seen:
            seen.append(l)
    return seen


# orbits and stabilizers ---------------------------------------------------------

@dataclass
class OrbitRecord:
    seed: ProjectivePoint
    points: list[ProjectivePoint]
    stabilizer_order: int
    stabilizer_exponent_profile: Counter = field(default_factory=Counter)

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def stabilizer_type(self) -> str:
        return stabilizer_type(self.stabilizer_order, self.stabilizer_exponent_profile)


def stabilizer_type(order: int, profile: Counter) -> str:
    """Name the stabilizer from its order and element-order multiset."""
    if order == 1:
        return "trivial"
    if order == 4 and profile == Counter({1: 1, 2: 3}):
        return "D4 (Klein four)"
    if order == 6 and profile == Counter({1: 1, 2: 3, 3: 2}):
        return "D6"
    if order == 10 and profile == Counter({1: 1, 2: 5, 5: 4}):
        return "D10"
    if order == 2 and profile == Counter({1: 1, 2: 1}):
        return "Z2"
    return f"order {order}"


def stabilizer(p: ProjectivePoint) -> list[GroupElement]:
    return [g for g in projective_group() if p.transform(g) == p]


def orbit(p: ProjectivePoint) -> OrbitRecord:
    pts = []
    seen = set()
    frontier = [p]
    seen.add(p)
    while frontier:
        nxt = []
        for q in frontier:
            for g in GENERATORS:
                r = q.transform(g)
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        pts.extend(frontier)
        frontier = nxt
    stab = stabilizer(p)
    profile = Counter(g.projective_order() for g in stab)
    return OrbitRecord(p, pts, len(stab), profile)


def line_orbit(line: Poly) -> list[Poly]:
    """Orbit of a linear form (up to scalar) under G."""
    out = [line.monic()]
    frontier = [line.monic()]
    while frontier:
        nxt = []
        for l in frontier:
            for g in GENERATORS:
                m = l.act(g).monic()
                if m not in out:
                    out.append(m)
                    nxt.append(m)
        frontier = nxt
    return out
