"""G-irreducibility witnesses for invariant curves."""

from __future__ import annotations

import itertools

from . import linalg
from .arrangement import build_arrangement
from .group import line_orbit
from .poly import NotDivisible, Poly, ProjectivePoint, exponents, product


def single_orbit_of_lines(f: Poly) -> str:
    """Empty string unless f = unit * (product of one orbit of lines)."""
    arr = build_arrangement()
    cands = list(arr.lines)
    for label in ("quintuple", "triple", "double"):
        cands += [p.linear_form().monic() for p in arr.by_label(label)]
    for l in cands:
        if l.divides(f):
            orb = line_orbit(l)
            if len(orb) == f.degree and product(orb).proportional_to(f) is not None:
                return f"product of an orbit of {len(orb)} lines"
    return ""


def no_small_invariant_factor(f: Poly) -> str:
    """For invariant f of degree < 10: a proper G-stable factor would be a
    semi-invariant of degree 2 or 4 (A5 is perfect), i.e. phi2 or phi2^2."""
    from .invariants import phi

    if f.degree >= 10:
        return ""
    if phi(2).divides(f):
        return ""
    return f"no invariant factor of degree < {f.degree}: phi2 does not divide"


def conic_through(points: list[ProjectivePoint]) -> Poly | None:
    mons = exponents(2)
    rows = [[Poly.monomial(e).evaluate(p) for e in mons] for p in points]
    ker = linalg.nullspace(rows, len(mons))
    if len(ker) != 1:
        return None
    return Poly.from_vector(2, ker[0]).monic()


def conic_is_smooth(q: Poly) -> bool:
    from .field import ZERO, fe

    t = q.terms

    def c(e):
        return t.get(e, ZERO)

    half = fe("1/2")
    M = [
        [c((2, 0, 0)), c((1, 1, 0)) * half, c((1, 0, 1)) * half],
        [c((1, 1, 0)) * half, c((0, 2, 0)), c((0, 1, 1)) * half],
        [c((1, 0, 1)) * half, c((0, 1, 1)) * half, c((0, 0, 2))],
    ]
    return bool(linalg.det_bareiss(M))


def single_orbit_of_conics(f: Poly) -> str:
    """f = unit * product of the 6 conics through 5 of the 6 quintuple points."""
    pts = build_arrangement().by_label("quintuple")
    conics = []
    for five in itertools.combinations(pts, 5):
        q = conic_through(list(five))
        if q is None or not conic_is_smooth(q):
            return ""
        conics.append(q)
    from .group import GENERATORS

    orbit = {conics[0]}
    frontier = [conics[0]]
    while frontier:
        nxt = []
        for q in frontier:
            for g in GENERATORS:
                r = q.act(g).monic()
                if r not in orbit:
                    orbit.add(r)
                    nxt.append(r)
        frontier = nxt
    if orbit != set(conics):
        return ""
    if product(conics).proportional_to(f) is None:
        return ""
    return "product of an orbit of 6 smooth conics"
