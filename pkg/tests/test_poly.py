import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from icosa.field import OMEGA, ONE, ZERO, fe
from icosa.group import GENERATORS, IDENTITY, RHO_G, RHO_I, group
from icosa.invariants import build_psi30, phi
from icosa.poly import (InfiniteMultiplicity, NotDivisible, Poly, ProjectivePoint, X, Y, Z, intersection_count,
                        jacobian_det, line_through, meet, parse_poly)

from oracles import dehomogenized_multiplicity
from strategies import forms, points, tiny

E3 = ProjectivePoint(0, 0, 1)


def test_evaluate_examples():
    assert phi(2).evaluate(E3) == ONE
    assert phi(6).evaluate(E3) == ZERO
    assert phi(10).evaluate(E3) == ZERO


def test_act_examples():
    assert phi(2).act(RHO_I) == phi(2)
    assert X.act(RHO_G) == -X
    f = parse_poly("x^2*y + (w)*y*z^2 - 3*z^3")
    assert f.act(IDENTITY) == f


def test_multiplicity_examples():
    assert phi(6).multiplicity_at(E3) == 2
    assert (X * Y).multiplicity_at(E3) == 2
    assert build_psi30().psi30.multiplicity_at(ProjectivePoint(1, 1, 1)) == 6
    with pytest.raises(InfiniteMultiplicity):
        Poly.zero(3).multiplicity_at(E3)


def test_jacobian_examples():
    assert jacobian_det(X, Y, Z) == Poly.constant(1)
    j = jacobian_det(phi(2), phi(6), phi(10))
    assert j.degree == 15 and not j.is_zero()
    from icosa.arrangement import build_arrangement

    assert all(p.on(j) for p in build_arrangement().by_label("all"))
    assert jacobian_det(phi(2), phi(2), phi(10)).is_zero()


def test_divide_exact_examples():
    assert (X * X - Y * Y).divide_exact(X - Y) == X + Y
    q = phi(15).divide_exact(X)
    assert q.degree == 14 and q * X == phi(15)
    with pytest.raises(NotDivisible):
        phi(2).divide_exact(X)
    with pytest.raises(ZeroDivisionError):
        X.divide_exact(Poly.zero(1))


@pytest.mark.parametrize("a,b,want", [(2, 6, (12, 12)), (2, 10, (20, 20)), (6, 10, (15, 60))])
def test_intersection_counts(a, b, want):
    r = intersection_count(phi(a), phi(b))
    assert (r["distinct_points"], r["total_multiplicity"]) == want


def test_intersection_simple():
    # a conic and a tangent line: one point, multiplicity 2
    r = intersection_count(parse_poly("x*z - y^2"), X)
    assert r == {"distinct_points": 1, "total_multiplicity": 2}


def test_intersection_common_factor():
    with pytest.raises(ValueError):
        intersection_count(X * Y, X * Z)


@given(forms(max_degree=4))
def test_text_round_trip(f):
    assert parse_poly(str(f), f.degree) == f


def test_parse_loose_forms():
    assert parse_poly("4*w*x^2 - y^2") == (X * X).scale(4 * OMEGA) - Y * Y
    assert parse_poly(" - y^2 + x*z") == X * Z - Y * Y


@given(forms(max_degree=5))
def test_euler_identity(f):
    lhs = X * f.derivative(0) + Y * f.derivative(1) + Z * f.derivative(2) if f.degree else Poly.zero(0)
    assert lhs == f.scale(f.degree) or (f.degree == 0 and lhs.is_zero())


@given(forms(max_degree=3), st.sampled_from(list(group())), st.sampled_from(list(group())))
@settings(max_examples=40)
def test_action_composition(f, g, h):
    assert f.act(g).act(h) == f.act(g * h)


@given(forms(max_degree=3))
def test_action_generators_pairs(f):
    for g in GENERATORS:
        for h in GENERATORS:
            assert f.act(g).act(h) == f.act(g * h)


@given(forms(max_degree=3).filter(bool), forms(max_degree=3).filter(bool), points())
def test_multiplicity_additive(f, g, p):
    assert (f * g).multiplicity_at(p) == f.multiplicity_at(p) + g.multiplicity_at(p)


@given(forms(degree=2), forms(degree=2), forms(degree=2), tiny)
@settings(max_examples=30)
def test_jacobian_alternating_multilinear(f, g, h, c):
    assert jacobian_det(f, g, h) == -jacobian_det(g, f, h)
    assert jacobian_det(f + g.scale(c), g, h) == jacobian_det(f, g, h) + jacobian_det(g, g, h).scale(c)
    assert jacobian_det(f.scale(c), g, h) == jacobian_det(f, g, h).scale(c)


def _random_pair(rng: random.Random):
    def r():
        return fe(rng.randint(-4, 4)) + fe(rng.randint(-4, 4)) * OMEGA

    while True:
        p = ProjectivePoint(r(), r(), r()) if rng.random() < 0.8 else ProjectivePoint(0, r(), ONE)
        if any(p.coords):
            break
    f = Poly.constant(r() or ONE)
    for _ in range(rng.randint(0, 3)):
        q = ProjectivePoint(r(), r(), ONE)
        if q != p:
            f = f * line_through(p, q)
    extra = Poly(rng.randint(0, 2), {})
    from icosa.poly import exponents

    for e in rng.sample(exponents(extra.degree), k=min(2, len(exponents(extra.degree)))):
        extra = extra + Poly.monomial(e, r() or ONE)
    if extra.is_zero():
        extra = Poly.constant(1)
    return f * extra, p


def test_multiplicity_matches_dehomogenized_oracle():
    rng = random.Random(2024)
    pairs = [_random_pair(rng) for _ in range(44)]
    pairs += [(phi(6), E3), (phi(10), E3), (phi(15), ProjectivePoint(OMEGA, 0, 1)),
              (phi(15), ProjectivePoint(1, 1, 1)), (phi(2), E3), (X * Y * (X - Y), E3)]
    assert len(pairs) == 50
    nontrivial = 0
    for f, p in pairs:
        m = f.multiplicity_at(p)
        nontrivial += m > 1
        assert m == dehomogenized_multiplicity(f, p), (str(f), p)
    assert nontrivial >= 10


def test_points_and_lines():
    p, q = ProjectivePoint(1, 0, 0), ProjectivePoint(0, 1, 0)
    assert line_through(p, q).proportional_to(Z) is not None
    assert meet(X, Y) == E3
    assert ProjectivePoint(2, 4, 6) == ProjectivePoint(1, 2, 3)
    r = ProjectivePoint(OMEGA, 1, 0)
    assert ProjectivePoint.from_json(r.to_json()) == r
    assert ProjectivePoint(0, 0, 5).coords == (ZERO, ZERO, ONE)
    with pytest.raises(ValueError):
        ProjectivePoint(0, 0, 0)
