"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from icosa.field import FieldElement
from icosa.poly import Poly, exponents

small_q = st.fractions(min_value=-20, max_value=20, max_denominator=12)
elements = st.builds(FieldElement, small_q, small_q)
nonzero = elements.filter(bool)
tiny = st.builds(FieldElement, st.integers(-3, 3), st.integers(-3, 3))


@st.composite
def forms(draw, degree=None, max_degree=4, max_terms=6):
    d = draw(st.integers(0, max_degree)) if degree is None else degree
    mons = exponents(d)
    chosen = draw(st.lists(st.sampled_from(mons), min_size=1, max_size=max_terms, unique=True))
    return Poly(d, {e: draw(tiny.filter(bool)) for e in chosen})


@st.composite
def points(draw):
    c = draw(st.lists(tiny, min_size=3, max_size=3).filter(any))
    from icosa.poly import ProjectivePoint

    return ProjectivePoint(*c)


def frac(x):
    return Fraction(int(x.numerator), int(x.denominator))
