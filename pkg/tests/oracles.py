"""Independent reference implementations used to cross-check the library.

These deliberately avoid icosa's own arithmetic: sympy represents w as
(1 + sqrt 5)/2 and works in an affine chart around the point.
"""

import sympy as sp

from icosa.linalg import rank_bareiss

SQRT5 = sp.sqrt(5)
W = (1 + SQRT5) / 2
K = sp.QQ.algebraic_field(SQRT5)


def to_sympy_number(c):
    return sp.Rational(int(c.a.numerator), int(c.a.denominator)) + sp.Rational(int(c.b.numerator), int(c.b.denominator)) * W


def dehomogenized_multiplicity(f, point) -> int:
    """Lowest total degree in a local affine expansion of f around point."""
    x, y, z, u, v = sp.symbols("x y z u v")
    expr = sum(to_sympy_number(c) * x**i * y**j * z**k for (i, j, k), c in f.terms.items())
    coords = [to_sympy_number(c) for c in point.coords]
    k = next(i for i, c in enumerate(coords) if c != 0)
    others = [i for i in range(3) if i != k]
    local = [None] * 3
    local[k] = sp.Integer(1)
    local[others[0]] = sp.radsimp(coords[others[0]] / coords[k]) + u
    local[others[1]] = sp.radsimp(coords[others[1]] / coords[k]) + v
    e = sp.expand(expr.subs({x: local[0], y: local[1], z: local[2]}, simultaneous=True))
    P = sp.Poly(e, u, v, domain=K)
    degs = [a + b for (a, b), c in P.terms() if c != 0]
    if not degs:
        raise ValueError("f vanishes identically in the chart")
    return min(degs)


def dense_rank(M) -> int:
    return rank_bareiss(M)
