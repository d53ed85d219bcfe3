import json
from fractions import Fraction

import pytest

from icosa import linalg
from icosa.field import ZERO, fe
from icosa.group import GENERATORS
from icosa.invariants import phi
from icosa.poly import Poly
from icosa.symbolic import (AlphaCertificate, Inconclusive, InconsistentTable, TableRow, alpha, check_table,
                            orbit_points, screened_rank, vanishing_matrix, waldschmidt_table)

ALL = orbit_points("all")


def test_counts():
    for label in ("all", "double", "triple", "quintuple"):
        pts = orbit_points(label)
        for m in (1, 2, 3):
            for d in range(m - 1, m + 4):
                s = vanishing_matrix(pts, m, d)
                assert s.rows == len(pts) * m * (m + 1) // 2
                assert s.cols == (d + 1) * (d + 2) // 2
                assert len(s.exact_matrix()) == s.rows


def test_low_degree_uses_all_coefficients():
    # below degree m - 1 every coefficient is a partial of order d
    s = vanishing_matrix(ALL[:1], 4, 1)
    assert linalg.rank(s.exact_matrix()) == s.cols


def test_no_line_through_all_points():
    s = vanishing_matrix(ALL, 1, 1)
    assert (s.rows, s.cols) == (31, 3)
    assert linalg.rank_bareiss(s.exact_matrix()) == 3


def test_phi6_in_double_kernel():
    s = vanishing_matrix(orbit_points("double"), 2, 6)
    assert (s.rows, s.cols) == (45, 28)
    M = s.exact_matrix()
    v = phi(6).to_vector()
    assert all(sum((a * b for a, b in zip(row, v)), ZERO) == ZERO for row in M)
    assert s.cols - linalg.rank_bareiss(M) >= 1


def test_modular_matrix_matches_exact():
    s = vanishing_matrix(orbit_points("triple"), 2, 4)
    from icosa.field import ModularImage, valid_primes

    img = ModularImage.pair(next(valid_primes()))[0]
    assert (s.modular_matrix(img) == linalg.reduce_matrix(s.exact_matrix(), img)).all()


@pytest.mark.parametrize("label", ["all", "double", "triple", "quintuple"])
@pytest.mark.parametrize("m", [1, 2])
def test_modular_equals_exact_rank(label, m):
    pts = orbit_points(label)
    for d in range(1, 9):
        s = vanishing_matrix(pts, m, d)
        assert screened_rank(s) == linalg.rank_bareiss(s.exact_matrix())


@pytest.mark.parametrize("label,m,want", [("quintuple", 5, 12), ("double", 2, 6), ("triple", 2, 6)])
def test_alpha_examples(label, m, want):
    cert = alpha(label, m)
    assert cert.alpha == want
    assert cert.validate() == []


def test_alpha_all_m1_matches_dense_oracle():
    d1 = None
    for d in range(1, 16):
        s = vanishing_matrix(ALL, 1, d)
        if linalg.rank_bareiss(s.exact_matrix()) < s.cols:
            d1 = d
            break
    assert d1 is not None and d1 <= 15
    assert alpha("all", 1, use_bounds=False).alpha == d1 == 6


def test_alpha_all_m2_matches_dense_oracle():
    for d, nullity in ((11, 0), (12, 6)):
        s = vanishing_matrix(ALL, 2, d)
        assert s.cols - linalg.rank_bareiss(s.exact_matrix()) == nullity
    assert alpha("all", 2).alpha == 12


def test_alpha_without_floor_agrees():
    assert alpha("double", 2, use_bounds=False).alpha == 6
    assert alpha("quintuple", 5, search_floor=9, use_bounds=False).alpha == 12


def test_inconclusive():
    with pytest.raises(Inconclusive) as e:
        alpha("all", 2, max_degree=11)
    assert "screened_ranks" in e.value.partial


def test_certificate_round_trip():
    cert = alpha("triple", 2)
    data = json.loads(json.dumps(cert.to_json()))
    back = AlphaCertificate.from_json(data)
    assert back.alpha == cert.alpha and back.upper_witness == cert.upper_witness
    assert back.validate() == []


def test_tampered_certificates_rejected():
    cert = alpha("double", 2)
    data = cert.to_json()
    bad = AlphaCertificate.from_json({**data, "minor_rows": data["minor_rows"][:-1]})
    assert bad.validate()
    bad = AlphaCertificate.from_json({**data, "witness": str(phi(2) ** 3), "alpha": 6})
    assert bad.validate()
    bad = AlphaCertificate.from_json({**data, "alpha": 7, "witness": str(phi(6) * Poly.monomial((1, 0, 0)))})
    assert bad.validate()  # the degree-6 system is not of full rank


def test_waldschmidt_table_quintuple():
    rows = waldschmidt_table("quintuple", [5, 10])
    assert [r.ratio for r in rows] == [Fraction(12, 5)] * 2


def test_check_table_detects_violations():
    c = None
    with pytest.raises(InconsistentTable):
        check_table([TableRow(1, 6, Fraction(6), c), TableRow(2, 13, Fraction(13, 2), c)])
    with pytest.raises(InconsistentTable):
        check_table([TableRow(1, 6, Fraction(6), c), TableRow(2, 6, Fraction(3), c)])


def _in_span(basis, v):
    return linalg.rank(basis + [v]) == linalg.rank(basis)


@pytest.mark.parametrize("label,m,d", [("all", 1, 6), ("double", 2, 6), ("triple", 2, 6), ("quintuple", 2, 6)])
def test_kernel_closed_under_group(label, m, d):
    s = vanishing_matrix(orbit_points(label), m, d)
    basis = linalg.nullspace(s.exact_matrix(), s.cols)
    assert basis
    for v in basis:
        f = Poly.from_vector(d, v)
        for g in GENERATORS:
            assert _in_span(basis, f.act(g).to_vector())


def test_orbit_label_validation():
    with pytest.raises(ValueError):
        orbit_points("sextuple")
    with pytest.raises(ValueError):
        vanishing_matrix(ALL, 0, 3)
