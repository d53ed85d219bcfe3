from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from icosa.picard import (A, B, C, D, H, CertificateError, DescentCertificate, DivisorClass, NefCertificate,
                          alpha_floor, certified_lower_bound, check_witness, descent_bound, euler_char, intersect,
                          nef_certificate_D, nef_lower_bound, pairing_against_D, parse_class, sandwich,
                          standard_descent_certificates, standard_witnesses, verify_decomposition)

classes = st.builds(DivisorClass, st.integers(-50, 100), st.integers(-10, 20), st.integers(-10, 20),
                    st.integers(-10, 20))
effective_like = st.builds(DivisorClass, st.integers(0, 100), st.integers(0, 20), st.integers(0, 20),
                           st.integers(0, 20))


def test_self_intersections():
    assert intersect(A, A) == -75
    assert intersect(B, B) == -24
    assert intersect(C, C) == -24
    assert intersect(D, D) == 0


def test_decomposition():
    assert 6 * D == 4 * A + 5 * B + 5 * C
    assert [intersect(D, X) for X in (A, B, C)] == [0, 0, 0]
    assert verify_decomposition()["holds"]


def test_chi():
    assert [euler_char(k * D + 2 * H) for k in range(1, 11)] == [6 + 30 * k for k in range(1, 11)]
    assert euler_char(parse_class("42H-5E5-7E3-8E2")) == 36


def test_intersect_example():
    assert intersect(parse_class("40H-5E5-7E3-8E2"), parse_class("15H-5E5-3E3-2E2")) == 0


@given(classes, classes, classes, st.integers(-5, 5))
def test_bilinear_symmetric(x, y, z, k):
    assert intersect(x, y) == intersect(y, x)
    assert intersect(x + y, z) == intersect(x, z) + intersect(y, z)
    assert intersect(k * x, y) == k * intersect(x, y)


@given(effective_like)
def test_chi_bounded_by_plane_curves(dc):
    full = comb(dc.h + 2, 2)
    assert euler_char(dc) <= full
    assert (euler_char(dc) == full) == (dc.m5 == dc.m3 == dc.m2 == 0)


@given(classes)
def test_class_text_round_trip(dc):
    assert parse_class(str(dc)) == dc


@pytest.mark.parametrize("text,want", [
    ("40H-5E5-7E3-8E2", DivisorClass(40, 5, 7, 8)),
    ("-8E2+40H-7E3-5E5", DivisorClass(40, 5, 7, 8)),
    ("H-E5", DivisorClass(1, 1)),
    ("6H - 2E2", DivisorClass(6, 0, 0, 2)),
])
def test_parse(text, want):
    assert parse_class(text) == want


@pytest.mark.parametrize("text", ["", "40H-5E5-5E5", "40H5E5", "40Q", "40H-5E7"])
def test_parse_errors(text):
    with pytest.raises(ValueError):
        parse_class(text)


def test_nef_bound_lattice_only():
    assert nef_lower_bound(nef_certificate_D(False), check_evidence=False) == Fraction(11, 2)
    assert pairing_against_D(Fraction(11, 2)) == 0


def test_nef_bound_with_curves():
    assert nef_lower_bound(nef_certificate_D()) == Fraction(11, 2)


def test_nef_rejects_bad_certificates():
    bad = NefCertificate(D, [(A, Fraction(1))])
    assert bad.validate(check_evidence=False)
    neg = NefCertificate(A, [(A, Fraction(1))])
    assert any("negatively" in p for p in neg.validate(check_evidence=False))
    assert NefCertificate(2 * H, []).validate() == []
    with pytest.raises(CertificateError):
        nef_lower_bound(NefCertificate(D, [(A, Fraction(4, 6)), (B, Fraction(5, 6)), (C, Fraction(5, 6))]))


def test_witnesses():
    w = standard_witnesses()
    assert check_witness(A, w["A"], exact=True)
    assert check_witness(B, w["B"], exact=True)
    assert check_witness(C, w["C"], exact=True)
    assert w["C"].multiplicities == {"quintuple": 2, "triple": 6, "double": 6}
    assert all(wit.irreducibility for wit in w.values())


def test_descent_bounds():
    assert certified_lower_bound("double") == 3
    assert certified_lower_bound("triple") == 3
    assert certified_lower_bound("quintuple") == Fraction(12, 5)
    assert certified_lower_bound("all") == Fraction(11, 2)
    for cert in standard_descent_certificates().values():
        assert cert.b ** 2 <= cert.mu ** 2 * cert.s
        assert Fraction(cert.b, cert.mu) <= Fraction(cert.mu * cert.s, cert.b)


def test_descent_rejects_positive_square():
    w = standard_witnesses()["B"]
    with pytest.raises(CertificateError):
        descent_bound(DescentCertificate("double", 8, 2, w))
    with pytest.raises(CertificateError):
        descent_bound(DescentCertificate("double", 6, 2, None))


def test_sandwich():
    rows = sandwich(100)
    vals = [r[1] for r in rows]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert all(v - Fraction(11, 2) == Fraction(1, 5 * k) for (k, v, _) in rows)
    assert all(chi == 6 + 30 * k for (k, _, chi) in rows)


def test_alpha_floor():
    assert alpha_floor("all", 1) == 6
    assert alpha_floor("all", 2) == 11
    assert alpha_floor("quintuple", 5) == 12
