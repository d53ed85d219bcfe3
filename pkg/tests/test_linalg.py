import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from icosa import linalg
from icosa.field import ONE, ZERO, ModularImage, fe, valid_primes

from strategies import tiny

P = next(valid_primes())


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(tiny, min_size=c, max_size=c), min_size=r, max_size=r)))


@st.composite
def low_rank(draw):
    r, c, k = draw(st.integers(2, 6)), draw(st.integers(2, 6)), draw(st.integers(1, 3))
    A = draw(st.lists(st.lists(tiny, min_size=k, max_size=k), min_size=r, max_size=r))
    B = draw(st.lists(st.lists(tiny, min_size=c, max_size=c), min_size=k, max_size=k))
    return [[sum((A[i][t] * B[t][j] for t in range(k)), ZERO) for j in range(c)] for i in range(r)]


@given(st.one_of(matrices(), low_rank()))
def test_bareiss_vs_rref(M):
    assert linalg.rank_bareiss(M) == linalg.rank(M)


@given(st.one_of(matrices(), low_rank()))
def test_modular_rank_never_exceeds_exact(M):
    img = ModularImage.pair(P)[0]
    r = linalg.rank_mod(linalg.reduce_matrix(M, img), P)
    assert r <= linalg.rank_bareiss(M)


@given(st.one_of(matrices(), low_rank()))
def test_nullspace(M):
    ns = linalg.nullspace(M, len(M[0]))
    assert len(ns) == len(M[0]) - linalg.rank(M)
    for v in ns:
        assert all(sum((a * b for a, b in zip(row, v)), ZERO) == ZERO for row in M)


def test_det_examples():
    assert linalg.det_bareiss([[fe(2), fe(1)], [fe(1), fe(1)]]) == ONE
    w = fe("w")
    assert linalg.det_bareiss([[w, ONE], [ONE, w - 1]]) == ZERO
    assert linalg.det_bareiss([[fe("1/2"), ZERO], [ZERO, fe(4)]]) == fe(2)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(tiny, min_size=n, max_size=n), min_size=n, max_size=n)))
@settings(max_examples=50)
def test_det_multiplicative_with_transpose(M):
    T = [list(r) for r in zip(*M)]
    assert linalg.det_bareiss(M) == linalg.det_bareiss(T)
    assert (linalg.det_bareiss(M) == ZERO) == (linalg.rank(M) < len(M))


def test_solve():
    M = [[fe(1), fe(1)], [fe(1), fe(-1)]]
    assert linalg.solve(M, [fe(3), fe(1)]) == [fe(2), fe(1)]
    assert linalg.solve([[fe(1)], [fe(1)]], [fe(1), fe(2)]) is None


def test_reconstruct_kernel_vector():
    w = fe("w")
    # kernel spanned by (1/3, w, -2/7 + w)
    v = [fe("1/3"), w, fe("-2/7") + w]
    M = [[v[1], -v[0], ZERO], [v[2], ZERO, -v[0]]]

    def verify(vec):
        return all(sum((a * b for a, b in zip(row, vec)), ZERO) == ZERO for row in M) and any(vec)

    vec, info = linalg.reconstruct_kernel_vector(lambda img: linalg.reduce_matrix(M, img), verify)
    ratio = vec[0] / v[0]
    assert [x * ratio for x in v] == list(vec) or [x / ratio for x in vec] == v
    assert info["primes_used"] >= 2


def test_rref_mod_pivot_rows():
    A = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]], dtype=np.int64)
    R, piv, rows = linalg.rref_mod(A, P)
    assert len(piv) == 2 and sorted(rows) == [0, 2]
    assert linalg.rank_mod(A[np.array(rows)], P) == 2
