import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from vertexsplit.linalg import (
    DimensionMismatch,
    LinSubspace,
    Matrix,
    Q,
    det,
    image,
    intersect,
    kernel,
    preimage,
    rank,
    rref,
)

small_ints = st.integers(min_value=-5, max_value=5)


def matrices(max_rows=5, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def test_scalar_coercion():
    assert Q("3/6") == mpq(1, 2)
    assert Q(4) == 4
    with pytest.raises(TypeError):
        Q(0.5)


def test_rref_examples():
    assert rref(Matrix.identity(2)) == Matrix.identity(2)
    assert rref(Matrix([[2, 4], [1, 2]])) == Matrix([[1, 2], [0, 0]])


def test_rref_preserves_row_space(rng):
    m = Matrix([[rng.randint(-9, 9) for _ in range(7)] for _ in range(5)])
    a = LinSubspace(m.entries, 7)
    b = LinSubspace(rref(m).entries, 7)
    assert a == b
    assert LinSubspace(list(m.entries) + list(rref(m).entries), 7).dim == a.dim


def test_kernel_examples():
    assert kernel(Matrix.zeros(3, 4)).dim == 4
    assert kernel(Matrix.identity(4)).dim == 0
    k = kernel(Matrix([[1, 1, 0], [0, 1, 1]]))
    assert k == LinSubspace([[1, -1, 1]], 3)


def test_intersect_examples():
    b = LinSubspace([[1, 2, 3]], 3)
    assert intersect(LinSubspace.full(3), b) == b
    assert intersect(LinSubspace([[1, 0]], 2), LinSubspace([[1, 1]], 2)).dim == 0
    e = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert intersect(LinSubspace(e[:2], 3), LinSubspace(e[1:], 3)) == LinSubspace([e[1]], 3)
    with pytest.raises(DimensionMismatch):
        intersect(LinSubspace.full(2), LinSubspace.full(3))


def test_preimage_examples():
    m = Matrix([[1, 2], [3, 4], [5, 6]])
    assert preimage(m, LinSubspace.full(3)) == LinSubspace.full(2)
    s = LinSubspace([[1, -1]], 2)
    assert preimage(Matrix.identity(2), s) == s
    proj = Matrix([[1, 0]])
    assert preimage(proj, LinSubspace.zero(1)) == LinSubspace([[0, 1]], 2)
    with pytest.raises(DimensionMismatch):
        preimage(proj, LinSubspace.full(2))


def test_det():
    assert det(Matrix([[1, 2], [3, 4]])) == -2
    assert det(Matrix([[0, 1], [1, 0]])) == -1
    assert det(Matrix([[1, 2], [2, 4]])) == 0


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rank_nullity(rows):
    m = Matrix(rows)
    assert rank(m) + kernel(m).dim == m.cols
    for v in kernel(m).vectors:
        assert not any(m.apply(v))


@given(matrices(4, 5), matrices(4, 5))
@settings(max_examples=60, deadline=None)
def test_dimension_formula(r1, r2):
    n = 5
    a = LinSubspace([row[:n] + [0] * (n - len(row)) for row in r1], n)
    b = LinSubspace([row[:n] + [0] * (n - len(row)) for row in r2], n)
    assert (a + b).dim + intersect(a, b).dim == a.dim + b.dim


@given(matrices(4, 4))
@settings(max_examples=40, deadline=None)
def test_image_and_preimage_agree(rows):
    m = Matrix(rows)
    s = LinSubspace([[1] * m.rows], m.rows)
    pre = preimage(m, s)
    assert all(m.apply(v) in s for v in pre.vectors)
    assert s.contains_subspace(image(m, pre))


def test_canonical_basis_is_deterministic():
    vecs = [[1, 2, 3], [2, 4, 7]]
    assert LinSubspace(vecs, 3).vectors == LinSubspace(list(reversed(vecs)), 3).vectors
