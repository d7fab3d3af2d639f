import pytest

from vertexsplit.cohomology import (
    CurveError,
    boundary_values,
    SplittingError,
    SplittingType,
    closed_form_type_e,
    closed_forms,
    h0_normal,
    h0_tangent,
    normal_oracle,
    normal_splitting,
    quadrics_through,
    restricted_D2,
    tangent_splitting,
)
from vertexsplit.linalg import rank
from vertexsplit.vertex import NumericalType, Vertex, iterate, make_vertex_of_type, partial, random_vertex

NT = NumericalType


def type_e(e, d, seed=0):
    return make_vertex_of_type(NT(-1, (e,)), d, seed=seed)


def test_h0_normal_golden(T_B):
    assert [h0_normal(T_B, k) for k in range(4)] == [13, 6, 2, 0]


def test_h0_normal_k1_is_twice_dim(rng):
    for _ in range(10):
        T = random_vertex(rng.randint(6, 11), rng.randint(1, 3), rng)
        assert h0_normal(T, 1) == 2 * T.dim


def test_h0_normal_type_e_profile_value():
    T = type_e(2, 11, seed=3)
    assert h0_normal(T, 2) == 4


def test_h0_normal_refuses_bad_vertices():
    with pytest.raises(CurveError):
        h0_normal(Vertex.monomial(11, [11, 5]), 2)
    assert h0_normal(Vertex.monomial(6, [4, 3, 2]), 2) >= 0  # s = 3 is allowed
    with pytest.raises(CurveError):
        h0_normal(Vertex.monomial(6, [4, 3, 2, 1]), 2)
    with pytest.raises(ValueError):
        h0_normal(Vertex.monomial(11, [5]), -1)


def test_h0_tangent_examples(T_A):
    assert h0_tangent(T_A, 0) == 3
    assert h0_tangent(T_A, 1) == 1
    assert h0_tangent(T_A, 2) == 0
    e = 3
    T = type_e(e, 10, seed=5)
    assert [h0_tangent(T, k) for k in range(e + 1)] == [e + 1 - k for k in range(e + 1)]


def test_normal_splitting_golden(T_B, T_A):
    for T in (T_B, T_A):
        st = normal_splitting(T)
        assert st.c == (2, 2, 1, 1, 0, 0, 0)
        assert str(st) == "O^2(15) + O^2(14) + O^3(13)"
        assert st.profile == (13, 6, 2, 0)
        assert not st.formal


@pytest.mark.parametrize("e,d", [(0, 6), (1, 7), (2, 9), (3, 12)])
def test_normal_splitting_type_e(e, d):
    T = type_e(e, d, seed=d)
    assert normal_splitting(T).c == (e + 1, e + 1) + (0,) * (d - e - 4)


def test_cusp_profile_is_reported(T_cusp):
    with pytest.raises(SplittingError) as info:
        normal_splitting(T_cusp)
    assert info.value.profile[:3] == [6, 4, 2]


def test_formal_flag(T_B):
    assert normal_splitting(T_B, ordinary=False).formal
    assert not normal_splitting(T_B, ordinary=True).formal


def test_tangent_splitting_examples(T_A, T_B, T_cusp):
    assert str(tangent_splitting(T_A)) == "O(14) + O(13) + O^6(12)"
    assert str(tangent_splitting(T_B)) == "O^3(13) + O^5(12)"
    assert str(tangent_splitting(T_cusp)) == "O^2(7) + O(6)"
    with pytest.raises(CurveError):
        tangent_splitting(Vertex.monomial(7, [7, 3]))


def test_normal_oracle_examples(T_B, rng):
    assert normal_oracle(T_B, 3) == 0
    assert normal_oracle(T_B, 2) == 2
    for _ in range(5):
        T = random_vertex(9, rng.randint(1, 4), rng)
        assert normal_oracle(T, 1) == 2 * T.dim
        assert normal_oracle(T, 0) == T.d - 1 + T.dim


def test_closed_forms_examples(T_B, T_A):
    for T in (T_B, T_A):
        cf = closed_forms(T)
        assert cf.h0 == (13, 6, 2)
        assert cf.dim_d2T == 7
        assert cf.trivial_summands == 3
    cf = closed_forms(Vertex.monomial(4, [2]))
    assert cf.h0 == (4, 2, 0) and cf.dim_d2T == 3


def test_closed_form_type_e():
    assert str(closed_form_type_e(11, 2)) == "O^2(16) + O^5(13)"
    assert str(closed_form_type_e(6, 1)) == "O^2(10) + O(8)"
    assert closed_form_type_e(11, 2).profile == (13, 6, 4, 2, 0)
    with pytest.raises(CurveError):
        closed_form_type_e(6, 3)


def test_quadrics(T_cusp):
    assert quadrics_through(T_cusp) == 1
    assert quadrics_through(Vertex.monomial(4, [2])) == 1


@pytest.mark.parametrize("e,d", [(3, 7), (4, 9), (5, 11), (4, 8)])
def test_quadrics_on_scroll_curves(e, d):
    T = type_e(e, d, seed=2)
    s = T.s
    assert d >= 2 * s + 1
    assert quadrics_through(T) == (s - 1) * (s - 2) // 2


def test_additivity_over_direct_sums(rng):
    pairs = [(Vertex.monomial(11, [8]), Vertex.monomial(11, [3]))]
    while len(pairs) < 6:
        d = rng.randint(9, 12)
        T1 = type_e(rng.randint(0, 1), d, seed=rng.randint(0, 99))
        T2 = random_vertex(d, 1, rng)
        pairs.append((T1, T2))
    checked = 0
    for T1, T2 in pairs:
        T = T1 + T2
        d2 = lambda V: iterate(partial, V, 2)  # noqa: E731
        if T.dim != T1.dim + T2.dim or d2(T).dim != d2(T1).dim + d2(T2).dim:
            continue
        checked += 1
        for k in range(2, 7):
            assert rank(restricted_D2(T, k)) == rank(restricted_D2(T1, k)) + rank(restricted_D2(T2, k))
    assert checked >= 1


def test_splitting_type_validation():
    with pytest.raises(SplittingError):
        SplittingType("normal", 11, 2, (3, 2, 1, 1, 0, 0, 0))
    with pytest.raises(SplittingError):
        SplittingType("normal", 11, 2, (2, 2, 1, 1, 1, 0, -1))
    with pytest.raises(SplittingError):
        SplittingType("tangent", 11, 2, (2, 1, 0, -1, -1, -1, -1, -1))
    st = SplittingType("tangent", 11, 2, (1, 0, -1, -1, -1, -1, -1, -1))
    assert st.degrees == (14, 13) + (12,) * 6


def test_boundary_values(T_B, T_A):
    for T in (T_B, T_A):
        assert boundary_values(T) == {-12: 20, -13: 13}
    T = make_vertex_of_type(NumericalType(-1, (2,)), 11, seed=4)
    assert boundary_values(T) == {-12: 20, -13: 13}
