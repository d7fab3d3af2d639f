import itertools
import random

import pytest

from vertexsplit.forms import BinaryForm, parse_dual_form, parse_form
from vertexsplit.geometry import (
    GeometryError,
    _divide_diagonal,
    dual_basis,
    hilbert_dim,
    meets_cd,
    scroll_detect,
    secant_member,
    smoothness,
    vertex_from_parametrization,
)
from vertexsplit.vertex import NumericalType, Vertex, make_vertex_of_type, numerical_type, random_vertex

NT = NumericalType


def power_sum(rng, n, r):
    g = BinaryForm.zero(n)
    for t in rng.sample(range(-9, 10), r):
        g = g + BinaryForm.power(1, t, n) * rng.randint(1, 5)
    return g


# ---- duality


def test_dual_basis_of_golden_vertex(T_B):
    want = ["u^11", "u^10*v", "u^9*v^2", "u^7*v^4", "u^5*v^6", "u^3*v^8", "u^2*v^9", "u*v^10", "v^11"]
    assert sorted(str(g) for g in dual_basis(T_B)) == sorted(want)


def test_parametrization_to_vertex():
    gs = [parse_dual_form(t) for t in ("u^5", "u^2*v^3", "u^3*v^2", "v^5")]
    assert vertex_from_parametrization(gs) == Vertex.monomial(5, [4, 1])


def test_duality_round_trip(rng):
    for _ in range(20):
        T = random_vertex(rng.randint(3, 10), rng.randint(1, 3), rng)
        assert vertex_from_parametrization(dual_basis(T)) == T


# ---- base points


def test_meets_cd_examples(T_B, T_cusp):
    assert not meets_cd(T_B)
    assert meets_cd(Vertex.monomial(5, [5]))
    assert not meets_cd(T_cusp)
    with pytest.raises(GeometryError):
        meets_cd(Vertex.zero(5))
    with pytest.raises(GeometryError):
        meets_cd(Vertex.full(5))


def test_meets_cd_agrees_with_type(rng):
    for _ in range(40):
        d = rng.randint(4, 10)
        T = random_vertex(d, rng.randint(1, 3), rng)
        if rng.random() < 0.5:
            T = T + Vertex.from_forms([BinaryForm.power(rng.randint(-3, 3), 1, d)])
        if not T.is_proper():
            continue
        assert meets_cd(T) == (numerical_type(T).a >= 0)
    for d in range(3, 8):
        for exps in itertools.combinations(range(d + 1), 2):
            T = Vertex.monomial(d, exps)
            assert meets_cd(T) == (numerical_type(T).a >= 0)


# ---- secants


def test_secant_examples():
    assert secant_member(parse_form("x^7"), 0)
    assert not secant_member(parse_form("x^4*y^8"), 3)
    assert secant_member(parse_form("x^3 + y^3"), 1)


def test_secant_monotone(rng):
    for _ in range(30):
        n = rng.randint(4, 12)
        g = power_sum(rng, n, rng.randint(1, n // 2 + 1))
        flags = [secant_member(g, b) for b in range(n)]
        first = flags.index(True) if True in flags else len(flags)
        assert all(flags[first:])


# ---- smoothness


def test_smoothness_examples(T_B, T_A, T_cusp):
    assert smoothness(T_B).status == "Smooth"
    assert smoothness(T_B).method == "monomial-criterion"
    assert smoothness(T_A).status == "Smooth"
    v = smoothness(T_cusp)
    assert (v.status, v.method) == ("Singular", "monomial-criterion")
    T = make_vertex_of_type(NT(-1, (2,)), 11, seed=4)
    v = smoothness(T)
    assert (v.status, v.method) == ("Smooth", "type-e-catalecticant")


def test_smoothness_refuses_base_points():
    with pytest.raises(GeometryError):
        smoothness(Vertex.monomial(6, [6, 3]))


def test_forced_methods(T_B):
    with pytest.raises(GeometryError):
        smoothness(Vertex.parse(["x^5 + y^5 + x^3*y^2"], 5), method="monomial")
    with pytest.raises(GeometryError):
        smoothness(T_B, method="type-e")
    with pytest.raises(ValueError):
        smoothness(T_B, method="guess")


def test_rational_node_is_found():
    T = Vertex.from_forms([BinaryForm.power(1, 0, 7) + BinaryForm.power(1, 2, 7)])
    v = smoothness(T, method="elimination")
    assert v.status == "Singular"
    assert v.witness is not None
    assert smoothness(T).status == "Singular"


def test_conjugate_node_is_unknown():
    # (x + iy)^6 + (x - iy)^6 over 2: the two glued parameters are not rational
    T = Vertex.parse(["x^6 - 15*x^4*y^2 + 15*x^2*y^4 - y^6"], 6)
    v = smoothness(T, method="elimination")
    assert v.status == "Unknown"
    assert v.eliminant is not None
    assert smoothness(T).status == "Singular"


def test_type_e_routes_agree():
    rng = random.Random(11)
    seen = set()
    for e in range(0, 3):
        for d in range(e + 4, 9):
            n = d + e
            for r in (e + 1, e + 2, n // 2 + 1):
                g = power_sum(rng, n, r)
                from vertexsplit.vertex import partial_span

                T = partial_span(g, e)
                if meets_cd(T) or numerical_type(T) != NT(-1, (e,)):
                    continue
                quick = smoothness(T)
                slow = smoothness(T, method="elimination")
                assert quick.method == "type-e-catalecticant"
                if slow.status != "Unknown":
                    assert quick.status == slow.status
                seen.add(quick.status)
    assert seen == {"Smooth", "Singular"}


@pytest.mark.slow
def test_monomial_criterion_matches_elimination():
    for d in range(4, 9):
        for r in range(1, d - 2):
            for exps in itertools.combinations(range(1, d), r):
                T = Vertex.monomial(d, exps)
                a = smoothness(T, method="monomial").status
                b = smoothness(T, method="elimination").status
                assert a == b, (d, exps)


def test_random_vertices_are_certified_smooth(rng):
    for _ in range(10):
        T = random_vertex(rng.randint(9, 12), rng.randint(2, 4), rng)
        v = smoothness(T)
        assert v.status == "Smooth"
        assert v.method == "resultant-elimination"


def test_diagonal_division_is_checked():
    bad = [[0, 1, 0], [0, 0, 0], [0, 0, 0]]
    with pytest.raises(AssertionError):
        _divide_diagonal(bad, 2)


# ---- scrolls and dimension counts


def test_scroll_detection(T_B, T_A):
    T = make_vertex_of_type(NT(-1, (2,)), 11, seed=8)
    r = scroll_detect(T)
    assert r.resident
    assert str(r.normal) == "O^2(16) + O^5(13)"
    assert str(r.tangent) == "O(15) + O^7(12)"
    assert r.scroll_degree == 7
    assert not scroll_detect(T_B).resident
    assert not scroll_detect(T_A).resident


def test_scroll_preconditions(T_cusp):
    with pytest.raises(GeometryError):
        scroll_detect(T_cusp)


def test_hilbert_dim():
    assert hilbert_dim(21, 8) == 98
    assert hilbert_dim(0, 3) == 12
    assert 12 + 9 == 15 + 6 == 21
    with pytest.raises(ValueError):
        hilbert_dim(-1, 5)
    with pytest.raises(ValueError):
        hilbert_dim(4, 2)
