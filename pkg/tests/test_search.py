import pytest

from vertexsplit.search import (
    build_record,
    enumerate_monomial,
    find_reducibility_witness,
    passes_prescreen,
    sample_random,
)


def test_enumerate_quintic_pencils():
    recs = list(enumerate_monomial(5, 2))
    assert len(recs) == 15
    rec = next(r for r in recs if r.source == ("monomial", (4, 1)))
    assert rec.numerical_type == "(0,0)"
    assert not rec.meets_cd
    assert rec.smoothness == "Singular"
    assert str(rec.tangent) == "O^2(7) + O(6)"
    assert rec.normal is None  # s = 3 but the curve is cuspidal
    assert "not recovered" in rec.note
    # exponents 5 or 0 put y^5 or x^5 into T
    assert all(r.meets_cd for r in recs if {0, 5} & set(r.source[1]))


def test_records_revalidate():
    for rec in list(enumerate_monomial(6, 2))[:6] + list(sample_random(9, 3, 3, seed=5)):
        assert rec.revalidate()
    assert rec.vertex().d == 9


def test_tampered_record_fails_revalidation():
    import dataclasses

    rec = next(sample_random(9, 2, 1, seed=1))
    bad = dataclasses.replace(rec, smoothness="Singular")
    assert not bad.revalidate()


def test_sampling_is_reproducible():
    a = [r.forms for r in sample_random(8, 2, 4, seed=3)]
    b = [r.forms for r in sample_random(8, 2, 4, seed=3)]
    c = [r.forms for r in sample_random(8, 2, 4, seed=4)]
    assert a == b != c
    assert list(sample_random(8, 2, 0)) == []


def test_generic_pencils_in_degree_twelve():
    recs = list(sample_random(12, 2, 50, seed=0))
    assert len(recs) == 50
    assert all(r.numerical_type == "(0,0)" for r in recs)
    assert all(not r.meets_cd and r.smoothness == "Smooth" for r in recs)


def test_bad_dimensions():
    with pytest.raises(ValueError):
        list(enumerate_monomial(5, 0))
    with pytest.raises(ValueError):
        list(sample_random(5, 5, 1))


def test_prescreen():
    assert passes_prescreen((2, 2, 1, 1, 0, 0, 0), 11, 3)
    # passes the count conditions, but no monomial vertex realizes it
    assert passes_prescreen((6, 0, 0, 0, 0, 0, 0), 11, 3)
    assert not passes_prescreen((7, 0, 0, 0, 0, 0, 0), 11, 3)
    assert not passes_prescreen((2, 2, 1, 1, 0, 0), 11, 3)
    assert not passes_prescreen((3, 2, 2, 1, 0, 0, -2), 11, 3)


def test_witness_in_degree_eleven():
    pair = find_reducibility_witness(11, 3, (2, 2, 1, 1, 0, 0, 0))
    assert pair is not None
    a, b = pair
    assert a.normal.c == b.normal.c == (2, 2, 1, 1, 0, 0, 0)
    assert {a.numerical_type, b.numerical_type} == {"(1,0)", "(0,0,0)"}
    assert a.tangent.c != b.tangent.c
    assert a.revalidate() and b.revalidate()


def test_no_witness_cases():
    assert find_reducibility_witness(5, 2) is None
    assert find_reducibility_witness(11, 3, (6, 0, 0, 0, 0, 0, 0)) is None


def test_record_for_vertex_meeting_cd():
    rec = build_record(6, ("monomial", (6, 3)))
    assert rec.meets_cd and rec.smoothness is None and rec.tangent is None
    assert rec.as_dict()["source"] == ["monomial", [6, 3]]
