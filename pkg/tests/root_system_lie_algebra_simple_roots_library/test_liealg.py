from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bdcluster.liealg import (TripleError, all_triples, apply_gamma, canonical, case_number, enumerate_triples,
                              flip_triple, h_T_basis, h_T_diagonals, is_orientable, k_T, standard_case, parse_triple,
                              positive_roots, root_order, transpose_triple, validate_triple)

TRIPLES5 = all_triples(5)


def test_validate_accepts_simple_cases():
    t = validate_triple(5, {1}, {2}, {1: 2})
    assert t.gmap == {1: 2}
    validate_triple(5, {1, 2}, {2, 3}, {1: 2, 2: 3})


@pytest.mark.parametrize("args,axiom", [
    ((5, {1}, {1}, {1: 1}), "nilpotency"),
    ((5, {1, 2}, {2, 1}, {1: 2, 2: 1}), "nilpotency"),
    ((5, {1, 2}, {2, 4}, {1: 2, 2: 4}), "isometry"),
    ((5, {1, 2}, {3}, {1: 3, 2: 3}), "size"),
    ((5, {1}, {2}, {}), "domain"),
    ((5, {1, 2}, {3, 4}, {1: 3, 2: 3}), "bijectivity"),
    ((5, {5}, {1}, {5: 1}), "range"),
])
def test_validate_rejects(args, axiom):
    with pytest.raises(TripleError) as exc:
        validate_triple(*args)
    assert exc.value.axiom == axiom


def test_orientability():
    assert is_orientable(standard_case(12))
    assert not is_orientable(standard_case(11))
    assert is_orientable(standard_case(1))


def test_enumeration_has_thirteen_classes():
    reps = enumerate_triples(5)
    assert len(reps) == 13
    assert sorted(case_number(t) for t in reps) == list(range(1, 14))
    assert [case_number(t) for t in reps if not is_orientable(t)] == [11]


def test_enumeration_contains_case5_and_dedups():
    reps = set(enumerate_triples(5))
    assert canonical(validate_triple(5, {2}, {3}, {2: 3})) in reps
    a = canonical(validate_triple(5, {1}, {2}, {1: 2}))
    b = canonical(validate_triple(5, {2}, {1}, {2: 1}))
    assert a == b


def test_small_ranks():
    assert len(enumerate_triples(2)) == 1
    assert len(enumerate_triples(3)) == 2


def test_k_T():
    assert k_T(standard_case(1)) == 4
    assert k_T(standard_case(2)) == 3
    assert k_T(standard_case(13)) == 1


def test_parse_triple():
    t = parse_triple(" g1 = 1, 2 ; g2 = 2,3; map = 1:2, 2:3 ")
    assert t == standard_case(6)
    with pytest.raises(ValueError):
        parse_triple("g1=1;g2=2;map=1:2;foo=3")
    with pytest.raises(TripleError):
        parse_triple("g1=1;g2=1;map=1:1")


@given(st.sampled_from(TRIPLES5))
def test_text_roundtrip(t):
    assert parse_triple(t.to_text()) == t


@given(st.sampled_from(TRIPLES5))
def test_isomorphisms_are_involutions(t):
    assert transpose_triple(transpose_triple(t)) == t
    assert flip_triple(flip_triple(t)) == t
    assert canonical(transpose_triple(t)) == canonical(t) == canonical(flip_triple(t))
    assert k_T(transpose_triple(t)) == k_T(t)
    assert is_orientable(flip_triple(t)) == is_orientable(t)


def test_root_order():
    assert root_order(standard_case(1)) == set()
    assert ((1, 1), (2, 2)) in root_order(standard_case(2))
    assert ((1, 2), (2, 3)) in root_order(standard_case(6))
    # alpha_1 -> alpha_2 -> alpha_3 -> alpha_4 in case 12
    assert ((1, 1), (4, 4)) in root_order(standard_case(12))
    assert apply_gamma(standard_case(11), (1, 2)) == (3, 4)
    assert len(positive_roots(5)) == 10


def _alpha(i, diag):
    return diag[i - 1] - diag[i]


@pytest.mark.parametrize("k", range(1, 14))
def test_h_T_is_fixed_by_gamma(k):
    t = standard_case(k)
    diags = h_T_diagonals(t)
    assert len(h_T_basis(t)) == len(diags) == k_T(t)
    for d in diags:
        assert sum(d) == 0
        for a, b in t.gamma:
            assert _alpha(a, d) == _alpha(b, d)


def test_h_T_case12_direction():
    (d,) = h_T_diagonals(standard_case(12))
    assert d in ([2, 1, 0, -1, -2], [-2, -1, 0, 1, 2])


def test_h_T_trivial_is_full_cartan():
    basis = h_T_basis(standard_case(1))
    assert len(basis) == 4
    assert all(isinstance(c, Fraction) for row in basis for c in row)
