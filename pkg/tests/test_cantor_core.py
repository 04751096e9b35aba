from math import lcm

import pytest
from hypothesis import given, settings, strategies as st

from conftest import bits, ev_sets, infinite_grounds, members
from filterhomeo.cantor_core import (EMPTY, EVENS, ODDS, OMEGA, EvPeriodicSet, Finiteness,
                                     GroundSet, OraclePoint, almost_equal, almost_subset,
                                     boolean, canonicalize, classify_finiteness, prefix_agree,
                                     rank, select)
from filterhomeo.errors import DomainError, MalformedInputError

MULT4 = EvPeriodicSet.parse("|1000")


@pytest.mark.parametrize("prefix, block, expected", [
    ("1", "11", "|1"),
    ("", "1010", "|10"),
    ("10", "10", "|10"),
])
def test_canonicalize_examples(prefix, block, expected):
    assert canonicalize(prefix, block).literal() == expected


def test_canonicalize_example_matches_expansion():
    raw = [int(c) for c in "10"] + [int(c) for c in "10"] * 4
    assert bits(canonicalize("10", "10"), 9) == raw[:9]


def test_empty_block_rejected():
    with pytest.raises(MalformedInputError):
        canonicalize("1", "")


@pytest.mark.parametrize("text", ["", "01", "0|", "0|1|1", "012|1", "a|1"])
def test_literal_parse_rejects(text):
    with pytest.raises(MalformedInputError):
        EvPeriodicSet.parse(text)


def test_literal_roundtrip():
    x = EvPeriodicSet.parse("0111|10")
    assert EvPeriodicSet.parse(x.literal()) == x
    assert bits(x, 8) == [0, 1, 1, 1, 1, 0, 1, 0]


def test_boolean_examples():
    assert boolean("union", EVENS, ODDS) == OMEGA
    assert boolean("complement", EVENS) == ODDS
    expected = [i for i in range(17) if EVENS.at(i) and MULT4.at(i)]
    got = boolean("intersect", EVENS, MULT4)
    assert members(got, 17) == expected
    assert got.literal() == "|1000"


def test_almost_subset_examples():
    assert almost_subset(MULT4, EVENS)
    assert not almost_subset(EVENS, MULT4)
    assert 1 in (EVENS - MULT4).block
    assert almost_equal(EVENS, EVENS - EvPeriodicSet.from_finite([0]))


@pytest.mark.parametrize("literal, kind", [
    ("111|0", Finiteness.FINITE),
    ("0|1", Finiteness.COFINITE),
    ("|10", Finiteness.BI_INFINITE),
])
def test_classify_finiteness(literal, kind):
    assert classify_finiteness(EvPeriodicSet.parse(literal)) is kind


def test_rank_select_examples():
    assert select(GroundSet(EVENS), 3) == 6
    assert rank(GroundSet(EVENS), 7) == 4
    assert select(GroundSet(ODDS), rank(GroundSet(ODDS), 9)) == 9


def test_finite_ground_set_rejected():
    with pytest.raises(DomainError):
        GroundSet(EvPeriodicSet.from_finite([1, 2]))
    with pytest.raises(DomainError):
        select(EvPeriodicSet.from_finite([1, 2]), 5)


def test_prefix_agree_examples():
    assert prefix_agree(OraclePoint.of(EVENS), EVENS, 512)
    assert not prefix_agree(EVENS, ODDS, 1)
    x, y = EvPeriodicSet.parse("1|10"), EVENS
    first = next(i for i in range(64) if x.at(i) != y.at(i))
    assert first == 1
    assert not prefix_agree(x, y, 64)


def test_oracle_counter_and_purity():
    calls = []
    o = OraclePoint(lambda i: calls.append(i) or i % 2)
    assert [o.at(i) for i in (3, 3, 1, 5)] == [1, 1, 1, 1]
    assert o.counter == 3
    assert o.max_index == 5
    assert len(calls) == 4  # non-memoised leaves forward every query


@settings(max_examples=200)
@given(ev_sets(), ev_sets())
def test_boolean_agrees_with_expansion(x, y):
    n = 4 * lcm(x.period, y.period) + x.preperiod + y.preperiod
    bx, by = bits(x, n), bits(y, n)
    assert bits(x | y, n) == [a | b for a, b in zip(bx, by)]
    assert bits(x & y, n) == [a & b for a, b in zip(bx, by)]
    assert bits(x - y, n) == [a & (1 - b) for a, b in zip(bx, by)]
    assert bits(~x, n) == [1 - a for a in bx]


@given(ev_sets())
def test_canonicalize_idempotent_and_faithful(x):
    raw = EvPeriodicSet.__new__(EvPeriodicSet)
    assert canonicalize(x) == x
    again = canonicalize(bytes(x.prefix) + x.block, x.block + x.block)
    assert again == x
    assert bits(again, 256) == bits(x, 256)
    del raw


@given(st.lists(st.integers(0, 1), max_size=10), st.lists(st.integers(0, 1), min_size=1, max_size=10))
def test_canonical_form_is_minimal(prefix, block):
    x = canonicalize(bytes(prefix), bytes(block))
    expanded = prefix + block * 300
    assert bits(x, 256) == expanded[:256]
    # Primitive block, and a prefix that cannot be absorbed into the cycle.
    p = x.period
    assert all(x.block != x.block[:d] * (p // d) for d in range(1, p) if p % d == 0)
    if x.prefix:
        assert x.prefix[-1] != x.block[-1]


@given(ev_sets(), ev_sets())
def test_de_morgan(x, y):
    assert ~(x | y) == (~x) & (~y)


@settings(max_examples=200)
@given(ev_sets(), ev_sets())
def test_almost_subset_brute(x, y):
    bound = x.preperiod + y.preperiod + lcm(x.period, y.period)
    tail_escapes = any(x.at(i) and not y.at(i) for i in range(bound, bound + lcm(x.period, y.period)))
    assert almost_subset(x, y) == (not tail_escapes)


@settings(max_examples=50)
@given(infinite_grounds())
def test_rank_select_inverse(g):
    for k in range(1000):
        assert g.rank(g.select(k)) == k
    for n in range(300):
        if n in g:
            assert g.select(g.rank(n)) == n
        assert g.rank(n + 1) >= g.rank(n)
    assert list(g.select_many(range(200))) == [g.select(k) for k in range(200)]
    assert list(g.rank_many(range(200))) == [g.rank(n) for n in range(200)]


def test_rank_select_direct_enumeration():
    g = GroundSet(EvPeriodicSet.parse("0110|001"))
    listed = members(g.carrier, 400)
    assert [g.select(k) for k in range(len(listed))] == listed
    assert [g.rank(n) for n in range(400)] == [sum(1 for m in listed if m < n) for n in range(400)]


def test_from_residues_and_finite():
    assert EvPeriodicSet.from_residues(4, [0]) == EvPeriodicSet.parse("|1000")
    assert EvPeriodicSet.from_finite([]) == EMPTY
    assert EvPeriodicSet.from_finite([0, 2]).cardinality() == 2
