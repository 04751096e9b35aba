import random

from hypothesis import given, settings, strategies as st

from conftest import bits, ev_sets
from filterhomeo.cantor_core import OMEGA, EvPeriodicSet, OraclePoint, TernaryStream, random_ternary
from filterhomeo.prefix_code import (CODEWORDS, decode, encode, lazy_decode, lazy_encode,
                                     pair_to_ternary, ternary_to_pair)

ternaries = st.builds(
    lambda p, b: TernaryStream(tuple(p), tuple(b)),
    st.lists(st.integers(0, 2), max_size=8), st.lists(st.integers(0, 2), min_size=1, max_size=8))


def brute_decode(x, n):
    out, pos = [], 0
    while len(out) < n:
        if x.at(pos) == 0:
            out.append(0)
            pos += 1
        else:
            out.append(1 + x.at(pos + 1))
            pos += 2
    return out


def test_code_is_prefix_free_and_complete():
    words = ["".join(map(str, w)) for w in CODEWORDS.values()]
    assert not any(a != b and b.startswith(a) for a in words for b in words)
    assert sum(2.0 ** -len(w) for w in words) == 1.0


def test_all_ones_decodes_to_all_twos():
    assert decode(OMEGA) == TernaryStream.parse("|2")
    assert decode(EvPeriodicSet.parse("|01011")).literal() == "|012"


@settings(max_examples=300)
@given(ev_sets())
def test_decode_matches_sequential_parse(x):
    t = decode(x)
    assert list(t.window(200)) == brute_decode(x, 200)
    assert encode(t) == x


@given(ternaries)
def test_encode_decode_identity(t):
    assert decode(encode(t)) == t


def test_hundred_seeded_streams():
    rng = random.Random(5)
    for _ in range(100):
        t = random_ternary(rng)
        assert decode(encode(t)) == t
        b = EvPeriodicSet.parse(encode(t).literal())
        assert encode(decode(b)) == b


@given(ev_sets())
def test_lazy_agrees(x):
    lazy = lazy_decode(OraclePoint.of(x))
    t = decode(x)
    assert [lazy.at(k) for k in range(150)] == list(t.window(150))
    back = lazy_encode(lazy)
    assert [back.at(k) for k in range(150)] == bits(x, 150)


@given(ev_sets(), ev_sets())
def test_pair_ternary_roundtrip(x, y):
    y = y - x
    assert ternary_to_pair(pair_to_ternary(x, y)) == (x, y)
