import random

import pytest
from hypothesis import strategies as st

from filterhomeo.cantor_core import EvPeriodicSet, GroundSet


def bits(x, n):
    """Independent expansion through single-position queries."""
    return [x.at(i) for i in range(n)]


def members(x, n):
    return [i for i in range(n) if x.at(i)]


@st.composite
def ev_sets(draw, max_prefix=8, max_block=8):
    prefix = draw(st.lists(st.integers(0, 1), max_size=max_prefix))
    block = draw(st.lists(st.integers(0, 1), min_size=1, max_size=max_block))
    return EvPeriodicSet(bytes(prefix), bytes(block))


@st.composite
def infinite_grounds(draw):
    x = draw(ev_sets())
    if x.is_finite():
        x = x | EvPeriodicSet(b"", b"\x01\x00\x00")
    return GroundSet(x)


@pytest.fixture
def rng():
    return random.Random(20261018)
