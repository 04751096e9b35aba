import random

import pytest

from filterhomeo.cantor_core import EVENS, GroundSet
from filterhomeo.errors import GenerationError
from filterhomeo.filter_zoo import FilterSpec, dyadic_chain, frechet, principal, semifilter_T
from filterhomeo.homeo import product_homeo, square_homeo
from filterhomeo.verify import (DisjointFrom, MemberOf, NonMemberOf, SubsetOf, agreement_suite,
                                axiom_suite, draw, gen_evp, modulus_probe, modulus_table,
                                phi_suite, preservation_suite, roundtrip_suite, semifilter_suite)


def test_generation_is_deterministic():
    a = [next(g) for g in [gen_evp(5)] for _ in range(20)]
    g = gen_evp(5)
    b = [next(g) for _ in range(20)]
    assert a == b


def test_constraints_hold():
    rng = random.Random(0)
    f = dyadic_chain()
    for _ in range(50):
        assert draw(rng, SubsetOf(GroundSet(EVENS))).issubset(EVENS)
        assert draw(rng, DisjointFrom(EVENS)).isdisjoint(EVENS)
        assert f.decide(draw(rng, MemberOf(f)))
        assert not f.decide(draw(rng, NonMemberOf(f)))


def test_generation_gives_up():
    nothing = FilterSpec("none", lambda x: False, False)
    with pytest.raises(GenerationError):
        draw(random.Random(0), MemberOf(nothing))


def test_report_tsv_format():
    r = roundtrip_suite(product_homeo(GroundSet(EVENS)), trials=10, seed=2)
    lines = r.to_tsv().splitlines()
    assert lines[0] == "# suite=roundtrip[product[|10]] seed=2 trials=10"
    assert all(len(line.split("\t")) == 4 for line in lines[1:])
    assert r.passed and r.exit_code == 0
    assert r.to_tsv() == roundtrip_suite(product_homeo(GroundSet(EVENS)), trials=10, seed=2).to_tsv()


def test_failing_rows_are_reported():
    liar = FilterSpec("liar", lambda x: True, False)
    r = axiom_suite(liar, samples=3)
    assert not r.passed and r.exit_code == 1
    assert any(row[0] == "empty-out" for row in r.failures)


def test_small_suites_pass():
    f = dyadic_chain()
    assert preservation_suite(f, trials=20, seed=1).passed
    assert agreement_suite(square_homeo(f), trials=5, depth=128, seed=1).passed
    assert phi_suite(sets=3, pairs=20, bound=512, seed=1).passed
    assert semifilter_suite(seed=1, samples=50).passed
    for g in (frechet(), principal(EVENS), f, semifilter_T()):
        assert axiom_suite(g, samples=30, seed=1).passed


def test_modulus_probe_columns():
    rows = modulus_probe(square_homeo(dyadic_chain()), k_max=16, seed=3)
    assert [r.k for r in rows] == list(range(16))
    assert all(a.max_index <= b.max_index for a, b in zip(rows, rows[1:]))
    assert all(r.bit_max_index <= r.max_index for r in rows)
    assert modulus_table(rows).startswith("k\tbit\tqueries\tmax_index")
