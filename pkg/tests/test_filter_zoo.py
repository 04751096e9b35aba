import random

import pytest
from hypothesis import given, settings

from conftest import ev_sets
from filterhomeo.cantor_core import EMPTY, EVENS, ODDS, EvPeriodicSet, random_set
from filterhomeo.errors import DomainError, MalformedInputError
from filterhomeo.filter_zoo import (TPart, closed_subspace_checks, dyadic_brute,
                                    dyadic_decide, frechet, lookup, multiples_of_power_of_two,
                                    prefilter_core_agrees, prefilter_of, principal, semifilter_T,
                                    t_decompose, upward_closure)

S = EvPeriodicSet.parse


def test_frechet_membership():
    f = frechet()
    assert S("0001|1") in f
    assert EVENS not in f
    assert EMPTY not in f


def test_principal_membership_and_finite_generator():
    f = principal(EVENS)
    assert S("0|1") in f
    assert EVENS - S("1|0") in f
    assert ODDS not in f
    with pytest.raises(DomainError):
        principal(S("11|0"))


@pytest.mark.parametrize("literal, inside", [
    ("|1000", True), ("|10", True), ("|1100", True), ("|01", False),
    ("1|0", False), ("|1000000000000000", True), ("|100000000000", False), ("|100", False), ("|110", False),
])
def test_dyadic_examples(literal, inside):
    assert dyadic_decide(S(literal)) is inside
    assert dyadic_brute(S(literal)) is inside


def test_dyadic_oracle_agreement_seeded():
    rng = random.Random(11)
    for _ in range(1000):
        x = random_set(rng, 8, rng.choice((4, 8, 16, 32)))
        if rng.random() < 0.5:
            x = x | multiples_of_power_of_two(rng.randint(0, 4))
        assert dyadic_decide(x) == dyadic_brute(x)


@settings(max_examples=300)
@given(ev_sets(max_block=16))
def test_dyadic_property(x):
    assert dyadic_decide(x) == dyadic_brute(x)


def test_t_decomposition():
    t = semifilter_T()
    assert t_decompose(EVENS) is TPart.COMPLETE
    assert t_decompose(S("1|10")) is TPart.COUNTABLE
    assert t_decompose(S("1|0")) is TPart.NON_MEMBER
    a, b = EVENS, S("1|10")
    assert a in t and b in t and (a & b) not in t


def test_closed_subspaces():
    report = closed_subspace_checks(samples=50, seed=1)
    assert report.ok
    assert report.cof_omega2_in_t == report.cof_omega2_total == 50


def test_lookup():
    assert lookup("dyadic").name == "dyadic"
    assert lookup("principal:|10").generator == EVENS
    assert lookup("T").name == "semifilter-T"
    with pytest.raises(MalformedInputError):
        lookup("ultra")


def test_prefilter_core_checks():
    assert prefilter_core_agrees(upward_closure(EVENS))
    assert prefilter_core_agrees(prefilter_of(frechet()))
    wrong = upward_closure(EVENS).__class__("bad", lambda x: EVENS.issubset(x), EMPTY)
    assert not prefilter_core_agrees(wrong)
