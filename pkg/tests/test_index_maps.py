import pytest
from hypothesis import given, settings

from conftest import ev_sets, infinite_grounds, members
from filterhomeo.cantor_core import EVENS, ODDS, OMEGA, EvPeriodicSet, GroundSet
from filterhomeo.errors import DomainError
from filterhomeo.index_maps import (OMEGA_GROUND, order_iso_image, phi, phi_image, phi_inv,
                                    phi_preimage, pi_map, pi_map_inverse, transport)

S = EvPeriodicSet.parse


def brute_transport(a, b, x, n):
    """Members of the image below ``n``, by pairing the k-th element of a with the k-th of b."""
    a_list = members(a.carrier, 8 * n + 64)
    b_list = members(b.carrier, n)
    return [bm for k, bm in enumerate(b_list) if x.at(a_list[k])]


def test_phi_examples():
    assert phi_image(EVENS, S("01000100|0")).members(10) == [0, 2]
    assert phi_preimage(EVENS, OMEGA) == ODDS
    assert order_iso_image(GroundSet(EVENS), GroundSet(ODDS), S("10001|0")) == S("010001|0")


def test_phi_domain_errors():
    with pytest.raises(DomainError):
        phi(EVENS, 4)
    with pytest.raises(DomainError):
        phi(S("0|1"), 0)
    with pytest.raises(DomainError):
        phi_image(EVENS, S("1|0"))


def test_pi_map_examples():
    omega, star = GroundSet(EVENS), GroundSet(S("|1000"))
    # 0 and 4 are fixed; 1 is the least non-member of star, sent to 2.
    assert pi_map(omega, star, S("11001|0")) == S("10101|0")
    assert pi_map(omega, star, OMEGA) == EVENS
    with pytest.raises(DomainError):
        pi_map(GroundSet(EVENS), GroundSet(EVENS), OMEGA)


@settings(max_examples=60)
@given(infinite_grounds(), infinite_grounds(), ev_sets())
def test_transport_matches_pairing(a, b, x):
    x = x & a.carrier
    out = transport(a, b, x)
    assert out.issubset(b.carrier)
    assert out.members(300) == brute_transport(a, b, x, 300)
    assert transport(b, a, out) == x


@settings(max_examples=60)
@given(infinite_grounds(), ev_sets())
def test_phi_inverse_monotone(comp, e):
    s = ~comp.carrier
    outside = [m for m in range(400) if m not in s]
    ks = [phi(s, m) for m in outside]
    assert ks == list(range(len(ks)))
    assert [phi_inv(s, k) for k in ks] == outside
    e = e - s
    assert phi_preimage(s, phi_image(s, e)) == e


@settings(max_examples=40)
@given(infinite_grounds(), infinite_grounds(), ev_sets())
def test_pi_roundtrip(omega, extra, x):
    star = GroundSet(omega.carrier & extra.carrier) if not (omega.carrier & extra.carrier).is_finite() else None
    if star is None or (omega.carrier - star.carrier).is_finite() or star.carrier.is_cofinite():
        return
    y = pi_map(omega, star, x)
    assert y.issubset(omega.carrier)
    assert y & star.carrier == x & star.carrier
    assert pi_map_inverse(omega, star, y) == x


def test_transport_long_periods():
    a = GroundSet(S("0|1101001"))
    b = GroundSet(S("1|00101"))
    x = S("1|0110") & a.carrier
    out = transport(a, b, x)
    assert out.members(2000) == brute_transport(a, b, x, 2000)
    assert transport(OMEGA_GROUND, OMEGA_GROUND, x) == x
