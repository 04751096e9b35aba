"""Order bijections between subsets of omega, on exact sets and on oracles.

Everything here reduces to one primitive, :func:`transport`: given infinite
ground sets ``A`` and ``B`` it pushes a subset of ``A`` through the unique
increasing bijection ``A -> B``.  The collapsing map ``phi_S`` (rank inside the
complement of ``S``) is transport from ``omega \\ S`` onto ``omega``.
"""

from __future__ import annotations

from math import gcd

import numpy as np

from .cantor_core import (EvPeriodicSet, GroundSet, LazyIndex, OMEGA, OraclePoint,
                          Point, lcm)
from .errors import DomainError

OMEGA_GROUND = GroundSet(OMEGA)


def transport_bounds(a: GroundSet, b: GroundSet, x: EvPeriodicSet) -> tuple[int, int]:
    """Preperiod and period of ``transport(a, b, x)``.

    Past ``start`` the output position ``y`` sits in the periodic part of ``b``,
    its rank lands in the periodic part of ``a`` and the selected position lands
    in the periodic part of ``x``.  Shifting ``y`` by ``period`` advances the rank
    by a common multiple of both ground sets' ones-per-block, hence moves the
    selected position by a whole number of ``a``-blocks that is also a multiple
    of ``x``'s period.
    """
    pa, pb = a.carrier.preperiod, b.carrier.preperiod
    ca, cb = a.ones_per_block, b.ones_per_block
    r0 = max(a.rank(pa), a.rank(x.preperiod))
    start = max(pb, b.select(r0))
    t = lcm(ca, cb)
    a_shift = a.carrier.period * (t // ca)
    s = x.period // gcd(x.period, a_shift)
    period = b.carrier.period * (t // cb) * s
    return start, period


def transport(a: GroundSet, b: GroundSet, x: EvPeriodicSet, check: bool = True) -> EvPeriodicSet:
    """Image of ``x`` (a subset of ``a``) under the increasing bijection ``a -> b``."""
    if check and not x.issubset(a.carrier):
        raise DomainError(f"{x.literal()} is not contained in {a.carrier.literal()}")
    start, period = transport_bounds(a, b, x)
    # One extra bounded stretch is computed to check the bound on the fly.
    probe = min(period, 64)
    n = start + period + probe
    inside = b.carrier.array(n).astype(bool)
    sel = a.select_many(b.rank_many(np.flatnonzero(inside)))
    out = np.zeros(n, dtype=np.uint8)
    if sel.size:
        out[inside] = x.array(int(sel.max()) + 1)[sel]
    assert np.array_equal(out[start + period:], out[start:start + probe]), \
        "transport alignment bound violated"
    head = out[:start + period].tobytes()
    return EvPeriodicSet(head[:start], head[start:])


def lazy_transport(a: GroundSet, b: GroundSet, x: Point) -> OraclePoint:
    return OraclePoint(lambda y: int(y in b) and x.at(a.select(b.rank(y))), memo=True)


def _co_infinite(s: EvPeriodicSet) -> GroundSet:
    if s.is_cofinite():
        raise DomainError(f"complement of {s.literal()} is finite; phi is undefined")
    return GroundSet(~s)


def phi(s: EvPeriodicSet, m: int) -> int:
    """Rank of ``m`` inside ``omega \\ s``."""
    comp = _co_infinite(s)
    if m in s:
        raise DomainError(f"{m} lies in {s.literal()}; phi is defined off the set")
    return comp.rank(m)


def phi_inv(s: EvPeriodicSet, k: int) -> int:
    return _co_infinite(s).select(k)


def phi_image(s: EvPeriodicSet, e: EvPeriodicSet) -> EvPeriodicSet:
    comp = _co_infinite(s)
    if not e.isdisjoint(s):
        raise DomainError(f"{e.literal()} meets {s.literal()}; phi image needs disjoint input")
    return transport(comp, OMEGA_GROUND, e, check=False)


def phi_preimage(s: EvPeriodicSet, z: EvPeriodicSet) -> EvPeriodicSet:
    return transport(OMEGA_GROUND, _co_infinite(s), z, check=False)


def lazy_phi_image(s: Point, e: Point) -> OraclePoint:
    index = LazyIndex(s, complement=True)
    return OraclePoint(lambda k: e.at(index.select(k)), memo=True)


def lazy_phi_preimage(s: Point, z: Point) -> OraclePoint:
    index = LazyIndex(s, complement=True)
    return OraclePoint(lambda m: 0 if s.at(m) else z.at(index.rank(m)), memo=True)


def order_iso_image(a: GroundSet, b: GroundSet, x: EvPeriodicSet) -> EvPeriodicSet:
    return transport(a, b, x)


def check_pi_witnesses(omega: GroundSet, omega_star: GroundSet) -> tuple[GroundSet, GroundSet]:
    if not omega_star.carrier.issubset(omega.carrier):
        raise DomainError(f"{omega_star} is not contained in {omega}")
    rest = omega.carrier - omega_star.carrier
    outside = ~omega_star.carrier
    if rest.is_finite():
        raise DomainError(f"{omega} minus {omega_star} is finite")
    if outside.is_finite():
        raise DomainError(f"complement of {omega_star} is finite")
    return GroundSet(outside), GroundSet(rest)


def pi_map(omega: GroundSet, omega_star: GroundSet, x: EvPeriodicSet) -> EvPeriodicSet:
    """Image of ``x`` under the bijection from the naturals onto ``omega`` that
    fixes ``omega_star`` and maps the remaining naturals increasingly onto
    ``omega \\ omega_star``."""
    src, dst = check_pi_witnesses(omega, omega_star)
    fixed = x & omega_star.carrier
    return fixed | transport(src, dst, x - omega_star.carrier, check=False)


def pi_map_inverse(omega: GroundSet, omega_star: GroundSet, y: EvPeriodicSet) -> EvPeriodicSet:
    src, dst = check_pi_witnesses(omega, omega_star)
    if not y.issubset(omega.carrier):
        raise DomainError(f"{y.literal()} is not contained in {omega}")
    fixed = y & omega_star.carrier
    return fixed | transport(dst, src, y - omega_star.carrier, check=False)
