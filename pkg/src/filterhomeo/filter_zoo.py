"""Concrete filters on omega with exact membership on eventually periodic sets.

The zoo holds the Frechet filter, principal filters ``{X : A almost-contained in X}``,
the non-principal dyadic chain filter generated by the multiples of ``2**n``,
and the two-piece semifilter ``T`` that is not closed under intersection.
"""

from __future__ import annotations

import enum
import random
from math import gcd
from dataclasses import dataclass, field
from typing import Callable

from .cantor_core import (EMPTY, EVENS, ODDS, OMEGA, EvPeriodicSet, GroundSet,
                          almost_subset, random_set)
from .errors import DomainError, MalformedInputError

Sampler = Callable[[random.Random], EvPeriodicSet]


@dataclass(frozen=True)
class FilterSpec:
    name: str
    decide: Callable[[EvPeriodicSet], bool] = field(compare=False)
    is_principal: bool | None
    generator: EvPeriodicSet | None = None
    omega_witness: GroundSet | None = None
    omega_star_witness: GroundSet | None = None
    # Draws a "large" member; callers add noise on top and re-check with decide.
    sample_generator: Sampler | None = field(default=None, compare=False)

    def __contains__(self, x: EvPeriodicSet) -> bool:
        return bool(self.decide(x))

    def contains_all(self, xs) -> bool:
        return all(self.decide(x) for x in xs)


def mem_filter(f: FilterSpec, x: EvPeriodicSet) -> bool:
    return bool(f.decide(x))


def principal(a: EvPeriodicSet, name: str | None = None) -> FilterSpec:
    if a.is_finite():
        raise DomainError(f"principal generator {a.literal()} is finite")
    return FilterSpec(
        name=name or f"principal:{a.literal()}",
        decide=lambda x: almost_subset(a, x),
        is_principal=True,
        generator=a,
        sample_generator=lambda rng: a,
    )


def frechet() -> FilterSpec:
    return principal(OMEGA, name="frechet")


def multiples_of_power_of_two(n: int) -> EvPeriodicSet:
    step = 1 << n
    return EvPeriodicSet((), (1,) + (0,) * (step - 1))


def dyadic_decide(x: EvPeriodicSet) -> bool:
    """Some ``2**n``-multiples set is almost contained in ``x``.

    With period ``p = 2**a * q`` (``q`` odd), the residues mod ``p`` reached by
    ``2**n``-multiples are the multiples of ``gcd(2**n, p)``; for ``n >= a`` that
    is the multiples of ``2**a``, and smaller ``n`` only reach more residues.
    So it suffices to test ``n = a`` over one period past the preperiod.
    """
    p = x.period
    step = p & -p
    lp = x.preperiod
    start = lp + (-lp) % step
    return all(x.at(i) for i in range(start, start + p, step))


def dyadic_brute(x: EvPeriodicSet, n_max: int = 20) -> bool:
    """Independent check: try every ``n <= n_max`` over an exact lcm window."""
    lp, p = x.preperiod, x.period
    for n in range(n_max + 1):
        step = 1 << n
        start = lp + (-lp) % step
        window = p * step // gcd(p, step)
        if all(x.at(i) for i in range(start, start + window, step)):
            return True
    return False


def dyadic_chain() -> FilterSpec:
    return FilterSpec(
        name="dyadic",
        decide=dyadic_decide,
        is_principal=False,
        omega_witness=GroundSet(EVENS),
        omega_star_witness=GroundSet(multiples_of_power_of_two(2)),
        sample_generator=lambda rng: multiples_of_power_of_two(rng.randint(0, 4)),
    )


class TPart(str, enum.Enum):
    COMPLETE = "complete-part"
    COUNTABLE = "countable-part"
    NON_MEMBER = "non-member"


@dataclass(frozen=True)
class SemifilterSpec:
    name: str
    decide: Callable[[EvPeriodicSet], bool] = field(compare=False)
    omega1: GroundSet
    omega2: GroundSet

    def __contains__(self, x: EvPeriodicSet) -> bool:
        return bool(self.decide(x))


T_OMEGA1 = GroundSet(EVENS)
T_OMEGA2 = GroundSet(ODDS)


def t_decompose(x: EvPeriodicSet) -> TPart:
    if not (x & T_OMEGA1.carrier).is_finite():
        return TPart.COMPLETE
    if almost_subset(T_OMEGA2.carrier, x):
        return TPart.COUNTABLE
    return TPart.NON_MEMBER


def semifilter_T() -> SemifilterSpec:
    return SemifilterSpec(
        name="semifilter-T",
        decide=lambda x: t_decompose(x) is not TPart.NON_MEMBER,
        omega1=T_OMEGA1,
        omega2=T_OMEGA2,
    )


@dataclass
class SubspaceReport:
    cof_omega2_in_t: int = 0
    cof_omega2_total: int = 0
    supersets_in_t: int = 0
    supersets_total: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def closed_subspace_checks(samples: int = 100, seed: int = 0) -> SubspaceReport:
    """Membership-level check that both distinguished subspaces sit inside ``T``.

    Draws members of ``Cof(omega2)`` (odds minus a finite set) and supersets of
    ``omega1``.  Closedness itself is not finitely checkable and is not attempted.
    """
    rng = random.Random(seed)
    t = semifilter_T()
    report = SubspaceReport()
    for _ in range(samples):
        removed = EvPeriodicSet.from_finite(rng.sample(range(40), rng.randint(0, 5)))
        member = t.omega2.carrier - removed
        report.cof_omega2_total += 1
        if member in t:
            report.cof_omega2_in_t += 1
        else:
            report.failures.append(f"Cof(omega2) member {member.literal()} not in T")
        sup = t.omega1.carrier | random_set(rng)
        report.supersets_total += 1
        if sup in t:
            report.supersets_in_t += 1
        else:
            report.failures.append(f"superset of omega1 {sup.literal()} not in T")
    return report


ZOO_NAMES = ("frechet", "principal:<literal>", "dyadic", "semifilter-T")


def lookup(name: str) -> FilterSpec | SemifilterSpec:
    """Resolve a zoo filter by its CLI name."""
    if name == "frechet":
        return frechet()
    if name == "dyadic":
        return dyadic_chain()
    if name in ("semifilter-T", "T"):
        return semifilter_T()
    if name.startswith("principal:"):
        return principal(EvPeriodicSet.parse(name.split(":", 1)[1]))
    raise MalformedInputError(f"unknown filter {name!r}; known: {', '.join(ZOO_NAMES)}")


@dataclass(frozen=True)
class PrefilterSpec:
    """A family closed under supersets and finite intersections.

    ``core`` is the intersection of the family, declared by whoever built the
    description; :func:`prefilter_core_agrees` cross-checks it against ``decide``.
    """

    name: str
    decide: Callable[[EvPeriodicSet], bool] = field(compare=False)
    core: EvPeriodicSet
    source: FilterSpec | None = None


def upward_closure(a: EvPeriodicSet) -> PrefilterSpec:
    return PrefilterSpec(name=f"up:{a.literal()}", decide=lambda x: a.issubset(x), core=a)


def prefilter_of(f: FilterSpec) -> PrefilterSpec:
    return PrefilterSpec(name=f.name, decide=f.decide, core=EMPTY, source=f)


def prefilter_core_agrees(g: PrefilterSpec, bound: int = 256) -> bool:
    """``n`` is in every member iff the co-singleton ``omega \\ {n}`` is not a member."""
    for n in range(bound):
        cosingleton = OMEGA - EvPeriodicSet.from_finite([n])
        if (n in g.core) == bool(g.decide(cosingleton)):
            return False
    return True
