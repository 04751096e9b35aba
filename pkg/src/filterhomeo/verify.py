"""Seeded verification harness.

Every suite is deterministic in its seed and emits a :class:`Report`: a
``# suite=... seed=... trials=...`` header followed by one tab-separated row
per trial (suite, trial, verdict, detail).  Failing rows carry the full point
literals so they can be replayed through ``filterhomeo apply``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator

from .cantor_core import (EMPTY, EVENS, ODDS, OMEGA, EvPeriodicSet, GroundSet, OraclePoint,
                          random_set, random_ternary)
from .errors import DomainError, GenerationError
from .filter_zoo import (FilterSpec, SemifilterSpec, TPart, dyadic_brute, dyadic_decide,
                         semifilter_T, t_decompose)
from .homeo import (Cantor, Disjoint, DisjointPair, Homeo, Shape, Ternary, check_point,
                    flatten_point, format_point, square_homeo)
from .index_maps import phi, phi_image, phi_inv

MAX_ROUNDS = 1000
# Block lengths above 6 make composed square maps produce periods in the tens of millions.
MAX_PREFIX, MAX_BLOCK = 8, 6
PASS, FAIL = "pass", "fail"


# ---------------------------------------------------------------- generation


@dataclass(frozen=True)
class SubsetOf:
    ground: GroundSet


@dataclass(frozen=True)
class MemberOf:
    filter: FilterSpec | SemifilterSpec


@dataclass(frozen=True)
class NonMemberOf:
    filter: FilterSpec | SemifilterSpec


@dataclass(frozen=True)
class DisjointFrom:
    other: EvPeriodicSet


def _finite_noise(rng: random.Random, span: int = 24) -> EvPeriodicSet:
    return EvPeriodicSet.from_finite(rng.sample(range(span), rng.randint(0, 4)))


def draw(rng: random.Random, constraint=None, max_prefix: int = MAX_PREFIX, max_block: int = MAX_BLOCK) -> EvPeriodicSet:
    """One random eventually periodic set satisfying ``constraint``."""
    if constraint is None:
        return random_set(rng, max_prefix, max_block)
    if isinstance(constraint, SubsetOf):
        return random_set(rng, max_prefix, max_block) & constraint.ground.carrier
    if isinstance(constraint, DisjointFrom):
        return random_set(rng, max_prefix, max_block) - constraint.other
    if isinstance(constraint, MemberOf):
        f = constraint.filter
        sampler = getattr(f, "sample_generator", None)
        for _ in range(MAX_ROUNDS):
            if sampler is not None:
                # A large member, perturbed by a finite deletion and random additions.
                base = sampler(rng) - _finite_noise(rng)
                x = base | (random_set(rng, max_prefix, max_block) if rng.random() < 0.7 else EMPTY)
            else:
                x = random_set(rng, max_prefix, max_block)
            if f.decide(x):
                return x
        raise GenerationError(f"no member of {f.name} after {MAX_ROUNDS} rounds")
    if isinstance(constraint, NonMemberOf):
        f = constraint.filter
        for _ in range(MAX_ROUNDS):
            x = random_set(rng, max_prefix, max_block)
            if not f.decide(x):
                return x
        raise GenerationError(f"no non-member of {f.name} after {MAX_ROUNDS} rounds")
    raise DomainError(f"unknown constraint {constraint!r}")


def gen_evp(seed: int, max_prefix: int = MAX_PREFIX, max_block: int = MAX_BLOCK, constraint=None) -> Iterator[EvPeriodicSet]:
    rng = random.Random(seed)
    while True:
        yield draw(rng, constraint, max_prefix, max_block)


def sample_point(rng: random.Random, shape: Shape, max_prefix: int = MAX_PREFIX, max_block: int = MAX_BLOCK) -> tuple:
    """A random valid point of ``shape``."""
    out = []
    for coord in shape:
        if isinstance(coord, Cantor):
            out.append(draw(rng, SubsetOf(coord.ground), max_prefix, max_block))
        elif isinstance(coord, Disjoint):
            a = draw(rng, SubsetOf(coord.ground), max_prefix, max_block)
            b = draw(rng, SubsetOf(coord.ground), max_prefix, max_block) - a
            out.append(DisjointPair(a, b))
        elif isinstance(coord, Ternary):
            out.append(random_ternary(rng, max_prefix, max_block))
        else:
            raise DomainError(f"unknown coordinate {coord!r}")
    return tuple(out)


# ---------------------------------------------------------------- reports


@dataclass
class Report:
    suite: str
    seed: int
    trials: int
    rows: list[tuple[str, int, str, str]] = field(default_factory=list)

    def add(self, trial: int, ok: bool, detail: str = "", suite: str | None = None) -> None:
        self.rows.append((suite or self.suite, trial, PASS if ok else FAIL, detail))

    @property
    def failures(self) -> list[tuple[str, int, str, str]]:
        return [r for r in self.rows if r[2] == FAIL]

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def count(self, suite: str | None = None, verdict: str = PASS) -> int:
        return sum(1 for r in self.rows if r[2] == verdict and (suite is None or r[0] == suite))

    def to_tsv(self) -> str:
        lines = [f"# suite={self.suite} seed={self.seed} trials={self.trials}"]
        lines += ["\t".join((s, str(t), v, d)) for s, t, v, d in self.rows]
        return "\n".join(lines) + "\n"

    def summary(self) -> str:
        return f"{self.suite}: {self.count()}/{len(self.rows)} pass"


# ---------------------------------------------------------------- suites


def roundtrip_suite(h: Homeo, trials: int = 500, seed: int = 0,
                    max_prefix: int = MAX_PREFIX, max_block: int = MAX_BLOCK) -> Report:
    """``backward(forward(x)) == x`` on random domain points and
    ``forward(backward(y)) == y`` on random codomain points, with output shapes checked."""
    rng = random.Random(seed)
    report = Report(f"roundtrip[{h.name}]", seed, trials)
    for trial in range(trials):
        x = sample_point(rng, h.domain, max_prefix, max_block)
        y = sample_point(rng, h.codomain, max_prefix, max_block)
        try:
            fx = h.forward(x)
            check_point(h.codomain, fx, "forward output")
            back = h.backward(fx)
            by = h.backward(y)
            check_point(h.domain, by, "backward output")
            again = h.forward(by)
        except DomainError as exc:
            report.add(trial, False, f"x={format_point(x)} y={format_point(y)} error={exc}")
            continue
        ok = back == x and again == y
        detail = "" if ok else f"x={format_point(x)} y={format_point(y)}"
        report.add(trial, ok, detail)
    return report


def preservation_suite(f: FilterSpec, trials: int = 500, seed: int = 0) -> Report:
    """Membership is carried exactly by the square map, in both directions.

    Three sections of ``trials`` each: pairs of members go to members, members
    pull back to pairs of members, and pairs with a non-member coordinate go to
    non-members.
    """
    rng = random.Random(seed)
    sq = square_homeo(f)
    report = Report(f"preservation[{f.name}]", seed, trials)
    member, non_member = MemberOf(f), NonMemberOf(f)
    for trial in range(trials):
        pair = (draw(rng, member), draw(rng, member))
        (img,) = sq.forward(pair)
        report.add(trial, f.decide(img), "" if f.decide(img) else f"x={format_point(pair)}",
                   suite="forward-members")
    for trial in range(trials):
        z = draw(rng, member)
        a, b = sq.backward((z,))
        ok = f.decide(a) and f.decide(b)
        report.add(trial, ok, "" if ok else f"y={z.literal()}", suite="backward-members")
    for trial in range(trials):
        pair = [draw(rng, non_member), draw(rng, member if rng.random() < 0.5 else non_member)]
        rng.shuffle(pair)
        pair = tuple(pair)
        (img,) = sq.forward(pair)
        ok = not f.decide(img)
        report.add(trial, ok, "" if ok else f"x={format_point(pair)}", suite="forward-non-members")
    return report


def _leaf_oracles(x: tuple) -> tuple[tuple, list[OraclePoint]]:
    leaves: list[OraclePoint] = []
    out = []
    for value in x:
        if isinstance(value, DisjointPair):
            pair = (OraclePoint.of(value.first), OraclePoint.of(value.second))
            leaves.extend(pair)
            out.append(DisjointPair(*pair))
        else:
            leaf = OraclePoint.of(value)
            leaves.append(leaf)
            out.append(leaf)
    return tuple(out), leaves


def agreement_suite(h: Homeo, trials: int = 200, depth: int = 512, seed: int = 0) -> Report:
    """The lazy route and the exact route agree on the first ``depth`` positions
    of every output coordinate."""
    rng = random.Random(seed)
    report = Report(f"agreement[{h.name}]", seed, trials)
    for trial in range(trials):
        x = sample_point(rng, h.domain)
        exact = flatten_point(h.forward(x))
        lazy_in, _ = _leaf_oracles(x)
        lazy = flatten_point(h.lazy_forward(lazy_in))
        bad = [i for i, (e, l) in enumerate(zip(exact, lazy))
               if e.window(depth) != bytes(l.at(k) for k in range(depth))]
        report.add(trial, not bad, "" if not bad else f"x={format_point(x)} coords={bad}")
    return report


@dataclass(frozen=True)
class ModulusRow:
    k: int
    bit: int
    queries: int     # distinct input positions read to produce output positions 0..k
    max_index: int   # largest input position read to produce output positions 0..k
    bit_max_index: int  # largest input position read to produce output position k alone


def modulus_probe(h: Homeo, k_max: int = 64, seed: int = 0, coord: int = 0,
                  point: tuple | None = None) -> list[ModulusRow]:
    """How much of the input the lazy forward map reads per output position.

    The cumulative columns evaluate output positions ``0..k`` on one shared set
    of instrumented input oracles; ``bit_max_index`` re-evaluates position ``k``
    alone on fresh oracles.
    """
    if point is None:
        point = sample_point(random.Random(seed), h.domain)
    shared_in, shared_leaves = _leaf_oracles(point)
    shared_out = flatten_point(h.lazy_forward(shared_in))[coord]
    rows = []
    for k in range(k_max):
        bit = shared_out.at(k)
        queries = sum(leaf.counter for leaf in shared_leaves)
        max_index = max(leaf.max_index for leaf in shared_leaves)
        fresh_in, fresh_leaves = _leaf_oracles(point)
        flatten_point(h.lazy_forward(fresh_in))[coord].at(k)
        rows.append(ModulusRow(k, bit, queries, max_index, max(l.max_index for l in fresh_leaves)))
    return rows


def modulus_table(rows: list[ModulusRow]) -> str:
    lines = ["k\tbit\tqueries\tmax_index\tbit_max_index"]
    lines += [f"{r.k}\t{r.bit}\t{r.queries}\t{r.max_index}\t{r.bit_max_index}" for r in rows]
    return "\n".join(lines) + "\n"


def axiom_suite(f: FilterSpec | SemifilterSpec, samples: int = 500, seed: int = 0) -> Report:
    """Filter conditions on random members: empty set out, omega in, invariance
    under finite modification, superset closure, and (filters only) closure under
    intersection.  For a semifilter the intersection failure on
    ``(evens, {0} | odds)`` is recorded instead."""
    rng = random.Random(seed)
    report = Report(f"axioms[{f.name}]", seed, samples)
    report.add(0, not f.decide(EMPTY), "empty set is a member" if f.decide(EMPTY) else "", "empty-out")
    report.add(0, f.decide(OMEGA), "" if f.decide(OMEGA) else "omega is not a member", "omega-in")
    is_filter = isinstance(f, FilterSpec)
    for trial in range(samples):
        x, y = draw(rng, MemberOf(f)), draw(rng, MemberOf(f))
        sup = x | random_set(rng)
        mod = (x - _finite_noise(rng)) | _finite_noise(rng)
        ok_sup, ok_mod = f.decide(sup), f.decide(mod)
        report.add(trial, ok_sup, "" if ok_sup else f"x={x} sup={sup}", "superset")
        report.add(trial, ok_mod, "" if ok_mod else f"x={x} mod={mod}", "finite-mod")
        if is_filter:
            ok_int = f.decide(x & y)
            report.add(trial, ok_int, "" if ok_int else f"x={x} y={y}", "intersection")
    if not is_filter:
        a, b = EVENS, EvPeriodicSet.from_finite([0]) | ODDS
        witnessed = f.decide(a) and f.decide(b) and not f.decide(a & b)
        report.add(0, witnessed, f"x={a} y={b} meet={a & b}", "intersection-counterexample")
    return report


def dyadic_oracle_suite(samples: int = 1000, seed: int = 0) -> Report:
    """Closed-form dyadic decision against the brute-force search over n <= 20."""
    rng = random.Random(seed)
    report = Report("dyadic-oracle", seed, samples)
    for trial in range(samples):
        # Periods with high powers of two exercise the interesting cases.
        x = random_set(rng, 8, rng.choice((4, 8, 16, 24, 32)))
        if rng.random() < 0.5:
            x = x | EvPeriodicSet((), (1,) + (0,) * ((1 << rng.randint(0, 4)) - 1))
        ok = dyadic_decide(x) == dyadic_brute(x)
        report.add(trial, ok, "" if ok else f"x={x}")
    return report


def phi_suite(sets: int = 20, pairs: int = 500, bound: int = 4096, seed: int = 0) -> Report:
    """phi and its inverse against each other and against monotonicity below
    ``bound``; exact phi images against element-by-element images."""
    rng = random.Random(seed)
    report = Report("phi", seed, sets + pairs)
    trial = 0
    for _ in range(sets):
        s = _co_infinite_set(rng)
        prev, ok = -1, True
        for m in range(bound):
            if m in s:
                continue
            k = phi(s, m)
            if phi_inv(s, k) != m or k <= prev:
                ok = False
                break
            prev = k
        report.add(trial, ok, "" if ok else f"s={s} m={m}", "phi-inverse-monotone")
        trial += 1
    for _ in range(pairs):
        s = _co_infinite_set(rng)
        e = draw(rng, DisjointFrom(s))
        img = phi_image(s, e)
        # Element-by-element: walk omega, counting positions outside s.
        expected, rank = [], 0
        for m in range(1024):
            if m in s:
                continue
            if m in e:
                expected.append(rank)
            rank += 1
        # Output positions below this rank depend only on members below 1024.
        limit = rank
        ok = img.members(limit) == [k for k in expected if k < limit]
        report.add(trial, ok, "" if ok else f"s={s} e={e}", "phi-image-brute")
        trial += 1
    return report


def _co_infinite_set(rng: random.Random) -> EvPeriodicSet:
    while True:
        s = random_set(rng)
        if not s.is_cofinite():
            return s


def semifilter_suite(seed: int = 0, samples: int = 500) -> Report:
    """Membership decomposition of ``T`` agrees with the two-part case split."""
    t = semifilter_T()
    rng = random.Random(seed)
    report = Report("semifilter-T", seed, samples)
    for trial in range(samples):
        x = random_set(rng)
        part = t_decompose(x)
        ok = t.decide(x) == (part is not TPart.NON_MEMBER)
        report.add(trial, ok, f"x={x} part={part.value}")
    return report


__all__ = [
    "SubsetOf", "MemberOf", "NonMemberOf", "DisjointFrom", "draw", "gen_evp", "sample_point",
    "Report", "roundtrip_suite", "preservation_suite", "agreement_suite", "modulus_probe",
    "modulus_table", "ModulusRow", "axiom_suite", "dyadic_oracle_suite", "phi_suite",
    "semifilter_suite",
]
