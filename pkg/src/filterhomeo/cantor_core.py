"""Exact eventually periodic subsets of omega and lazy oracle points.

An eventually periodic sequence is stored as a finite ``prefix`` followed by a
``block`` that repeats forever.  Values are always kept in canonical form
(primitive block, shortest prefix), so equality of the dataclasses is equality
of the denoted sequences.

Bit literals are written position-first: character ``i`` is the value at
position ``i``.  The text form is ``PREFIX|BLOCK``, e.g. ``0111|10``.
"""

from __future__ import annotations

import bisect
import enum
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, ClassVar, Iterable, Protocol

import numpy as np

from .errors import DomainError, MalformedInputError

__all__ = [
    "EvPeriodicSeq", "EvPeriodicSet", "TernaryStream", "GroundSet", "RankIndex",
    "OraclePoint", "Finiteness", "Point",
    "canonicalize", "boolean", "almost_subset", "almost_equal",
    "classify_finiteness", "select", "rank", "prefix_agree",
    "parse_literal", "random_set", "random_ternary", "OMEGA", "EMPTY", "EVENS", "ODDS",
]


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _primitive_root(block: bytes) -> bytes:
    return block[:(block + block).find(block, 1)]


def _reduce(prefix: bytes, block: bytes) -> tuple[bytes, bytes]:
    block = _primitive_root(block)
    # Absorb trailing prefix symbols into the cycle by rotating it right.
    while prefix and prefix[-1] == block[-1]:
        block = block[-1:] + block[:-1]
        prefix = prefix[:-1]
    return prefix, block


def _as_bytes(symbols) -> bytes:
    if isinstance(symbols, bytes):
        return symbols
    if isinstance(symbols, str):
        return bytes(int(c) for c in symbols)
    return bytes(symbols)


class Point(Protocol):
    """Anything that answers position queries: exact sequences and oracles alike."""

    def at(self, i: int) -> int: ...


@dataclass(frozen=True)
class EvPeriodicSeq:
    """Eventually periodic sequence over ``{0, ..., ALPHABET-1}``."""

    prefix: bytes
    block: bytes

    ALPHABET: ClassVar[int] = 2

    def __post_init__(self) -> None:
        try:
            prefix, block = _as_bytes(self.prefix), _as_bytes(self.block)
        except (TypeError, ValueError) as exc:
            raise MalformedInputError(f"bad symbol sequence: {exc}") from None
        if not block:
            raise MalformedInputError("block must be nonempty")
        if max(prefix + block) >= self.ALPHABET:
            raise MalformedInputError(f"symbol outside alphabet of size {self.ALPHABET}")
        prefix, block = _reduce(prefix, block)
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "block", block)

    @property
    def period(self) -> int:
        return len(self.block)

    @property
    def preperiod(self) -> int:
        return len(self.prefix)

    def at(self, i: int) -> int:
        if i < 0:
            raise DomainError(f"negative position {i}")
        lp = len(self.prefix)
        if i < lp:
            return self.prefix[i]
        return self.block[(i - lp) % len(self.block)]

    def window(self, n: int) -> bytes:
        """The first ``n`` symbols."""
        lp = len(self.prefix)
        if n <= lp:
            return self.prefix[:n]
        reps = (n - lp) // len(self.block) + 1
        return (self.prefix + self.block * reps)[:n]

    def symbols(self, start: int, stop: int) -> bytes:
        return self.window(stop)[start:]

    @classmethod
    def from_function(cls, fn: Callable[[int], int], preperiod: int, period: int):
        """Build from a symbol function known to be periodic beyond ``preperiod``."""
        return cls(bytes(fn(i) for i in range(preperiod)),
                   bytes(fn(i) for i in range(preperiod, preperiod + period)))

    @classmethod
    def zip_with(cls, fn: Callable[..., int], *seqs: "EvPeriodicSeq"):
        """Pointwise combination, exact: realign to a common preperiod and lcm period."""
        lp = max(s.preperiod for s in seqs)
        p = 1
        for s in seqs:
            p = lcm(p, s.period)
        windows = [s.window(lp + p) for s in seqs]
        out = bytes(fn(*column) for column in zip(*windows))
        return cls(out[:lp], out[lp:])

    @classmethod
    def _aligned(cls, *seqs: "EvPeriodicSeq") -> tuple[int, int, list[int]]:
        """Common preperiod, period, and each window packed into an int (one byte per symbol)."""
        lp = max(s.preperiod for s in seqs)
        p = 1
        for s in seqs:
            p = lcm(p, s.period)
        return lp, p, [int.from_bytes(s.window(lp + p), "big") for s in seqs]

    @classmethod
    def parse(cls, text: str):
        text = text.strip()
        if text.count("|") != 1:
            raise MalformedInputError(f"literal {text!r} must have the form PREFIX|BLOCK")
        head, tail = text.split("|")
        digits = "".join(str(d) for d in range(cls.ALPHABET))
        for ch in head + tail:
            if ch not in digits:
                raise MalformedInputError(f"unexpected character {ch!r} in literal {text!r}")
        if not tail:
            raise MalformedInputError(f"literal {text!r} has an empty block")
        return cls(bytes(int(c) for c in head), bytes(int(c) for c in tail))

    def literal(self) -> str:
        return "".join(map(str, self.prefix)) + "|" + "".join(map(str, self.block))

    def array(self, n: int) -> np.ndarray:
        """First ``n`` symbols as a uint8 array."""
        return np.frombuffer(self.window(n), dtype=np.uint8)

    def __str__(self) -> str:
        return self.literal()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.literal()!r})"


@dataclass(frozen=True, repr=False)
class TernaryStream(EvPeriodicSeq):
    ALPHABET: ClassVar[int] = 3


@dataclass(frozen=True, repr=False)
class EvPeriodicSet(EvPeriodicSeq):
    """Eventually periodic subset of omega, via its characteristic sequence."""

    ALPHABET: ClassVar[int] = 2

    @classmethod
    def from_finite(cls, members: Iterable[int]) -> EvPeriodicSet:
        members = set(members)
        if not members:
            return cls(b"", b"\x00")
        n = max(members) + 1
        return cls(bytes(int(i in members) for i in range(n)), b"\x00")

    @classmethod
    def from_residues(cls, modulus: int, residues: Iterable[int], start: int = 0) -> EvPeriodicSet:
        """``{n >= start : n mod modulus in residues}``."""
        res = {r % modulus for r in residues}
        return cls.from_function(lambda i: int(i >= start and i % modulus in res), start, modulus)

    def __contains__(self, n: int) -> bool:
        return bool(self.at(n))

    def members(self, limit: int) -> list[int]:
        """Members below ``limit``."""
        return [i for i, b in enumerate(self.window(limit)) if b]

    # Binary operations act on windows packed one byte per position, so plain
    # integer bitwise operators combine all positions at once.
    def _combine(self, other: EvPeriodicSet, op: Callable[[int, int], int]) -> EvPeriodicSet:
        lp, p, (a, b) = EvPeriodicSeq._aligned(self, other)
        out = op(a, b).to_bytes(lp + p, "big")
        return EvPeriodicSet(out[:lp], out[lp:])

    def __or__(self, other: EvPeriodicSet) -> EvPeriodicSet:
        return self._combine(other, int.__or__)

    def __and__(self, other: EvPeriodicSet) -> EvPeriodicSet:
        return self._combine(other, int.__and__)

    def __sub__(self, other: EvPeriodicSet) -> EvPeriodicSet:
        return self._combine(other, lambda a, b: a & ~b)

    def __invert__(self) -> EvPeriodicSet:
        return EvPeriodicSet(self.prefix.translate(_FLIP), self.block.translate(_FLIP))

    def is_finite(self) -> bool:
        return self.block == b"\x00"

    def is_cofinite(self) -> bool:
        return self.block == b"\x01"

    def is_empty(self) -> bool:
        return self.block == b"\x00" and not self.prefix

    def issubset(self, other: EvPeriodicSet) -> bool:
        return (self - other).is_empty()

    def isdisjoint(self, other: EvPeriodicSet) -> bool:
        return (self & other).is_empty()

    def cardinality(self) -> int:
        if not self.is_finite():
            raise DomainError(f"{self.literal()} is infinite")
        return sum(self.prefix)


_FLIP = bytes.maketrans(b"\x00\x01", b"\x01\x00")

OMEGA = EvPeriodicSet(b"", b"\x01")
EMPTY = EvPeriodicSet(b"", b"\x00")
EVENS = EvPeriodicSet(b"", b"\x01\x00")
ODDS = EvPeriodicSet(b"", b"\x00\x01")


def parse_literal(text: str) -> EvPeriodicSet:
    return EvPeriodicSet.parse(text)


def canonicalize(x, block=None) -> EvPeriodicSet:
    """Canonical form of a set given either as an ``EvPeriodicSet`` or as raw
    ``(prefix, block)`` bit sequences (strings of 0/1 or int sequences)."""
    if block is None:
        if isinstance(x, EvPeriodicSet):
            return x
        raise MalformedInputError("canonicalize needs a set or a (prefix, block) pair")

    return EvPeriodicSet(_as_bytes(x), _as_bytes(block))


class BooleanOp(str, enum.Enum):
    UNION = "union"
    INTERSECT = "intersect"
    DIFF = "diff"
    COMPLEMENT = "complement"


def boolean(op: str, x: EvPeriodicSet, y: EvPeriodicSet | None = None) -> EvPeriodicSet:
    op = BooleanOp(op)
    if op is BooleanOp.COMPLEMENT:
        return ~x
    if y is None:
        raise MalformedInputError(f"{op.value} needs two operands")
    if op is BooleanOp.UNION:
        return x | y
    if op is BooleanOp.INTERSECT:
        return x & y
    return x - y


def almost_subset(x: EvPeriodicSet, y: EvPeriodicSet) -> bool:
    """``x \\ y`` is finite."""
    return (x - y).is_finite()


def almost_equal(x: EvPeriodicSet, y: EvPeriodicSet) -> bool:
    return almost_subset(x, y) and almost_subset(y, x)


class Finiteness(str, enum.Enum):
    FINITE = "finite"
    COFINITE = "cofinite"
    BI_INFINITE = "bi-infinite"


def classify_finiteness(x: EvPeriodicSet) -> Finiteness:
    if all(b == 0 for b in x.block):
        return Finiteness.FINITE
    if all(b == 1 for b in x.block):
        return Finiteness.COFINITE
    return Finiteness.BI_INFINITE


class RankIndex:
    """Constant-time rank/select over any eventually periodic set (finite ones included)."""

    def __init__(self, carrier: EvPeriodicSet):
        self.carrier = carrier
        pre = np.frombuffer(carrier.prefix, dtype=np.uint8).astype(np.int64)
        blk = np.frombuffer(carrier.block, dtype=np.uint8).astype(np.int64)
        self._lp, self._p = len(pre), len(blk)
        self._pre_ones = np.flatnonzero(pre)
        self._blk_ones = np.flatnonzero(blk)
        self._pre_cum = np.concatenate(([0], np.cumsum(pre)))
        self._blk_cum = np.concatenate(([0], np.cumsum(blk)))
        self.ones_per_block = len(self._blk_ones)
        self._npre = len(self._pre_ones)

    @property
    def is_infinite(self) -> bool:
        return self.ones_per_block > 0

    def rank(self, n: int) -> int:
        """Number of members strictly below ``n``."""
        if n <= self._lp:
            return int(self._pre_cum[max(n, 0)])
        q, r = divmod(n - self._lp, self._p)
        return int(self._pre_cum[self._lp] + q * self.ones_per_block + self._blk_cum[r])

    def select(self, k: int) -> int:
        """The member of index ``k`` (0-based) in increasing order."""
        if k < 0:
            raise DomainError(f"negative index {k}")
        if k < self._npre:
            return int(self._pre_ones[k])
        if not self.ones_per_block:
            raise DomainError(f"select({k}) on finite set {self.carrier.literal()}")
        q, r = divmod(k - self._npre, self.ones_per_block)
        return int(self._lp + q * self._p + self._blk_ones[r])

    def rank_many(self, ns: np.ndarray) -> np.ndarray:
        ns = np.asarray(ns, dtype=np.int64)
        q, r = np.divmod(np.maximum(ns - self._lp, 0), self._p)
        periodic = self._pre_cum[self._lp] + q * self.ones_per_block + self._blk_cum[r]
        return np.where(ns <= self._lp, self._pre_cum[np.clip(ns, 0, self._lp)], periodic)

    def select_many(self, ks: np.ndarray) -> np.ndarray:
        ks = np.asarray(ks, dtype=np.int64)
        if ks.size == 0:
            return ks
        if not self.ones_per_block:
            if ks.max() >= self._npre:
                raise DomainError(f"select beyond the members of finite set {self.carrier.literal()}")
            return self._pre_ones[ks]
        q, r = np.divmod(np.maximum(ks - self._npre, 0), self.ones_per_block)
        periodic = self._lp + q * self._p + self._blk_ones[r]
        if not self._npre:
            return periodic
        return np.where(ks < self._npre, self._pre_ones[np.minimum(ks, self._npre - 1)], periodic)

    def contains(self, n: int) -> bool:
        return bool(self.carrier.at(n))


@dataclass(frozen=True)
class GroundSet:
    """An infinite coordinate set Omega with rank/select accessors."""

    carrier: EvPeriodicSet
    _index: RankIndex = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        index = RankIndex(self.carrier)
        if not index.is_infinite:
            raise DomainError(f"ground set {self.carrier.literal()} is finite")
        object.__setattr__(self, "_index", index)

    @classmethod
    def parse(cls, text: str) -> GroundSet:
        return cls(EvPeriodicSet.parse(text))

    @property
    def ones_per_block(self) -> int:
        return self._index.ones_per_block

    def rank(self, n: int) -> int:
        return self._index.rank(n)

    def select(self, k: int) -> int:
        return self._index.select(k)

    def rank_many(self, ns: np.ndarray) -> np.ndarray:
        return self._index.rank_many(ns)

    def select_many(self, ks: np.ndarray) -> np.ndarray:
        return self._index.select_many(ks)

    def __contains__(self, n: int) -> bool:
        return bool(self.carrier.at(n))

    def complement(self) -> GroundSet:
        return GroundSet(~self.carrier)

    def is_co_infinite(self) -> bool:
        return not self.carrier.is_cofinite()

    def __str__(self) -> str:
        return self.carrier.literal()


def select(ground: GroundSet | EvPeriodicSet, k: int) -> int:
    if isinstance(ground, EvPeriodicSet):
        ground = GroundSet(ground)
    return ground.select(k)


def rank(ground: GroundSet | EvPeriodicSet, n: int) -> int:
    if isinstance(ground, EvPeriodicSet):
        return RankIndex(ground).rank(n)
    return ground.rank(n)


class OraclePoint:
    """A point given only by a membership query.

    Every distinct position ever asked is recorded, so a caller can read off how
    much of the input a computation actually inspected.  With ``memo=True`` the
    answers are cached, which is what intermediate stages of a lazy pipeline use;
    leaf oracles leave it off so that re-queries still reach ``query``.
    """

    def __init__(self, query: Callable[[int], int], memo: bool = False, name: str = ""):
        self._query = query
        self._memo: dict[int, int] | None = {} if memo else None
        self._seen: set[int] = set()
        self.max_index = -1
        self.name = name

    @classmethod
    def of(cls, point: Point, name: str = "") -> OraclePoint:
        return cls(point.at, name=name)

    @property
    def counter(self) -> int:
        return len(self._seen)

    def queried(self) -> frozenset[int]:
        return frozenset(self._seen)

    def at(self, i: int) -> int:
        if i < 0:
            raise DomainError(f"negative position {i}")
        if i not in self._seen:
            self._seen.add(i)
            if i > self.max_index:
                self.max_index = i
        if self._memo is None:
            return self._query(i)
        try:
            return self._memo[i]
        except KeyError:
            v = self._memo[i] = self._query(i)
            return v

    def window(self, n: int) -> bytes:
        return tuple(self.at(i) for i in range(n))

    def __repr__(self) -> str:
        return f"OraclePoint({self.name or hex(id(self))}, counter={self.counter})"


def prefix_agree(x: Point, y: Point, n: int) -> bool:
    """Membership bits of ``x`` and ``y`` agree on every position below ``n``."""
    return all(x.at(i) == y.at(i) for i in range(n))


class LazyIndex:
    """Incremental rank/select over a lazily queried set.

    Scans the underlying point from position 0 and remembers what it found, so
    repeated select/rank calls only ever extend the scan.
    """

    def __init__(self, point: Point, complement: bool = False, scan_limit: int = 10_000_000):
        self._point = point
        self._want = 0 if complement else 1
        self._elements: list[int] = []
        self._scanned = 0
        self._scan_limit = scan_limit

    def _scan_to(self, n: int) -> None:
        while self._scanned < n:
            if self._point.at(self._scanned) == self._want:
                self._elements.append(self._scanned)
            self._scanned += 1

    def select(self, k: int) -> int:
        while len(self._elements) <= k:
            if self._scanned >= self._scan_limit:
                raise DomainError(f"select({k}) did not terminate within {self._scan_limit} positions")
            self._scan_to(self._scanned + 1)
        return self._elements[k]

    def rank(self, n: int) -> int:
        self._scan_to(n)
        return bisect.bisect_left(self._elements, n)

    def contains(self, n: int) -> bool:
        return self._point.at(n) == self._want


def random_set(rng, max_prefix: int = 8, max_block: int = 8) -> EvPeriodicSet:
    """Uniformly shaped random set: prefix length in [0, max_prefix], block length in [1, max_block]."""
    lp = rng.randint(0, max_prefix)
    p = rng.randint(1, max_block)
    return EvPeriodicSet(bytes(rng.getrandbits(1) for _ in range(lp)),
                         bytes(rng.getrandbits(1) for _ in range(p)))


def random_ternary(rng, max_prefix: int = 8, max_block: int = 8) -> TernaryStream:
    lp = rng.randint(0, max_prefix)
    p = rng.randint(1, max_block)
    return TernaryStream(bytes(rng.randrange(3) for _ in range(lp)),
                         bytes(rng.randrange(3) for _ in range(p)))
