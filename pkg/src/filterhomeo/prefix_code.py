"""Transcoding between binary and ternary streams through the prefix code {0, 10, 11}.

The code is complete, so every infinite binary stream parses into exactly one
ternary stream.  The parser carries no state between codewords, which is why an
eventually periodic input yields an eventually periodic output: once the read
head is past the preperiod, it can only sit at ``period`` distinct offsets.
"""

from __future__ import annotations

from .cantor_core import EvPeriodicSet, OraclePoint, Point, TernaryStream

CODEWORDS: dict[int, tuple[int, ...]] = {0: (0,), 1: (1, 0), 2: (1, 1)}


def encode_symbols(symbols: tuple[int, ...]) -> tuple[int, ...]:
    out: list[int] = []
    for s in symbols:
        out.extend(CODEWORDS[s])
    return tuple(out)


def encode(t: TernaryStream) -> EvPeriodicSet:
    return EvPeriodicSet(encode_symbols(t.prefix), encode_symbols(t.block))


def _read(bits: Point, pos: int) -> tuple[int, int]:
    if bits.at(pos) == 0:
        return 0, pos + 1
    return 1 + bits.at(pos + 1), pos + 2


def decode(b: EvPeriodicSet) -> TernaryStream:
    lp, p = b.preperiod, b.period
    symbols: list[int] = []
    first_seen: dict[int, int] = {}
    pos = 0
    while True:
        if pos >= lp:
            offset = (pos - lp) % p
            if offset in first_seen:
                start = first_seen[offset]
                return TernaryStream(tuple(symbols[:start]), tuple(symbols[start:]))
            first_seen[offset] = len(symbols)
        sym, pos = _read(b, pos)
        symbols.append(sym)


class _LazyDecoder:
    def __init__(self, bits: Point):
        self.bits = bits
        self.symbols: list[int] = []
        self.pos = 0

    def at(self, k: int) -> int:
        while len(self.symbols) <= k:
            sym, self.pos = _read(self.bits, self.pos)
            self.symbols.append(sym)
        return self.symbols[k]


class _LazyEncoder:
    def __init__(self, symbols: Point):
        self.source = symbols
        self.bits: list[int] = []
        self.consumed = 0

    def at(self, j: int) -> int:
        while len(self.bits) <= j:
            self.bits.extend(CODEWORDS[self.source.at(self.consumed)])
            self.consumed += 1
        return self.bits[j]


def lazy_decode(bits: Point) -> OraclePoint:
    return OraclePoint(_LazyDecoder(bits).at, memo=True)


def lazy_encode(symbols: Point) -> OraclePoint:
    return OraclePoint(_LazyEncoder(symbols).at, memo=True)


def pair_to_ternary(x: EvPeriodicSet, y: EvPeriodicSet) -> TernaryStream:
    """Symbol 1 where ``x`` holds, 2 where ``y`` holds, 0 elsewhere (``x``, ``y`` disjoint)."""
    return TernaryStream.zip_with(lambda a, b: a + 2 * b, x, y)


def ternary_to_pair(t: TernaryStream) -> tuple[EvPeriodicSet, EvPeriodicSet]:
    return (EvPeriodicSet.zip_with(lambda s: int(s == 1), t),
            EvPeriodicSet.zip_with(lambda s: int(s == 2), t))
