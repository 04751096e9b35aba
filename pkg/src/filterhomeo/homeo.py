"""Invertible point transformers between products of Cantor-type spaces.

A :class:`Homeo` carries an exact forward/backward pair (eventually periodic in,
eventually periodic out) and a lazy pair that works on anything answering
``at(i)``.  The two routes are implemented separately so each can check the
other.  Points are tuples with one entry per coordinate of the declared shape;
a disjoint-pair coordinate holds a :class:`DisjointPair`.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

from . import prefix_code
from .cantor_core import (EVENS, ODDS, EvPeriodicSet, GroundSet, OraclePoint, Point,
                          TernaryStream, random_set)
from .errors import DomainError, ShapeError, UnsupportedCaseError, WitnessError
from .filter_zoo import FilterSpec, PrefilterSpec, prefilter_core_agrees
from .index_maps import (OMEGA_GROUND, check_pi_witnesses, lazy_phi_image, lazy_phi_preimage, lazy_transport,
                         phi_image, phi_preimage, pi_map, pi_map_inverse, transport)

# ---------------------------------------------------------------- shapes


@dataclass(frozen=True)
class Cantor:
    """``2^ground``: subsets of the ground set."""
    ground: GroundSet

    def __str__(self) -> str:
        return f"2^{self.ground}"


@dataclass(frozen=True)
class Disjoint:
    """``D(ground)``: pairs of disjoint subsets of the ground set."""
    ground: GroundSet

    def __str__(self) -> str:
        return f"D({self.ground})"


@dataclass(frozen=True)
class Ternary:
    def __str__(self) -> str:
        return "3^w"


Coord = Union[Cantor, Disjoint, Ternary]
Shape = tuple  # tuple[Coord, ...]


def shape_str(shape: Shape) -> str:
    return "(" + ", ".join(map(str, shape)) + ")"


@dataclass(frozen=True)
class DisjointPair:
    first: Point
    second: Point

    def __post_init__(self) -> None:
        a, b = self.first, self.second
        if isinstance(a, EvPeriodicSet) and isinstance(b, EvPeriodicSet) and not a.isdisjoint(b):
            raise DomainError(f"pair ({a.literal()}, {b.literal()}) is not disjoint")

    def __iter__(self):
        return iter((self.first, self.second))


def crowded_extensions(ground: GroundSet, assignment: dict[int, int]) -> tuple[DisjointPair, DisjointPair]:
    """Two distinct points of ``D(ground)`` agreeing with a finite partial assignment.

    ``assignment`` maps coordinates (members of ``ground``) to 0 (in neither),
    1 (in first) or 2 (in second).
    """
    for n, v in assignment.items():
        if n not in ground or v not in (0, 1, 2):
            raise DomainError(f"bad assignment {n} -> {v} over {ground}")
    first = EvPeriodicSet.from_finite(n for n, v in assignment.items() if v == 1)
    second = EvPeriodicSet.from_finite(n for n, v in assignment.items() if v == 2)
    free = ground.select(ground.rank(max(assignment, default=-1) + 1))
    bumped = first | EvPeriodicSet.from_finite([free])
    return DisjointPair(first, second), DisjointPair(bumped, second)


def _check_coord(coord: Coord, value, where: str) -> None:
    if isinstance(coord, Cantor):
        if isinstance(value, EvPeriodicSet) and not value.issubset(coord.ground.carrier):
            raise DomainError(f"{where}: {value.literal()} is not a subset of {coord.ground}")
        if isinstance(value, (DisjointPair, TernaryStream)):
            raise DomainError(f"{where}: expected a set for {coord}")
    elif isinstance(coord, Disjoint):
        if not isinstance(value, DisjointPair):
            raise DomainError(f"{where}: expected a disjoint pair for {coord}")
        for part in value:
            if isinstance(part, EvPeriodicSet) and not part.issubset(coord.ground.carrier):
                raise DomainError(f"{where}: {part.literal()} is not a subset of {coord.ground}")
    elif isinstance(coord, Ternary):
        if isinstance(value, (EvPeriodicSet, DisjointPair)):
            raise DomainError(f"{where}: expected a ternary stream")


def check_point(shape: Shape, point: tuple, where: str = "point") -> None:
    if len(point) != len(shape):
        raise DomainError(f"{where}: {len(point)} coordinates given, shape {shape_str(shape)} has {len(shape)}")
    for i, (coord, value) in enumerate(zip(shape, point)):
        _check_coord(coord, value, f"{where}[{i}]")


# ---------------------------------------------------------------- the Homeo type

Fn = Callable[[tuple], tuple]


@dataclass(frozen=True)
class Homeo:
    name: str
    domain: Shape
    codomain: Shape
    _forward: Fn = field(repr=False, compare=False)
    _backward: Fn = field(repr=False, compare=False)
    _lazy_forward: Fn = field(repr=False, compare=False)
    _lazy_backward: Fn = field(repr=False, compare=False)

    def forward(self, x: tuple) -> tuple:
        x = tuple(x)
        check_point(self.domain, x, f"{self.name}.forward input")
        return self._forward(x)

    def backward(self, y: tuple) -> tuple:
        y = tuple(y)
        check_point(self.codomain, y, f"{self.name}.backward input")
        return self._backward(y)

    def lazy_forward(self, x: tuple) -> tuple:
        return self._lazy_forward(tuple(x))

    def lazy_backward(self, y: tuple) -> tuple:
        return self._lazy_backward(tuple(y))

    def __str__(self) -> str:
        return f"{self.name}: {shape_str(self.domain)} -> {shape_str(self.codomain)}"


def identity(shape: Shape) -> Homeo:
    same = lambda x: x  # noqa: E731
    return Homeo(f"id{shape_str(shape)}", tuple(shape), tuple(shape), same, same, same, same)


def invert(h: Homeo) -> Homeo:
    return Homeo(f"inv({h.name})", h.codomain, h.domain,
                 h._backward, h._forward, h._lazy_backward, h._lazy_forward)


def compose(first: Homeo, *rest: Homeo) -> Homeo:
    """Apply ``first``, then each of ``rest`` in order."""
    hs = (first,) + rest
    for a, b in zip(hs, hs[1:]):
        if a.codomain != b.domain:
            raise ShapeError(f"cannot compose {a.name} with codomain {shape_str(a.codomain)} "
                             f"into {b.name} with domain {shape_str(b.domain)}")

    def chain(attr: str, order: Sequence[Homeo]) -> Fn:
        fns = [getattr(h, attr) for h in order]

        def run(x: tuple) -> tuple:
            for fn in fns:
                x = fn(x)
            return x
        return run

    rev = hs[::-1]
    return Homeo(" ; ".join(h.name for h in hs), first.domain, hs[-1].codomain,
                 chain("_forward", hs), chain("_backward", rev),
                 chain("_lazy_forward", hs), chain("_lazy_backward", rev))


def parallel(*hs: Homeo) -> Homeo:
    cuts_dom, cuts_cod = [0], [0]
    for h in hs:
        cuts_dom.append(cuts_dom[-1] + len(h.domain))
        cuts_cod.append(cuts_cod[-1] + len(h.codomain))

    def split_apply(attr: str, cuts: list[int]) -> Fn:
        def run(x: tuple) -> tuple:
            out: tuple = ()
            for h, lo, hi in zip(hs, cuts, cuts[1:]):
                out += getattr(h, attr)(x[lo:hi])
            return out
        return run

    return Homeo(
        "(" + " x ".join(h.name for h in hs) + ")",
        sum((h.domain for h in hs), ()), sum((h.codomain for h in hs), ()),
        split_apply("_forward", cuts_dom), split_apply("_backward", cuts_cod),
        split_apply("_lazy_forward", cuts_dom), split_apply("_lazy_backward", cuts_cod),
    )


def reorder(shape: Shape, perm: Sequence[int]) -> Homeo:
    """Coordinate permutation: output coordinate ``i`` is input coordinate ``perm[i]`` (0-based)."""
    perm = tuple(perm)
    if sorted(perm) != list(range(len(shape))):
        raise DomainError(f"{perm} is not a permutation of {len(shape)} coordinates")
    inv = tuple(perm.index(i) for i in range(len(perm)))
    fwd = lambda x: tuple(x[j] for j in perm)  # noqa: E731
    bwd = lambda y: tuple(y[j] for j in inv)  # noqa: E731
    return Homeo(f"reorder{perm}", tuple(shape), tuple(shape[j] for j in perm), fwd, bwd, fwd, bwd)


def _primitive(name, domain, codomain, fwd, bwd, lazy_fwd, lazy_bwd) -> Homeo:
    return Homeo(name, tuple(domain), tuple(codomain), fwd, bwd, lazy_fwd, lazy_bwd)


# ---------------------------------------------------------------- lazy pointwise helpers

def _lazy(fn: Callable[[int], int]) -> OraclePoint:
    return OraclePoint(fn, memo=True)


def lazy_union(a: Point, b: Point) -> OraclePoint:
    return _lazy(lambda i: a.at(i) | b.at(i))


def lazy_and(a: Point, b: Point) -> OraclePoint:
    return _lazy(lambda i: a.at(i) & b.at(i))


def lazy_diff(a: Point, b: Point) -> OraclePoint:
    return _lazy(lambda i: a.at(i) & (1 - b.at(i)))


def lazy_mask(a: Point, ground: GroundSet, inside: bool = True) -> OraclePoint:
    want = 1 if inside else 0
    return _lazy(lambda i: a.at(i) if ground.carrier.at(i) == want else 0)


# ---------------------------------------------------------------- named constructions


def _co_infinite_ground(omega: GroundSet) -> GroundSet:
    if not omega.is_co_infinite():
        raise DomainError(f"{omega} is cofinite; its complement cannot serve as a ground set")
    return omega.complement()


def restriction_homeo(omega: GroundSet, omega_star: GroundSet) -> Homeo:
    """``2^w -> 2^omega``, ``X -> pi[X]`` with pi fixing ``omega_star``."""
    src, dst = check_pi_witnesses(omega, omega_star)
    star = omega_star.carrier

    def lazy_fwd(x):
        (p,) = x
        return (_lazy(lambda y: p.at(y) if star.at(y) else
                      (p.at(src.select(dst.rank(y))) if y in omega else 0)),)

    def lazy_bwd(y):
        (q,) = y
        return (_lazy(lambda n: q.at(n) if star.at(n) else q.at(dst.select(src.rank(n)))),)

    return _primitive(
        f"restriction[{omega},{omega_star}]", (Cantor(OMEGA_GROUND),), (Cantor(omega),),
        lambda x: (pi_map(omega, omega_star, x[0]),),
        lambda y: (pi_map_inverse(omega, omega_star, y[0]),),
        lazy_fwd, lazy_bwd,
    )


def product_homeo(omega: GroundSet) -> Homeo:
    """``2^omega x 2^(w \\ omega) -> 2^w`` by union."""
    rest = _co_infinite_ground(omega)
    om = omega.carrier
    return _primitive(
        f"product[{omega}]", (Cantor(omega), Cantor(rest)), (Cantor(OMEGA_GROUND),),
        lambda x: (x[0] | x[1],),
        lambda y: (y[0] & om, y[0] - om),
        lambda x: (lazy_union(x[0], x[1]),),
        lambda y: (lazy_mask(y[0], omega), lazy_mask(y[0], omega, inside=False)),
    )


def main_pair_homeo(omega: GroundSet) -> Homeo:
    """``2^omega x 2^omega x D(w \\ omega) -> 2^omega x D(w)``.

    Forward sends ``(F, G, (X, Y))`` to ``H = F & G`` together with the pair
    obtained by collapsing ``H`` out of the naturals and pushing ``(F - G) | X``
    and ``(G - F) | Y`` through the collapse.  The complement of ``H`` contains
    the (infinite) complement of ``omega``, so the collapse is always defined.
    """
    rest = _co_infinite_ground(omega)
    om = omega.carrier

    def fwd(x):
        f, g, (xx, yy) = x
        h = f & g
        return (h, DisjointPair(phi_image(h, (f - g) | xx), phi_image(h, (g - f) | yy)))

    def bwd(y):
        h, (z, w) = y
        pz, pw = phi_preimage(h, z), phi_preimage(h, w)
        return (h | (pz & om), h | (pw & om), DisjointPair(pz - om, pw - om))

    def lazy_fwd(x):
        f, g, (xx, yy) = x
        h = lazy_and(f, g)
        return (h, DisjointPair(lazy_phi_image(h, lazy_union(lazy_diff(f, g), xx)),
                                lazy_phi_image(h, lazy_union(lazy_diff(g, f), yy))))

    def lazy_bwd(y):
        h, (z, w) = y
        pz, pw = lazy_phi_preimage(h, z), lazy_phi_preimage(h, w)
        return (lazy_union(h, lazy_mask(pz, omega)), lazy_union(h, lazy_mask(pw, omega)),
                DisjointPair(lazy_mask(pz, omega, inside=False), lazy_mask(pw, omega, inside=False)))

    return _primitive(
        f"main[{omega}]", (Cantor(omega), Cantor(omega), Disjoint(rest)),
        (Cantor(omega), Disjoint(OMEGA_GROUND)),
        fwd, bwd, lazy_fwd, lazy_bwd,
    )


def code_homeo() -> Homeo:
    """Binary streams to ternary streams (decode) through the code {0, 10, 11}."""
    return _primitive(
        "code", (Cantor(OMEGA_GROUND),), (Ternary(),),
        lambda x: (prefix_code.decode(x[0]),),
        lambda y: (prefix_code.encode(y[0]),),
        lambda x: (prefix_code.lazy_decode(x[0]),),
        lambda y: (prefix_code.lazy_encode(y[0]),),
    )


def disjoint_encode_homeo(omega: GroundSet) -> Homeo:
    """``D(omega) -> 2^omega``: read the pair as a ternary stream indexed by the
    members of ``omega``, encode it, and write the bits back onto ``omega``."""

    def fwd(x):
        ((a, b),) = x
        t = prefix_code.pair_to_ternary(transport(omega, OMEGA_GROUND, a, check=False),
                                        transport(omega, OMEGA_GROUND, b, check=False))
        return (transport(OMEGA_GROUND, omega, prefix_code.encode(t), check=False),)

    def bwd(y):
        (bits,) = y
        t = prefix_code.decode(transport(omega, OMEGA_GROUND, bits, check=False))
        a, b = prefix_code.ternary_to_pair(t)
        return (DisjointPair(transport(OMEGA_GROUND, omega, a, check=False),
                             transport(OMEGA_GROUND, omega, b, check=False)),)

    def lazy_fwd(x):
        ((a, b),) = x
        ta, tb = lazy_transport(omega, OMEGA_GROUND, a), lazy_transport(omega, OMEGA_GROUND, b)
        t = _lazy(lambda k: 1 if ta.at(k) else (2 if tb.at(k) else 0))
        return (lazy_transport(OMEGA_GROUND, omega, prefix_code.lazy_encode(t)),)

    def lazy_bwd(y):
        (bits,) = y
        t = prefix_code.lazy_decode(lazy_transport(omega, OMEGA_GROUND, bits))
        a = _lazy(lambda k: int(t.at(k) == 1))
        b = _lazy(lambda k: int(t.at(k) == 2))
        return (DisjointPair(lazy_transport(OMEGA_GROUND, omega, a),
                             lazy_transport(OMEGA_GROUND, omega, b)),)

    return _primitive(f"disjoint-encode[{omega}]", (Disjoint(omega),), (Cantor(omega),),
                      fwd, bwd, lazy_fwd, lazy_bwd)


def reindex_homeo(a: GroundSet, b: GroundSet) -> Homeo:
    return _primitive(
        f"reindex[{a}->{b}]", (Cantor(a),), (Cantor(b),),
        lambda x: (transport(a, b, x[0], check=False),),
        lambda y: (transport(b, a, y[0], check=False),),
        lambda x: (lazy_transport(a, b, x[0]),),
        lambda y: (lazy_transport(b, a, y[0]),),
    )


def interleave_homeo(a: GroundSet, b: GroundSet) -> Homeo:
    """``2^a x 2^b -> 2^(a | b)`` for disjoint ``a`` and ``b``."""
    if not a.carrier.isdisjoint(b.carrier):
        raise DomainError(f"interleave needs disjoint ground sets, got {a} and {b}")
    union = GroundSet(a.carrier | b.carrier)
    return _primitive(
        f"interleave[{a},{b}]", (Cantor(a), Cantor(b)), (Cantor(union),),
        lambda x: (x[0] | x[1],),
        lambda y: (y[0] & a.carrier, y[0] & b.carrier),
        lambda x: (lazy_union(x[0], x[1]),),
        lambda y: (lazy_mask(y[0], a), lazy_mask(y[0], b)),
    )


# ---------------------------------------------------------------- filters


def validate_witnesses(f: FilterSpec) -> tuple[GroundSet, GroundSet]:
    if f.is_principal:
        raise UnsupportedCaseError(
            f"{f.name} is principal; there is no executable square map for it, see principal_classify")
    omega, star = f.omega_witness, f.omega_star_witness
    if omega is None or star is None:
        raise WitnessError(f"{f.name} lacks the witness sets the construction needs")
    if not f.decide(omega.carrier):
        raise WitnessError(f"witness {omega} is not a member of {f.name}")
    if omega.carrier.is_cofinite():
        raise WitnessError(f"witness {omega} is cofinite")
    if not f.decide(star.carrier):
        raise WitnessError(f"witness {star} is not a member of {f.name}")
    if not star.carrier.issubset(omega.carrier):
        raise WitnessError(f"witness {star} is not contained in {omega}")
    if (omega.carrier - star.carrier).is_finite():
        raise WitnessError(f"{omega} minus {star} is finite")
    return omega, star


def square_homeo(f: FilterSpec) -> Homeo:
    """``2^w x 2^w -> 2^w`` carrying ``F x F`` exactly onto ``F``.

    The chain: split each factor along ``omega``; pair the two outside parts into
    one disjoint pair over the complement ``C`` (reindex the parts onto the evens
    and odds, merge, move onto ``C``, decode); apply :func:`main_pair_homeo`;
    encode the resulting pair into a single set over ``C``; and take the union
    with the inside part.
    """
    omega, _ = validate_witnesses(f)
    rest = omega.complement()
    w, evens, odds = OMEGA_GROUND, GroundSet(EVENS), GroundSet(ODDS)

    split = invert(product_homeo(omega))
    merge_outside = compose(
        parallel(reindex_homeo(rest, evens), reindex_homeo(rest, odds)),
        interleave_homeo(evens, odds),
        reindex_homeo(w, rest),
        invert(disjoint_encode_homeo(rest)),
    )
    inside2 = (Cantor(omega), Cantor(omega))
    h = compose(
        parallel(split, split),
        reorder((Cantor(omega), Cantor(rest), Cantor(omega), Cantor(rest)), (0, 2, 1, 3)),
        parallel(identity(inside2), merge_outside),
        main_pair_homeo(omega),
        parallel(identity((Cantor(omega),)),
                 compose(disjoint_encode_homeo(w), reindex_homeo(w, rest))),
        product_homeo(omega),
    )
    return Homeo(f"square[{f.name}]", h.domain, h.codomain,
                 h._forward, h._backward, h._lazy_forward, h._lazy_backward)


def _collapse(m: int, square: Homeo) -> Homeo:
    one = identity((Cantor(OMEGA_GROUND),))
    h = one
    for _ in range(m - 1):
        h = compose(parallel(h, one), square)
    return h


def power_homeo(f: FilterSpec, m: int, n: int) -> Homeo:
    """``(2^w)^m -> (2^w)^n`` carrying ``F^m`` onto ``F^n``: fold the first
    coordinates pairwise with the square map, then unfold with its inverse."""
    if m < 1 or n < 1:
        raise DomainError(f"powers must be at least 1, got m={m}, n={n}")
    sq = square_homeo(f)
    h = compose(_collapse(m, sq), invert(_collapse(n, sq)))
    return Homeo(f"power[{f.name},{m},{n}]", h.domain, h.codomain,
                 h._forward, h._backward, h._lazy_forward, h._lazy_backward)


class PrincipalClass(str, enum.Enum):
    Q = "Q"
    Q_X_CANTOR = "QxCantor"


def principal_classify(f: FilterSpec) -> PrincipalClass:
    if not f.is_principal or f.generator is None:
        raise DomainError(f"{f.name} is not a principal filter")
    return PrincipalClass.Q if f.generator.is_cofinite() else PrincipalClass.Q_X_CANTOR


def principal_decompose(f: FilterSpec) -> Homeo:
    """``2^w -> 2^A x 2^(w \\ A)`` for the generator ``A``; carries the filter onto
    ``Cof(A) x 2^(w \\ A)``."""
    if principal_classify(f) is PrincipalClass.Q:
        raise UnsupportedCaseError(f"{f.name} has a cofinite generator; there is no Cantor factor")
    return invert(product_homeo(GroundSet(f.generator)))


@dataclass(frozen=True)
class CantorTag:
    core: EvPeriodicSet


def prefilter_normalize(g: PrefilterSpec, spot_checks: int = 20, seed: int = 0) -> CantorTag | FilterSpec:
    """Either the prefilter is the cone above its core (a copy of the Cantor set),
    or it restricts to a filter on the complement of the core, which is returned
    re-indexed onto the naturals."""
    if not prefilter_core_agrees(g):
        raise DomainError(f"declared core {g.core.literal()} of {g.name} disagrees with its members")
    core = g.core
    if core.is_cofinite():
        raise DomainError(f"{g.name} is finite")
    rng = random.Random(seed)
    for _ in range(spot_checks):
        a, b = core | random_set(rng), core | random_set(rng)
        if g.decide(a) and g.decide(b) and not g.decide(a & b):
            raise DomainError(f"{g.name} is not closed under intersection at {a}, {b}")
        if g.decide(a) and not g.decide(a | b):
            raise DomainError(f"{g.name} is not closed under supersets at {a}")
    if g.decide(core):
        return CantorTag(core)
    if core.is_empty():
        if g.source is not None:
            return g.source
        return FilterSpec(name=g.name, decide=g.decide, is_principal=None)
    omega = GroundSet(~core)
    return FilterSpec(
        name=f"{g.name}|restricted",
        decide=lambda x: g.decide(transport(OMEGA_GROUND, omega, x) | core),
        is_principal=None,
    )


# ---------------------------------------------------------------- registry

HOMEO_NAMES = ("restriction", "product", "main", "code", "disjoint-encode",
               "reindex", "interleave", "square", "power")


def build_homeo(name: str, *, omega: GroundSet | None = None, omega_star: GroundSet | None = None,
                omega2: GroundSet | None = None, filter: FilterSpec | None = None,
                m: int = 2, n: int = 1) -> Homeo:
    """Look up a named construction and instantiate it with its parameters."""

    def need(value, flag):
        if value is None:
            raise DomainError(f"homeomorphism {name!r} needs {flag}")
        return value

    if name == "restriction":
        return restriction_homeo(need(omega, "--omega"), need(omega_star, "--omega-star"))
    if name == "product":
        return product_homeo(need(omega, "--omega"))
    if name == "main":
        return main_pair_homeo(need(omega, "--omega"))
    if name == "code":
        return code_homeo()
    if name == "disjoint-encode":
        return disjoint_encode_homeo(need(omega, "--omega"))
    if name == "reindex":
        return reindex_homeo(need(omega, "--omega"), need(omega2, "--omega2"))
    if name == "interleave":
        return interleave_homeo(need(omega, "--omega"), need(omega2, "--omega2"))
    if name == "square":
        return square_homeo(need(filter, "--filter"))
    if name == "power":
        return power_homeo(need(filter, "--filter"), m, n)
    raise DomainError(f"unknown homeomorphism {name!r}; known: {', '.join(HOMEO_NAMES)}")


# ---------------------------------------------------------------- point literals


def flatten_point(point: tuple) -> list:
    out = []
    for value in point:
        out.extend(value if isinstance(value, DisjointPair) else (value,))
    return out


def format_point(point: tuple, sep: str = " ; ") -> str:
    return sep.join(v.literal() for v in flatten_point(point))


def parse_point(shape: Shape, text: str) -> tuple:
    """Parse ``;``- or newline-separated literals into a point of ``shape``;
    a disjoint-pair coordinate takes two consecutive literals."""
    fields = [f for f in text.replace("\n", ";").split(";") if f.strip()]
    need = sum(2 if isinstance(c, Disjoint) else 1 for c in shape)
    if len(fields) != need:
        raise DomainError(f"shape {shape_str(shape)} needs {need} literals, got {len(fields)}")
    it = iter(fields)
    out = []
    for coord in shape:
        if isinstance(coord, Disjoint):
            out.append(DisjointPair(EvPeriodicSet.parse(next(it)), EvPeriodicSet.parse(next(it))))
        elif isinstance(coord, Ternary):
            out.append(TernaryStream.parse(next(it)))
        else:
            out.append(EvPeriodicSet.parse(next(it)))
    return tuple(out)
