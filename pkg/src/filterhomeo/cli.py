"""Command-line front end.

Exit codes: 0 success / member / suite passed, 1 non-member / suite failed,
2 usage, parse, shape or witness errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .cantor_core import EvPeriodicSet, GroundSet
from .errors import FilterHomeoError
from .filter_zoo import FilterSpec, lookup, semifilter_T
from .homeo import (HOMEO_NAMES, build_homeo, format_point, invert, parse_point,
                    principal_classify)
from . import verify

SUITES = ("roundtrip", "preservation", "agreement", "axioms", "dyadic-oracle", "phi", "semifilter")


def _filter(name: str | None) -> FilterSpec | None:
    if name is None:
        return None
    f = lookup(name)
    if not isinstance(f, FilterSpec):
        raise FilterHomeoError(f"{name} is a semifilter, a filter is required here")
    return f


def _homeo_from_args(args):
    ground = lambda text: GroundSet.parse(text) if text is not None else None  # noqa: E731
    return build_homeo(args.homeo, omega=ground(args.omega), omega_star=ground(args.omega_star),
                       omega2=ground(args.omega2), filter=_filter(args.filter), m=args.m, n=args.n)


def _add_homeo_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--omega", help="ground set literal, e.g. '|10'")
    p.add_argument("--omega-star", dest="omega_star", help="inner witness for 'restriction'")
    p.add_argument("--omega2", help="second ground set for 'reindex' and 'interleave'")
    p.add_argument("--filter", help="zoo filter for 'square' and 'power'")
    p.add_argument("--m", type=int, default=2, help="source power for 'power'")
    p.add_argument("--n", type=int, default=1, help="target power for 'power'")


def cmd_apply(args) -> int:
    h = _homeo_from_args(args)
    if args.inverse:
        h = invert(h)
    point = parse_point(h.domain, args.input)
    print(format_point(h.forward(point), sep="\n"))
    return 0


def cmd_mem(args) -> int:
    f = lookup(args.filter)
    inside = f.decide(EvPeriodicSet.parse(args.point))
    print("in" if inside else "out")
    return 0 if inside else 1


def cmd_classify(args) -> int:
    print(principal_classify(_filter(args.filter)).value)
    return 0


def cmd_verify(args) -> int:
    suite = args.suite
    if suite == "roundtrip":
        report = verify.roundtrip_suite(_homeo_from_args(args), args.trials, args.seed)
    elif suite == "preservation":
        report = verify.preservation_suite(_filter(args.filter or "dyadic"), args.trials, args.seed)
    elif suite == "agreement":
        report = verify.agreement_suite(_homeo_from_args(args), args.trials, args.depth, args.seed)
    elif suite == "axioms":
        report = verify.axiom_suite(lookup(args.filter or "dyadic"), args.trials, args.seed)
    elif suite == "dyadic-oracle":
        report = verify.dyadic_oracle_suite(args.trials, args.seed)
    elif suite == "phi":
        report = verify.phi_suite(pairs=args.trials, seed=args.seed)
    else:
        report = verify.semifilter_suite(args.seed, args.trials)
    text = report.to_tsv()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    print(report.summary(), file=sys.stderr)
    return report.exit_code


def cmd_modulus(args) -> int:
    h = _homeo_from_args(args)
    point = parse_point(h.domain, args.input) if args.input else None
    rows = verify.modulus_probe(h, args.k, seed=args.seed, point=point)
    sys.stdout.write(verify.modulus_table(rows))
    return 0


def cmd_zoo(args) -> int:
    for name in ("frechet", "dyadic"):
        f = lookup(name)
        if f.is_principal:
            print(f"{name}\tprincipal\tgenerator={f.generator}")
        else:
            print(f"{name}\tnon-principal\tomega={f.omega_witness}\tomega_star={f.omega_star_witness}")
    print("principal:<literal>\tprincipal\tgenerator=<literal>")
    t = semifilter_T()
    print(f"{t.name}\tsemifilter\tomega1={t.omega1}\tomega2={t.omega2}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="filterhomeo",
                                     description="Exact homeomorphisms between filters and their squares.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("apply", help="apply a named homeomorphism to a point")
    p.add_argument("homeo", choices=HOMEO_NAMES)
    _add_homeo_params(p)
    p.add_argument("--input", required=True, help="coordinate literals separated by ';' or newlines")
    p.add_argument("--inverse", action="store_true", help="apply the backward map")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("mem", help="decide membership of a point in a zoo filter")
    p.add_argument("filter")
    p.add_argument("point")
    p.set_defaults(func=cmd_mem)

    p = sub.add_parser("classify", help="classify a principal filter as Q or QxCantor")
    p.add_argument("filter")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="run a seeded verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--homeo", choices=HOMEO_NAMES, default="square")
    _add_homeo_params(p)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--depth", type=int, default=512)
    p.add_argument("--out", help="write the TSV report here instead of stdout")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("modulus", help="tabulate input positions read per output position")
    p.add_argument("homeo", choices=HOMEO_NAMES)
    _add_homeo_params(p)
    p.add_argument("-k", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--input", help="probe this point instead of a seeded random one")
    p.set_defaults(func=cmd_modulus)

    p = sub.add_parser("zoo", help="list the zoo")
    p.add_argument("action", choices=("list",))
    p.set_defaults(func=cmd_zoo)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FilterHomeoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
