"""Batch front end: ring descriptors in, JSON or DOT reports out.

Exit codes: 0 = all verdicts computed (a false verdict is still 0),
2 = usage or parse error, 3 = a capacity cap was exceeded, 4 = the snf
command was given a ring that is not an elementary divisor ring.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import build_ring
from .errors import CapacityExceeded, NotEDR
from .fpinjective import (
    baer_self_injective,
    double_annihilator_check,
    fractionally_if_check,
    strongly_discrete_check,
)
from .ideals import all_ideals
from .properties import (
    almost_clean_check,
    arithmetical_check,
    bezout_check,
    clean_check,
    edr_check,
    gh_triple_check,
    hermite_check,
    pp_check,
)
from .serialize import (
    descriptor_from_obj,
    dot_spec,
    dumps,
    element_to_literal,
    matrix_from_obj,
    matrix_to_obj,
    report_to_obj,
    spec_report_obj,
)
from .snf import diagonal_of, fitting_check, snf
from .suites import corpus_suite, family_suite

PROPERTY_CHECKS = {
    "bezout": bezout_check,
    "hermite": hermite_check,
    "edr": edr_check,
    "arithmetical": arithmetical_check,
    "clean": clean_check,
    "almost_clean": almost_clean_check,
    "pp": pp_check,
    "gh_triple": gh_triple_check,
    "baer": baer_self_injective,
    "double_annihilator": double_annihilator_check,
    "fractionally_if": fractionally_if_check,
    "strongly_discrete": strongly_discrete_check,
}


def _fail(message: str, code: int):
    print(f"finring: {message}", file=sys.stderr)
    raise SystemExit(code)


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if value <= 0:
        raise argparse.ArgumentTypeError("caps must be positive")
    return value


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        _fail(f"cannot read {path}: {exc}", 2)
    except json.JSONDecodeError as exc:
        _fail(f"{path} is not valid JSON: {exc}", 2)


def _load_ring(path: str, args):
    obj = _load_json(path)
    if not isinstance(obj, dict):
        _fail(f"{path}: a ring descriptor must be a JSON object", 2)
    if obj.get("kind") in ("seq", "vasconcelos"):
        _fail(
            f"{path}: sequence-family descriptors have no finite element "
            "table; use the library API",
            2,
        )
    try:
        desc = descriptor_from_obj(obj)
    except (KeyError, TypeError, ValueError) as exc:
        _fail(f"{path}: bad ring descriptor: {exc}", 2)
    try:
        if args.cap_elements is not None:
            ring = build_ring(desc, cap=args.cap_elements)
        else:
            ring = build_ring(desc)
        if args.cap_ideals is not None:
            all_ideals(ring, args.cap_ideals)
    except CapacityExceeded as exc:
        _fail(f"capacity exceeded: {exc}", 3)
    except ValueError as exc:
        _fail(f"{path}: bad ring descriptor: {exc}", 2)
    return ring


def _report_line(obj) -> str:
    line = f"{obj['property']}: {'true' if obj['holds'] else 'false'}"
    if obj["witness"] is not None:
        line += f" witness={dumps(obj['witness']).strip()}"
    if obj["counterexample"] is not None:
        line += f" counterexample={dumps(obj['counterexample']).strip()}"
    return line


def cmd_check(args) -> int:
    names = [p.strip() for p in args.properties.split(",") if p.strip()]
    if not names:
        _fail("no properties requested", 2)
    unknown = [n for n in names if n not in PROPERTY_CHECKS]
    if unknown:
        _fail(
            "unknown properties: "
            + ", ".join(sorted(unknown))
            + " (known: "
            + ", ".join(PROPERTY_CHECKS)
            + ")",
            2,
        )
    ring = _load_ring(args.ring, args)
    objs = []
    try:
        for name in names:
            objs.append(report_to_obj(ring, PROPERTY_CHECKS[name](ring)))
    except CapacityExceeded as exc:
        _fail(f"capacity exceeded: {exc}", 3)
    if args.format == "text":
        for obj in objs:
            print(_report_line(obj))
    else:
        sys.stdout.write(dumps(objs))
    return 0


def cmd_spec(args) -> int:
    ring = _load_ring(args.ring, args)
    try:
        obj = spec_report_obj(ring)
        dot = dot_spec(ring) if (args.dot or args.format == "dot") else None
    except CapacityExceeded as exc:
        _fail(f"capacity exceeded: {exc}", 3)
    if args.dot:
        try:
            with open(args.dot, "w", encoding="utf-8") as fh:
                fh.write(dot)
        except OSError as exc:
            _fail(f"cannot write {args.dot}: {exc}", 2)
    if args.format == "dot":
        sys.stdout.write(dot)
    elif args.format == "text":
        print(f"primes: {len(obj['spec'])}")
        print(f"blocks: {len(obj['pspec'])}")
        print(f"boolean ring size: {obj['boolean_ring_size']}")
        for i, block in enumerate(obj["pspec"]):
            print(
                f"block {i}: primes={dumps(block['primes']).strip()}"
                f" pure_ideal={dumps(block['pure_ideal']).strip()}"
            )
    else:
        sys.stdout.write(dumps(obj))
    return 0


def cmd_snf(args) -> int:
    ring = _load_ring(args.ring, args)
    rows = _load_json(args.matrix)
    try:
        mat = matrix_from_obj(ring, rows)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        _fail(f"{args.matrix}: bad matrix: {exc}", 2)
    try:
        p, d, q = snf(mat)
    except NotEDR as exc:
        _fail(f"not an elementary divisor ring: {exc}", 4)
    paq = p @ mat @ q
    obj = {
        "diagonal": [element_to_literal(ring, x) for x in diagonal_of(d)],
        "P": matrix_to_obj(p),
        "D": matrix_to_obj(d),
        "Q": matrix_to_obj(q),
        "PAQ": matrix_to_obj(paq),
        "PAQ_equals_D": paq == d,
        "fitting_oracle": fitting_check(mat, d),
    }
    if args.format == "text":
        print("diagonal: " + dumps(obj["diagonal"]).strip())
        for name in ("P", "D", "Q", "PAQ"):
            print(f"{name} = {dumps(obj[name]).strip()}")
        print(f"P A Q = D: {'true' if obj['PAQ_equals_D'] else 'false'}")
        print(
            "fitting ideals match: "
            + ("true" if obj["fitting_oracle"] else "false")
        )
    else:
        sys.stdout.write(dumps(obj))
    return 0


def cmd_suite(args) -> int:
    run = corpus_suite if args.name == "corpus" else family_suite
    results = run(seed=args.seed)
    for res in results:
        print(res.line())
    failed = sum(1 for r in results if not r.passed)
    print(f"{len(results) - failed}/{len(results)} sweeps passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finring",
        description="Finite commutative ring property checks, spectra, "
        "Smith normal forms, and regression suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_caps(p):
        p.add_argument(
            "--cap-elements",
            type=_positive,
            default=None,
            metavar="N",
            help="refuse rings with more than N elements",
        )
        p.add_argument(
            "--cap-ideals",
            type=_positive,
            default=None,
            metavar="N",
            help="refuse rings with more than N ideals",
        )

    check = sub.add_parser("check", help="run property checks on one ring")
    check.add_argument("ring", help="ring descriptor JSON file")
    check.add_argument(
        "--properties",
        required=True,
        metavar="LIST",
        help="comma-separated; known: " + ", ".join(PROPERTY_CHECKS),
    )
    check.add_argument("--format", choices=("json", "text"), default="json")
    add_caps(check)

    spec_p = sub.add_parser("spec", help="prime spectrum and block report")
    spec_p.add_argument("ring", help="ring descriptor JSON file")
    spec_p.add_argument("--dot", metavar="PATH", help="also write DOT here")
    spec_p.add_argument(
        "--format", choices=("json", "text", "dot"), default="json"
    )
    add_caps(spec_p)

    snf_p = sub.add_parser("snf", help="Smith normal form with transcript")
    snf_p.add_argument("ring", help="ring descriptor JSON file")
    snf_p.add_argument("matrix", help="matrix JSON file (rows of literals)")
    snf_p.add_argument("--format", choices=("json", "text"), default="json")
    add_caps(snf_p)

    suite_p = sub.add_parser("suite", help="run a regression suite")
    suite_p.add_argument("name", choices=("corpus", "families"))
    suite_p.add_argument("--seed", type=int, default=0)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "check": cmd_check,
        "spec": cmd_spec,
        "snf": cmd_snf,
        "suite": cmd_suite,
    }[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
