"""
Command-line front end.

    pargroupoid emit-fixture ex1 > ex1.json
    pargroupoid validate ex1.json
    pargroupoid dims ex1.json
    pargroupoid expand ex1.json
    pargroupoid verify ex1.json --field Fp:3
    pargroupoid rep-check rep.json
    pargroupoid iso-table ex1.json
    pargroupoid fuzz ex1.json --seed 7

Exit status: 0 success, 1 a check failed, 2 malformed input, 3 cap exceeded.
"""

import argparse
import json
import os
import random
import sys

from .br import DEFAULT_CAP, CapExceeded, br_count, build_br_groupoid, expansion_to_json
from .fields import FieldError, parse_field
from .fixtures import FIXTURES, fixture
from .groupoid import GroupoidError, groupoid_to_json, load_json, mutate_groupoid, parse_groupoid, validate
from .kpar import iso_table, verify_iso
from .partial_rep import RepresentationError, check_partial_rep, rep_from_json

EXIT_OK, EXIT_FAILED, EXIT_MALFORMED, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _emit(obj, args):
    text = json.dumps(obj, indent=1) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _groupoid(args):
    return parse_groupoid(_read(args.input))


def cmd_validate(args):
    G = parse_groupoid(_read(args.input), check=False)
    report = validate(G)
    _emit(report.to_json(), args)
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_expand(args):
    br = build_br_groupoid(_groupoid(args), args.cap)
    _emit(expansion_to_json(br), args)
    return EXIT_OK


def cmd_dims(args):
    G = _groupoid(args)
    predicted = br_count(G)
    enumerated = len(build_br_groupoid(G, args.cap))
    _emit({
        "arrows": G.n_arrows,
        "objects": G.n_objects,
        "br_count_closed_form": predicted,
        "br_count_enumerated": enumerated,
    }, args)
    return EXIT_OK if predicted == enumerated else EXIT_FAILED


def cmd_verify(args):
    cert = verify_iso(_groupoid(args), args.field, args.cap, args.max_len)
    _emit(cert.to_json(), args)
    return EXIT_OK if cert.passed else EXIT_FAILED


def cmd_rep_check(args):
    data = load_json(_read(args.input))
    rep = rep_from_json(data, base_dir=os.path.dirname(os.path.abspath(args.input)))
    report = check_partial_rep(rep)
    _emit(report.to_json(), args)
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_iso_table(args):
    _emit(iso_table(_groupoid(args), args.field, args.cap, args.max_len), args)
    return EXIT_OK


def cmd_emit_fixture(args):
    try:
        G = fixture(args.name)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    _emit(groupoid_to_json(G), args)
    return EXIT_OK


def cmd_fuzz(args):
    """Seeded single-entry mutations of the comp/inv tables; all must be rejected."""
    G = _groupoid(args)
    rng = random.Random(args.seed)
    accepted = []
    for _ in range(args.count):
        M, what = mutate_groupoid(G, rng)
        if validate(M).ok:
            accepted.append(what)
    _emit({"mutations": args.count, "seed": args.seed, "falsely_accepted": accepted}, args)
    return EXIT_OK if not accepted else EXIT_FAILED


def _field(text):
    try:
        return parse_field(text)
    except FieldError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _positive(text):
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field, default=parse_field("Q"), help="'Q' (default) or 'Fp:<p>'")
    common.add_argument("--cap", type=_positive, default=DEFAULT_CAP, help="maximum expansion size")
    common.add_argument("--max-len", type=_positive, default=None, help="word length bound for normal forms")
    common.add_argument("--output", "-o", default=None, help="write here instead of standard output")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="pargroupoid", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="command", required=True)
    for name, func, helptext in (
        ("validate", cmd_validate, "check the groupoid axioms"),
        ("expand", cmd_expand, "print the Birget-Rhodes expansion"),
        ("dims", cmd_dims, "sizes of G and of its expansion"),
        ("verify", cmd_verify, "certify K_par(G) = K G^BR"),
        ("rep-check", cmd_rep_check, "check a partial representation file"),
        ("iso-table", cmd_iso_table, "structure constants of K G^BR"),
        ("fuzz", cmd_fuzz, "mutation-test the validator"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("input")
        p.set_defaults(func=func)
        if name == "fuzz":
            p.add_argument("--count", type=_positive, default=20)
    p = sub.add_parser("emit-fixture", parents=[common], help="print a named example groupoid")
    p.add_argument("name", help=", ".join(FIXTURES))
    p.set_defaults(func=cmd_emit_fixture)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_MALFORMED if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InputError, GroupoidError, RepresentationError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
