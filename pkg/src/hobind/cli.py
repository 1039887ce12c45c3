"""Command-line surface.

Subcommands: encode, decode, show, check-abstr, sweep. Exit codes:
0 success, 1 law violation, 2 usage or parse error, 3 domain error
(term outside the expected image).
"""

from __future__ import annotations

import argparse
import sys

from . import laws, named_lambda, openterm, terms
from .binder import (
    AppCase,
    ConstCon,
    ConstErr,
    ConstVar,
    Exotic,
    Identity,
    LamCase,
    abstr,
    classify,
)
from .expr import ExoticUse, NotProper, from_db, pretty as pretty_expr, to_db
from .named_lambda import NotAnAbstraction, NotInImage, OlSig
from .openterm import reflect1
from .terms import ParseError

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _sig(text: str) -> OlSig:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected C_LAM,C_APP")
    try:
        return OlSig(c_lam=parts[0].strip(), c_app=parts[1].strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hobind",
        description="Encode, decode and law-check terms of the binding layer.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("-e", "--expr", help="inline input text")
        p.add_argument("file", nargs="?", help="file containing the input")

    p_encode = sub.add_parser("encode", help="object-language text to a term")
    add_input(p_encode)
    p_encode.add_argument(
        "--out", choices=("named", "hoas", "db"), default="hoas", dest="out_form"
    )
    p_encode.add_argument("--sig", type=_sig, default=OlSig(), metavar="C_LAM,C_APP")

    p_decode = sub.add_parser("decode", help="encoded term back to object-language text")
    add_input(p_decode)
    p_decode.add_argument("--sig", type=_sig, default=OlSig(), metavar="C_LAM,C_APP")

    p_show = sub.add_parser("show", help="display a term in another form")
    add_input(p_show)
    p_show.add_argument(
        "--out", choices=("named", "hoas", "db"), default="hoas", dest="out_form"
    )
    p_show.add_argument("--sig", type=_sig, default=OlSig(), metavar="C_LAM,C_APP")

    p_check = sub.add_parser(
        "check-abstr", help="classify a one-hole open term's closure"
    )
    add_input(p_check)

    p_sweep = sub.add_parser("sweep", help="run the law suites")
    p_sweep.add_argument("--depth", type=_positive, default=3)
    p_sweep.add_argument("--seed", type=_nonnegative, default=0)
    p_sweep.add_argument("--count", type=_nonnegative, default=500)
    return parser


def _input_text(args: argparse.Namespace, parser: argparse.ArgumentParser) -> str:
    if args.expr is not None and args.file is not None:
        parser.error("give either -e/--expr or a file, not both")
    if args.expr is not None:
        return args.expr
    if args.file is not None:
        try:
            with open(args.file, encoding="utf-8") as handle:
                return handle.read()
        except OSError as exc:
            parser.error(f"cannot read {args.file}: {exc}")
    parser.error("missing input: use -e/--expr or a file argument")
    raise AssertionError  # parser.error never returns


_CLASS_LABELS = {
    Identity: "identity",
    ConstCon: "const-con",
    ConstVar: "const-var",
    AppCase: "app",
    LamCase: "lam",
    ConstErr: "const-err",
    Exotic: "exotic",
}


def cmd_encode(text: str, out_form: str, sig: OlSig) -> int:
    named = named_lambda.parse(text)
    if out_form == "named":
        print(named_lambda.pretty(named))
        return EXIT_OK
    e = named_lambda.encode(named, sig)
    if out_form == "hoas":
        print(pretty_expr(e))
    else:
        print(terms.to_text(to_db(e)))
    return EXIT_OK


def cmd_decode(text: str, sig: OlSig) -> int:
    e = from_db(terms.from_text(text))
    print(named_lambda.pretty(named_lambda.decode(e, sig)))
    return EXIT_OK


def cmd_show(text: str, out_form: str, sig: OlSig) -> int:
    e = from_db(terms.from_text(text))
    if out_form == "named":
        print(named_lambda.pretty(named_lambda.decode(e, sig)))
    elif out_form == "hoas":
        print(pretty_expr(e))
    else:
        print(terms.to_text(to_db(e)))
    return EXIT_OK


def cmd_check_abstr(text: str) -> int:
    ot = openterm.from_text(text, arity=1)
    fn = reflect1(ot)
    label = _CLASS_LABELS[type(classify(fn))]
    print(f"{label} / abstr: {'true' if abstr(fn) else 'false'}")
    return EXIT_OK


def cmd_sweep(depth: int, seed: int, count: int) -> int:
    reports = laws.run_all(depth, seed, count)
    failed = False
    for report in reports:
        state = "ok" if report.ok else f"{len(report.failures)} FAILED"
        print(f"law {report.name}: {report.checked} checks, {state}")
        failed = failed or not report.ok
    if failed:
        first = next(r.failures[0] for r in reports if r.failures)
        print(f"first counterexample: {first}")
        return EXIT_VIOLATION
    print("all laws hold")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "encode":
            return cmd_encode(_input_text(args, parser), args.out_form, args.sig)
        if args.command == "decode":
            return cmd_decode(_input_text(args, parser), args.sig)
        if args.command == "show":
            return cmd_show(_input_text(args, parser), args.out_form, args.sig)
        if args.command == "check-abstr":
            return cmd_check_abstr(_input_text(args, parser))
        if args.command == "sweep":
            return cmd_sweep(args.depth, args.seed, args.count)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotInImage, NotProper, NotAnAbstraction, ExoticUse) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    raise AssertionError(f"unhandled command {args.command!r}")


def run() -> None:
    sys.exit(main())
