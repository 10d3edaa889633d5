"""Command-line front end.

    treeq run --query 'match { date == 20181129 }' --input biometric.json
    treeq run --query @sleep.tq --input sleep.json --bind temps=temps.json --compact

Exit codes: 0 ok, 1 query syntax error, 2 data decode error,
3 evaluation error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from .codec import DecodeError, EncodeError, FormatOptions, decode, encode
from .dsl import ParseError, parse_pipeline
from .pipeline import EvaluationError

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_DECODE = 2
EXIT_EVAL = 3
EXIT_IO = 4


class _IOFailure(Exception):
    pass


def _read(source: str, stdin) -> str:
    if source == "-":
        return stdin.read()
    try:
        with open(source, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _IOFailure(f"cannot read {source}: {exc.strerror or exc}") from None


def _binding(text: str):
    name, sep, path = text.partition("=")
    if not sep or not name or not path:
        raise argparse.ArgumentTypeError(f"expected name=file, got {text!r}")
    return name, path


class _ArgumentParser(argparse.ArgumentParser):
    # argparse's own exit status 2 would read as a decode error
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="treeq", description="Query tree-shaped data in memory.")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a query over a dataset")
    run.add_argument("--query", required=True, help="query text, or @file to read it from a file")
    run.add_argument("--input", default="-", help="input file, or - for standard input")
    run.add_argument("--input-format", choices=("json", "xml"), default="json")
    run.add_argument("--output", default="-", help="output file, or - for standard output")
    run.add_argument("--output-format", choices=("json", "xml"), default="json")
    run.add_argument("--compact", action="store_true", help="collapse singleton leaf arrays in JSON output")
    run.add_argument(
        "--bind",
        action="append",
        default=[],
        type=_binding,
        metavar="NAME=FILE",
        help="make a dataset available to lookup stages",
    )
    return parser


def _run(args, stdin, stdout, stderr) -> int:
    names = [name for name, _ in args.bind]
    dupes = sorted({n for n in names if names.count(n) > 1})
    if dupes:
        print(f"treeq: dataset bound more than once: {', '.join(dupes)}", file=stderr)
        return EXIT_EVAL

    try:
        query = _read(args.query[1:], stdin) if args.query.startswith("@") else args.query
    except _IOFailure as exc:
        print(f"treeq: {exc}", file=stderr)
        return EXIT_IO
    try:
        pipeline = parse_pipeline(query)
    except ParseError as exc:
        print(f"treeq: query:{exc.line}:{exc.column}: {exc.message}", file=stderr)
        return EXIT_PARSE

    in_opts = FormatOptions(format=args.input_format)
    loaded = []
    for path in [args.input] + [path for _, path in args.bind]:
        try:
            text = _read(path, stdin)
        except _IOFailure as exc:
            print(f"treeq: {exc}", file=stderr)
            return EXIT_IO
        try:
            loaded.append(decode(text, in_opts))
        except DecodeError as exc:
            where = path if path != "-" else "<stdin>"
            print(f"treeq: {where}:{exc}", file=stderr)
            return EXIT_DECODE
    data = loaded[0]
    datasets = dict(zip(names, loaded[1:]))

    try:
        result = pipeline.bind(**datasets).run(data)
    except EvaluationError as exc:
        print(f"treeq: {exc}", file=stderr)
        return EXIT_EVAL

    out_opts = FormatOptions(
        format=args.output_format,
        emission_mode="compact" if args.compact else "canonical",
    )
    try:
        text = encode(result, out_opts) + "\n"
    except EncodeError as exc:
        print(f"treeq: cannot encode result: {exc}", file=stderr)
        return EXIT_EVAL

    if args.output == "-":
        stdout.write(text)
        return EXIT_OK
    try:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"treeq: cannot write {args.output}: {exc.strerror or exc}", file=stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    return _run(args, stdin, stdout, stderr)


if __name__ == "__main__":
    sys.exit(main())
