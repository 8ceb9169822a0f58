"""Command-line interface: count, bench, selftest.

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 self-test or engine
agreement failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .matcher import ENGINES, MODES, count_with_engine

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_CHECK = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; this tool reserves 2 for I/O
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _int_arg(value: str) -> int:
    """Integer flag accepting 1_000_000 and 1e6 spellings."""
    try:
        return int(value.replace("_", ""))
    except ValueError:
        pass
    try:
        as_float = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}")
    if as_float != int(as_float):
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}")
    return int(as_float)


def _build_parser() -> _Parser:
    parser = _Parser(prog="epicount", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    cnt = sub.add_parser("count", help="count pattern-containing windows in a file")
    cnt.add_argument("--text", required=True, help="path of the text file (raw bytes)")
    cnt.add_argument(
        "--patterns",
        action="append",
        default=[],
        help="comma-separated patterns (repeatable); UTF-8 encoded",
    )
    cnt.add_argument(
        "--patterns-file",
        help="file with one pattern per line (line terminator excluded)",
    )
    cnt.add_argument("--window", required=True, type=_int_arg, help="window size in bytes")
    cnt.add_argument("--engine", choices=ENGINES, default="mp-trie")
    cnt.add_argument("--mode", choices=MODES, default="both")
    cnt.add_argument("--format", choices=("plain", "machine"), default="plain")
    cnt.set_defaults(func=_cmd_count)

    ben = sub.add_parser("bench", help="time all engines over a generated grid")
    for flag, helptext in (
        ("--n", "text sizes"),
        ("--q", "pattern counts"),
        ("--plen", "pattern lengths"),
        ("--window", "window sizes"),
        ("--alphabet", "alphabet sizes"),
    ):
        ben.add_argument(
            flag, action="append", default=[],
            help=f"{helptext} (repeatable, comma-separated)",
        )
    ben.add_argument("--seed", type=_int_arg, default=1)
    ben.add_argument("--reps", type=_int_arg, default=3)
    ben.add_argument(
        "--prefix-len",
        type=_int_arg,
        default=0,
        help="shared pattern prefix length (0 = independent patterns)",
    )
    ben.add_argument("--csv", default="-", help="output CSV path ('-' = stdout)")
    ben.add_argument("--workers", type=_int_arg, default=1, help="parallel cells (processes)")
    ben.add_argument(
        "--sequential",
        action="store_true",
        help="force fully sequential timing (overrides --workers)",
    )
    ben.set_defaults(func=_cmd_bench)

    st = sub.add_parser("selftest", help="worked examples + randomized differential suite")
    st.add_argument("--instances", type=_int_arg, default=1000)
    st.add_argument("--seed", type=_int_arg, default=20240811)
    st.set_defaults(func=_cmd_selftest)
    return parser


def _read_file(path: str) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def _gather_patterns(args) -> list[bytes]:
    patterns: list[bytes] = []
    for chunk in args.patterns:
        patterns.extend(p.encode("utf-8") for p in chunk.split(","))
    if args.patterns_file:
        patterns.extend(_read_file(args.patterns_file).splitlines())
    return patterns


def _cmd_count(args) -> int:
    try:
        patterns = _gather_patterns(args)
    except OSError as exc:
        print(f"epicount: cannot read patterns: {exc}", file=sys.stderr)
        return EXIT_IO
    if not patterns or any(not p for p in patterns):
        print("epicount: error: patterns must be non-empty", file=sys.stderr)
        return EXIT_USAGE
    if args.window < 1:
        print("epicount: error: --window must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        text = _read_file(args.text)
    except OSError as exc:
        print(f"epicount: cannot read text: {exc}", file=sys.stderr)
        return EXIT_IO
    if args.window > len(text):
        print(
            f"epicount: warning: window ({args.window}) exceeds text length "
            f"({len(text)}); there are no windows",
            file=sys.stderr,
        )
    report = count_with_engine(args.engine, text, patterns, args.window, args.mode)
    if args.format == "machine":
        payload = {
            "engine": args.engine,
            "window": args.window,
            "mode": args.mode,
            "windows_total": report.windows_total,
            "c_all": report.c_all,
            "c_each": list(report.c_each) if report.c_each is not None else None,
        }
        print(json.dumps(payload))
    else:
        print(f"windows_total={report.windows_total}")
        if report.c_all is not None:
            print(f"c_all={report.c_all}")
        if report.c_each is not None:
            for pat, count in zip(patterns, report.c_each):
                shown = pat.decode("utf-8", "backslashreplace")
                print(f"c_each[{shown}]={count}")
    return EXIT_OK


def _flag_values(raw: list[str], flag: str) -> list[int]:
    values = []
    for chunk in raw:
        for part in chunk.split(","):
            try:
                values.append(_int_arg(part))
            except argparse.ArgumentTypeError as exc:
                raise ValueError(f"{flag}: {exc}")
    if not values:
        raise ValueError(f"{flag} needs at least one value")
    return values


def _cmd_bench(args) -> int:
    from . import bench  # deferred: pulls in numpy

    try:
        ns = _flag_values(args.n, "--n")
        qs = _flag_values(args.q, "--q")
        plens = _flag_values(args.plen, "--plen")
        ws = _flag_values(args.window, "--window")
        alphabets = _flag_values(args.alphabet, "--alphabet")
    except ValueError as exc:
        print(f"epicount: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    workers = 1 if args.sequential else max(1, args.workers)
    try:
        rows = bench.run_grid(
            ns, qs, plens, ws, alphabets,
            seed=args.seed,
            reps=args.reps,
            prefix_len=args.prefix_len,
            workers=workers,
        )
    except bench.EngineDisagreement as exc:
        print(f"epicount: bench aborted: {exc}", file=sys.stderr)
        return EXIT_CHECK
    if args.csv == "-":
        bench.write_csv(rows, sys.stdout)
    else:
        try:
            with open(args.csv, "w", newline="") as fh:
                bench.write_csv(rows, fh)
        except OSError as exc:
            print(f"epicount: cannot write CSV: {exc}", file=sys.stderr)
            return EXIT_IO
        print(f"epicount: wrote {len(rows)} rows to {args.csv}", file=sys.stderr)
    return EXIT_OK


def _cmd_selftest(args) -> int:
    from .selftest import run_selftest  # deferred: keeps count startup lean

    ok = run_selftest(instances=args.instances, seed=args.seed)
    return EXIT_OK if ok else EXIT_CHECK


def main(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
