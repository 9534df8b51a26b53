"""Command-line front end.

Machine-readable results go to standard output, diagnostics to standard
error.  Exit codes: 0 success, 1 analysis error, 2 usage error, 3 failed
property suite.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .automaton import (
    Dpa,
    export_dot,
    format_word,
    parse_document,
    parse_dpa,
    parse_lasso,
    parse_word,
    serialize_dpa,
)
from .colors import letter_colors
from .errors import AnalysisError, UnknownSymbol
from .forgetful import robustness_dpa
from .natural import congruence_classes, infix_rank, minimize_ranks, wagner_class, word_rank
from .oracle import TestUniverse, run_suite
from .suffixes import analyze_word, initial_rank
from .values import Mode, Robustness
from .vigor import build_vigor

EXIT_OK, EXIT_ANALYSIS, EXIT_USAGE, EXIT_SUITE = 0, 1, 2, 3


def _load(path: str) -> Dpa:
    return parse_dpa(Path(path).read_text())


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


class UsageError(Exception):
    pass


def _lasso(text: str, alphabet):
    try:
        return parse_lasso(text, alphabet)
    except (ValueError, UnknownSymbol) as exc:
        raise UsageError(f"bad word {text!r}: {exc}") from None


def _finite(text: str, alphabet):
    try:
        return parse_word(text, alphabet)
    except UnknownSymbol as exc:
        raise UsageError(f"bad word {text!r}: {exc}") from None


def _mode(name: str) -> Mode:
    return Mode(name)


def cmd_validate(args) -> int:
    aut = parse_document(Path(args.file).read_text())
    kind = "dpa" if isinstance(aut, Dpa) else "forgetful"
    print(f"ok {kind} states={aut.size} alphabet={' '.join(aut.alphabet)}")
    return EXIT_OK


def cmd_minimize(args) -> int:
    _emit(serialize_dpa(minimize_ranks(_load(args.file))), args.output)
    return EXIT_OK


def cmd_classes(args) -> int:
    aut = minimize_ranks(_load(args.file))
    classes = congruence_classes(aut)
    for c, rep in enumerate(classes.representatives):
        states = " ".join(str(q) for q in sorted(classes.members(c)))
        print(f"{c}\t{format_word(rep) or 'ε'}\t{states}")
    return EXIT_OK


def cmd_infix_rank(args) -> int:
    aut = minimize_ranks(_load(args.file))
    u = _finite(args.u, aut.alphabet)
    v = _finite(args.v, aut.alphabet)
    print(infix_rank(aut, u, v))
    return EXIT_OK


def cmd_word_rank(args) -> int:
    aut = minimize_ranks(_load(args.file))
    print(word_rank(aut, _lasso(args.w, aut.alphabet)))
    return EXIT_OK


def cmd_letters(args) -> int:
    aut = minimize_ranks(_load(args.file))
    w = _lasso(args.w, aut.alphabet)
    rows = analyze_word(aut, w.prefix(args.n))
    colors = letter_colors(aut, w, args.n) if args.n else []
    print("k\tletter\tinfluential\treset\tdom-suf\trank\tcolor")
    print(f"0\t-\t-\t-\t-\t{initial_rank(aut)}\t-")
    for row, color in zip(rows, colors):
        print(f"{row.describe()}\t{color}")
    return EXIT_OK


def cmd_vigor(args) -> int:
    _emit(serialize_dpa(build_vigor(_load(args.file))), args.output)
    return EXIT_OK


def cmd_robust(args) -> int:
    _emit(robustness_dpa(minimize_ranks(_load(args.file))).serialize(), args.output)
    return EXIT_OK


def cmd_value(args) -> int:
    rb = Robustness(_load(args.file))
    print(rb.value(_lasso(args.w, rb.alphabet), _mode(args.dcmp)))
    return EXIT_OK


def cmd_compare(args) -> int:
    rb = Robustness(_load(args.file))
    mode = _mode(args.dcmp)
    w1, w2 = (_lasso(x, rb.alphabet) for x in (args.w1, args.w2))
    v1, v2 = rb.value(w1, mode), rb.value(w2, mode)
    print(rb.compare(w1, w2, mode).value)
    print(v1)
    print(v2)
    return EXIT_OK


def cmd_dot(args) -> int:
    aut = _load(args.file)
    target = robustness_dpa(minimize_ranks(aut)) if args.robust else aut
    _emit(export_dot(target), args.output)
    return EXIT_OK


def cmd_wagner(args) -> int:
    print(wagner_class(_load(args.file)))
    return EXIT_OK


def cmd_oracle(args) -> int:
    aut = _load(args.file)
    universe = TestUniverse(((Path(args.file).stem, aut),), args.max_spoke, args.max_period)
    report = run_suite(universe, regressions=False)
    sys.stdout.write(report.to_json_lines() if args.json else report.to_text())
    return EXIT_OK if report.ok else EXIT_SUITE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="omega-robust", description="Robustness analysis of ω-regular languages.")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, fn, help_text, output=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="automaton in dpa v1 format")
        if output:
            p.add_argument("-o", "--output", help="write here instead of standard output")
        p.set_defaults(fn=fn)
        return p

    command("validate", cmd_validate, "check that a file parses")
    command("minimize", cmd_minimize, "rank-minimize", output=True)
    command("classes", cmd_classes, "right-congruence classes")
    p = command("infix-rank", cmd_infix_rank, "rank of a period starting with V after spoke U")
    p.add_argument("-u", default="", help="spoke")
    p.add_argument("-v", required=True, help="period start")
    p = command("word-rank", cmd_word_rank, "rank of a lasso word")
    p.add_argument("-w", required=True, help="SPOKE;PERIOD")
    p = command("letters", cmd_letters, "letter analysis table")
    p.add_argument("-w", required=True, help="SPOKE;PERIOD")
    p.add_argument("-n", type=int, default=10, help="number of letters")
    command("vigor", cmd_vigor, "vigor DPA", output=True)
    command("robust", cmd_robust, "robustness DPA", output=True)
    p = command("value", cmd_value, "robustness value of a lasso word")
    p.add_argument("-w", required=True, help="SPOKE;PERIOD")
    p.add_argument("--dcmp", choices=[m.value for m in Mode], default=Mode.SHORTEST.value)
    p = command("compare", cmd_compare, "compare two lasso words")
    p.add_argument("-w1", required=True)
    p.add_argument("-w2", required=True)
    p.add_argument("--dcmp", choices=[m.value for m in Mode], default=Mode.SHORTEST.value)
    p = command("dot", cmd_dot, "Graphviz export", output=True)
    p.add_argument("--robust", action="store_true", help="draw the colored robustness DPA")
    command("wagner", cmd_wagner, "Wagner class")
    p = command("oracle", cmd_oracle, "bounded property suite")
    p.add_argument("--max-spoke", type=int, default=3)
    p.add_argument("--max-period", type=int, default=4)
    p.add_argument("--json", action="store_true", help="JSON lines instead of text")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "n", 0) < 0:
        print("error: -n must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AnalysisError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS


if __name__ == "__main__":
    sys.exit(main())
