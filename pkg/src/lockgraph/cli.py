"""Command-line driver.

    lockgraph analyze FILE... [options]
    lockgraph corpus MANIFEST [options]

`analyze` exits 0 when no deadlock is reported, 1 when some is, and 2 on
unreadable or unparsable input. `corpus` exits 0 iff every entry matches
its expected outcome.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence, TextIO

from lockgraph.absint import summaries_to_json
from lockgraph.corpus import run_corpus_command
from lockgraph.detect import render_report
from lockgraph.frontend import dump_ir_json
from lockgraph.pipeline import RunConfig, run_pipeline


def _names(text: str) -> tuple[str, ...]:
    names = tuple(n.strip() for n in text.split(",") if n.strip())
    if not names:
        raise argparse.ArgumentTypeError("expected a comma-separated list")
    return names


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", type=int, choices=(1, 2), default=1,
                   help="1: reset lock sets on double lock/unlock (default); 2: no resets")
    p.add_argument("--no-gate-locks", dest="gate_filter", action="store_false",
                   help="report deadlocks even when a common gate lock guards them")
    p.add_argument("--recursive-locks", type=_names, default=(), metavar="A,B.C",
                   help="access paths of recursive (re-entrant) locks")
    p.add_argument("--lock-fns", type=_names, default=None, metavar="NAMES",
                   help="functions that acquire their first argument")
    p.add_argument("--unlock-fns", type=_names, default=None, metavar="NAMES",
                   help="functions that release their first argument")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--strict", action="store_true", help="treat unsupported constructs as errors")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers")
    p.add_argument("-v", "--verbose", action="store_true",
                   help="print warnings and gate-suppressed reports")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lockgraph", description="Static deadlock analysis for C-like code.")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="analyze one program (all inputs form one program)")
    analyze.add_argument("inputs", nargs="+", metavar="FILE", help="mini-C (.c) or IR (.json) files")
    _add_common(analyze)
    dump = analyze.add_mutually_exclusive_group()
    dump.add_argument("--dump-summaries", dest="dump", action="store_const", const="summaries",
                      help="print function summaries as JSON instead of the report")
    dump.add_argument("--dump-ir", dest="dump", action="store_const", const="ir",
                      help="print the program as JSON IR and stop")

    corpus = sub.add_parser("corpus", help="run every program of a manifest")
    corpus.add_argument("manifest")
    _add_common(corpus)
    corpus.add_argument("--timeout", type=float, default=60.0, help="seconds per entry")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        inputs=tuple(getattr(args, "inputs", ()) or ()),
        mode=args.mode,
        gate_filter=args.gate_filter,
        recursive_locks=tuple(args.recursive_locks),
        lock_names=args.lock_fns,
        unlock_names=args.unlock_fns,
        format=args.format,
        strict=args.strict,
        dump=getattr(args, "dump", None),
        verbose=args.verbose,
        jobs=max(1, args.jobs),
        timeout=getattr(args, "timeout", 60.0),
    )


def run_analyze(cfg: RunConfig, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    if not cfg.inputs:
        print("lockgraph: no input files", file=err)
        return 2
    outcome = run_pipeline(cfg.inputs, cfg)
    for d in outcome.diagnostics:
        if d.is_error or cfg.verbose:
            print(d, file=err)
    if outcome.failed:
        return 2
    if cfg.dump == "ir":
        out.write(dump_ir_json(outcome.program))
        return 0
    if cfg.dump == "summaries":
        out.write(summaries_to_json(outcome.analysis.summaries))
    else:
        shown = outcome.reports if cfg.verbose else outcome.alarms
        out.write(render_report(shown, cfg.format))
    return 1 if outcome.alarms else 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        cfg.frontend()
        cfg.analysis_mode()
    except ValueError as exc:
        print(f"lockgraph: {exc}", file=sys.stderr)
        return 2
    if args.command == "analyze":
        return run_analyze(cfg)
    return run_corpus_command(args.manifest, cfg)


if __name__ == "__main__":
    sys.exit(main())
