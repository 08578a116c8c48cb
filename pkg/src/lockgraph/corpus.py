"""Corpus runs against a manifest of expected outcomes.

A manifest is a JSON array of ``{"path": str, "expected": "deadlock" |
"safe" | "parse_fail"}``; paths are relative to the manifest's directory.
"""

from __future__ import annotations

import json
import signal
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Sequence, TextIO

from lockgraph.pipeline import RunConfig, run_pipeline

EXPECTED = ("deadlock", "safe", "parse_fail")
# What a correct analysis reports for each expectation.
_OUTCOME_FOR = {"deadlock": "alarms", "safe": "safe", "parse_fail": "failed"}


class ManifestError(ValueError):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    path: str
    expected: str


@dataclass(frozen=True)
class CorpusManifest:
    entries: tuple[CorpusEntry, ...]
    root: Path = Path(".")

    @classmethod
    def load(cls, manifest_path: str | Path) -> "CorpusManifest":
        manifest_path = Path(manifest_path)
        try:
            doc = json.loads(manifest_path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise ManifestError(f"cannot read {manifest_path}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise ManifestError(f"{manifest_path}: invalid JSON: {exc.msg}") from None
        return cls.from_json(doc, manifest_path.parent)

    @classmethod
    def from_json(cls, doc, root: Path = Path(".")) -> "CorpusManifest":
        if not isinstance(doc, list):
            raise ManifestError("manifest must be a JSON array")
        entries = []
        for i, item in enumerate(doc):
            if not isinstance(item, dict) or set(item) != {"path", "expected"}:
                raise ManifestError(f"entry {i}: expected an object with keys 'path' and 'expected'")
            if not isinstance(item["path"], str) or item["expected"] not in EXPECTED:
                raise ManifestError(f"entry {i}: bad path or expected outcome {item['expected']!r}")
            entries.append(CorpusEntry(item["path"], item["expected"]))
        return cls(tuple(entries), root)


@dataclass(frozen=True)
class EntryResult:
    path: str
    expected: str
    outcome: str  # safe | alarms | failed
    alarms: int = 0
    reason: str = ""

    @property
    def matches(self) -> bool:
        return _OUTCOME_FOR[self.expected] == self.outcome


@dataclass
class CorpusStats:
    claimed_safe: int = 0
    raising_alarms: int = 0
    failed_to_analyse: int = 0
    true_positives: int = 0
    false_positives: int = 0
    false_negatives: int = 0
    mismatches: int = 0
    wall_time: float = 0.0
    results: list[EntryResult] = field(default_factory=list)

    @classmethod
    def from_results(cls, results: Sequence[EntryResult], wall_time: float = 0.0) -> "CorpusStats":
        stats = cls(results=list(results), wall_time=wall_time)
        for r in results:
            if r.outcome == "safe":
                stats.claimed_safe += 1
            elif r.outcome == "alarms":
                stats.raising_alarms += 1
            else:
                stats.failed_to_analyse += 1
            alarmed = r.outcome == "alarms"
            if r.expected == "deadlock":
                stats.true_positives += alarmed
                stats.false_negatives += not alarmed
            else:
                stats.false_positives += alarmed
            stats.mismatches += not r.matches
        return stats


class _Timeout(Exception):
    pass


def _raise_timeout(signum, frame):
    raise _Timeout()


def analyze_entry(path: str, display: str, expected: str, cfg: RunConfig) -> EntryResult:
    """Analyze one program in isolation, bounded by cfg.timeout seconds."""
    use_alarm = cfg.timeout > 0 and hasattr(signal, "setitimer")
    if use_alarm:
        try:
            previous = signal.signal(signal.SIGALRM, _raise_timeout)
        except ValueError:  # not the main thread
            use_alarm = False
    if use_alarm:
        signal.setitimer(signal.ITIMER_REAL, cfg.timeout)
    try:
        if not Path(path).is_file():
            return EntryResult(display, expected, "failed", reason="missing file")
        outcome = run_pipeline([path], replace(cfg, jobs=1))
    except _Timeout:
        return EntryResult(display, expected, "failed", reason=f"timeout after {cfg.timeout:g}s")
    finally:
        if use_alarm:
            signal.setitimer(signal.ITIMER_REAL, 0)
            signal.signal(signal.SIGALRM, previous)
    if outcome.failed:
        errors = [d for d in outcome.diagnostics if d.is_error]
        reason = errors[0].message if errors else "analysis failed"
        return EntryResult(display, expected, "failed", reason=reason)
    n = len(outcome.alarms)
    return EntryResult(display, expected, "alarms" if n else "safe", alarms=n)


def _entry_job(args) -> EntryResult:
    return analyze_entry(*args)


def run_corpus(manifest: CorpusManifest, cfg: RunConfig) -> tuple[CorpusStats, int]:
    jobs = [(str(manifest.root / e.path), e.path, e.expected, cfg) for e in manifest.entries]
    start = time.perf_counter()
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_entry_job, jobs))
    else:
        results = [_entry_job(j) for j in jobs]
    stats = CorpusStats.from_results(results, time.perf_counter() - start)
    return stats, 0 if stats.mismatches == 0 else 1


def render_stats(stats: CorpusStats, format: str = "text") -> str:
    """Deterministic rendering; wall time is left out on purpose."""
    counts = {
        "claimed_safe": stats.claimed_safe,
        "raising_alarms": stats.raising_alarms,
        "failed_to_analyse": stats.failed_to_analyse,
        "true_positives": stats.true_positives,
        "false_positives": stats.false_positives,
        "false_negatives": stats.false_negatives,
        "mismatches": stats.mismatches,
    }
    if format == "json":
        doc = {
            "entries": [{"path": r.path, "expected": r.expected, "outcome": r.outcome,
                         "alarms": r.alarms, "reason": r.reason, "match": r.matches}
                        for r in stats.results],
            "stats": counts,
        }
        return json.dumps(doc, indent=2) + "\n"
    width = max([len(r.path) for r in stats.results] + [5])
    lines = [f"{'entry':<{width}}  {'expected':<10}  {'outcome':<7}  alarms"]
    for r in stats.results:
        mark = "" if r.matches else "  MISMATCH"
        note = f"  ({r.reason})" if r.reason else ""
        lines.append(f"{r.path:<{width}}  {r.expected:<10}  {r.outcome:<7}  {r.alarms:>6}{note}{mark}")
    lines.append("")
    lines.append("claimed-safe  alarms  failed  TP  FP  FN")
    lines.append(f"{stats.claimed_safe:>12}  {stats.raising_alarms:>6}  {stats.failed_to_analyse:>6}  "
                 f"{stats.true_positives:>2}  {stats.false_positives:>2}  {stats.false_negatives:>2}")
    lines.append(f"mismatches: {stats.mismatches}")
    return "\n".join(lines) + "\n"


def run_corpus_command(manifest_path: str, cfg: RunConfig,
                       out: TextIO | None = None, err: TextIO | None = None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    try:
        manifest = CorpusManifest.load(manifest_path)
    except ManifestError as exc:
        print(f"lockgraph: {exc}", file=err)
        return 2
    stats, code = run_corpus(manifest, cfg)
    out.write(render_stats(stats, cfg.format))
    print(f"wall time: {stats.wall_time:.2f}s", file=err)
    return code
