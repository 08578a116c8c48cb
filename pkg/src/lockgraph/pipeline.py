"""Parse, summarise, and detect: the work shared by `analyze` and `corpus`."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from lockgraph import ir
from lockgraph.absint import AnalysisMode, ProgramAnalysis, analyze_program
from lockgraph.detect import DeadlockReport, find_deadlocks, merge_dependencies
from lockgraph.frontend import Diagnostic, FrontendConfig, load_program


@dataclass(frozen=True)
class RunConfig:
    inputs: tuple[str, ...] = ()
    mode: int = 1
    gate_filter: bool = True
    recursive_locks: tuple[str, ...] = ()
    lock_names: tuple[str, ...] | None = None
    unlock_names: tuple[str, ...] | None = None
    format: str = "text"
    strict: bool = False
    dump: str | None = None  # "summaries" | "ir"
    verbose: bool = False
    jobs: int = 1
    timeout: float = 60.0

    def frontend(self) -> FrontendConfig:
        defaults = FrontendConfig()
        return FrontendConfig(
            lock_fn_names=frozenset(self.lock_names) if self.lock_names else defaults.lock_fn_names,
            unlock_fn_names=frozenset(self.unlock_names) if self.unlock_names else defaults.unlock_fn_names,
            strict=self.strict,
        )

    def analysis_mode(self) -> AnalysisMode:
        return AnalysisMode(self.mode, frozenset(ir.AccessPath.parse(p) for p in self.recursive_locks))


@dataclass
class Outcome:
    program: ir.Program | None
    diagnostics: list[Diagnostic] = field(default_factory=list)
    analysis: ProgramAnalysis | None = None
    reports: list[DeadlockReport] = field(default_factory=list)  # includes suppressed ones

    @property
    def failed(self) -> bool:
        return self.program is None

    @property
    def alarms(self) -> list[DeadlockReport]:
        return [r for r in self.reports if not r.suppressed_by_gate]


def run_pipeline(paths: Sequence[str], cfg: RunConfig) -> Outcome:
    program, diags = load_program(paths, cfg.frontend())
    if program is None:
        return Outcome(None, diags)
    analysis = analyze_program(program, cfg.analysis_mode(), jobs=cfg.jobs)
    relation = merge_dependencies(analysis.summaries)
    reports = find_deadlocks(relation, use_gate_filter=cfg.gate_filter, include_suppressed=True)
    return Outcome(program, diags + analysis.diagnostics, analysis, reports)
