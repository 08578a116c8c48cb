"""Worklist fixpoint per function and bottom-up whole-program analysis."""

from __future__ import annotations

import heapq
import threading
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from lockgraph.absint.domain import (
    BOTTOM, AbstractState, AnalysisMode, ArityError, Summary,
    acquire, apply_summary, join, leq, release, widen,
)
from lockgraph.callgraph import analysis_order, build_call_graph
from lockgraph.frontend.config import Diagnostic, SourcePos
from lockgraph.ir import Cfg, Event, EventKind, FunctionDef, Program


class SummaryStore:
    """Finished summaries; concurrent readers, one insertion per function."""

    def __init__(self, initial: Mapping[str, Summary] | None = None) -> None:
        self._summaries: dict[str, Summary] = dict(initial or {})
        self._lock = threading.Lock()

    def get(self, name: str) -> Summary | None:
        return self._summaries.get(name)

    def put(self, name: str, summary: Summary) -> None:
        with self._lock:
            if name in self._summaries:
                raise KeyError(f"summary for {name} already stored")
            self._summaries[name] = summary

    def __contains__(self, name: str) -> bool:
        return name in self._summaries

    def as_dict(self) -> dict[str, Summary]:
        with self._lock:
            return dict(self._summaries)


def loop_heads(cfg: Cfg) -> frozenset[int]:
    """Targets of back edges in a depth-first traversal from the entry."""
    heads = set()
    on_stack = {cfg.entry}
    visited = {cfg.entry}
    stack = [(cfg.entry, iter(cfg.successors(cfg.entry)))]
    while stack:
        node, succs = stack[-1]
        nxt = next(succs, None)
        if nxt is None:
            stack.pop()
            on_stack.discard(node)
        elif nxt in on_stack:
            heads.add(nxt)
        elif nxt not in visited:
            visited.add(nxt)
            on_stack.add(nxt)
            stack.append((nxt, iter(cfg.successors(nxt))))
    return frozenset(heads)


def _reverse_postorder(cfg: Cfg) -> dict[int, int]:
    order: list[int] = []
    visited = {cfg.entry}
    stack = [(cfg.entry, iter(cfg.successors(cfg.entry)))]
    while stack:
        node, succs = stack[-1]
        nxt = next(succs, None)
        if nxt is None:
            stack.pop()
            order.append(node)
        elif nxt not in visited:
            visited.add(nxt)
            stack.append((nxt, iter(cfg.successors(nxt))))
    return {n: i for i, n in enumerate(reversed(order))}


@dataclass
class FixpointResult:
    entry_states: dict[int, AbstractState]
    exit_state: AbstractState
    visits: Counter = field(default_factory=Counter)


def solve(cfg: Cfg, transfer: Callable[[Event, AbstractState], AbstractState]) -> FixpointResult:
    """Forward fixpoint from BOTTOM at entry. Node entry states only grow."""
    succs = {n: cfg.successors(n) for n in cfg.nodes}
    rpo = _reverse_postorder(cfg)
    heads = loop_heads(cfg)
    states: dict[int, AbstractState] = {cfg.entry: BOTTOM}
    visits: Counter = Counter()
    work = [(rpo[cfg.entry], cfg.entry)]
    queued = {cfg.entry}
    out_exit = BOTTOM
    while work:
        _, node = heapq.heappop(work)
        queued.discard(node)
        visits[node] += 1
        out = states[node]
        for event in cfg.nodes[node]:
            out = transfer(event, out)
        if node == cfg.exit:
            out_exit = out
        for succ in succs[node]:
            old = states.get(succ)
            if old is None:
                new = out
            else:
                new = widen(old, out) if succ in heads else join(old, out)
                if leq(new, old):
                    continue
            states[succ] = new
            if succ not in queued:
                queued.add(succ)
                heapq.heappush(work, (rpo[succ], succ))
    return FixpointResult(states, out_exit, visits)


class Analyzer:
    """Computes summaries bottom-up; counts one fixpoint per analysed function."""

    def __init__(self, program: Program, mode: AnalysisMode = AnalysisMode(), jobs: int = 1) -> None:
        self.program = program
        self.mode = mode
        self.jobs = jobs
        self.call_graph = build_call_graph(program)
        self.store = SummaryStore()
        self.fixpoints: Counter = Counter()
        self.diagnostics: list[Diagnostic] = []
        self._diag_lock = threading.Lock()

    def _warn(self, event: Event, message: str) -> None:
        with self._diag_lock:
            self.diagnostics.append(Diagnostic(
                "warning", SourcePos(event.location.file, event.location.line), message))

    def _transfer(self, fn: FunctionDef) -> Callable[[Event, AbstractState], AbstractState]:
        m = self.mode
        program = self.program
        recursive = self.call_graph.scc_members(fn.name) if fn.name in self.call_graph.scc_id else frozenset()
        warned: set = set()

        def transfer(event: Event, s: AbstractState) -> AbstractState:
            kind = event.kind
            if kind is EventKind.ACQUIRE:
                return acquire(event.lock, s, m, event.location)
            if kind is EventKind.RELEASE:
                return release(event.lock, s, m)
            if kind is EventKind.CALL:
                chi = self.store.get(event.callee)
                if chi is None:
                    if event.callee not in recursive and event not in warned:
                        warned.add(event)
                        where = "undefined" if event.callee not in program.functions else "not yet summarised"
                        self._warn(event, f"call to {where} function '{event.callee}' skipped")
                    return s
                try:
                    return apply_summary(chi, event.actuals, s, m, event.location)
                except ArityError as exc:
                    if event not in warned:
                        warned.add(event)
                        self._warn(event, f"call to '{event.callee}' ignored: {exc}")
                    return s
            return s

        return transfer

    def analyze_function(self, fn: FunctionDef) -> Summary:
        self.fixpoints[fn.name] += 1
        result = solve(fn.cfg, self._transfer(fn))
        return Summary.from_state(result.exit_state, fn.formals)

    def _analyze_group(self, names: Iterable[str]) -> None:
        # Members of one SCC run in name order; later ones see earlier summaries.
        for name in sorted(names):
            self.store.put(name, self.analyze_function(self.program.functions[name]))

    def run(self) -> dict[str, Summary]:
        cg = self.call_graph
        for level in analysis_order(cg):
            groups: dict[int, list[str]] = {}
            for name in level:
                groups.setdefault(cg.scc_id[name], []).append(name)
            batches = [groups[k] for k in sorted(groups)]
            if self.jobs > 1 and len(batches) > 1:
                with ThreadPoolExecutor(max_workers=self.jobs) as pool:
                    list(pool.map(self._analyze_group, batches))
            else:
                for batch in batches:
                    self._analyze_group(batch)
        return self.store.as_dict()


@dataclass
class ProgramAnalysis:
    summaries: dict[str, Summary]
    fixpoints: Counter
    diagnostics: list[Diagnostic]


def analyze_function(fn: FunctionDef, store: SummaryStore | Mapping[str, Summary],
                     m: AnalysisMode = AnalysisMode()) -> Summary:
    """Summarise one function against already-computed callee summaries."""
    analyzer = Analyzer(Program({fn.name: fn}), m)
    analyzer.store = store if isinstance(store, SummaryStore) else SummaryStore(store)
    return analyzer.analyze_function(fn)


def analyze_program(program: Program, m: AnalysisMode = AnalysisMode(), jobs: int = 1) -> ProgramAnalysis:
    analyzer = Analyzer(program, m, jobs)
    summaries = analyzer.run()
    diagnostics = sorted(analyzer.diagnostics, key=lambda d: (d.location, d.message))
    return ProgramAnalysis(summaries, analyzer.fixpoints, diagnostics)
