"""Global lock-dependency relation and deadlock reporting."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from lockgraph.absint.domain import Summary
from lockgraph.ir import AccessPath, Location

Edge = tuple[AccessPath, AccessPath]


@dataclass(frozen=True)
class Occurrence:
    guards: frozenset[AccessPath]
    location: Location
    function: str


@dataclass
class DependencyRelation:
    occurrences: dict[Edge, list[Occurrence]] = field(default_factory=dict)

    @property
    def edges(self) -> frozenset[Edge]:
        return frozenset(self.occurrences)

    def add(self, edge: Edge, occurrence: Occurrence) -> None:
        if edge[0] == edge[1]:
            raise ValueError(f"self edge on {edge[0]}")
        self.occurrences.setdefault(edge, []).append(occurrence)

    @classmethod
    def from_edges(cls, edges: Iterable[Edge]) -> "DependencyRelation":
        rel = cls()
        for edge in edges:
            rel.add(edge, Occurrence(frozenset(), Location("<unknown>", 0), "<unknown>"))
        return rel


def merge_dependencies(summaries: Mapping[str, Summary]) -> DependencyRelation:
    rel = DependencyRelation()
    for name in sorted(summaries):
        deps = sorted(summaries[name].deps, key=lambda d: (str(d.from_), str(d.to), d.location))
        for d in deps:
            rel.add((d.from_, d.to), Occurrence(d.guards, d.location, name))
    return rel


def _successors(edges: Iterable[Edge]) -> dict[AccessPath, list[AccessPath]]:
    succ: dict[AccessPath, list[AccessPath]] = {}
    for a, b in sorted(edges, key=lambda e: (str(e[0]), str(e[1]))):
        succ.setdefault(a, []).append(b)
    return succ


def transitive_closure(rel: DependencyRelation | Iterable[Edge]) -> frozenset[Edge]:
    """Reachability by one breadth-first search per source lock."""
    edges = rel.edges if isinstance(rel, DependencyRelation) else frozenset(rel)
    succ = _successors(edges)
    closure = set()
    for source in succ:
        seen: set[AccessPath] = set()
        queue = deque(succ[source])
        while queue:
            node = queue.popleft()
            if node in seen:
                continue
            seen.add(node)
            closure.add((source, node))
            queue.extend(succ.get(node, ()))
    return frozenset(closure)


@dataclass(frozen=True)
class Witness:
    from_: AccessPath
    to: AccessPath
    function: str
    location: Location
    guards: frozenset[AccessPath]


@dataclass(frozen=True)
class ChainEdge:
    from_: AccessPath
    to: AccessPath
    guards: frozenset[AccessPath]  # union over the edge's occurrences


@dataclass(frozen=True)
class DeadlockReport:
    pair: tuple[AccessPath, AccessPath]  # sorted by spelling
    direct: bool
    witnesses: tuple[Witness, ...]
    suppressed_by_gate: bool = False
    chain: tuple[ChainEdge, ...] = ()
    gates: frozenset[AccessPath] = frozenset()

    @property
    def sort_key(self) -> tuple:
        return (not self.direct, str(self.pair[0]), str(self.pair[1]))


def _shortest_path(succ: Mapping[AccessPath, list[AccessPath]], a: AccessPath, b: AccessPath) -> list[Edge]:
    parent: dict[AccessPath, AccessPath] = {}
    queue = deque([a])
    seen = {a}
    while queue:
        node = queue.popleft()
        for nxt in succ.get(node, ()):
            if nxt in seen:
                continue
            parent[nxt] = node
            if nxt == b:
                path = [b]
                while path[-1] != a:
                    path.append(parent[path[-1]])
                path.reverse()
                return list(zip(path, path[1:]))
            seen.add(nxt)
            queue.append(nxt)
    raise ValueError(f"{b} is not reachable from {a}")


def _witnesses(rel: DependencyRelation, edges: Iterable[Edge]) -> tuple[Witness, ...]:
    return tuple(Witness(a, b, o.function, o.location, o.guards)
                 for a, b in edges for o in rel.occurrences[(a, b)])


def _chain_guards(chain: list[ChainEdge]) -> frozenset[AccessPath]:
    guards = chain[0].guards
    for edge in chain[1:]:
        guards &= edge.guards
    return guards


def find_deadlocks(rel: DependencyRelation, use_gate_filter: bool = True,
                   include_suppressed: bool = False) -> list[DeadlockReport]:
    """One report per unordered pair of mutually dependent locks.

    Pairs with both direct edges come first; the others carry the shortest
    witnessing chains in both directions.
    """
    closure = transitive_closure(rel)
    succ = _successors(rel.edges)
    reports = []
    for a, b in closure:
        if a == b or str(a) > str(b) or (b, a) not in closure:
            continue
        forward, backward = rel.occurrences.get((a, b)), rel.occurrences.get((b, a))
        if forward and backward:
            gated = all(o1.guards & o2.guards for o1 in forward for o2 in backward)
            gates = frozenset.intersection(*(o1.guards & o2.guards for o1 in forward for o2 in backward))
            report = DeadlockReport((a, b), True, _witnesses(rel, [(a, b), (b, a)]),
                                    suppressed_by_gate=use_gate_filter and gated,
                                    gates=gates if gated else frozenset())
        else:
            there, back = _shortest_path(succ, a, b), _shortest_path(succ, b, a)
            chain_there = [ChainEdge(x, y, frozenset().union(*(o.guards for o in rel.occurrences[(x, y)])))
                           for x, y in there]
            chain_back = [ChainEdge(x, y, frozenset().union(*(o.guards for o in rel.occurrences[(x, y)])))
                          for x, y in back]
            gates = _chain_guards(chain_there) & _chain_guards(chain_back)
            report = DeadlockReport((a, b), False, _witnesses(rel, there + back),
                                    suppressed_by_gate=use_gate_filter and bool(gates),
                                    chain=tuple(chain_there + chain_back), gates=gates)
        if include_suppressed or not report.suppressed_by_gate:
            reports.append(report)
    reports.sort(key=lambda r: r.sort_key)
    return reports


def _paths(paths: Iterable[AccessPath]) -> list[str]:
    return sorted(map(str, paths))


def _witness_line(w: Witness) -> str:
    guards = ", ".join(_paths(w.guards)) or "none"
    return f"    {w.from_} -> {w.to} in {w.function} at {w.location} (guards: {guards})"


def render_report(reports: Iterable[DeadlockReport], format: str = "text") -> str:
    reports = sorted(reports, key=lambda r: r.sort_key)
    if format == "json":
        doc = {"deadlocks": [{
            "locks": [str(r.pair[0]), str(r.pair[1])],
            "direct": r.direct,
            "witnesses": [{"from": str(w.from_), "to": str(w.to), "function": w.function,
                           "file": w.location.file, "line": w.location.line,
                           "guards": _paths(w.guards)} for w in r.witnesses],
            "suppressed": r.suppressed_by_gate,
            "chain": [{"from": str(e.from_), "to": str(e.to), "guards": _paths(e.guards)}
                      for e in r.chain],
        } for r in reports]}
        return json.dumps(doc, indent=2) + "\n"
    if format != "text":
        raise ValueError(f"unknown report format {format!r}")
    if not reports:
        return "no deadlocks found\n"
    lines = []
    for r in reports:
        kind = "direct" if r.direct else "via chain"
        lines.append(f"potential deadlock between {r.pair[0]} and {r.pair[1]} ({kind})")
        if r.chain:
            lines.append("  chain: " + ", ".join(f"{e.from_} -> {e.to}" for e in r.chain))
        lines.extend(_witness_line(w) for w in r.witnesses)
        if r.suppressed_by_gate:
            lines.append(f"  suppressed: gate lock(s) {', '.join(_paths(r.gates))}")
    active = sum(not r.suppressed_by_gate for r in reports)
    lines.append(f"{active} potential deadlock(s) reported")
    return "\n".join(lines) + "\n"
