"""Call graph construction and bottom-up scheduling."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import networkx as nx

from lockgraph.ir import Program


@dataclass(frozen=True)
class CallGraph:
    nodes: frozenset[str]
    edges: frozenset[tuple[str, str]]
    scc_id: Mapping[str, int]

    def callees(self, name: str) -> list[str]:
        return sorted(b for a, b in self.edges if a == name)

    def same_scc(self, a: str, b: str) -> bool:
        return self.scc_id[a] == self.scc_id[b]

    def scc_members(self, name: str) -> frozenset[str]:
        sid = self.scc_id[name]
        return frozenset(n for n, s in self.scc_id.items() if s == sid)


def _graph(nodes, edges) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(sorted(nodes))
    g.add_edges_from(sorted(edges))
    return g


def build_call_graph(program: Program) -> CallGraph:
    edges = set()
    for fn in program.functions.values():
        for event in fn.calls():
            if event.callee in program.functions:
                edges.add((fn.name, event.callee))
    nodes = frozenset(program.functions)
    g = _graph(nodes, edges)
    # Number components by their smallest member so ids do not depend on traversal order.
    components = sorted((sorted(c) for c in nx.strongly_connected_components(g)), key=lambda c: c[0])
    scc_id = {name: i for i, comp in enumerate(components) for name in comp}
    return CallGraph(nodes, frozenset(edges), scc_id)


def analysis_order(cg: CallGraph) -> list[frozenset[str]]:
    """Levels of functions such that every callee's level precedes its callers'.

    Levels are the topological generations of the SCC condensation counted
    from the roots, reversed; members of one SCC always share a level.
    """
    if not cg.nodes:
        return []
    cond = nx.DiGraph()
    cond.add_nodes_from(set(cg.scc_id.values()))
    cond.add_edges_from((cg.scc_id[a], cg.scc_id[b]) for a, b in cg.edges
                        if cg.scc_id[a] != cg.scc_id[b])
    members: dict[int, set[str]] = {}
    for name, sid in cg.scc_id.items():
        members.setdefault(sid, set()).add(name)
    levels = []
    for generation in nx.topological_generations(cond):
        levels.append(frozenset(name for sid in generation for name in members[sid]))
    return levels[::-1]
