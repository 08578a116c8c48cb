from __future__ import annotations

import json
from typing import Mapping

from lockgraph.absint.domain import (
    BOTTOM, AbstractState, AnalysisMode, ArityError, Dependency, Summary,
    acquire, apply_summary, join, leq, release, widen,
)
from lockgraph.absint.engine import (
    Analyzer, ProgramAnalysis, SummaryStore, analyze_function, analyze_program, solve,
)

__all__ = [
    "BOTTOM", "AbstractState", "AnalysisMode", "Analyzer", "ArityError", "Dependency",
    "ProgramAnalysis", "Summary", "SummaryStore", "acquire", "analyze_function",
    "analyze_program", "apply_summary", "join", "leq", "release", "solve",
    "summaries_to_json", "widen",
]


def _paths(paths) -> list[str]:
    return sorted(map(str, paths))


def summary_to_dict(s: Summary) -> dict:
    deps = sorted(s.deps, key=lambda d: (str(d.from_), str(d.to), d.location))
    return {
        "formals": list(s.formals),
        "locked": _paths(s.pre_locked),
        "unlocked": _paths(s.pre_unlocked),
        "lockset": _paths(s.lockset),
        "unlockset": _paths(s.unlockset),
        "wereLocked": _paths(s.were_locked),
        "deps": [{"from": str(d.from_), "to": str(d.to), "guards": _paths(d.guards),
                  "file": d.location.file, "line": d.location.line} for d in deps],
        "order": sorted([str(a), str(b)] for a, b in s.order),
    }


def summaries_to_json(summaries: Mapping[str, Summary]) -> str:
    doc = {name: summary_to_dict(summaries[name]) for name in sorted(summaries)}
    return json.dumps(doc, indent=2) + "\n"
