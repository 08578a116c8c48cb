"""Frontends producing an `ir.Program` from mini-C source or JSON IR."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from lockgraph import ir
from lockgraph.frontend.config import Diagnostic, FrontendConfig, SourcePos
from lockgraph.frontend.irjson import dump_ir_json, load_ir_json
from lockgraph.frontend.minic import lower_units, parse_minic, parse_units

__all__ = [
    "Diagnostic", "FrontendConfig", "SourcePos",
    "dump_ir_json", "load_ir_json", "load_program", "parse_minic",
]


def load_program(paths: Iterable[str | Path], cfg: FrontendConfig | None = None
                 ) -> tuple[ir.Program | None, list[Diagnostic]]:
    """Read `.json` IR files and mini-C sources into one whole program.

    Calls in C sources are resolved against functions from every input, so
    a program may be split across files and formats.
    """
    cfg = cfg or FrontendConfig()
    diags: list[Diagnostic] = []
    c_sources: list[tuple[str, str]] = []
    functions: dict[str, ir.FunctionDef] = {}
    globals_: set[str] = set()
    for path in map(str, paths):
        try:
            text = Path(path).read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            reason = exc.strerror if isinstance(exc, OSError) and exc.strerror else str(exc)
            diags.append(Diagnostic("error", SourcePos(path, 0), f"cannot read {path}: {reason}"))
            continue
        if path.endswith(".json"):
            program, more = load_ir_json(text, path)
            diags += more
            if program is None:
                continue
            for name, fn in program.functions.items():
                if name in functions:
                    diags.append(Diagnostic("error", SourcePos(path, 0), f"duplicate definition of '{name}'"))
                functions[name] = fn
            globals_ |= program.globals
        else:
            c_sources.append((text, path))
    units, more = parse_units(c_sources, cfg)
    diags += more
    if units is None or any(d.is_error for d in diags):
        return None, diags
    lowered, c_globals, more = lower_units(
        units, cfg, external={name: fn.formals for name, fn in functions.items()})
    diags += more
    if any(d.is_error for d in diags):
        return None, diags
    functions.update(lowered)
    return ir.Program(functions, frozenset(globals_ | c_globals)), diags
