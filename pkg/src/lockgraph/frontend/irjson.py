"""JSON intermediate form.

    {"functions": [{"name": str, "formals": [str], "body": [stmt], "file"?: str}],
     "globals": [str]}

where a stmt is one of

    {"kind": "lock" | "unlock", "path": "s.m", "line"?: int}
    {"kind": "call", "callee": str, "actuals": ["p", ...], "line"?: int}
    {"kind": "if", "then": [stmt], "else": [stmt]}
    {"kind": "while", "body": [stmt]}
    {"kind": "nop" | "return" | "break" | "continue", "line"?: int}
"""

from __future__ import annotations

import json
from typing import Any

from lockgraph import ir
from lockgraph.frontend.config import Diagnostic, SourcePos

_STMT_KEYS = {
    "lock": {"path"},
    "unlock": {"path"},
    "call": {"callee", "actuals"},
    "if": {"then", "else"},
    "while": {"body"},
    "nop": set(),
    "return": set(),
    "break": set(),
    "continue": set(),
}
_OPTIONAL_STMT_KEYS = {"kind", "line"}


class _SchemaError(Exception):
    def __init__(self, message: str, where: str) -> None:
        super().__init__(f"{message} at {where}")


def _check_keys(obj: dict, required: set[str], optional: set[str], where: str) -> None:
    unknown = set(obj) - required - optional
    if unknown:
        raise _SchemaError(f"unknown key {sorted(unknown)[0]!r}", where)
    missing = required - set(obj)
    if missing:
        raise _SchemaError(f"missing key {sorted(missing)[0]!r}", where)


_TYPE_NAMES = {int: "an integer", str: "a string", list: "an array", dict: "an object"}


def _expect(value: Any, kind: type, what: str, where: str):
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise _SchemaError(f"{what} must be {_TYPE_NAMES[kind]}", where)
    return value


def _path(text: Any, where: str) -> ir.AccessPath:
    _expect(text, str, "path", where)
    try:
        return ir.AccessPath.parse(text)
    except ValueError:
        raise _SchemaError(f"malformed access path {text!r}", where) from None


def _stmt(obj: Any, file: str, where: str) -> ir.Stmt:
    _expect(obj, dict, "statement", where)
    kind = obj.get("kind")
    if kind not in _STMT_KEYS:
        raise _SchemaError("unknown event kind", where)
    _check_keys(obj, _STMT_KEYS[kind], _OPTIONAL_STMT_KEYS, where)
    loc = ir.Location(file, _expect(obj.get("line", 0), int, "line", where))
    if kind == "lock":
        return ir.Event.acquire(_path(obj["path"], where), loc)
    if kind == "unlock":
        return ir.Event.release(_path(obj["path"], where), loc)
    if kind == "call":
        callee = _expect(obj["callee"], str, "callee", where)
        if not callee:
            raise _SchemaError("empty callee", where)
        actuals = _expect(obj["actuals"], list, "actuals", where)
        return ir.Event.call(callee, [_path(a, f"{where}.actuals[{i}]") for i, a in enumerate(actuals)], loc)
    if kind == "if":
        return ir.If(_body(obj["then"], file, f"{where}.then"), _body(obj["else"], file, f"{where}.else"))
    if kind == "while":
        return ir.While(_body(obj["body"], file, f"{where}.body"))
    if kind == "nop":
        return ir.Event.nop(loc)
    return {"return": ir.Return, "break": ir.Break, "continue": ir.Continue}[kind](loc)


def _body(items: Any, file: str, where: str) -> tuple[ir.Stmt, ...]:
    _expect(items, list, "statement list", where)
    return tuple(_stmt(item, file, f"{where}[{i}]") for i, item in enumerate(items))


def _function(obj: Any, default_file: str, where: str) -> ir.FunctionDef:
    _expect(obj, dict, "function", where)
    _check_keys(obj, {"name", "formals", "body"}, {"file"}, where)
    name = _expect(obj["name"], str, "name", f"{where}.name")
    formals = _expect(obj["formals"], list, "formals", f"{where}.formals")
    for i, f in enumerate(formals):
        _expect(f, str, "formal", f"{where}.formals[{i}]")
    file = _expect(obj.get("file", default_file), str, "file", f"{where}.file")
    body = _body(obj["body"], file, f"{where}.body")
    try:
        return ir.FunctionDef(name, tuple(formals), body, file)
    except ValueError as exc:
        raise _SchemaError(str(exc), where) from None


def load_ir_json(text: str, filename: str = "<ir>") -> tuple[ir.Program | None, list[Diagnostic]]:
    def error(message: str) -> tuple[None, list[Diagnostic]]:
        return None, [Diagnostic("error", SourcePos(filename, 0), message)]

    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        return None, [Diagnostic("error", SourcePos(filename, exc.lineno, exc.colno),
                                 f"invalid JSON: {exc.msg}")]
    try:
        _expect(doc, dict, "document", "top level")
        _check_keys(doc, {"functions"}, {"globals"}, "top level")
        functions: dict[str, ir.FunctionDef] = {}
        for i, obj in enumerate(_expect(doc["functions"], list, "functions", "functions")):
            fn = _function(obj, filename, f"functions[{i}]")
            if fn.name in functions:
                raise _SchemaError(f"duplicate function {fn.name!r}", f"functions[{i}]")
            functions[fn.name] = fn
        globals_ = _expect(doc.get("globals", []), list, "globals", "globals")
        for i, g in enumerate(globals_):
            _expect(g, str, "global", f"globals[{i}]")
    except _SchemaError as exc:
        return error(str(exc))
    return ir.Program(functions, frozenset(globals_)), []


def _dump_stmt(stmt: ir.Stmt) -> dict:
    if isinstance(stmt, ir.Event):
        out: dict[str, Any] = {"kind": stmt.kind.value}
        if stmt.kind is ir.EventKind.CALL:
            out["callee"] = stmt.callee
            out["actuals"] = [str(a) for a in stmt.actuals]
        elif stmt.lock is not None:
            out["path"] = str(stmt.lock)
        line = stmt.location.line
    elif isinstance(stmt, ir.If):
        return {"kind": "if", "then": [_dump_stmt(s) for s in stmt.then],
                "else": [_dump_stmt(s) for s in stmt.orelse]}
    elif isinstance(stmt, ir.While):
        return {"kind": "while", "body": [_dump_stmt(s) for s in stmt.body]}
    else:
        out = {"kind": type(stmt).__name__.lower()}
        line = stmt.location.line
    if line:
        out["line"] = line
    return out


def dump_ir_json(program: ir.Program) -> str:
    doc = {
        "functions": [
            {"name": fn.name, "formals": list(fn.formals), "file": fn.file,
             "body": [_dump_stmt(s) for s in fn.body]}
            for fn in sorted(program.functions.values(), key=lambda f: f.name)
        ],
        "globals": sorted(program.globals),
    }
    return json.dumps(doc, indent=2) + "\n"
