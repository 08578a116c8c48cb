"""Lowering of parsed mini-C to the IR."""

from __future__ import annotations

import hashlib
from typing import Iterable, Mapping, Optional, Sequence

from lockgraph import ir
from lockgraph.frontend import cparse
from lockgraph.frontend.config import Diagnostic, FrontendConfig, SourcePos

_NOT_LOCKS = {"NULL", "nullptr"}


class _Unsupported(Exception):
    pass


def opaque_path(text: str) -> ir.AccessPath:
    """A stable stand-in for a lock expression that is not a plain access path."""
    digest = hashlib.sha1("".join(text.split()).encode("utf-8")).hexdigest()[:10]
    return ir.AccessPath(f"__opaque_{digest}")


def _lvalue_path(expr: cparse.Expr) -> Optional[ir.AccessPath]:
    if isinstance(expr, cparse.Cast):
        return _lvalue_path(expr.operand)
    if isinstance(expr, cparse.Name):
        return ir.AccessPath(expr.name)
    if isinstance(expr, cparse.Member):
        inner = _lvalue_path(expr.obj)
        if inner is None:
            return None
        return ir.AccessPath(inner.base, inner.selectors + (expr.name,))
    if isinstance(expr, cparse.Index):
        raise _Unsupported("array indexing in a lock expression")
    return None


def expr_path(expr: cparse.Expr) -> Optional[ir.AccessPath]:
    """Access path denoted by a lock argument: `&x.m`, `p`, `s->m`, ..."""
    while isinstance(expr, cparse.Cast):
        expr = expr.operand
    if isinstance(expr, cparse.Unary) and expr.op == "&":
        return _lvalue_path(expr.operand)
    return _lvalue_path(expr)


def _callee_name(expr: cparse.Expr) -> Optional[str]:
    while isinstance(expr, cparse.Cast) or (isinstance(expr, cparse.Unary) and expr.op in ("&", "*")):
        expr = expr.operand
    return expr.name if isinstance(expr, cparse.Name) else None


class _Lowerer:
    def __init__(self, filename: str, cfg: FrontendConfig,
                 functions: Mapping[str, Sequence[str]], diags: list[Diagnostic]) -> None:
        self.filename = filename
        self.cfg = cfg
        self.functions = functions
        self.diags = diags
        self.loop_depth = 0

    def loc(self, node) -> ir.Location:
        return ir.Location(self.filename, node.line)

    def report(self, node, message: str, construct: bool = True) -> None:
        severity = "error" if construct and self.cfg.strict else "warning"
        self.diags.append(Diagnostic(severity, SourcePos(self.filename, node.line, node.column), message))

    # expressions, in evaluation order
    def expr(self, e: Optional[cparse.Expr]) -> list[ir.Stmt]:
        if e is None:
            return []
        if isinstance(e, cparse.CallExpr):
            out: list[ir.Stmt] = []
            for arg in e.args:
                out += self.expr(arg)
            return out + self.call(e)
        children: Iterable[Optional[cparse.Expr]]
        if isinstance(e, (cparse.Member, cparse.Unary, cparse.Cast)):
            children = [getattr(e, "obj", None) or getattr(e, "operand", None)]
        elif isinstance(e, cparse.Index):
            children = [e.obj, e.index]
        elif isinstance(e, cparse.Compound):
            children = e.operands
        else:
            children = []
        out = []
        for child in children:
            out += self.expr(child)
        return out

    def lock_operand(self, e: cparse.CallExpr, what: str) -> Optional[ir.AccessPath]:
        if not e.args:
            self.report(e, f"{what} call without a lock argument")
            return None
        try:
            path = expr_path(e.args[0])
        except _Unsupported as exc:
            self.report(e.args[0], f"unsupported construct: {exc}")
            return None
        return path if path is not None else opaque_path(e.args[0].text)

    def call(self, e: cparse.CallExpr) -> list[ir.Stmt]:
        loc = self.loc(e)
        name = e.func.name if isinstance(e.func, cparse.Name) else None
        if name is None:
            self.report(e, "unsupported construct: call through a function pointer")
            return [ir.Event.nop(loc)]
        if name in self.cfg.lock_fn_names or name in self.cfg.unlock_fn_names:
            acquire = name in self.cfg.lock_fn_names
            path = self.lock_operand(e, name)
            if path is None:
                return [ir.Event.nop(loc)]
            return [ir.Event.acquire(path, loc) if acquire else ir.Event.release(path, loc)]
        if name in self.cfg.thread_create_names:
            return [self.thread_create(e, loc)]
        if name in self.functions:
            return [ir.Event.call(name, [self.actual(a) for a in e.args], loc)]
        self.report(e, f"call to unknown function '{name}' treated as no-op", construct=False)
        return [ir.Event.nop(loc)]

    def actual(self, arg: cparse.Expr) -> ir.AccessPath:
        try:
            path = expr_path(arg)
        except _Unsupported:
            path = None
        return path if path is not None else opaque_path(arg.text)

    def thread_create(self, e: cparse.CallExpr, loc: ir.Location) -> ir.Stmt:
        for i, arg in enumerate(e.args):
            target = _callee_name(arg)
            if target in self.functions:
                break
        else:
            self.report(e, "thread start routine is not a function of this program", construct=False)
            return ir.Event.nop(loc)
        actuals = []
        for arg in e.args[i + 1:]:
            try:
                path = expr_path(arg)
            except _Unsupported:
                continue
            if path is not None and path.base not in _NOT_LOCKS:
                actuals.append(path)
        # The start routine may ignore its argument; drop what it cannot bind.
        actuals = actuals[:len(self.functions[target])]
        return ir.Event.call(target, actuals, loc)

    # statements
    def stmt(self, s: Optional[cparse.Stmt]) -> list[ir.Stmt]:
        if s is None:
            return []
        if isinstance(s, cparse.Block):
            out: list[ir.Stmt] = []
            for item in s.items:
                out += self.stmt(item)
            return out
        if isinstance(s, cparse.ExprStmt):
            return self.expr(s.expr) or [ir.Event.nop(self.loc(s))]
        if isinstance(s, cparse.DeclStmt):
            out = []
            for init in s.inits:
                out += self.expr(init)
            return out
        if isinstance(s, cparse.IfStmt):
            return self.expr(s.cond) + [ir.If(tuple(self.stmt(s.then)), tuple(self.stmt(s.orelse)))]
        if isinstance(s, cparse.WhileStmt):
            cond = self.expr(s.cond)
            body = self.loop_body(s.body)
            return cond + [ir.While(tuple(body + cond))]
        if isinstance(s, cparse.DoWhileStmt):
            cond = self.expr(s.cond)
            body = self.loop_body(s.body)
            loop = ir.While(tuple(body + cond))
            if any(isinstance(x, (ir.Break, ir.Continue)) for x in _top_jumps(body)):
                # The unrolled first pass would need its own break target.
                return [loop]
            return body + cond + [loop]
        if isinstance(s, cparse.ForStmt):
            # `continue` reaches the loop head directly, skipping `step`.
            init = self.stmt(s.init)
            cond = self.expr(s.cond)
            body = self.loop_body(s.body)
            return init + cond + [ir.While(tuple(body + self.expr(s.step) + cond))]
        if isinstance(s, cparse.ReturnStmt):
            return self.expr(s.value) + [ir.Return(self.loc(s))]
        if isinstance(s, (cparse.BreakStmt, cparse.ContinueStmt)):
            kind = "break" if isinstance(s, cparse.BreakStmt) else "continue"
            if not self.loop_depth:
                self.report(s, f"'{kind}' outside of a loop ignored")
                return [ir.Event.nop(self.loc(s))]
            return [ir.Break(self.loc(s)) if kind == "break" else ir.Continue(self.loc(s))]
        if isinstance(s, cparse.UnsupportedStmt):
            self.report(s, f"unsupported construct: {s.construct}")
            return [ir.Event.nop(self.loc(s))] + self.stmt(s.inner)
        raise TypeError(f"unexpected statement {s!r}")

    def loop_body(self, s: Optional[cparse.Stmt]) -> list[ir.Stmt]:
        self.loop_depth += 1
        try:
            return self.stmt(s)
        finally:
            self.loop_depth -= 1


def _top_jumps(body: Sequence[ir.Stmt]):
    """Break/continue statements that target the innermost enclosing loop."""
    for s in body:
        if isinstance(s, (ir.Break, ir.Continue)):
            yield s
        elif isinstance(s, ir.If):
            yield from _top_jumps(s.then)
            yield from _top_jumps(s.orelse)


def parse_units(sources: Sequence[tuple[str, str]], cfg: FrontendConfig | None = None
                ) -> tuple[list[cparse.TranslationUnit] | None, list[Diagnostic]]:
    """Parse (source, filename) pairs; returns None for units on syntax errors."""
    cfg = cfg or FrontendConfig()
    diags: list[Diagnostic] = []
    units = []
    for source, filename in sources:
        try:
            units.append(cparse.parse_unit(source, filename, cfg.lock_type_names))
        except cparse.ParseError as exc:
            diags.append(Diagnostic("error", SourcePos(filename, exc.line, exc.column),
                                    f"syntax error: {exc.message}"))
    if any(d.is_error for d in diags):
        return None, diags
    return units, diags


def lower_units(units: Sequence[cparse.TranslationUnit], cfg: FrontendConfig | None = None,
                external: Mapping[str, Sequence[str]] | None = None
                ) -> tuple[dict[str, ir.FunctionDef], set[str], list[Diagnostic]]:
    """Lower parsed units. `external` names functions defined elsewhere (with formals)."""
    cfg = cfg or FrontendConfig()
    diags: list[Diagnostic] = []
    known: dict[str, Sequence[str]] = dict(external or {})
    defs: list[tuple[cparse.FuncDef, str]] = []
    for unit in units:
        for fn in unit.functions:
            if fn.name in known:
                diags.append(Diagnostic("error" if cfg.strict else "warning",
                                        SourcePos(unit.filename, fn.line, 1),
                                        f"duplicate definition of '{fn.name}' ignored"))
                continue
            known[fn.name] = fn.params
            defs.append((fn, unit.filename))
    functions: dict[str, ir.FunctionDef] = {}
    for fn, filename in defs:
        lowerer = _Lowerer(filename, cfg, known, diags)
        body = lowerer.stmt(fn.body)
        try:
            functions[fn.name] = ir.FunctionDef(fn.name, tuple(fn.params), tuple(body), filename)
        except ValueError as exc:
            diags.append(Diagnostic("error", SourcePos(filename, fn.line, 1), str(exc)))
    globals_ = {name for unit in units for name, types in unit.globals
                if types & cfg.lock_type_names}
    return functions, globals_, diags


def parse_minic(source: str, cfg: FrontendConfig | None = None, filename: str = "<input>"
                ) -> tuple[ir.Program | None, list[Diagnostic]]:
    cfg = cfg or FrontendConfig()
    units, diags = parse_units([(source, filename)], cfg)
    if units is None:
        return None, diags
    functions, globals_, more = lower_units(units, cfg)
    diags += more
    if any(d.is_error for d in diags):
        return None, diags
    return ir.Program(functions, frozenset(globals_)), diags
