"""Language-neutral program model.

Locks are named by syntactic access paths; function bodies are kept both as
a structured statement tree (what the frontends produce and serialize) and
as a control-flow graph derived from it (what the analysis walks).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence, Union

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class AccessPath(NamedTuple):
    """A base variable followed by zero or more field selectors."""

    base: str
    selectors: tuple[str, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "AccessPath":
        parts = text.split(".")
        for part in parts:
            if not _IDENT.match(part):
                raise ValueError(f"malformed access path {text!r}")
        return cls(parts[0], tuple(parts[1:]))

    def __str__(self) -> str:
        return ".".join((self.base, *self.selectors))


def path_equal(a: AccessPath, b: AccessPath) -> bool:
    return a.base == b.base and tuple(a.selectors) == tuple(b.selectors)


def substitute(path: AccessPath, binding: Mapping[str, AccessPath]) -> AccessPath:
    """Rewrite the base of `path` through `binding`, keeping its selectors."""
    target = binding.get(path.base)
    if target is None:
        return path
    return AccessPath(target.base, tuple(target.selectors) + tuple(path.selectors))


class Location(NamedTuple):
    file: str
    line: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}"


NOWHERE = Location("<unknown>", 0)


class EventKind(enum.Enum):
    ACQUIRE = "lock"
    RELEASE = "unlock"
    CALL = "call"
    NOP = "nop"


@dataclass(frozen=True)
class Event:
    kind: EventKind
    lock: AccessPath | None = None
    callee: str | None = None
    actuals: tuple[AccessPath, ...] = ()
    location: Location = NOWHERE

    def __post_init__(self) -> None:
        if self.kind in (EventKind.ACQUIRE, EventKind.RELEASE):
            if self.lock is None or self.callee is not None or self.actuals:
                raise ValueError(f"{self.kind.value} event needs exactly one lock path")
        elif self.kind is EventKind.CALL:
            if not self.callee or self.lock is not None:
                raise ValueError("call event needs a callee and no lock path")
        elif self.lock is not None or self.callee is not None or self.actuals:
            raise ValueError("nop event carries no operands")

    @classmethod
    def acquire(cls, lock: AccessPath, location: Location = NOWHERE) -> "Event":
        return cls(EventKind.ACQUIRE, lock=lock, location=location)

    @classmethod
    def release(cls, lock: AccessPath, location: Location = NOWHERE) -> "Event":
        return cls(EventKind.RELEASE, lock=lock, location=location)

    @classmethod
    def call(cls, callee: str, actuals: Iterable[AccessPath] = (),
             location: Location = NOWHERE) -> "Event":
        return cls(EventKind.CALL, callee=callee, actuals=tuple(actuals), location=location)

    @classmethod
    def nop(cls, location: Location = NOWHERE) -> "Event":
        return cls(EventKind.NOP, location=location)

    def __str__(self) -> str:
        if self.kind is EventKind.CALL:
            return f"call {self.callee}({', '.join(map(str, self.actuals))})"
        if self.lock is not None:
            return f"{self.kind.value} {self.lock}"
        return "nop"


# Structured statements. Leaves are Events.

@dataclass(frozen=True)
class If:
    then: tuple["Stmt", ...] = ()
    orelse: tuple["Stmt", ...] = ()


@dataclass(frozen=True)
class While:
    body: tuple["Stmt", ...] = ()


@dataclass(frozen=True)
class Return:
    location: Location = NOWHERE


@dataclass(frozen=True)
class Break:
    location: Location = NOWHERE


@dataclass(frozen=True)
class Continue:
    location: Location = NOWHERE


Stmt = Union[Event, If, While, Return, Break, Continue]


def iter_events(body: Sequence[Stmt]) -> Iterator[Event]:
    """Yield the events of a statement tree in source order."""
    for stmt in body:
        if isinstance(stmt, Event):
            yield stmt
        elif isinstance(stmt, If):
            yield from iter_events(stmt.then)
            yield from iter_events(stmt.orelse)
        elif isinstance(stmt, While):
            yield from iter_events(stmt.body)


@dataclass(frozen=True)
class Cfg:
    nodes: Mapping[int, tuple[Event, ...]]
    edges: frozenset[tuple[int, int]]
    entry: int
    exit: int

    def successors(self, node: int) -> list[int]:
        return sorted(b for a, b in self.edges if a == node)

    def predecessors(self, node: int) -> list[int]:
        return sorted(a for a, b in self.edges if b == node)

    def events(self) -> Iterator[Event]:
        for node in sorted(self.nodes):
            yield from self.nodes[node]


class _CfgBuilder:
    def __init__(self) -> None:
        self.nodes: dict[int, list[Event]] = {}
        self.edges: set[tuple[int, int]] = set()
        self.entry = self.new()
        self.exit = self.new()
        self.loops: list[tuple[int, int]] = []  # (head, after)

    def new(self) -> int:
        node = len(self.nodes)
        self.nodes[node] = []
        return node

    def edge(self, a: int | None, b: int) -> None:
        if a is not None:
            self.edges.add((a, b))

    def lower(self, body: Sequence[Stmt], cur: int | None) -> int | None:
        for stmt in body:
            if cur is None:
                # Dead code after return/break/continue; pruned below.
                cur = self.new()
            if isinstance(stmt, Event):
                self.nodes[cur].append(stmt)
            elif isinstance(stmt, If):
                then_head, else_head = self.new(), self.new()
                self.edge(cur, then_head)
                self.edge(cur, else_head)
                then_tail = self.lower(stmt.then, then_head)
                else_tail = self.lower(stmt.orelse, else_head)
                join = self.new()
                self.edge(then_tail, join)
                self.edge(else_tail, join)
                cur = join
            elif isinstance(stmt, While):
                head, body_head, after = self.new(), self.new(), self.new()
                self.edge(cur, head)
                self.edge(head, body_head)
                self.edge(head, after)
                self.loops.append((head, after))
                tail = self.lower(stmt.body, body_head)
                self.loops.pop()
                self.edge(tail, head)
                cur = after
            elif isinstance(stmt, Return):
                self.edge(cur, self.exit)
                cur = None
            elif isinstance(stmt, (Break, Continue)):
                if not self.loops:
                    raise ValueError(f"{type(stmt).__name__.lower()} outside of a loop")
                head, after = self.loops[-1]
                self.edge(cur, after if isinstance(stmt, Break) else head)
                cur = None
            else:
                raise TypeError(f"not a statement: {stmt!r}")
        return cur

    def finish(self, tail: int | None) -> Cfg:
        self.edge(tail, self.exit)
        self._bypass_empty()
        self._prune()
        for node in self.nodes:
            if node != self.exit and not any(a == node for a, _ in self.edges):
                self.edges.add((node, self.exit))
        return self._renumber()

    def _bypass_empty(self) -> None:
        changed = True
        while changed:
            changed = False
            for node in list(self.nodes):
                if node in (self.entry, self.exit) or self.nodes[node]:
                    continue
                succs = {b for a, b in self.edges if a == node}
                if len(succs) != 1:
                    continue
                (succ,) = succs
                if succ == node:
                    continue
                preds = {a for a, b in self.edges if b == node}
                self.edges = {e for e in self.edges if node not in e}
                self.edges |= {(p, succ) for p in preds}
                del self.nodes[node]
                changed = True

    def _prune(self) -> None:
        seen = {self.entry}
        stack = [self.entry]
        while stack:
            n = stack.pop()
            for a, b in self.edges:
                if a == n and b not in seen:
                    seen.add(b)
                    stack.append(b)
        seen.add(self.exit)
        self.nodes = {n: evs for n, evs in self.nodes.items() if n in seen}
        self.edges = {(a, b) for a, b in self.edges if a in seen and b in seen}

    def _renumber(self) -> Cfg:
        # Breadth-first numbering from entry keeps ids independent of build order.
        succ: dict[int, list[int]] = {n: [] for n in self.nodes}
        for a, b in sorted(self.edges):
            succ[a].append(b)
        order = [self.entry]
        index = {self.entry: 0}
        i = 0
        while i < len(order):
            for b in succ[order[i]]:
                if b not in index:
                    index[b] = len(order)
                    order.append(b)
            i += 1
        if self.exit not in index:
            index[self.exit] = len(order)
            order.append(self.exit)
        return Cfg(
            nodes={index[n]: tuple(self.nodes[n]) for n in order},
            edges=frozenset((index[a], index[b]) for a, b in self.edges),
            entry=index[self.entry],
            exit=index[self.exit],
        )


def build_cfg(body: Sequence[Stmt]) -> Cfg:
    builder = _CfgBuilder()
    tail = builder.lower(body, builder.entry)
    return builder.finish(tail)


@dataclass(frozen=True)
class FunctionDef:
    name: str
    formals: tuple[str, ...] = ()
    body: tuple[Stmt, ...] = ()
    file: str = "<unknown>"
    cfg: Cfg = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if len(set(self.formals)) != len(self.formals):
            raise ValueError(f"duplicate formal parameter in {self.name}")
        object.__setattr__(self, "cfg", build_cfg(self.body))

    def calls(self) -> Iterator[Event]:
        return (e for e in iter_events(self.body) if e.kind is EventKind.CALL)


@dataclass(frozen=True)
class Program:
    functions: Mapping[str, FunctionDef] = field(default_factory=dict)
    globals: frozenset[str] = frozenset()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Program):
            return NotImplemented
        return dict(self.functions) == dict(other.functions) and self.globals == other.globals

    __hash__ = None  # type: ignore[assignment]
