"""Abstract states over lock access paths and their transfer functions.

A state tracks, per program point of one function:

* ``locked`` / ``unlocked`` -- what the function's callers must have held
  (resp. not held) on entry, inferred from the first operation on each lock;
* ``lockset`` / ``unlockset`` -- locks that may be held / may have been
  released at this point;
* ``were_locked`` -- every lock acquired so far, even if released again;
* ``deps`` -- ordered pairs (held, acquired) with the set of other locks
  held at the capture point (the guards);
* ``order`` -- pairs (released, acquired) seen in this order.

Transfer functions are pure: they return new states.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

from lockgraph.ir import AccessPath, Location, substitute

Paths = frozenset  # frozenset[AccessPath]
DepKey = tuple  # (from, to, location)


@dataclass(frozen=True)
class Dependency:
    """`to` was acquired while `from_` was held."""

    from_: AccessPath
    to: AccessPath
    guards: frozenset[AccessPath] = frozenset()
    location: Location = Location("<unknown>", 0)

    def __post_init__(self) -> None:
        if self.from_ == self.to:
            raise ValueError(f"self-dependency on {self.from_}")
        if self.from_ in self.guards or self.to in self.guards:
            raise ValueError("a dependency cannot be guarded by its own locks")

    @property
    def key(self) -> DepKey:
        return (self.from_, self.to, self.location)


@dataclass(frozen=True)
class AnalysisMode:
    mode: int = 1  # 1: reset working sets on double lock/unlock; 2: plain
    recursive_locks: frozenset[AccessPath] = frozenset()

    def __post_init__(self) -> None:
        if self.mode not in (1, 2):
            raise ValueError(f"mode must be 1 or 2, got {self.mode}")

    @property
    def resets(self) -> bool:
        return self.mode == 1


@dataclass(frozen=True)
class AbstractState:
    locked: frozenset[AccessPath] = frozenset()
    unlocked: frozenset[AccessPath] = frozenset()
    lockset: frozenset[AccessPath] = frozenset()
    unlockset: frozenset[AccessPath] = frozenset()
    were_locked: frozenset[AccessPath] = frozenset()
    # Treated as immutable; guards of one capture site keyed by (from, to, location).
    deps: Mapping[DepKey, frozenset[AccessPath]] = field(default_factory=dict)
    order: frozenset[tuple[AccessPath, AccessPath]] = frozenset()

    __hash__ = None  # type: ignore[assignment]

    def dependencies(self) -> frozenset[Dependency]:
        return frozenset(Dependency(a, b, g, loc) for (a, b, loc), g in self.deps.items())

    def seen(self, lock: AccessPath) -> bool:
        return lock in self.locked or lock in self.unlocked


BOTTOM = AbstractState()


def _add_deps(deps: Mapping[DepKey, frozenset], new: Iterable[tuple[DepKey, frozenset]]) -> dict:
    out = dict(deps)
    for key, guards in new:
        out[key] = out[key] & guards if key in out else guards
    return out


def acquire(lock: AccessPath, s: AbstractState, m: AnalysisMode = AnalysisMode(),
            location: Location = Location("<unknown>", 0)) -> AbstractState:
    held = s.lockset
    if lock in m.recursive_locks and lock in held:
        return s
    if m.resets and lock in held:
        # Double locking: the path here is presumably infeasible, so only the
        # lock just taken is known to be held and nothing else is recorded.
        return replace(s, lockset=frozenset({lock}), were_locked=s.were_locked | {lock})
    unlockset = s.unlockset - {lock}
    return replace(
        s,
        unlocked=s.unlocked if s.seen(lock) else s.unlocked | {lock},
        lockset=s.lockset | {lock},
        unlockset=unlockset,
        were_locked=s.were_locked | {lock},
        deps=_add_deps(s.deps, (((p, lock, location), held - {p, lock}) for p in held if p != lock)),
        order=s.order | {(u, lock) for u in unlockset},
    )


def release(lock: AccessPath, s: AbstractState, m: AnalysisMode = AnalysisMode()) -> AbstractState:
    lockset = s.lockset
    if m.resets and lock in s.unlockset:
        if lock in m.recursive_locks:
            return s
        lockset = frozenset()
    return replace(
        s,
        locked=s.locked if s.seen(lock) else s.locked | {lock},
        unlockset=s.unlockset | {lock},
        lockset=lockset - {lock},
    )


@dataclass(frozen=True)
class Summary:
    formals: tuple[str, ...] = ()
    pre_locked: frozenset[AccessPath] = frozenset()
    pre_unlocked: frozenset[AccessPath] = frozenset()
    lockset: frozenset[AccessPath] = frozenset()
    unlockset: frozenset[AccessPath] = frozenset()
    were_locked: frozenset[AccessPath] = frozenset()
    deps: frozenset[Dependency] = frozenset()
    order: frozenset[tuple[AccessPath, AccessPath]] = frozenset()

    @classmethod
    def from_state(cls, s: AbstractState, formals: Sequence[str] = ()) -> "Summary":
        return cls(tuple(formals), s.locked, s.unlocked, s.lockset, s.unlockset,
                   s.were_locked, s.dependencies(), s.order)

    def instantiate(self, actuals: Sequence[AccessPath]) -> "Summary":
        """Rewrite formals to actuals; formals without an actual stay symbolic."""
        if len(actuals) > len(self.formals):
            raise ArityError(f"{len(actuals)} actuals for {len(self.formals)} formals")
        binding = dict(zip(self.formals, actuals))
        if not binding:
            return self

        def sub(paths: frozenset[AccessPath]) -> frozenset[AccessPath]:
            return frozenset(substitute(p, binding) for p in paths)

        return replace(
            self,
            pre_locked=sub(self.pre_locked),
            pre_unlocked=sub(self.pre_unlocked),
            lockset=sub(self.lockset),
            unlockset=sub(self.unlockset),
            were_locked=sub(self.were_locked),
            order=frozenset((substitute(a, binding), substitute(b, binding)) for a, b in self.order),
        )


class ArityError(ValueError):
    pass


def apply_summary(chi: Summary, actuals: Sequence[AccessPath], s: AbstractState,
                  m: AnalysisMode = AnalysisMode(),
                  callsite: Location = Location("<unknown>", 0)) -> AbstractState:
    """Integrate a callee summary at a call site. Raises ArityError on too many actuals."""
    c = chi.instantiate(actuals)
    held = s.lockset
    unlocked = set(s.unlocked)
    locked = set(s.locked)
    for lock in c.pre_unlocked:
        if lock not in s.unlockset and not s.seen(lock):
            unlocked.add(lock)
    for lock in c.pre_locked:
        if lock not in s.lockset and not s.seen(lock):
            locked.add(lock)
    lockset = s.lockset
    if m.resets and ((held & c.pre_unlocked) - m.recursive_locks or s.unlockset & c.pre_locked):
        # The caller's state contradicts the callee's expectations; trust the callee.
        lockset = c.lockset
        held = frozenset()
    new_deps = (((p, w, callsite), held - {p, w})
                for p in held for w in c.were_locked
                if p != w and (p, w) not in c.order)
    return replace(
        s,
        locked=frozenset(locked),
        unlocked=frozenset(unlocked),
        lockset=(lockset | c.lockset) - c.unlockset,
        unlockset=(s.unlockset - c.lockset) | c.unlockset,
        were_locked=s.were_locked | c.were_locked,
        deps=_add_deps(s.deps, new_deps),
    )


def join(s1: AbstractState, s2: AbstractState) -> AbstractState:
    deps = dict(s1.deps)
    for key, guards in s2.deps.items():
        deps[key] = deps[key] & guards if key in deps else guards
    return AbstractState(
        locked=s1.locked | s2.locked,
        unlocked=s1.unlocked | s2.unlocked,
        lockset=s1.lockset | s2.lockset,
        unlockset=s1.unlockset | s2.unlockset,
        were_locked=s1.were_locked | s2.were_locked,
        deps=deps,
        order=s1.order | s2.order,
    )


widen = join


def leq(s1: AbstractState, s2: AbstractState) -> bool:
    """Subset on every component; a dependency is smaller when its guards are larger."""
    if not (s1.locked <= s2.locked and s1.unlocked <= s2.unlocked
            and s1.lockset <= s2.lockset and s1.unlockset <= s2.unlockset
            and s1.were_locked <= s2.were_locked and s1.order <= s2.order):
        return False
    for key, guards in s1.deps.items():
        other = s2.deps.get(key)
        if other is None or not other <= guards:
            return False
    return True
