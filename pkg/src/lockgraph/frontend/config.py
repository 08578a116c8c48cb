from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple


@dataclass(frozen=True)
class FrontendConfig:
    lock_fn_names: frozenset[str] = frozenset({"lock", "pthread_mutex_lock"})
    unlock_fn_names: frozenset[str] = frozenset({"unlock", "pthread_mutex_unlock"})
    thread_create_names: frozenset[str] = frozenset({"pthread_create"})
    # Global declarations of these types are recorded in Program.globals.
    lock_type_names: frozenset[str] = field(
        default_factory=lambda: frozenset({"Lock", "pthread_mutex_t", "mutex_t", "pthread_spinlock_t"}))
    strict: bool = False

    def __post_init__(self) -> None:
        clash = self.lock_fn_names & self.unlock_fn_names
        if clash:
            raise ValueError(f"names used for both lock and unlock: {sorted(clash)}")


class SourcePos(NamedTuple):
    file: str
    line: int
    column: int = 0

    def __str__(self) -> str:
        if self.column:
            return f"{self.file}:{self.line}:{self.column}"
        return f"{self.file}:{self.line}"


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "warning" | "error"
    location: SourcePos
    message: str

    def __str__(self) -> str:
        return f"{self.location}: {self.severity}: {self.message}"

    @property
    def is_error(self) -> bool:
        return self.severity == "error"
