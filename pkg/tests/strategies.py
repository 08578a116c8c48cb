"""Hypothesis strategies shared by the property suites."""

from hypothesis import strategies as st

from lockgraph.absint import AbstractState
from lockgraph.ir import AccessPath, Location

LOCKS = tuple(AccessPath.parse(n) for n in ("A", "B", "C", "D", "s.m"))
SITES = tuple(Location("t.c", n) for n in (1, 2, 3))

locks = st.sampled_from(LOCKS)
lock_sets = st.frozensets(locks, max_size=4)


@st.composite
def dep_maps(draw):
    deps = {}
    for _ in range(draw(st.integers(0, 4))):
        a, b = draw(st.lists(locks, min_size=2, max_size=2, unique=True))
        guards = draw(lock_sets) - {a, b}
        deps[(a, b, draw(st.sampled_from(SITES)))] = guards
    return deps


states = st.builds(
    AbstractState,
    locked=lock_sets,
    unlocked=lock_sets,
    lockset=lock_sets,
    unlockset=lock_sets,
    were_locked=lock_sets,
    deps=dep_maps(),
    order=st.frozensets(st.tuples(locks, locks), max_size=4),
)
