"""Exhaustive game values for small graphs.

moves_to_mark answers: from this position, how many moves does the tester
need to force the next marking, against the worst system? Computed directly
from the game rules by bounded-horizon search, with no reference to ranks,
so it can serve as an optimality check for the min-rank strategy.

A finite value never exceeds the number of marked states (optimal play
strictly shrinks the value each move, and non-marking moves stay on marked
states), so the horizon is safe at |marked| + 1.
"""

from __future__ import annotations

from .model import ModelDecl
from .ranks import UNREACHABLE

MAX_SOLVE_VERTICES = 8


class TooLargeError(Exception):
    pass


def _live_incident(decl: ModelDecl, marked):
    by_head = {}
    for e in decl.edges:
        if e.head in marked:
            by_head.setdefault(e.head, []).append(e)
    return by_head


def minimax_moves_to_mark(decl: ModelDecl, marked, current) -> float:
    """Exact game value: min over tester strategies of the max over system
    strategies of moves until the next marking; UNREACHABLE if the system
    can avoid marking forever."""
    if len(decl.vertices) > MAX_SOLVE_VERTICES:
        raise TooLargeError(
            f"exhaustive solver capped at {MAX_SOLVE_VERTICES} vertices")
    marked = frozenset(marked)
    by_head = _live_incident(decl, marked)
    horizon = len(marked) + 1
    memo: dict[tuple[str, int], bool] = {}

    def can_mark(u, k):
        # Can the tester force a marking within <= k moves from u?
        if k <= 0:
            return False
        key = (u, k)
        hit = memo.get(key)
        if hit is not None:
            return hit
        memo[key] = False  # cycle within the horizon counts as failure
        ok = False
        for e in by_head.get(u, ()):
            if all(t not in marked or can_mark(t, k - 1) for t in e.tail):
                ok = True
                break
        memo[key] = ok
        return ok

    for k in range(1, horizon + 1):
        if can_mark(current, k):
            return k
    return UNREACHABLE


def strategy_moves_to_mark(decl: ModelDecl, marked, current, choose) -> float:
    """Worst case over system strategies when the tester is pinned to
    `choose(position) -> edge`; same horizon logic as the minimax value."""
    marked = frozenset(marked)
    horizon = len(decl.vertices) + 1
    memo: dict[tuple[str, int], bool] = {}
    by_id = decl.edge_map()

    def within(u, k):
        if k <= 0:
            return False
        key = (u, k)
        hit = memo.get(key)
        if hit is not None:
            return hit
        memo[key] = False
        eid = choose(u)
        if eid is None:  # no playable edge: the tester is stuck
            return False
        e = by_id[eid]
        ok = all(t not in marked or within(t, k - 1) for t in e.tail)
        memo[key] = ok
        return ok

    for k in range(1, horizon + 1):
        if within(current, k):
            return k
    return UNREACHABLE
