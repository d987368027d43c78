"""The testing game: session state, the min-rank tester strategy, system
responses, termination detection, and transcript/stats emission.

A session stops in exactly one of three ways: every known state is marked,
the current state is unreachable (the system can avoid all further
coverage), or the move budget ran out.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .model import ModelDecl, build_game_graph
from .providers import ProviderError
from .ranks import UNREACHABLE, RankTable
from .ranks.table import WorkStats

ALL_MARKED = "all_marked"
UNREACHABLE_REASON = "unreachable"
MOVE_CAP = "move_cap"


class SessionError(Exception):
    pass


class AdversaryProtocolError(SessionError):
    """The simulated system returned an illegal response."""


@dataclass(frozen=True)
class MoveRecord:
    index: int
    source: str
    edge: str
    response: str
    newly_marked: bool
    rank_before: int

    def line(self) -> str:
        nm = "1" if self.newly_marked else "0"
        return f"{self.index}\t{self.source}\t{self.edge}\t{self.response}\t{nm}\t{self.rank_before}"


@dataclass
class SessionStats:
    states_total: int = 0
    states_marked: int = 0
    virtual_marked: int = 0
    interior_total: int = 0
    interior_covered: int = 0
    moves: int = 0
    max_rank_R: int = 0
    work: WorkStats = field(default_factory=WorkStats)
    terminated: str | None = None
    lazy: bool = False
    seed: int | None = None

    @property
    def coverage(self) -> int:
        return self.states_marked + self.interior_covered

    @property
    def real_marked(self) -> int:
        return self.states_marked - self.virtual_marked

    def to_json(self) -> dict:
        w = self.work
        return {
            "states_total": self.states_total,
            "states_marked": self.states_marked,
            "real_marked": self.real_marked,
            "virtual_marked": self.virtual_marked,
            "interior_total": self.interior_total,
            "interior_covered": self.interior_covered,
            "coverage": self.coverage,
            "moves": self.moves,
            "max_rank_R": self.max_rank_R,
            "live_size_H_prime": w.live_size_H_prime,
            "relaxations": w.relaxations,
            "queue_ops": w.queue_ops,
            "terminated": self.terminated,
            "lazy": self.lazy,
            "seed": self.seed,
        }


class _EagerSource:
    """Materialized declaration with dead-edge deferral: every edge is known
    up front but handed to the rank engine only when its head is marked."""

    lazy = False

    def __init__(self, decl: ModelDecl):
        build_game_graph(decl)  # validation
        self.decl = decl
        self._by_head: dict[str, list] = {}
        for e in decl.edges:
            self._by_head.setdefault(e.head, []).append(e)

    @property
    def initial(self):
        return self.decl.initial

    def expand(self, v):
        return sorted(self._by_head.get(v, []), key=lambda e: e.id)

    def known_vertices(self):
        return sorted(self.decl.vertices)

    def virtual_vertices(self):
        return self.decl.virtual_vertices


class GameState:
    """One testing-game position with its rank table and statistics."""

    def __init__(self, source, backend=None):
        if isinstance(source, ModelDecl):
            source = _EagerSource(source)
        self.source = source
        self.lazy = bool(getattr(source, "lazy", True))
        self.virtual = set(getattr(source, "virtual_vertices", lambda: ())())
        known = source.known_vertices() if not self.lazy else ()
        initial = source.initial
        self.table = RankTable(initial, source.expand(initial),
                               known_vertices=known, backend=backend)
        self.current = initial
        self.moves = 0
        self.transcript: list[MoveRecord] = []
        self.interior_covered: set[str] = set()
        self.terminated: str | None = None
        self.table.ensure_settled(self.current)

    # -- accessors -----------------------------------------------------------

    @property
    def marked(self) -> set[str]:
        return self.table.marked

    @property
    def coverage(self) -> int:
        return len(self.marked) + len(self.interior_covered)

    def states_total(self) -> int:
        return self.table.vertex_count()

    def all_marked(self) -> bool:
        return len(self.marked) == self.table.vertex_count()

    def edge(self, eid: str):
        return self.table.edges[eid]

    def live_incident(self, v: str) -> list[str]:
        """Live real/virtual edge ids with head v, in id order."""
        return list(self.table.incident_ids(v))

    def current_rank(self) -> float:
        return self.table.ensure_settled(self.current)

    def is_terminal(self) -> bool:
        return self.table.ensure_settled(self.current) == UNREACHABLE

    # -- moves ----------------------------------------------------------------

    def tester_choose(self) -> str:
        """The strategy: a minimal-rank live edge at the current state, ties
        broken by edge id. Its rank is rank(current) - 1 by definition."""
        r = self.table.ensure_settled(self.current)
        if r == UNREACHABLE:
            raise SessionError("tester_choose on a terminal state")
        best_id = None
        best_rank = UNREACHABLE
        for eid in self.table.incident_ids(self.current):
            er = self.table.edge_rank(eid)
            if er < best_rank:
                best_rank = er
                best_id = eid
        assert best_id is not None and best_rank == r - 1, "min edge rank must be rank(current)-1"
        return best_id

    def apply_response(self, eid: str, v: str) -> None:
        """Advance: the system answered `v` to stimulus `eid`. Marks v if
        unmarked (promoting its edges) and credits compressed interiors."""
        e = self.table.edges.get(eid)
        if e is None or e.head != self.current:
            raise SessionError(f"edge {eid} is not incident on {self.current}")
        if v not in e.tail_set():
            raise SessionError(f"response {v} is not in the tail of {eid}")
        rank_before = self.table.ensure_settled(self.current)
        newly = v not in self.marked
        self.moves += 1
        self.transcript.append(
            MoveRecord(self.moves, self.current, eid, v, newly,
                       int(rank_before) if rank_before != UNREACHABLE else -1)
        )
        if newly:
            self.table.apply_marking(v, self.source.expand(v))
        for i in e.interior:
            self.interior_covered.add(i)
        self.current = v
        self.table.ensure_settled(self.current)

    # -- reporting -------------------------------------------------------------

    def interior_total(self) -> int:
        seen = set()
        for e in self.table.live_edge_objects():
            seen.update(e.interior)
        if not self.lazy:
            for e in self.source.decl.edges:
                seen.update(e.interior)
        return len(seen)

    def stats(self, seed=None) -> SessionStats:
        w = self.table.snapshot_work()
        return SessionStats(
            states_total=self.states_total(),
            states_marked=len(self.marked),
            virtual_marked=len(self.marked & self.virtual),
            interior_total=self.interior_total(),
            interior_covered=len(self.interior_covered),
            moves=self.moves,
            max_rank_R=w.max_rank_R,
            work=w,
            terminated=self.terminated,
            lazy=self.lazy,
            seed=seed,
        )


def start_session(source, backend=None) -> GameState:
    """Build the starting position: initial marked and current, its edges
    live, ranks settled for the current state."""
    return GameState(source, backend=backend)


def run_session(source, adversary, max_moves: int = 1_000_000, seed=None,
                backend=None) -> tuple[list[MoveRecord], SessionStats]:
    """Play tester vs adversary to termination (or the move cap).

    Deterministic given the model, the adversary and its seed. Returns the
    full move log and the session statistics.
    """
    if max_moves < 1:
        raise SessionError("max_moves must be >= 1")
    gs = start_session(source, backend=backend)
    while True:
        if gs.all_marked():
            gs.terminated = ALL_MARKED
            break
        if gs.is_terminal():
            gs.terminated = UNREACHABLE_REASON
            break
        if gs.moves >= max_moves:
            gs.terminated = MOVE_CAP
            break
        eid = gs.tester_choose()
        response = adversary.respond(gs, eid)
        tail = gs.edge(eid).tail_set()
        if response not in tail:
            raise AdversaryProtocolError(
                f"adversary answered {response!r} to {eid}, legal: {sorted(tail)}")
        gs.apply_response(eid, response)
    return gs.transcript, gs.stats(seed=seed)


def force_play(gs: GameState, moves: int, adversary) -> int:
    """Keep stimulating past termination (first live edge by id each turn);
    used to double-check that a blocked session really cannot make coverage
    progress. Returns the number of new markings (interiors included)."""
    before = gs.coverage
    for _ in range(moves):
        choices = gs.live_incident(gs.current)
        if not choices:
            break
        eid = choices[0]
        response = adversary.respond(gs, eid)
        gs.apply_response(eid, response)
    return gs.coverage - before


def format_trace(transcript) -> str:
    return "".join(m.line() + "\n" for m in transcript)


def format_stats(stats: SessionStats) -> str:
    return json.dumps(stats.to_json(), indent=2, sort_keys=True) + "\n"
