"""Simulated systems under test.

Each adversary implements respond(session, edge_id) -> vertex, picking the
system's next state from the chosen edge's tail. They range from fair
(uniform over the tail) to maximally coverage-avoiding (steering into
unreachable states whenever one exists).
"""

from __future__ import annotations

import random

from .ranks import UNREACHABLE
from .ranks.oracle import oracle_ranks


class AdversaryConfigError(Exception):
    pass


class ScriptError(Exception):
    pass


class RandomFair:
    """Uniform seeded choice over the tail: given enough opportunities the
    system exhibits every allowed transition."""

    kind = "random"

    def __init__(self, seed: int = 0):
        self.rng = random.Random(seed)

    def respond(self, gs, eid: str) -> str:
        tail = sorted(gs.edge(eid).tail)
        if len(tail) == 1:
            return tail[0]
        return self.rng.choice(tail)


class Avoider:
    """The strongest legal opponent: answers with an unreachable tail vertex
    when one exists (consulting exact oracle ranks on the current graph), and
    otherwise stalls with a marked tail vertex of maximal rank. When every
    tail vertex is unmarked, marking is unavoidable and it yields the
    smallest id."""

    kind = "avoider"

    def __init__(self):
        self._cache_key = None
        self._vrank = None

    def _ranks(self, gs):
        key = (id(gs), len(gs.marked), gs.states_total())
        if key != self._cache_key:
            self._vrank, _ = oracle_ranks(
                gs.table.known_vertices(), gs.table.live_edge_objects(),
                gs.marked, include_dead=False)
            self._cache_key = key
        return self._vrank

    def respond(self, gs, eid: str) -> str:
        tail = sorted(gs.edge(eid).tail)
        vrank = self._ranks(gs)
        unreachable = [t for t in tail if vrank[t] == UNREACHABLE]
        if unreachable:
            return unreachable[0]
        marked = [t for t in tail if t in gs.marked]
        if marked:
            best, best_rank = None, -1
            for t in marked:  # id order; strict > keeps the smallest id on ties
                if vrank[t] > best_rank:
                    best, best_rank = t, vrank[t]
            return best
        return tail[0]


class SubsetSystem:
    """An implementation for which some specified transitions never happen:
    responds uniformly over a fixed nonempty subset of each tail."""

    kind = "subset"

    def __init__(self, allowed: dict[str, list[str]], seed: int = 0):
        self.allowed = {e: sorted(set(vs)) for e, vs in allowed.items()}
        for e, vs in self.allowed.items():
            if not vs:
                raise AdversaryConfigError(f"allowed[{e}] is empty")
        self.rng = random.Random(seed)

    def respond(self, gs, eid: str) -> str:
        allowed = self.allowed.get(eid)
        if allowed is None:
            raise AdversaryConfigError(f"no allowed set configured for edge {eid}")
        tail = gs.edge(eid).tail_set()
        bad = [v for v in allowed if v not in tail]
        if bad:
            raise AdversaryConfigError(f"allowed[{eid}] contains non-tail vertices {bad}")
        if len(allowed) == 1:
            return allowed[0]
        return self.rng.choice(allowed)


class Scripted:
    """Deterministic replay: answers from a fixed list of vertices."""

    kind = "script"

    def __init__(self, script):
        self.script = list(script)
        self.pos = 0

    def respond(self, gs, eid: str) -> str:
        if self.pos >= len(self.script):
            raise ScriptError(f"script exhausted at move {self.pos + 1}")
        v = self.script[self.pos]
        self.pos += 1
        if v not in gs.edge(eid).tail_set():
            raise ScriptError(f"scripted response {v!r} not in tail of {eid}")
        return v


def parse_allowed_file(text: str) -> dict[str, list[str]]:
    """Lines of `edge <id>: <v1> <v2> ...`; `#` comments allowed."""
    out: dict[str, list[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not line.startswith("edge ") or ":" not in line:
            raise AdversaryConfigError(f"line {lineno}: expected `edge <id>: <v...>`")
        head, _, rest = line.partition(":")
        eid = head.split()[1]
        vs = rest.split()
        if not vs:
            raise AdversaryConfigError(f"line {lineno}: empty allowed set")
        out[eid] = vs
    return out


def make_adversary(kind: str, seed: int = 0, allowed=None, script=None):
    if kind == "random":
        return RandomFair(seed)
    if kind == "avoider":
        return Avoider()
    if kind == "subset":
        if allowed is None:
            raise AdversaryConfigError("subset adversary needs an allowed map")
        return SubsetSystem(allowed, seed)
    if kind == "script":
        if script is None:
            raise AdversaryConfigError("script adversary needs a script")
        return Scripted(script)
    raise AdversaryConfigError(f"unknown adversary kind {kind!r}")
