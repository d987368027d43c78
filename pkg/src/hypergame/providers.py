"""State-space providers (eager and lazy) and model generators for benchmarks.

A provider answers two questions: where does the session start, and which
edges leave a vertex. The engine asks the latter exactly once per vertex,
when the vertex is marked (or at session start for the initial vertex).
"""

from __future__ import annotations

import random

from .model import Edge, ModelDecl


class ProviderError(Exception):
    """A provider broke its contract; the session aborts."""


class DeclProvider:
    """Lazy provider backed by a parsed declaration: edges are handed out
    only when their head is marked, so the engine sees the state space grow
    exactly as it would with a generated one."""

    lazy = True

    def __init__(self, decl: ModelDecl):
        self.decl = decl
        self._by_head: dict[str, list[Edge]] = {}
        for e in decl.edges:
            self._by_head.setdefault(e.head, []).append(e)
        self._expanded: set[str] = set()

    @property
    def initial(self) -> str:
        return self.decl.initial

    def expand(self, v: str) -> list[Edge]:
        if v in self._expanded:
            raise ProviderError(f"expand({v!r}) called twice in one session")
        self._expanded.add(v)
        return sorted(self._by_head.get(v, []), key=lambda e: e.id)


class CounterMachineProvider:
    """States 0..n with a single increment edge between neighbours; exists to
    exercise truly generated (never materialized) state spaces."""

    lazy = True

    def __init__(self, n: int):
        if n < 0:
            raise ValueError("n must be >= 0")
        self.n = n
        self._expanded: set[str] = set()

    @property
    def initial(self) -> str:
        return "0"

    def expand(self, v: str) -> list[Edge]:
        if v in self._expanded:
            raise ProviderError(f"expand({v!r}) called twice in one session")
        self._expanded.add(v)
        i = int(v)
        if i >= self.n:
            return []
        return [Edge(f"inc{i}", str(i), (str(i + 1),))]


def _pad(i: int, width: int) -> str:
    return f"{i:0{width}d}"


def gen_random_bounded_degree(n: int, out_degree: int, fanout: int, seed: int) -> ModelDecl:
    """Random model: n states, `out_degree` edges per state, each tail a set
    of `fanout` distinct states drawn uniformly excluding the head (so no
    self-loops). Deterministic in the seed; connectivity is not guaranteed.
    """
    if n < 1 or out_degree < 1 or fanout < 1:
        raise ValueError("n, out_degree and fanout must be >= 1")
    width = max(1, len(str(n - 1)))
    vertices = [f"s{_pad(i, width)}" for i in range(n)]
    if n == 1:
        return ModelDecl(initial=vertices[0], vertices=tuple(vertices), edges=())
    if fanout > n - 1:
        raise ValueError(f"fanout {fanout} too large for {n} states (needs distinct tail)")
    rng = random.Random(seed)
    ewidth = max(1, len(str(out_degree - 1)))
    indices = range(n)
    edges = []
    for i, head in enumerate(vertices):
        for j in range(out_degree):
            while True:
                picks = rng.sample(indices, fanout)
                if i not in picks:
                    break
            tail = tuple(vertices[p] for p in sorted(picks))
            edges.append(Edge(f"e{_pad(i, width)}.{_pad(j, ewidth)}", head, tail))
    return ModelDecl(initial=vertices[0], vertices=tuple(vertices),
                     edges=tuple(sorted(edges, key=lambda e: e.id)))


def gen_chain(length: int) -> ModelDecl:
    """A straight chain of `length` states (length - 1 singleton edges)."""
    if length < 1:
        raise ValueError("length must be >= 1")
    width = max(1, len(str(length - 1)))
    vertices = [f"s{_pad(i, width)}" for i in range(length)]
    edges = tuple(
        Edge(f"e{_pad(i, width)}", vertices[i - 1], (vertices[i],))
        for i in range(1, length)
    )
    return ModelDecl(initial=vertices[0], vertices=tuple(vertices), edges=edges)


def gen_strongly_connected(n: int, extra_degree: int, fanout: int, seed: int) -> ModelDecl:
    """A ring of singleton edges (so every state stays forceably reachable)
    plus `extra_degree` random fanout edges per state. Used by fairness and
    completeness tests, which need models that cannot dead-end."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if fanout > n - 1:
        raise ValueError("fanout too large")
    rng = random.Random(seed)
    width = max(1, len(str(n - 1)))
    vertices = [f"s{_pad(i, width)}" for i in range(n)]
    edges = [
        Edge(f"ring{_pad(i, width)}", vertices[i], (vertices[(i + 1) % n],))
        for i in range(n)
    ]
    for i, head in enumerate(vertices):
        others = vertices[:i] + vertices[i + 1 :]
        for j in range(extra_degree):
            tail = tuple(sorted(rng.sample(others, fanout)))
            edges.append(Edge(f"x{_pad(i, width)}.{j}", head, tail))
    return ModelDecl(initial=vertices[0], vertices=tuple(vertices),
                     edges=tuple(sorted(edges, key=lambda e: e.id)))
