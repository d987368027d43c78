import random

import pytest

from hypergame.model import Edge, ModelDecl, parse_model
from hypergame.ranks import available_backends

G1_TEXT = """\
model G1
initial s0
edge a s0 -> s1 s2
edge b s1 -> s0
edge c s2 -> s0
"""

G2_TEXT = """\
model G2
initial s0
edge e1 s0 -> s1
edge e2 s1 -> s2
"""

G3_TEXT = """\
model G3
initial s0
edge f s0 -> s0 s1
"""


@pytest.fixture
def g1():
    return parse_model(G1_TEXT)


@pytest.fixture
def g2():
    return parse_model(G2_TEXT)


@pytest.fixture
def g3():
    return parse_model(G3_TEXT)


@pytest.fixture(params=available_backends())
def backend(request):
    return request.param


def random_decl(rng: random.Random, max_vertices=12, max_edges=20,
                allow_self_loops=True) -> ModelDecl:
    """Small random hypergraph for property tests; fanouts 1..3, self-loops
    included unless disabled."""
    n = rng.randint(1, max_vertices)
    vs = [f"v{i:02d}" for i in range(n)]
    edges = []
    for j in range(rng.randint(0, max_edges)):
        head = rng.choice(vs)
        pool = vs if allow_self_loops else [v for v in vs if v != head]
        if not pool:
            continue
        fanout = rng.randint(1, min(3, len(pool)))
        tail = tuple(sorted(rng.sample(pool, fanout)))
        edges.append(Edge(f"e{j:02d}", head, tail))
    return ModelDecl(initial=vs[0], vertices=tuple(vs), edges=tuple(edges))


def edges_by_head(decl):
    out = {}
    for e in decl.edges:
        out.setdefault(e.head, []).append(e)
    return {h: sorted(es, key=lambda e: e.id) for h, es in out.items()}
