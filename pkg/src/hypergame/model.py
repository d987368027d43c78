"""Hypergraph model: declarations, the line-oriented file format, validation,
and construction of the playable game graph with its trivial marker edges.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

REAL = "real"
TRIVIAL = "trivial"
VIRTUAL = "virtual"

_ID_RE = re.compile(r"[A-Za-z0-9_.-]+\Z")
_LABEL_RE = re.compile(r'label\s+"((?:[^"\\]|\\.)*)"')


class ModelError(Exception):
    """Invalid model text or declaration."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Edge:
    """One hyperedge: a stimulus deliverable at `head`, leading into `tail`.

    `interior` lists vertices folded away by chain compression; they are
    credited as covered whenever the edge fires in a session.
    """

    id: str
    head: str
    tail: tuple[str, ...]
    kind: str = REAL
    label: str = ""
    interior: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind == TRIVIAL:
            if self.tail:
                raise ModelError(f"trivial edge {self.id} must have an empty tail")
        elif not self.tail:
            raise ModelError(f"edge {self.id}: empty tail on {self.kind} edge")
        if len(set(self.tail)) != len(self.tail):
            raise ModelError(f"edge {self.id}: duplicate tail vertex")

    def tail_set(self):
        return frozenset(self.tail)


@dataclass(frozen=True)
class ModelDecl:
    """A parsed model: vertex set, initial vertex, and its real/virtual edges."""

    initial: str
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    name: str = ""
    virtual_vertices: frozenset[str] = frozenset()

    def vertex_set(self):
        return frozenset(self.vertices)

    def edge_map(self):
        return {e.id: e for e in self.edges}

    def with_edges(self, edges, extra_vertices=(), extra_virtual=(), drop_vertices=()):
        verts = [v for v in self.vertices if v not in set(drop_vertices)]
        verts.extend(v for v in extra_vertices if v not in verts)
        return replace(
            self,
            vertices=tuple(sorted(verts)),
            edges=tuple(sorted(edges, key=lambda e: e.id)),
            virtual_vertices=self.virtual_vertices | frozenset(extra_virtual),
        )


@dataclass(frozen=True)
class Violation:
    """A single validation finding; validation returns data, never raises."""

    code: str
    subject: str
    detail: str = ""

    def __str__(self):
        msg = f"{self.code}({self.subject})"
        return f"{msg}: {self.detail}" if self.detail else msg


def _check_id(token, line):
    if not _ID_RE.match(token):
        raise ModelError(f"bad identifier {token!r}", line)
    return token


def parse_model(text: str, strict_vertices: bool = False) -> ModelDecl:
    """Parse the line-oriented model format.

    By default vertices may be introduced implicitly by appearing in an edge
    line; with `strict_vertices` only declared vertices enter the vertex set
    and undeclared references are left for `validate` to report.
    """
    name = ""
    initial = None
    declared: list[str] = []
    virtual_vertices: set[str] = set()
    edges: list[Edge] = []
    edge_ids: set[str] = set()
    implicit: list[str] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        kw = fields[0]
        if kw == "model":
            if len(fields) != 2:
                raise ModelError("expected: model <name>", lineno)
            if name:
                raise ModelError("duplicate model line", lineno)
            name = _check_id(fields[1], lineno)
        elif kw == "initial":
            if len(fields) != 2:
                raise ModelError("expected: initial <vertex>", lineno)
            if initial is not None:
                raise ModelError("duplicate initial line", lineno)
            initial = _check_id(fields[1], lineno)
            implicit.append(initial)
        elif kw == "vertex":
            if len(fields) == 3 and fields[2] == "virtual":
                virtual_vertices.add(fields[1])
            elif len(fields) != 2:
                raise ModelError("expected: vertex <id> [virtual]", lineno)
            declared.append(_check_id(fields[1], lineno))
        elif kw == "edge":
            edges.append(_parse_edge_line(line, fields, lineno, edge_ids))
            implicit.append(edges[-1].head)
            implicit.extend(edges[-1].tail)
            # interiors are not graph vertices; they only enter coverage
        else:
            raise ModelError(f"unknown keyword {kw!r}", lineno)

    if initial is None:
        raise ModelError("missing initial line")

    vertices = set(declared)
    vertices.add(initial)
    if not strict_vertices:
        vertices.update(implicit)
    return ModelDecl(
        initial=initial,
        vertices=tuple(sorted(vertices)),
        edges=tuple(sorted(edges, key=lambda e: e.id)),
        name=name,
        virtual_vertices=frozenset(virtual_vertices),
    )


def _parse_edge_line(line, fields, lineno, edge_ids):
    # edge <id> <head> -> <t1> ... [label "<text>"] [virtual] [interior <v1> ...]
    label = ""
    m = _LABEL_RE.search(line)
    if m:
        label = m.group(1).replace('\\"', '"').replace("\\\\", "\\")
        line = (line[: m.start()] + line[m.end() :]).strip()
        fields = line.split()
    if len(fields) < 4 or fields[3] != "->":
        raise ModelError("expected: edge <id> <head> -> <tails...>", lineno)
    eid = _check_id(fields[1], lineno)
    if eid in edge_ids:
        raise ModelError(f"duplicate edge id {eid!r}", lineno)
    edge_ids.add(eid)
    head = _check_id(fields[2], lineno)

    rest = fields[4:]
    kind = REAL
    interior: list[str] = []
    if "virtual" in rest:
        i = rest.index("virtual")
        kind = VIRTUAL
        rest = rest[:i] + rest[i + 1 :]
    if "interior" in rest:
        i = rest.index("interior")
        interior = [_check_id(t, lineno) for t in rest[i + 1 :]]
        rest = rest[:i]
    tail = [_check_id(t, lineno) for t in rest]
    if not tail:
        raise ModelError(f"edge {eid}: empty tail on real edge", lineno)
    if len(set(tail)) != len(tail):
        raise ModelError(f"edge {eid}: duplicate tail vertex", lineno)
    try:
        return Edge(eid, head, tuple(tail), kind=kind, label=label, interior=tuple(interior))
    except ModelError as exc:
        raise ModelError(str(exc), lineno) from None


def serialize_model(decl: ModelDecl) -> str:
    """Emit the model in canonical form: sorted ids, one construct per line.

    parse_model(serialize_model(d)) == d for any valid declaration.
    """
    out = []
    if decl.name:
        out.append(f"model {decl.name}")
    out.append(f"initial {decl.initial}")
    for v in sorted(decl.vertices):
        out.append(f"vertex {v} virtual" if v in decl.virtual_vertices else f"vertex {v}")
    for e in sorted(decl.edges, key=lambda e: e.id):
        parts = [f"edge {e.id} {e.head} ->"]
        parts.extend(sorted(e.tail))
        if e.label:
            escaped = e.label.replace("\\", "\\\\").replace('"', '\\"')
            parts.append(f'label "{escaped}"')
        if e.kind == VIRTUAL:
            parts.append("virtual")
        if e.interior:
            parts.append("interior")
            parts.extend(e.interior)
        out.append(" ".join(parts))
    return "\n".join(out) + "\n"


def validate(decl: ModelDecl) -> list[Violation]:
    """Return every invariant violation; an empty list means the declaration
    can be turned into a game graph."""
    out = []
    vset = decl.vertex_set()
    if decl.initial not in vset:
        out.append(Violation("UnknownVertex", decl.initial, "initial vertex not declared"))
    seen = set()
    for e in decl.edges:
        if e.id in seen:
            out.append(Violation("DuplicateEdgeId", e.id))
        seen.add(e.id)
        if e.kind == TRIVIAL:
            out.append(Violation("TrivialEdgeInDecl", e.id, "marker edges are implicit"))
            continue
        if not e.tail:
            out.append(Violation("EmptyTail", e.id))
        if e.head not in vset:
            out.append(Violation("UnknownVertex", e.head, f"head of edge {e.id}"))
        for t in e.tail:
            if t not in vset:
                out.append(Violation("UnknownVertex", t, f"tail of edge {e.id}"))
    return out


def trivial_edge_id(vertex: str) -> str:
    # "!" is outside the id alphabet, so marker ids can never collide.
    return "!" + vertex


@dataclass(frozen=True)
class GameGraph:
    """Indexed, immutable view of a declaration at its starting position:
    the initial vertex marked, its edges live, every other real edge dead."""

    decl: ModelDecl
    marked: frozenset[str] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.marked is None:
            object.__setattr__(self, "marked", frozenset({self.decl.initial}))

    @property
    def initial(self):
        return self.decl.initial

    def trivial_edges(self):
        """Map vertex -> marker edge id, for unmarked non-initial vertices."""
        return {
            v: trivial_edge_id(v)
            for v in self.decl.vertices
            if v not in self.marked
        }

    def live_edges(self):
        return [e for e in self.decl.edges if e.head in self.marked]

    def dead_edges(self):
        return [e for e in self.decl.edges if e.head not in self.marked]

    def incident_edges(self, vertex: str, include_dead: bool = False) -> list[str]:
        """Edge ids with head `vertex` (marker edge first), in id order."""
        if vertex not in self.decl.vertex_set():
            raise ModelError(f"unknown vertex {vertex!r}")
        out = []
        if vertex != self.initial and vertex not in self.marked:
            out.append(trivial_edge_id(vertex))
        live = vertex in self.marked
        for e in sorted(self.decl.edges, key=lambda e: e.id):
            if e.head == vertex and (live or include_dead):
                out.append(e.id)
        return out


def build_game_graph(decl: ModelDecl) -> GameGraph:
    """Validate and index a declaration."""
    problems = validate(decl)
    if problems:
        raise ModelError("; ".join(str(p) for p in problems))
    return GameGraph(decl)
