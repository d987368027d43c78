import pytest
from hypothesis import given, settings, strategies as st

from hypergame.model import (Edge, ModelDecl, ModelError, build_game_graph,
                             parse_model, serialize_model, trivial_edge_id,
                             validate)

from conftest import G1_TEXT


class TestParse:
    def test_g1(self, g1):
        assert g1.initial == "s0"
        assert g1.vertices == ("s0", "s1", "s2")
        assert [e.id for e in g1.edges] == ["a", "b", "c"]
        assert g1.edge_map()["a"].tail == ("s1", "s2")

    def test_empty_tail_rejected(self):
        with pytest.raises(ModelError, match="empty tail"):
            parse_model("initial s0\nedge e s0 ->\n")

    def test_missing_initial(self):
        with pytest.raises(ModelError, match="missing initial"):
            parse_model("edge e s0 -> s1\n")

    def test_duplicate_edge_id(self):
        with pytest.raises(ModelError, match="duplicate edge id"):
            parse_model("initial s0\nedge a s0 -> s1\nedge a s0 -> s2\n")

    def test_duplicate_tail_vertex(self):
        with pytest.raises(ModelError, match="duplicate tail"):
            parse_model("initial s0\nedge a s0 -> s1 s1\n")

    def test_syntax_error_carries_line_number(self):
        with pytest.raises(ModelError, match="line 3"):
            parse_model("initial s0\nedge a s0 -> s1\nwhat is this\n")

    def test_bad_identifier(self):
        with pytest.raises(ModelError, match="bad identifier"):
            parse_model("initial s~0\n")

    def test_comments_and_blanks(self):
        decl = parse_model("# top\n\ninitial s0  # trailing\nedge a s0 -> s1\n")
        assert decl.initial == "s0"
        assert len(decl.edges) == 1

    def test_label_round_trip(self):
        decl = parse_model('initial s0\nedge a s0 -> s1 label "do \\"x\\""\n')
        assert decl.edge_map()["a"].label == 'do "x"'
        assert parse_model(serialize_model(decl)) == decl

    def test_implicit_vertices_default(self):
        decl = parse_model("initial s0\nedge a s0 -> s1 s2\n")
        assert decl.vertices == ("s0", "s1", "s2")

    def test_strict_vertices_leaves_unknowns(self):
        decl = parse_model("initial s0\nedge a s0 -> zz\n", strict_vertices=True)
        codes = [(v.code, v.subject) for v in validate(decl)]
        assert ("UnknownVertex", "zz") in codes


class TestValidate:
    def test_g1_valid(self, g1):
        assert validate(g1) == []

    def test_duplicate_edge_ids_reported(self):
        decl = ModelDecl(initial="s0", vertices=("s0", "s1"),
                         edges=(Edge("a", "s0", ("s1",)), Edge("a", "s0", ("s0",))))
        assert any(v.code == "DuplicateEdgeId" and v.subject == "a"
                   for v in validate(decl))

    def test_unknown_head(self):
        decl = ModelDecl(initial="s0", vertices=("s0",),
                         edges=(Edge("a", "zz", ("s0",)),))
        assert any(v.code == "UnknownVertex" and v.subject == "zz"
                   for v in validate(decl))


class TestGameGraph:
    def test_g1_start_position(self, g1):
        g = build_game_graph(g1)
        assert set(g.trivial_edges()) == {"s1", "s2"}
        assert [e.id for e in g.live_edges()] == ["a"]
        assert sorted(e.id for e in g.dead_edges()) == ["b", "c"]

    def test_g2_start_position(self, g2):
        g = build_game_graph(g2)
        assert set(g.trivial_edges()) == {"s1", "s2"}
        assert [e.id for e in g.live_edges()] == ["e1"]
        assert [e.id for e in g.dead_edges()] == ["e2"]

    def test_single_vertex_model(self):
        g = build_game_graph(parse_model("initial s0\n"))
        assert g.trivial_edges() == {}
        assert g.live_edges() == []

    def test_incident_edges(self, g1):
        g = build_game_graph(g1)
        assert g.incident_edges("s0") == ["a"]
        assert g.incident_edges("s1") == [trivial_edge_id("s1")]
        assert g.incident_edges("s1", include_dead=True) == [trivial_edge_id("s1"), "b"]
        with pytest.raises(ModelError, match="unknown vertex"):
            g.incident_edges("nope")

    def test_incident_edges_g3(self, g3):
        g = build_game_graph(g3)
        assert g.incident_edges("s0") == ["f"]

    def test_build_rejects_invalid(self):
        decl = ModelDecl(initial="s0", vertices=("s0",),
                         edges=(Edge("a", "s0", ("zz",)),))
        with pytest.raises(ModelError):
            build_game_graph(decl)


@st.composite
def decls(draw):
    n = draw(st.integers(min_value=1, max_value=6))
    vs = tuple(f"v{i}" for i in range(n))
    m = draw(st.integers(min_value=0, max_value=8))
    edges = []
    for j in range(m):
        head = draw(st.sampled_from(vs))
        size = draw(st.integers(min_value=1, max_value=n))
        tail = tuple(sorted(draw(st.permutations(vs))[:size]))
        label = draw(st.sampled_from(["", "hit", 'say "hi"', "a\\b"]))
        edges.append(Edge(f"e{j}", head, tail, label=label))
    name = draw(st.sampled_from(["", "m1"]))
    return ModelDecl(initial=vs[0], vertices=vs, edges=tuple(edges), name=name)


@settings(max_examples=150, deadline=None)
@given(decls())
def test_serialize_parse_round_trip(decl):
    assert parse_model(serialize_model(decl)) == decl


@settings(max_examples=50, deadline=None)
@given(decls())
def test_serialization_is_canonical(decl):
    # bit-equal construction for equal declarations
    assert serialize_model(decl) == serialize_model(parse_model(serialize_model(decl)))


def test_round_trip_keeps_virtual_and_interior():
    decl = ModelDecl(
        initial="s0", vertices=("s0", "s2"),
        edges=(Edge("c", "s0", ("s2",), kind="virtual", interior=("s1a", "s1b")),),
        virtual_vertices=frozenset({"s2"}),
    )
    back = parse_model(serialize_model(decl))
    assert back == decl
    assert back.edge_map()["c"].interior == ("s1a", "s1b")


def test_g1_round_trip_exact():
    decl = parse_model(G1_TEXT)
    assert parse_model(serialize_model(decl)) == decl
