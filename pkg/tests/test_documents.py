import json

import pytest

from gsflows.documents import (
    ParseError,
    export_dot,
    parse_graph,
    report_certificate,
    report_document,
    report_to_json,
    serialize_graph,
)
from gsflows.generator import gen_random_gs_graph
from gsflows.model import OPEN
from gsflows.realize import realize

SPHERE_DOC = """gsgraph v1
vertex a R a
vertex r R r
edge r a 1
"""


class TestParse:
    def test_two_vertex_document(self):
        g = parse_graph(SPHERE_DOC)
        assert set(g.vertices) == {"a", "r"}
        assert len(g.edges) == 1 and g.edges[0].weight == 1

    def test_case_insensitive_enums(self):
        g = parse_graph("gsgraph v1\nvertex v t SSa\nedge OPEN v 5\n")
        assert str(g.vertices["v"]) == "T,ssa"
        g = parse_graph("gsgraph v1\nvertex v D Ss_S\nedge OPEN v 3\nedge v OPEN 1\n")
        assert str(g.vertices["v"]) == "D,ss_s"

    def test_open_ends(self):
        g = parse_graph("gsgraph v1\nvertex v R s\nedge OPEN v 1\nedge v open 1\n")
        assert g.edges[0].src is OPEN and g.edges[1].dst is OPEN
        assert not g.is_closed()

    def test_comments_and_blanks(self):
        g = parse_graph("gsgraph v1\n\n# a comment\nvertex v R a  # trailing\nedge OPEN v 1\n")
        assert set(g.vertices) == {"v"}

    def test_inadmissible_nature_position(self):
        with pytest.raises(ParseError) as err:
            parse_graph("gsgraph v1\nvertex v R sa\n")
        assert err.value.line == 2 and err.value.col == 12

    def test_duplicate_vertex(self):
        with pytest.raises(ParseError, match="duplicate"):
            parse_graph("gsgraph v1\nvertex v R a\nvertex v R r\n")

    def test_unknown_directive(self):
        with pytest.raises(ParseError, match="unknown directive"):
            parse_graph("gsgraph v1\nnode v R a\n")

    def test_missing_header(self):
        with pytest.raises(ParseError, match="header"):
            parse_graph("vertex v R a\n")

    def test_bad_weight(self):
        with pytest.raises(ParseError, match="integer"):
            parse_graph("gsgraph v1\nvertex v R a\nedge OPEN v x\n")
        with pytest.raises(ParseError, match=">= 1"):
            parse_graph("gsgraph v1\nvertex v R a\nedge OPEN v 0\n")

    def test_unknown_vertex_reference(self):
        with pytest.raises(ParseError, match="unknown vertex"):
            parse_graph("gsgraph v1\nvertex v R a\nedge w v 1\n")


class TestRoundTrip:
    def test_serialize_parse_identity_on_canonical(self):
        doc = serialize_graph(parse_graph(SPHERE_DOC))
        assert serialize_graph(parse_graph(doc)) == doc

    def test_parse_serialize_canonicalizes(self):
        shuffled = "gsgraph v1\nvertex r R r\nvertex a R a\nedge r a 1\n"
        assert serialize_graph(parse_graph(shuffled)) == serialize_graph(parse_graph(SPHERE_DOC))

    def test_generated_graphs_round_trip(self):
        for seed in range(10):
            g = gen_random_gs_graph(seed, size=8)
            doc = serialize_graph(g)
            again = parse_graph(doc)
            assert serialize_graph(again) == doc
            assert again.vertices == g.vertices


class TestDot:
    def test_counts_match(self):
        g = gen_random_gs_graph(3, size=8)
        dot = export_dot(g)
        node_lines = [l for l in dot.splitlines() if "[label=" in l and "->" not in l]
        arc_lines = [l for l in dot.splitlines() if "->" in l]
        assert len(node_lines) == len(g.vertices)
        assert len(arc_lines) == len(g.edges)

    def test_open_ends_get_points(self):
        g = parse_graph("gsgraph v1\nvertex v R s\nedge OPEN v 1\nedge v OPEN 1\n")
        dot = export_dot(g)
        assert dot.count("shape=point") == 2


class TestReport:
    def test_report_fields_and_certificate_round_trip(self):
        g = parse_graph(SPHERE_DOC)
        verdict = realize(g)
        report = report_document(g, verdict)
        assert report["status"] == "realizable"
        assert report["theorem"] == "Thm6"
        assert report["euler"] == {"conley": 2, "nature_formula": "2", "integer": True}
        assert report["fold_balance"] is True
        parsed = json.loads(report_to_json(report))
        cert = report_certificate(parsed)
        assert cert[0].encode() == "O"

    def test_fractional_formatting(self):
        g = parse_graph(SPHERE_DOC)
        report = report_document(g, realize(g))
        assert json.loads(report_to_json(report))["version"] == 1
