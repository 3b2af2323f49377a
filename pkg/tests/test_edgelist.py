import pytest
from hypothesis import given

from triquad import EdgeListError, Graph, complete, emit_edge_list, parse_edge_list

from conftest import small_graphs


class TestParse:
    def test_triangle(self):
        assert parse_edge_list("3 3\n0 1\n1 2\n0 2\n") == complete(3)

    def test_comments_and_blanks_ignored(self):
        doc = "# a triangle\n\n3 3\n0 1\n# middle note\n1 2\n\n0 2\n"
        assert parse_edge_list(doc) == complete(3)

    def test_isolated_vertices(self):
        g = parse_edge_list("5 1\n1 3\n")
        assert g.n == 5 and g.edges == frozenset({(1, 3)})

    def test_self_loop_reports_line(self):
        with pytest.raises(EdgeListError, match="line 2: self-loop"):
            parse_edge_list("2 1\n0 0\n")

    def test_count_mismatch_too_few(self):
        with pytest.raises(EdgeListError, match="declared 2 edges but found 1"):
            parse_edge_list("3 2\n0 1\n")

    def test_count_mismatch_too_many(self):
        with pytest.raises(EdgeListError, match="line 4: more than the declared"):
            parse_edge_list("3 2\n0 1\n1 2\n0 2\n")

    def test_out_of_range_reports_line(self):
        with pytest.raises(EdgeListError, match="line 3.*out of range"):
            parse_edge_list("3 2\n0 1\n1 3\n")

    def test_duplicate_edge(self):
        with pytest.raises(EdgeListError, match="line 3: duplicate"):
            parse_edge_list("3 2\n0 1\n0 1\n")

    def test_descending_endpoints_rejected(self):
        with pytest.raises(EdgeListError, match="ascending"):
            parse_edge_list("3 1\n1 0\n")

    def test_missing_header(self):
        with pytest.raises(EdgeListError, match="missing header"):
            parse_edge_list("# nothing here\n")

    def test_malformed_header(self):
        with pytest.raises(EdgeListError, match="line 1: header"):
            parse_edge_list("3 two\n")

    def test_junk_edge_line(self):
        with pytest.raises(EdgeListError, match="line 2"):
            parse_edge_list("3 1\n0 1 2\n")


class TestEmit:
    def test_canonical_output(self):
        g = Graph(3, [(2, 1), (0, 2)])
        assert emit_edge_list(g) == "3 2\n0 2\n1 2\n"

    def test_empty_graph(self):
        assert emit_edge_list(Graph(4)) == "4 0\n"

    def test_emit_parse_emit_is_identity(self):
        doc = emit_edge_list(complete(5))
        assert emit_edge_list(parse_edge_list(doc)) == doc

    @given(small_graphs())
    def test_round_trip_everywhere(self, g):
        assert parse_edge_list(emit_edge_list(g)) == g
