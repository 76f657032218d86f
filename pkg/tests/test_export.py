"""Tests for DOT export."""

from preproj.cartan import quiver_presentation, validate_gcm
from preproj.export import hasse_dot, quiver_dot, sttilt_dot, valued_graph_dot, write_dot


class TestDot:
    def test_valued_graph_labels_non_simply_laced_edge(self):
        text = valued_graph_dot(validate_gcm([[2, -1], [-2, 2]], [2, 1]), "B2")
        assert text.startswith('graph "B2" {')
        assert '"1" -- "2" [label="(1,2)"];' in text
        assert 'xlabel="c=2"' in text

    def test_simply_laced_edge_unlabelled(self):
        text = valued_graph_dot(validate_gcm([[2, -1], [-1, 2]], [1, 1]))
        assert '"1" -- "2";' in text

    def test_quiver_draws_loops_dashed(self):
        p = quiver_presentation(validate_gcm([[2]], [2]))
        text = quiver_dot(p)
        assert text.count("style=dashed") == 1

    def test_hasse(self, b2):
        text = hasse_dot(b2.poset)
        assert text.count("->") == 8
        assert '"e" -> "s1" [label="s1"];' in text

    def test_sttilt_uses_node_labels(self, b2):
        text = sttilt_dot(b2.lattice, "B2")
        assert '"e" [label="Pi"];' in text
        assert '[label="I1e1+Pi e2"]' in text

    def test_write_creates_parents(self, tmp_path):
        path = write_dot("digraph {}\n", tmp_path / "out" / "x.dot")
        assert path.read_text() == "digraph {}\n"
