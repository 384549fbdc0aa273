import pytest

from subarch import ValidationError, export_dot, export_subarch_dot, make_subarch, ring_graph
from dotcheck import check_dot


class TestExport:
    def test_valid_dot(self):
        text = export_dot(ring_graph(5), name="ring")
        assert check_dot(text) == 1

    def test_highlight_styles_vertices(self):
        text = export_dot(ring_graph(5), highlight=[0, 1, 2, 3])
        assert check_dot(text) == 1
        assert text.count("fillcolor=gold") == 4

    def test_plain_graph_without_highlight(self):
        text = export_dot(ring_graph(5))
        assert "fillcolor" not in text
        assert check_dot(text) == 1

    def test_deterministic(self):
        assert export_dot(ring_graph(6), [1, 2]) == export_dot(ring_graph(6), [2, 1])

    def test_out_of_range_highlight(self):
        with pytest.raises(ValidationError):
            export_dot(ring_graph(5), [9])

    def test_labels_quoted(self, sycamore):
        text = export_dot(sycamore.graph, name=sycamore.name)
        assert 'label="(3,2)"' in text
        assert check_dot(text) == 1


class TestSubarchExport:
    def test_parent_with_member_highlighted(self):
        ring = ring_graph(5)
        ref = make_subarch(ring, (0, 1, 2, 3), "ring5")
        text = export_subarch_dot(ring, ref)
        assert check_dot(text) == 1
        assert text.count("fillcolor=gold") == 4
        assert "ring5" in text

    def test_vertex_list_accepted(self):
        text = export_subarch_dot(ring_graph(5), [0, 2])
        assert text.count("fillcolor=gold") == 2
