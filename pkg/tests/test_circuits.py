import pytest

from subarch import (
    Circuit,
    ValidationError,
    concat,
    interaction_circuit,
    parse_circuit,
    path_graph,
    repeat,
    star_graph,
)
from subarch.graphs import Graph


class TestCircuit:
    def test_normalizes_pairs(self):
        c = Circuit.from_gates(3, [(2, 0)])
        assert c.gates == ((0, 2),)

    def test_rejects_repeated_qubit(self):
        with pytest.raises(ValidationError):
            Circuit.from_gates(3, [(1, 1)])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValidationError):
            Circuit.from_gates(2, [(0, 2)])

    def test_interaction_graph(self):
        c = Circuit.from_gates(4, [(0, 1), (1, 2), (0, 1)])
        assert c.interaction_graph().edges == frozenset({(0, 1), (1, 2)})


class TestTextFormat:
    def test_round_trip(self):
        c = Circuit.from_gates(4, [(2, 3), (1, 2), (0, 1), (0, 3)])
        assert parse_circuit(c.text()) == c

    def test_comments_and_blanks(self):
        text = "# header comment\n\nqubits 3\n# a gate\ncx 0 1\n\ncx 1 2\n"
        assert parse_circuit(text) == Circuit.from_gates(3, [(0, 1), (1, 2)])

    def test_unknown_verb_names_line(self):
        with pytest.raises(ValidationError, match="line 2"):
            parse_circuit("qubits 3\nh 0\n")

    def test_missing_header(self):
        with pytest.raises(ValidationError, match="header"):
            parse_circuit("cx 0 1\n")

    def test_out_of_range_names_line(self):
        with pytest.raises(ValidationError, match="line 3"):
            parse_circuit("qubits 2\ncx 0 1\ncx 0 5\n")

    def test_self_gate_names_line(self):
        with pytest.raises(ValidationError, match="line 2"):
            parse_circuit("qubits 2\ncx 1 1\n")

    def test_non_integer_operand(self):
        with pytest.raises(ValidationError, match="integers"):
            parse_circuit("qubits 2\ncx a b\n")


class TestBuilders:
    def test_interaction_circuit_path(self):
        c = interaction_circuit(path_graph(4))
        assert c.gates == ((0, 1), (1, 2), (2, 3))

    def test_interaction_circuit_claw(self):
        c = interaction_circuit(star_graph(4))
        assert c.gates == ((0, 1), (0, 2), (0, 3))

    def test_interaction_circuit_edgeless(self):
        c = interaction_circuit(Graph.from_edges(3, []))
        assert c.gates == ()

    def test_repeat_zero(self):
        c = Circuit.from_gates(2, [(0, 1)])
        assert repeat(c, 0).gates == ()

    def test_repeat_identity(self):
        c = Circuit.from_gates(2, [(0, 1)])
        assert repeat(c, 1) == c

    def test_repeat_negative(self):
        with pytest.raises(ValidationError):
            repeat(Circuit.from_gates(2, [(0, 1)]), -1)

    def test_concat_lengths(self):
        c1 = Circuit.from_gates(3, [(0, 1)])
        c2 = Circuit.from_gates(3, [(1, 2), (0, 2)])
        assert concat(c1, c2).gate_count == 3

    def test_concat_mismatch(self):
        with pytest.raises(ValidationError):
            concat(Circuit.from_gates(2, []), Circuit.from_gates(3, []))
