"""Two-qubit interaction circuits and their line-oriented text format.

Only two-qubit interactions matter for routing cost, so a circuit is just an
ordered list of logical-qubit pairs. The text format is one header line
"qubits N" followed by one "cx a b" line per gate; "#" starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError
from .graphs import Graph


@dataclass(frozen=True)
class Circuit:
    qubit_count: int
    gates: tuple[tuple[int, int], ...]

    @classmethod
    def from_gates(cls, qubit_count: int, gates) -> "Circuit":
        if qubit_count < 0:
            raise ValidationError("qubit count must be nonnegative")
        normalized = []
        for idx, (a, b) in enumerate(gates):
            if a == b:
                raise ValidationError(f"gate #{idx} acts twice on qubit {a}")
            if not (0 <= a < qubit_count and 0 <= b < qubit_count):
                raise ValidationError(
                    f"gate #{idx} ({a}, {b}) outside qubits 0..{qubit_count - 1}"
                )
            normalized.append((min(a, b), max(a, b)))
        return cls(qubit_count, tuple(normalized))

    @property
    def gate_count(self) -> int:
        return len(self.gates)

    def text(self) -> str:
        lines = [f"qubits {self.qubit_count}"]
        lines.extend(f"cx {a} {b}" for a, b in self.gates)
        return "\n".join(lines) + "\n"

    def interaction_graph(self) -> Graph:
        return Graph.from_edges(self.qubit_count, self.gates)


def parse_circuit(text: str) -> Circuit:
    """Parse the text format; malformed lines are reported by number."""
    qubit_count = None
    gates: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if qubit_count is None:
            if parts[0] != "qubits" or len(parts) != 2:
                raise ValidationError(
                    f"line {lineno}: expected header \"qubits N\", got {line!r}"
                )
            try:
                qubit_count = int(parts[1])
            except ValueError:
                raise ValidationError(f"line {lineno}: qubit count {parts[1]!r} is not an integer")
            if qubit_count < 0:
                raise ValidationError(f"line {lineno}: qubit count must be nonnegative")
            continue
        if parts[0] != "cx":
            raise ValidationError(
                f"line {lineno}: unsupported gate {parts[0]!r} (only two-qubit \"cx\" interactions)"
            )
        if len(parts) != 3:
            raise ValidationError(f"line {lineno}: expected \"cx a b\", got {line!r}")
        try:
            a, b = int(parts[1]), int(parts[2])
        except ValueError:
            raise ValidationError(f"line {lineno}: gate operands must be integers")
        if a == b:
            raise ValidationError(f"line {lineno}: gate acts twice on qubit {a}")
        if not (0 <= a < qubit_count and 0 <= b < qubit_count):
            raise ValidationError(
                f"line {lineno}: qubit outside 0..{qubit_count - 1}"
            )
        gates.append((min(a, b), max(a, b)))
    if qubit_count is None:
        raise ValidationError("missing \"qubits N\" header")
    return Circuit(qubit_count, tuple(gates))


def interaction_circuit(g: Graph) -> Circuit:
    """One gate per edge, in sorted order; runs swap-free on g by construction."""
    return Circuit(g.vertex_count, g.sorted_edges)


def repeat(c: Circuit, times: int) -> Circuit:
    if times < 0:
        raise ValidationError("repetition count must be nonnegative")
    return Circuit(c.qubit_count, c.gates * times)


def concat(c1: Circuit, c2: Circuit) -> Circuit:
    if c1.qubit_count != c2.qubit_count:
        raise ValidationError(
            f"cannot concatenate circuits over {c1.qubit_count} and {c2.qubit_count} qubits"
        )
    return Circuit(c1.qubit_count, c1.gates + c2.gates)
