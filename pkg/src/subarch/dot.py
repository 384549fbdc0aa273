"""DOT rendering of architectures with highlighted subarchitecture vertices."""

from __future__ import annotations

from typing import Iterable, Optional, Union

from .enumeration import SubarchRef
from .errors import ValidationError
from .graphs import Graph

_HIGHLIGHT_STYLE = 'style=filled, fillcolor=gold'


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(
    g: Graph,
    highlight: Iterable[int] = (),
    name: str = "architecture",
) -> str:
    """Deterministic DOT text; highlighted vertices are drawn filled."""
    marked = set(highlight)
    for v in marked:
        if not (0 <= v < g.vertex_count):
            raise ValidationError(f"highlight vertex {v} outside 0..{g.vertex_count - 1}")
    lines = [f"graph {_quote(name)} {{"]
    lines.append("  node [shape=circle];")
    for v in range(g.vertex_count):
        attrs = [f"label={_quote(g.label_of(v))}"]
        if v in marked:
            attrs.append(_HIGHLIGHT_STYLE)
        lines.append(f"  {v} [{', '.join(attrs)}];")
    for a, b in g.sorted_edges:
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_subarch_dot(
    parent_graph: Graph,
    subarch: Union[SubarchRef, Iterable[int]],
    name: Optional[str] = None,
) -> str:
    """Parent graph with the subarchitecture's vertices highlighted."""
    if isinstance(subarch, SubarchRef):
        vertices: Iterable[int] = subarch.vertices
        name = name or (subarch.parent or "architecture")
    else:
        vertices = subarch
        name = name or "architecture"
    return export_dot(parent_graph, vertices, name)
