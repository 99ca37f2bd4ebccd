"""Text renderers for reports, results and Deligne-complex graphs.

This is the SINGLE source of truth for what artintool prints. Human tables
and line-delimited records are both derived from the same Report, and DOT
output is byte-stable for a given ball and path.
"""

from collections.abc import Callable, Iterable

from artintool.deligne import Cube, CubePath, DeligneBall, Vertex, vertex_leq
from artintool.models import CheckItem, OutputFormat, Report

STATUS_WIDTH = 13
PATH_COLOR = "red"


def render_human(report: Report) -> str:
    """Fixed-width table: key, status, label, then indented detail and witness."""
    if not report.items:
        return f"{report.title}\n  (no checks)\n"
    width = max(len(item.key) for item in report.items)
    lines = [report.title]
    for item in report.items:
        lines.append(f"{item.key:<{width}} {item.status.value:<{STATUS_WIDTH}} {item.label}".rstrip())
        lines.extend(_render_extras(item))
    passed = sum(1 for item in report.items if item.status.is_success)
    lines.append(f"{passed}/{len(report.items)} passed")
    return "\n".join(lines) + "\n"


def _render_extras(item: CheckItem) -> list[str]:
    extras = []
    if item.detail:
        extras.append(f"    {item.detail}")
    if item.witness:
        extras.append(f"    witness: {item.witness}")
    return extras


def render_records(report: Report) -> str:
    """One JSON record per item; field order follows CheckItem."""
    return "".join(item.model_dump_json() + "\n" for item in report.items)


_REPORT_RENDERERS: dict[OutputFormat, Callable[[Report], str]] = {
    OutputFormat.HUMAN: render_human,
    OutputFormat.RECORDS: render_records,
}


def render_report(report: Report, output_format: OutputFormat) -> str:
    renderer = _REPORT_RENDERERS.get(output_format)
    if renderer is None:
        raise ValueError(f"Unknown output format: '{output_format}'")
    return renderer(report)


def render_value(key: str, value: object, output_format: OutputFormat) -> str:
    """A single computed value (normal form, lcm, ...) in the requested format."""
    if output_format is OutputFormat.RECORDS:
        return CheckItem.model_validate({"key": key, "status": "ok", "detail": str(value)}).model_dump_json() + "\n"
    return f"{value}\n"


# --- DOT ---


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _edges(vertices: Iterable[Vertex]) -> list[tuple[Vertex, Vertex]]:
    """Codimension-one inclusions: the 1-cubes among the given vertices."""
    ordered = list(vertices)
    return [
        (v, w)
        for v in ordered
        for w in ordered
        if len(w.subset) == len(v.subset) + 1 and vertex_leq(v, w)
    ]


def render_dot(ball: DeligneBall, path: CubePath | None = None) -> str:
    """Graphviz text for a ball, with an optional normal cube path highlighted.

    Vertices are labelled by their coset, each cube of the path becomes a
    cluster and the path's steps are drawn as bold edges.
    """
    vertices = list(ball.vertices)
    if path is not None:
        vertices += [v for cube in path.cubes for v in cube.vertices() if v not in ball]
        vertices += [v for v in path.vertices if v not in ball]
    ordered = sorted(set(vertices), key=Vertex.sort_key)
    ids = {v: f"v{i}" for i, v in enumerate(ordered)}

    lines = [f"graph {_quote(ball.presentation.name)} {{", "  node [shape=box, fontsize=10];"]
    on_path = set(path.vertices) if path is not None else set()
    for v in ordered:
        style = f", color={PATH_COLOR}, penwidth=2" if v in on_path else ""
        lines.append(f"  {ids[v]} [label={_quote(str(v))}{style}];")
    if path is not None:
        lines.extend(_render_clusters(path, ids))
    for v, w in _edges(ordered):
        lines.append(f"  {ids[v]} -- {ids[w]};")
    if path is not None:
        for v, w in zip(path.vertices, path.vertices[1:]):
            lines.append(f"  {ids[v]} -- {ids[w]} [color={PATH_COLOR}, penwidth=3, style=bold];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _render_clusters(path: CubePath, ids: dict[Vertex, str]) -> list[str]:
    lines = []
    for i, cube in enumerate(path.cubes):
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f"    label={_quote(_cube_label(cube))};")
        lines.append("    style=dashed;")
        lines.append("    " + " ".join(f"{ids[v]};" for v in cube.vertices()))
        lines.append("  }")
    return lines


def _cube_label(cube: Cube) -> str:
    return f"{cube} dim {cube.dimension}"
