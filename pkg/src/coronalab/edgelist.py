"""Plain-text edge-list codec.

Format::

    # optional comment lines anywhere
    n m
    u v        (exactly m lines)

Every line, including the last, ends with a newline.
"""

from __future__ import annotations

from .graph import Graph, GraphError, normalize_edge


class EdgeListError(GraphError):
    def __init__(self, message: str, line: int | None):
        where = "end of input" if line is None else f"line {line}"
        super().__init__(f"{where}: {message}")
        self.line = line


def _ints(text: str, lineno: int) -> tuple[int, int]:
    parts = text.split(" ")
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise EdgeListError(f"expected two non-negative integers separated by one space, got {text!r}", lineno)
    return int(parts[0]), int(parts[1])


def parse_edge_list(text: str) -> Graph:
    if text and not text.endswith("\n"):
        raise EdgeListError("missing trailing newline", None)
    header = None
    edges: list[tuple[int, int]] = []
    seen = set()
    for lineno, line in enumerate(text.split("\n")[:-1], start=1):
        if line.startswith("#"):
            continue
        if header is None:
            header = _ints(line, lineno)
            continue
        n, m = header
        if len(edges) == m:
            raise EdgeListError(f"more than the declared {m} edges", lineno)
        u, v = _ints(line, lineno)
        try:
            e = normalize_edge(u, v, n)
        except GraphError as exc:
            raise EdgeListError(str(exc), lineno) from None
        if e in seen:
            raise EdgeListError(f"duplicate edge {e}", lineno)
        seen.add(e)
        edges.append(e)
    if header is None:
        raise EdgeListError("missing 'n m' header", None)
    n, m = header
    if len(edges) != m:
        raise EdgeListError(f"declared {m} edges, found {len(edges)}", None)
    return Graph(n, tuple(edges))


def render_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    with open(path) as fh:
        return parse_edge_list(fh.read())


def write_graph(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(render_edge_list(g))
