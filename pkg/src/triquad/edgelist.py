"""Text edge-list format: a header line "n m", then m lines "u v" with
0 <= u < v < n.  Lines whose first non-blank character is '#' and blank
lines are ignored.  Parsing is strict and every error names its line."""

from __future__ import annotations

from .graph import Graph


class EdgeListError(ValueError):
    """Malformed edge-list document; `line` is the 1-based offending line
    (None when the document ends too early)."""

    def __init__(self, message: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")
        self.line = line


def _significant_lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield i, stripped


def parse_edge_list(text: str) -> Graph:
    """Parse a document into a Graph, validating the header count, id
    ranges, ascending endpoints, and absence of duplicates and self-loops."""
    lines = _significant_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise EdgeListError("missing header line 'n m'") from None
    fields = header.split()
    if len(fields) != 2:
        raise EdgeListError(f"header must be 'n m', got {header!r}", lineno)
    try:
        n, m = int(fields[0]), int(fields[1])
    except ValueError:
        raise EdgeListError(f"header must hold two integers, got {header!r}", lineno) from None
    if n < 0 or m < 0:
        raise EdgeListError(f"header counts must be nonnegative, got {header!r}", lineno)

    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, body in lines:
        if len(edges) == m:
            raise EdgeListError(f"more than the declared {m} edges", lineno)
        fields = body.split()
        if len(fields) != 2:
            raise EdgeListError(f"edge line must be 'u v', got {body!r}", lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise EdgeListError(f"edge line must hold two integers, got {body!r}", lineno) from None
        if u == v:
            raise EdgeListError(f"self-loop at vertex {u}", lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListError(f"edge ({u}, {v}) out of range for n={n}", lineno)
        if u > v:
            raise EdgeListError(f"endpoints must be ascending, got ({u}, {v})", lineno)
        if (u, v) in seen:
            raise EdgeListError(f"duplicate edge ({u}, {v})", lineno)
        seen.add((u, v))
        edges.append((u, v))
    if len(edges) != m:
        raise EdgeListError(f"declared {m} edges but found {len(edges)}")
    return Graph(n, edges)


def emit_edge_list(g: Graph) -> str:
    """Canonical document: header, then edges sorted lexicographically.
    emit(parse(doc)) reproduces canonical documents byte for byte."""
    lines = [f"{g.n} {len(g.edges)}"]
    lines += [f"{u} {v}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"
