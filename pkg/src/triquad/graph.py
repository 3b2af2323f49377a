"""Simple undirected graphs with the degree/edge-count functionals and the
small-subgraph searches (triangles, quadrilaterals, 4-vertex paths) that the
exchange operations and the solver are built on.

Vertices are dense integer ids 0..n-1.  Graphs are immutable after
construction; every search iterates in ascending-id order so that identical
inputs always produce identical witnesses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1.

    Edges are stored as sorted (u, v) pairs with u < v.  Self-loops are
    rejected; duplicate and reversed pairs collapse to one edge.
    """

    __slots__ = ("n", "edges", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        normalized = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            normalized.add((u, v) if u < v else (v, u))
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in normalized:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(normalized))
        object.__setattr__(self, "_adj", tuple(frozenset(s) for s in adj))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={len(self.edges)})"

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise ValueError(f"vertex {v} out of range for n={self.n}")

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return v in self._adj[u]

    def neighbors(self, v: int) -> frozenset[int]:
        self._check_vertex(v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        """Number of neighbors of v."""
        self._check_vertex(v)
        return len(self._adj[v])

    def degree_toward(self, v: int, s: Iterable[int]) -> int:
        """Number of neighbors of v inside the vertex set s.

        v itself must lie outside s; passing v inside s is always a caller
        bug in the counting arguments this supports, so it raises.
        """
        self._check_vertex(v)
        members = frozenset(s)
        if v in members:
            raise ValueError(f"vertex {v} is a member of the target set")
        return len(self._adj[v] & members)

    def cross_edge_count(self, l: Iterable[int], m: Iterable[int]) -> int:
        """Number of edges with one endpoint in l and the other in m.

        The two sets must be disjoint.
        """
        left = frozenset(l)
        right = frozenset(m)
        if left & right:
            raise ValueError(f"sets overlap on {sorted(left & right)}")
        return sum(len(self._adj[v] & right) for v in left)

    def sigma2(self) -> int | float:
        """Minimum degree sum over non-adjacent vertex pairs.

        Returns math.inf when the graph is complete (no non-adjacent pair
        exists), so that threshold comparisons stay total.
        """
        best: int | float = math.inf
        for u in range(self.n):
            du = len(self._adj[u])
            for v in range(u + 1, self.n):
                if v not in self._adj[u]:
                    s = du + len(self._adj[v])
                    if s < best:
                        best = s
        return best

    def min_degree(self) -> int:
        if self.n == 0:
            raise ValueError("empty graph has no degrees")
        return min(len(a) for a in self._adj)

    def max_degree(self) -> int:
        if self.n == 0:
            raise ValueError("empty graph has no degrees")
        return max(len(a) for a in self._adj)

    def induced_subgraph(self, u: Iterable[int]) -> Graph:
        """Subgraph induced by u, relabeled so that ascending original ids
        map to 0..|u|-1."""
        members = sorted(frozenset(u))
        for v in members:
            self._check_vertex(v)
        rank = {v: i for i, v in enumerate(members)}
        keep = frozenset(members)
        edges = [
            (rank[a], rank[b])
            for a, b in self.edges
            if a in keep and b in keep
        ]
        return Graph(len(members), edges)


def induced_edge_count(g: Graph, u: Iterable[int]) -> int:
    """Number of edges of g with both endpoints in u."""
    members = frozenset(u)
    return sum(
        1
        for v in members
        for w in g.neighbors(v)
        if w > v and w in members
    )


@dataclass(frozen=True)
class Cycle:
    """An ordered vertex sequence of length 3 or 4 intended as a cycle of
    some host graph (consecutive vertices adjacent, cyclically)."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) not in (3, 4):
            raise ValueError(f"cycle length must be 3 or 4, got {len(self.vertices)}")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError(f"repeated vertex in cycle {self.vertices}")

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def edge_pairs(self) -> list[tuple[int, int]]:
        """The cycle's edges as sorted pairs, in traversal order."""
        vs = self.vertices
        return [
            (vs[i], vs[(i + 1) % len(vs)])
            if vs[i] < vs[(i + 1) % len(vs)]
            else (vs[(i + 1) % len(vs)], vs[i])
            for i in range(len(vs))
        ]

    def is_in(self, g: Graph) -> bool:
        """True when every cycle edge is present in g."""
        return all(g.has_edge(a, b) for a, b in self.edge_pairs())


def iter_cycles(g: Graph, u: Iterable[int], k: int) -> Iterator[Cycle]:
    """Yield every k-cycle with all vertices in u, each exactly once, in
    lexicographic order of its canonical sequence.

    The canonical sequence starts at the cycle's smallest vertex and runs
    toward its smaller neighbor, which is also the lexicographically
    smallest of the cycle's 2k orderings.
    """
    if k not in (3, 4):
        raise ValueError(f"cycle length must be 3 or 4, got {k}")
    members = sorted(frozenset(u))
    for v in members:
        g._check_vertex(v)
    adj = g._adj

    def extend(path: list[int]) -> Iterator[Cycle]:
        last_adj = adj[path[-1]]
        if len(path) == k:
            # close the cycle; direction canonicalized by path[1] < path[-1]
            if path[0] in last_adj and path[1] < path[-1]:
                yield Cycle(tuple(path))
            return
        for w in members:
            if w <= path[0] or w in path:
                continue
            if w in last_adj:
                path.append(w)
                yield from extend(path)
                path.pop()

    for v0 in members:
        yield from extend([v0])


def find_cycle(g: Graph, u: Iterable[int], k: int) -> Cycle | None:
    """Lexicographically smallest k-cycle inside u, or None."""
    return next(iter_cycles(g, u, k), None)


def iter_paths4(g: Graph, u: Iterable[int]) -> Iterator[tuple[int, int, int, int]]:
    """Yield every 4-vertex path with all vertices in u, each once (the
    orientation with smaller first endpoint), in lexicographic order."""
    members = sorted(frozenset(u))
    for v in members:
        g._check_vertex(v)
    adj = g._adj

    def extend(path: list[int]) -> Iterator[tuple[int, int, int, int]]:
        if len(path) == 4:
            if path[0] < path[3]:
                yield tuple(path)  # type: ignore[misc]
            return
        last_adj = adj[path[-1]]
        for w in members:
            if w in path:
                continue
            if w in last_adj:
                path.append(w)
                yield from extend(path)
                path.pop()

    for v0 in members:
        yield from extend([v0])


def find_path4(g: Graph, u: Iterable[int]) -> tuple[int, int, int, int] | None:
    """Lexicographically smallest 4-vertex path inside u, or None."""
    return next(iter_paths4(g, u), None)


# Small building-block graphs, mostly for tests and fixtures.

def complete(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])
