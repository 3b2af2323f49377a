"""Ground-truth exact partitioner, exhaustive labeled-graph enumeration, and
instance generators.

Everything here is deliberately independent of the exchange operations and
the solver pipeline: exact_partition answers "does a partition exist" by raw
backtracking over the graph alone, so it can referee the constructive code
rather than echo it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterator

from .graph import Cycle, Graph
from .solver import Packing  # shared result container; no solver logic is used

ENUMERATION_CAP = 8  # 2^28 labeled graphs; anything larger is out of reach


def pair_order(n: int) -> list[tuple[int, int]]:
    """Vertex pairs in lexicographic order; bit i of a cursor encodes the
    presence of pair i."""
    return list(combinations(range(n), 2))


def graph_count(n: int) -> int:
    """Number of labeled graphs on n vertices: 2^C(n, 2)."""
    return 1 << comb(n, 2)


def decode_graph(n: int, cursor: int) -> Graph:
    """Graph whose edge set is the bit pattern of cursor over pair_order(n).

    Stateless, so cursor ranges can be decoded by independent workers.
    """
    if not 0 <= cursor < graph_count(n):
        raise ValueError(f"cursor {cursor} out of range for n={n}")
    pairs = pair_order(n)
    return Graph(n, (pairs[i] for i in range(len(pairs)) if (cursor >> i) & 1))


class EnumerationStream:
    """Iterator over all labeled graphs on n vertices in cursor order."""

    def __init__(self, n: int, start: int = 0, stop: int | None = None):
        if n > ENUMERATION_CAP:
            raise ValueError(
                f"exhaustive enumeration is capped at n={ENUMERATION_CAP}, got {n}"
            )
        total = graph_count(n)
        if stop is None:
            stop = total
        if not (0 <= start <= stop <= total):
            raise ValueError(f"bad cursor range [{start}, {stop}) for n={n}")
        self.n = n
        self.cursor = start
        self.stop = stop

    def __iter__(self) -> "EnumerationStream":
        return self

    def __next__(self) -> Graph:
        if self.cursor >= self.stop:
            raise StopIteration
        g = decode_graph(self.n, self.cursor)
        self.cursor += 1
        return g

    def __len__(self) -> int:
        return max(0, self.stop - self.cursor)


def enumerate_labeled_graphs(n: int) -> EnumerationStream:
    """Stream of all 2^C(n, 2) labeled graphs on n vertices."""
    return EnumerationStream(n)


def exact_partition(g: Graph, r: int, s: int) -> Packing | None:
    """Backtracking search for r disjoint triangles plus s disjoint
    quadrilaterals covering g exactly; None when no partition exists.

    Triangles are placed before quadrilaterals, every cycle is anchored at
    its minimum vertex, and candidates are tried in ascending order, so the
    first solution found is deterministic.
    """
    if g.n != 3 * r + 4 * s:
        raise ValueError(f"graph has {g.n} vertices but 3r + 4s = {3 * r + 4 * s}")
    n = g.n
    covered = bytearray(n)
    adj = [sorted(g.neighbors(v)) for v in range(n)]
    triangles: list[Cycle] = []
    quadrilaterals: list[Cycle] = []

    def walk(tri_left: int, quad_left: int, start: int) -> bool:
        v = start
        while v < n and covered[v]:
            v += 1
        if v == n:
            return tri_left == 0 and quad_left == 0
        covered[v] = 1
        free_nbrs = [w for w in adj[v] if w > v and not covered[w]]
        if tri_left:
            for i, a in enumerate(free_nbrs):
                covered[a] = 1
                for b in free_nbrs[i + 1:]:
                    if not covered[b] and g.has_edge(a, b):
                        covered[b] = 1
                        triangles.append(Cycle((v, a, b)))
                        if walk(tri_left - 1, quad_left, v + 1):
                            return True
                        triangles.pop()
                        covered[b] = 0
                covered[a] = 0
        if quad_left:
            for i, a in enumerate(free_nbrs):
                covered[a] = 1
                for c in free_nbrs[i + 1:]:
                    if covered[c]:
                        continue
                    covered[c] = 1
                    for b in sorted(g.neighbors(a)):
                        if b > v and not covered[b] and g.has_edge(b, c):
                            covered[b] = 1
                            quadrilaterals.append(Cycle((v, a, b, c)))
                            if walk(tri_left, quad_left - 1, v + 1):
                                return True
                            quadrilaterals.pop()
                            covered[b] = 0
                    covered[c] = 0
                covered[a] = 0
        covered[v] = 0
        return False

    if walk(r, s, 0):
        return Packing(triangles, quadrilaterals, frozenset())
    return None


# -- seeded generators -------------------------------------------------------


@dataclass(frozen=True)
class GeneratorSpec:
    """Reproducible instance description.

    kind "uniform-random" draws each vertex pair independently with
    probability p; "condition-filtered" rejection-samples uniform draws
    until the degree-sum condition sigma2 >= n + r holds, then (when
    augmentation is enabled) falls back to adding edges at the current
    minimum-degree-sum non-adjacent pair, which is biased but terminating.

    The generator is Python's Mersenne Twister seeded with `seed`; pairs
    are drawn in lexicographic order, so identical specs always yield
    identical graphs.
    """

    kind: str
    n: int
    p: float
    seed: int
    r: int | None = None
    s: int | None = None
    max_rejects: int = 200
    augment: bool = True


def _uniform_draw(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(n, (pair for pair in pair_order(n) if rng.random() < p))


def random_graph(spec: GeneratorSpec) -> Graph:
    if not 0.0 <= spec.p <= 1.0:
        raise ValueError(f"edge probability must be in [0, 1], got {spec.p}")
    rng = random.Random(spec.seed)
    if spec.kind == "uniform-random":
        return _uniform_draw(spec.n, spec.p, rng)
    if spec.kind == "condition-filtered":
        if spec.r is None:
            raise ValueError("condition-filtered generation needs r")
        bound = spec.n + spec.r
        g = _uniform_draw(spec.n, spec.p, rng)
        for _ in range(spec.max_rejects):
            if g.sigma2() >= bound:
                return g
            g = _uniform_draw(spec.n, spec.p, rng)
        if g.sigma2() >= bound:
            return g
        if not spec.augment:
            raise ValueError(
                f"rejection budget of {spec.max_rejects} exhausted for sigma2 >= {bound}"
            )
        edges = set(g.edges)
        while True:
            worst: tuple[int, int, int] | None = None
            for u in range(spec.n):
                for v in range(u + 1, spec.n):
                    if not g.has_edge(u, v):
                        su = g.degree(u) + g.degree(v)
                        if worst is None or su < worst[0]:
                            worst = (su, u, v)
            if worst is None or worst[0] >= bound:
                return g
            edges.add((worst[1], worst[2]))
            g = Graph(spec.n, edges)
    raise ValueError(f"unknown generator kind {spec.kind!r}")


# -- exchange-gadget enumeration ---------------------------------------------


@dataclass(frozen=True)
class GadgetInstance:
    """One host graph for an exchange operation's fixed configuration.

    `args` carries the operation's configuration arguments as plain data
    (vertex tuples / paw roles on local ids); `cross_mask` is the bit
    pattern of present cross edges over the gadget's cross-pair order.
    """

    lemma: str
    graph: Graph
    args: dict
    cross_mask: int
    cross_count: int


@dataclass(frozen=True)
class _GadgetShape:
    n: int
    fixed_edges: tuple[tuple[int, int], ...]
    cross_pairs: tuple[tuple[int, int], ...]
    args: dict
    threshold: int | None = None  # plain cross-count hypothesis
    pendant: int | None = None  # vertex whose cross degree gates f4tri


def _paw_args() -> dict:
    return {"f4": (0, 1, 2, 3)}  # roles u0, u1, u2, u3


_PAW_EDGES = ((0, 1), (0, 2), (0, 3), (1, 2))

_GADGETS: dict[str, _GadgetShape] = {
    "p3p2": _GadgetShape(
        n=5,
        fixed_edges=((0, 1), (1, 2), (3, 4)),
        cross_pairs=tuple((a, b) for a in (0, 1, 2) for b in (3, 4)),
        args={"p": (0, 1, 2), "q": (3, 4)},
        threshold=3,
    ),
    "p3p3": _GadgetShape(
        n=6,
        fixed_edges=((0, 1), (1, 2), (3, 4), (4, 5)),
        cross_pairs=tuple((a, b) for a in (0, 1, 2) for b in (3, 4, 5)),
        args={"p": (0, 1, 2), "q": (3, 4, 5)},
        threshold=4,
    ),
    "c4pair": _GadgetShape(
        n=6,
        fixed_edges=((0, 1), (1, 2), (2, 3), (0, 3)),
        cross_pairs=tuple((a, b) for a in range(4) for b in (4, 5)),
        args={"c": (0, 1, 2, 3), "u": 4, "v": 5},
        threshold=5,
    ),
    "c3pair": _GadgetShape(
        n=5,
        fixed_edges=((0, 1), (1, 2), (0, 2)),
        cross_pairs=tuple((a, b) for a in range(3) for b in (3, 4)),
        args={"c": (0, 1, 2), "u": 3, "v": 4},
        threshold=5,
    ),
    "c4edges": _GadgetShape(
        n=8,
        fixed_edges=((0, 1), (1, 2), (2, 3), (0, 3), (4, 5), (6, 7)),
        cross_pairs=tuple((a, b) for a in range(4) for b in (4, 5, 6, 7)),
        args={"c": (0, 1, 2, 3), "m1": (4, 5), "m2": (6, 7)},
        threshold=9,
    ),
    "c3edges": _GadgetShape(
        n=7,
        fixed_edges=((0, 1), (1, 2), (0, 2), (3, 4), (5, 6)),
        cross_pairs=tuple((a, b) for a in range(3) for b in (3, 4, 5, 6)),
        args={"c": (0, 1, 2), "m1": (3, 4), "m2": (5, 6)},
        threshold=9,
    ),
    "c4p4max": _GadgetShape(
        n=8,
        fixed_edges=((0, 1), (1, 2), (2, 3), (0, 3), (4, 5), (5, 6), (6, 7)),
        cross_pairs=tuple((a, b) for a in range(4) for b in (4, 5, 6, 7)),
        args={"c": (0, 1, 2, 3), "p": (4, 5, 6, 7), "internal": 4},
        threshold=9,
    ),
    "f4quad": _GadgetShape(
        n=8,
        fixed_edges=_PAW_EDGES + ((4, 5), (5, 6), (6, 7), (4, 7)),
        cross_pairs=tuple((a, b) for a in (1, 2, 3) for b in (4, 5, 6, 7)),
        args={**_paw_args(), "cycle": (4, 5, 6, 7)},
        threshold=9,
    ),
    "f4tri": _GadgetShape(
        n=7,
        fixed_edges=_PAW_EDGES + ((4, 5), (5, 6), (4, 6)),
        cross_pairs=tuple((a, b) for a in (1, 2, 3) for b in (4, 5, 6)),
        args={**_paw_args(), "cycle": (4, 5, 6)},
        threshold=None,
        pendant=3,
    ),
    "f4tri7": _GadgetShape(
        n=7,
        fixed_edges=_PAW_EDGES + ((4, 5), (5, 6), (4, 6)),
        cross_pairs=tuple((a, b) for a in (1, 2, 3) for b in (4, 5, 6)),
        args={**_paw_args(), "cycle": (4, 5, 6)},
        threshold=7,
    ),
}

LEMMA_IDS = tuple(_GADGETS)


def _qualifies(shape: _GadgetShape, mask: int, threshold: int | None) -> bool:
    count = mask.bit_count()
    if threshold is not None:
        return count >= threshold
    if shape.threshold is not None:
        return count >= shape.threshold
    # disjunctive hypothesis: pendant reaches the cycle twice, or the
    # periphery sends six edges and the pendant at least one
    pendant_deg = sum(
        1
        for i, (a, _b) in enumerate(shape.cross_pairs)
        if a == shape.pendant and (mask >> i) & 1
    )
    return pendant_deg >= 2 or (count >= 6 and pendant_deg >= 1)


def enumerate_lemma_gadgets(
    lemma: str,
    edge_threshold: int | None = None,
    minimal_only: bool = False,
) -> Iterator[GadgetInstance]:
    """All cross-edge patterns of a lemma's fixed configuration that satisfy
    its hypothesis, with only the mandated internal edges present (the
    hardest case: adding edges can only help a witness search).

    edge_threshold replaces the native hypothesis with a plain cross-count
    bound.  minimal_only keeps just the patterns where removing any single
    cross edge would break the hypothesis.
    """
    try:
        shape = _GADGETS[lemma]
    except KeyError:
        raise ValueError(f"unknown lemma id {lemma!r}; known: {', '.join(LEMMA_IDS)}")
    pairs = shape.cross_pairs
    for mask in range(1 << len(pairs)):
        if not _qualifies(shape, mask, edge_threshold):
            continue
        if minimal_only and any(
            _qualifies(shape, mask & ~(1 << i), edge_threshold)
            for i in range(len(pairs))
            if (mask >> i) & 1
        ):
            continue
        edges = list(shape.fixed_edges)
        edges += [pairs[i] for i in range(len(pairs)) if (mask >> i) & 1]
        yield GadgetInstance(
            lemma=lemma,
            graph=Graph(shape.n, edges),
            args=dict(shape.args),
            cross_mask=mask,
            cross_count=mask.bit_count(),
        )
