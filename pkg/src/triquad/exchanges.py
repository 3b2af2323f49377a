"""Witness-producing exchange operations on small dense configurations.

Each operation takes a host graph plus a fixed local configuration (a cycle
and a few outside vertices, edges, or a path), checks the operation's
counting hypothesis as a hard gate, and finds its promised structures by
exhaustive search inside the configuration's at most eight vertices.  A
failed hypothesis raises HypothesisError: in the solver it means a counting
argument was misapplied, which is a bug worth surfacing, never a condition
to shrug off.

All searches run in ascending-id order, so identical inputs always return
identical witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .graph import (
    Cycle,
    Graph,
    find_cycle,
    find_path4,
    induced_edge_count,
    iter_cycles,
)


class HypothesisError(Exception):
    """An operation's stated hypothesis does not hold for the given inputs.

    Carries a ledger of the measured quantities so the broken inequality is
    identifiable from the error alone.
    """

    def __init__(self, kind: str, message: str, ledger: dict | None = None):
        super().__init__(f"{kind}: {message}")
        self.kind = kind
        self.ledger = dict(ledger or {})


class WitnessNotFoundError(Exception):
    """The hypothesis held, yet exhaustive search found no witness.

    Raising this would contradict the guarantees the operations encode; it
    exists so the verification suites can distinguish "bad input" from
    "claim failed" rather than trusting the search blindly.
    """


@dataclass(frozen=True)
class F4Config:
    """Role assignment on a paw-shaped 4-vertex remainder.

    The paw is the 4-vertex, 4-edge graph with no quadrilateral: a triangle
    u0-u1-u2 plus the pendant edge u0-u3.  u0 is the unique degree-3 vertex,
    u3 the unique degree-1 vertex, and u1 < u2 breaks the remaining symmetry.
    """

    u0: int
    u1: int
    u2: int
    u3: int

    @property
    def periphery(self) -> tuple[int, int, int]:
        """The three non-hub vertices (u1, u2, u3), whose edges toward the
        packing drive absorption."""
        return (self.u1, self.u2, self.u3)

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset((self.u0, self.u1, self.u2, self.u3))

    def is_in(self, g: Graph) -> bool:
        """True when g induces exactly the paw pattern on these roles."""
        present = [(self.u0, self.u1), (self.u0, self.u2), (self.u0, self.u3),
                   (self.u1, self.u2)]
        absent = [(self.u1, self.u3), (self.u2, self.u3)]
        return (
            len(self.vertex_set) == 4
            and all(g.has_edge(a, b) for a, b in present)
            and not any(g.has_edge(a, b) for a, b in absent)
        )


@dataclass(frozen=True)
class CyclePlusEdge:
    """A cycle plus a vertex-disjoint edge; `attached` is the one external
    vertex the edge touches."""

    cycle: Cycle
    edge: tuple[int, int]
    attached: int


@dataclass(frozen=True)
class CyclePlusPath4:
    """A cycle plus a vertex-disjoint ordered 4-vertex path.  `improved`
    marks the variant where the cycle has strictly more induced edges than
    the cycle it replaces."""

    cycle: Cycle
    path: tuple[int, int, int, int]
    improved: bool = False


@dataclass(frozen=True)
class CyclePlusDense4:
    """A cycle plus a disjoint 4-vertex set inducing at least four edges."""

    cycle: Cycle
    dense: frozenset[int]


@dataclass(frozen=True)
class TwoQuadrilaterals:
    first: Cycle
    second: Cycle


@dataclass(frozen=True)
class TrianglePlusQuadrilateral:
    triangle: Cycle
    quadrilateral: Cycle


ExchangeOutcome = Union[
    CyclePlusEdge,
    CyclePlusPath4,
    CyclePlusDense4,
    TwoQuadrilaterals,
    TrianglePlusQuadrilateral,
]


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


def _require_path(g: Graph, p: tuple[int, ...], order: int, name: str) -> None:
    _require(len(p) == order, f"{name} must have {order} vertices, got {len(p)}")
    _require(len(set(p)) == order, f"{name} has repeated vertices: {p}")
    for a, b in zip(p, p[1:]):
        _require(g.has_edge(a, b), f"{name} is not a path of g: missing edge ({a}, {b})")


def _require_cycle(g: Graph, c: Cycle, k: int, name: str) -> None:
    _require(len(c) == k, f"{name} must be a {k}-cycle, got length {len(c)}")
    _require(c.is_in(g), f"{name} is not a cycle of g: {c.vertices}")


def _require_disjoint(*groups: tuple[str, frozenset[int]]) -> None:
    for i in range(len(groups)):
        for j in range(i + 1, len(groups)):
            (na, sa), (nb, sb) = groups[i], groups[j]
            _require(not (sa & sb), f"{na} and {nb} share vertices {sorted(sa & sb)}")


def exchange_p3_p2(g: Graph, p: tuple[int, int, int], q: tuple[int, int]) -> Cycle:
    """Rearrange a 3-vertex path and a disjoint edge joined by at least
    three cross edges into a quadrilateral on those five vertices."""
    _require_path(g, p, 3, "p")
    _require_path(g, q, 2, "q")
    _require_disjoint(("p", frozenset(p)), ("q", frozenset(q)))
    cross = g.cross_edge_count(p, q)
    if cross < 3:
        raise HypothesisError(
            "cross-edges-below-threshold",
            f"need at least 3 cross edges between p and q, measured {cross}",
            {"measured": cross, "threshold": 3},
        )
    cyc = find_cycle(g, frozenset(p) | frozenset(q), 4)
    if cyc is None:
        raise WitnessNotFoundError(f"no quadrilateral in config p={p}, q={q}")
    return cyc


def exchange_p3_p3(g: Graph, p: tuple[int, int, int], q: tuple[int, int, int]) -> Cycle:
    """Rearrange two disjoint 3-vertex paths joined by at least four cross
    edges into a quadrilateral on those six vertices."""
    _require_path(g, p, 3, "p")
    _require_path(g, q, 3, "q")
    _require_disjoint(("p", frozenset(p)), ("q", frozenset(q)))
    cross = g.cross_edge_count(p, q)
    if cross < 4:
        raise HypothesisError(
            "cross-edges-below-threshold",
            f"need at least 4 cross edges between p and q, measured {cross}",
            {"measured": cross, "threshold": 4},
        )
    cyc = find_cycle(g, frozenset(p) | frozenset(q), 4)
    if cyc is None:
        raise WitnessNotFoundError(f"no quadrilateral in config p={p}, q={q}")
    return cyc


def _exchange_cycle_pair(g: Graph, c: Cycle, u: int, v: int) -> CyclePlusEdge:
    config = sorted(c.vertex_set | {u, v})
    for cyc in iter_cycles(g, config, len(c)):
        rest = sorted(set(config) - cyc.vertex_set)
        a, b = rest
        if not g.has_edge(a, b):
            continue
        external = [w for w in rest if w in (u, v)]
        if len(external) != 1:
            continue
        return CyclePlusEdge(cycle=cyc, edge=(a, b), attached=external[0])
    raise WitnessNotFoundError(
        f"no cycle-plus-edge in config c={c.vertices}, pair=({u}, {v})"
    )


def _pair_gate(g: Graph, c: Cycle, u: int, v: int) -> None:
    _require(u != v, "u and v must be distinct")
    _require(u not in c.vertex_set and v not in c.vertex_set,
             "u and v must lie outside the cycle")
    du = g.degree_toward(u, c.vertex_set)
    dv = g.degree_toward(v, c.vertex_set)
    if g.has_edge(u, v):
        raise HypothesisError(
            "pair-adjacent",
            f"vertices {u} and {v} must be non-adjacent",
            {"u": u, "v": v},
        )
    if du + dv < 5:
        raise HypothesisError(
            "cross-edges-below-threshold",
            f"need degree sum toward the cycle >= 5, measured {du}+{dv}",
            {"measured": du + dv, "threshold": 5},
        )


def exchange_c4_pair(g: Graph, c: Cycle, u: int, v: int) -> CyclePlusEdge:
    """Trade a quadrilateral against two outside non-adjacent vertices that
    send at least five edges into it: yields a new quadrilateral plus a
    disjoint edge touching exactly one of the two outside vertices."""
    _require_cycle(g, c, 4, "c")
    _pair_gate(g, c, u, v)
    return _exchange_cycle_pair(g, c, u, v)


def exchange_c3_pair(g: Graph, c: Cycle, u: int, v: int) -> CyclePlusEdge:
    """Triangle version of exchange_c4_pair: same hypothesis, yields a new
    triangle plus a disjoint edge touching exactly one outside vertex."""
    _require_cycle(g, c, 3, "c")
    _pair_gate(g, c, u, v)
    return _exchange_cycle_pair(g, c, u, v)


def _two_edges_gate(g: Graph, c: Cycle, m1, m2, threshold: int) -> None:
    _require_path(g, m1, 2, "m1")
    _require_path(g, m2, 2, "m2")
    _require_disjoint(
        ("c", c.vertex_set), ("m1", frozenset(m1)), ("m2", frozenset(m2))
    )
    cross = g.cross_edge_count(c.vertex_set, frozenset(m1) | frozenset(m2))
    if cross < threshold:
        raise HypothesisError(
            "cross-edges-below-threshold",
            f"need at least {threshold} cross edges from the cycle to the "
            f"two outside edges, measured {cross}",
            {"measured": cross, "threshold": threshold},
        )


def exchange_c4_two_edges(
    g: Graph, c: Cycle, m1: tuple[int, int], m2: tuple[int, int]
) -> CyclePlusPath4:
    """Rearrange a quadrilateral and two disjoint outside edges joined by at
    least nine cross edges into a quadrilateral plus a disjoint 4-vertex
    path covering all eight vertices."""
    _require_cycle(g, c, 4, "c")
    _two_edges_gate(g, c, m1, m2, 9)
    config = sorted(c.vertex_set | frozenset(m1) | frozenset(m2))
    for cyc in iter_cycles(g, config, 4):
        rest = sorted(set(config) - cyc.vertex_set)
        path = find_path4(g, rest)
        if path is not None:
            return CyclePlusPath4(cycle=cyc, path=path)
    raise WitnessNotFoundError(
        f"no cycle-plus-path in config c={c.vertices}, m1={m1}, m2={m2}"
    )


def exchange_c3_two_edges(
    g: Graph, c: Cycle, m1: tuple[int, int], m2: tuple[int, int]
) -> CyclePlusDense4:
    """Rearrange a triangle and two disjoint outside edges joined by at
    least nine cross edges into a triangle plus a disjoint 4-vertex set
    inducing at least four edges."""
    _require_cycle(g, c, 3, "c")
    _two_edges_gate(g, c, m1, m2, 9)
    config = sorted(c.vertex_set | frozenset(m1) | frozenset(m2))
    for cyc in iter_cycles(g, config, 3):
        rest = frozenset(config) - cyc.vertex_set
        if induced_edge_count(g, rest) >= 4:
            return CyclePlusDense4(cycle=cyc, dense=rest)
    raise WitnessNotFoundError(
        f"no cycle-plus-dense-set in config c={c.vertices}, m1={m1}, m2={m2}"
    )


def exchange_c4_p4_max(
    g: Graph, c: Cycle, p: tuple[int, int, int, int], internal_edge_count_of_c: int
) -> CyclePlusDense4 | CyclePlusPath4:
    """Resolve a quadrilateral against a disjoint 4-vertex path sending at
    least nine edges into it.

    First searches the eight configuration vertices for a quadrilateral with
    strictly more induced edges that still leaves a disjoint 4-vertex path;
    if one exists it is returned as an improvement (CyclePlusPath4 with
    improved=True), which the solver uses to grow its packing potential.
    Otherwise the configuration is locally optimal and a quadrilateral plus
    a disjoint 4-vertex set with at least four induced edges is returned.
    """
    _require_cycle(g, c, 4, "c")
    _require_path(g, p, 4, "p")
    _require_disjoint(("c", c.vertex_set), ("p", frozenset(p)))
    actual = induced_edge_count(g, c.vertex_set)
    _require(
        internal_edge_count_of_c == actual,
        f"claimed internal edge count {internal_edge_count_of_c} differs "
        f"from measured {actual}",
    )
    cross = g.cross_edge_count(c.vertex_set, frozenset(p))
    if cross < 9:
        raise HypothesisError(
            "cross-edges-below-threshold",
            f"need at least 9 cross edges from the cycle to the path, "
            f"measured {cross}",
            {"measured": cross, "threshold": 9},
        )
    config = sorted(c.vertex_set | frozenset(p))
    for cyc in iter_cycles(g, config, 4):
        if induced_edge_count(g, cyc.vertex_set) <= internal_edge_count_of_c:
            continue
        rest = sorted(set(config) - cyc.vertex_set)
        path = find_path4(g, rest)
        if path is not None:
            return CyclePlusPath4(cycle=cyc, path=path, improved=True)
    for cyc in iter_cycles(g, config, 4):
        rest = frozenset(config) - cyc.vertex_set
        if induced_edge_count(g, rest) >= 4:
            return CyclePlusDense4(cycle=cyc, dense=rest)
    raise WitnessNotFoundError(
        f"no dense leftover and no improvement in config c={c.vertices}, p={p}"
    )


def detect_remainder(g: Graph, d: Iterable[int]) -> Cycle | F4Config | None:
    """Classify a 4-vertex remainder: a quadrilateral inside it, the paw
    role assignment when it induces at least four edges without a
    quadrilateral, or None when neither applies."""
    members = sorted(frozenset(d))
    _require(len(members) == 4, f"remainder must have 4 vertices, got {len(members)}")
    cyc = find_cycle(g, members, 4)
    if cyc is not None:
        return cyc
    if induced_edge_count(g, members) < 4:
        return None
    inside = frozenset(members)
    degs = {v: len(g.neighbors(v) & inside) for v in members}
    hubs = [v for v in members if degs[v] == 3]
    pendants = [v for v in members if degs[v] == 1]
    mids = sorted(v for v in members if degs[v] == 2)
    if len(hubs) != 1 or len(pendants) != 1 or len(mids) != 2:
        raise WitnessNotFoundError(
            f"4 vertices with >=4 induced edges and no quadrilateral must "
            f"form a paw; degrees {sorted(degs.values())} on {members}"
        )
    f = F4Config(u0=hubs[0], u1=mids[0], u2=mids[1], u3=pendants[0])
    if not f.is_in(g):
        raise WitnessNotFoundError(f"degree pattern matched but paw edges absent on {members}")
    return f


def _f4_gate(g: Graph, f: F4Config, other: frozenset[int], name: str) -> None:
    _require(f.is_in(g), f"f is not a paw configuration of g: {f}")
    _require_disjoint((name, other), ("f", f.vertex_set))


def absorb_f4_quadrilateral(g: Graph, q: Cycle, f: F4Config) -> TwoQuadrilaterals:
    """Merge a paw remainder into a quadrilateral that receives at least
    nine edges from the paw's periphery: yields two disjoint quadrilaterals
    covering all eight vertices."""
    _require_cycle(g, q, 4, "q")
    _f4_gate(g, f, q.vertex_set, "q")
    cross = g.cross_edge_count(f.periphery, q.vertex_set)
    if cross < 9:
        raise HypothesisError(
            "cross-edges-below-threshold",
            f"need at least 9 edges from the periphery to the quadrilateral, "
            f"measured {cross}",
            {"measured": cross, "threshold": 9},
        )
    config = sorted(q.vertex_set | f.vertex_set)
    for first in iter_cycles(g, config, 4):
        rest = sorted(set(config) - first.vertex_set)
        second = find_cycle(g, rest, 4)
        if second is not None:
            return TwoQuadrilaterals(first=first, second=second)
    raise WitnessNotFoundError(
        f"no two disjoint quadrilaterals in config q={q.vertices}, f={f}"
    )


def _absorb_triangle_search(g: Graph, t: Cycle, f: F4Config) -> TrianglePlusQuadrilateral:
    config = sorted(t.vertex_set | f.vertex_set)
    for tri in iter_cycles(g, config, 3):
        rest = sorted(set(config) - tri.vertex_set)
        quad = find_cycle(g, rest, 4)
        if quad is not None:
            return TrianglePlusQuadrilateral(triangle=tri, quadrilateral=quad)
    raise WitnessNotFoundError(
        f"no triangle-plus-quadrilateral in config t={t.vertices}, f={f}"
    )


def absorb_f4_triangle(g: Graph, t: Cycle, f: F4Config) -> TrianglePlusQuadrilateral:
    """Merge a paw remainder into a triangle when the paw's pendant vertex
    has two neighbors on the triangle, or the periphery sends at least six
    edges and the pendant at least one: yields a disjoint triangle and
    quadrilateral covering all seven vertices."""
    _require_cycle(g, t, 3, "t")
    _f4_gate(g, f, t.vertex_set, "t")
    d3 = g.degree_toward(f.u3, t.vertex_set)
    cross = g.cross_edge_count(f.periphery, t.vertex_set)
    if not (d3 >= 2 or (cross >= 6 and d3 > 0)):
        raise HypothesisError(
            "absorption-hypothesis-failed",
            f"need pendant degree >= 2, or periphery cross >= 6 with pendant "
            f"degree > 0; measured pendant={d3}, cross={cross}",
            {"pendant_degree": d3, "periphery_cross": cross},
        )
    return _absorb_triangle_search(g, t, f)


def absorb_f4_triangle_7(g: Graph, t: Cycle, f: F4Config) -> TrianglePlusQuadrilateral:
    """Variant of absorb_f4_triangle gated only on the periphery sending at
    least seven edges to the triangle (which forces the pendant to reach it,
    since the two mid vertices contribute at most six)."""
    _require_cycle(g, t, 3, "t")
    _f4_gate(g, f, t.vertex_set, "t")
    cross = g.cross_edge_count(f.periphery, t.vertex_set)
    if cross < 7:
        raise HypothesisError(
            "cross-edges-below-threshold",
            f"need at least 7 edges from the periphery to the triangle, "
            f"measured {cross}",
            {"measured": cross, "threshold": 7},
        )
    return absorb_f4_triangle(g, t, f)


def outcome_violations(
    g: Graph, outcome: ExchangeOutcome | Cycle, allowed: Iterable[int]
) -> list[str]:
    """Structural soundness check for any exchange outcome: every claimed
    edge exists in g, payload parts are vertex-disjoint, and all payload
    vertices stay inside the configuration.  Returns a list of violation
    descriptions, empty when sound."""
    allowed_set = frozenset(allowed)
    problems: list[str] = []

    def check_cycle(c: Cycle, label: str) -> frozenset[int]:
        if not c.is_in(g):
            problems.append(f"{label} {c.vertices} has a missing edge")
        return c.vertex_set

    def check_scope(vs: frozenset[int], label: str) -> None:
        if not vs <= allowed_set:
            problems.append(f"{label} escapes the configuration: {sorted(vs - allowed_set)}")

    if isinstance(outcome, Cycle):
        vs = check_cycle(outcome, "cycle")
        check_scope(vs, "cycle")
        return problems

    if isinstance(outcome, CyclePlusEdge):
        vs = check_cycle(outcome.cycle, "cycle")
        a, b = outcome.edge
        if not g.has_edge(a, b):
            problems.append(f"edge ({a}, {b}) missing from g")
        if vs & {a, b}:
            problems.append("cycle and edge overlap")
        if outcome.attached not in (a, b):
            problems.append(f"attached vertex {outcome.attached} not on the edge")
        check_scope(vs | {a, b}, "outcome")
        return problems

    if isinstance(outcome, CyclePlusPath4):
        vs = check_cycle(outcome.cycle, "cycle")
        path = outcome.path
        if len(set(path)) != 4:
            problems.append(f"path {path} has repeated vertices")
        for a, b in zip(path, path[1:]):
            if not g.has_edge(a, b):
                problems.append(f"path edge ({a}, {b}) missing from g")
        if vs & set(path):
            problems.append("cycle and path overlap")
        check_scope(vs | set(path), "outcome")
        return problems

    if isinstance(outcome, CyclePlusDense4):
        vs = check_cycle(outcome.cycle, "cycle")
        if len(outcome.dense) != 4:
            problems.append(f"dense set has {len(outcome.dense)} vertices")
        if induced_edge_count(g, outcome.dense) < 4:
            problems.append(
                f"dense set {sorted(outcome.dense)} induces only "
                f"{induced_edge_count(g, outcome.dense)} edges"
            )
        if vs & outcome.dense:
            problems.append("cycle and dense set overlap")
        check_scope(vs | outcome.dense, "outcome")
        return problems

    if isinstance(outcome, TwoQuadrilaterals):
        va = check_cycle(outcome.first, "first quadrilateral")
        vb = check_cycle(outcome.second, "second quadrilateral")
        if len(outcome.first) != 4 or len(outcome.second) != 4:
            problems.append("both cycles must be quadrilaterals")
        if va & vb:
            problems.append("quadrilaterals overlap")
        check_scope(va | vb, "outcome")
        return problems

    if isinstance(outcome, TrianglePlusQuadrilateral):
        va = check_cycle(outcome.triangle, "triangle")
        vb = check_cycle(outcome.quadrilateral, "quadrilateral")
        if len(outcome.triangle) != 3 or len(outcome.quadrilateral) != 4:
            problems.append("expected a triangle and a quadrilateral")
        if va & vb:
            problems.append("triangle and quadrilateral overlap")
        check_scope(va | vb, "outcome")
        return problems

    problems.append(f"unknown outcome type {type(outcome).__name__}")
    return problems
