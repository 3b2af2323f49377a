"""Constructive partition pipeline: build an initial packing of triangles
and quadrilaterals with a 4-vertex remainder, densify the remainder through
exchange moves, then absorb it into a final quadrilateral.

The pipeline realizes the guarantee that a graph on n = 3r + 4s vertices
with every non-adjacent pair's degree sum at least n + r splits into r
triangles and s quadrilaterals (the absorption step additionally needs
r >= 2s - 2).  Every step is driven by a pigeonhole count that the code
asserts before applying the matching exchange; a failed count raises with
the measured ledger, turning hypothesis violations into diagnosable errors
instead of silent misbehavior.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .exchanges import (
    CyclePlusPath4,
    F4Config,
    HypothesisError,
    absorb_f4_quadrilateral,
    absorb_f4_triangle,
    absorb_f4_triangle_7,
    detect_remainder,
    exchange_c3_pair,
    exchange_c3_two_edges,
    exchange_c4_pair,
    exchange_c4_two_edges,
    exchange_c4_p4_max,
)
from .graph import Cycle, Graph, find_cycle, find_path4, induced_edge_count


class SolveError(HypothesisError):
    """A solver stage could not proceed; carries the stage tag and the
    measured counting ledger that identifies which bound broke."""

    def __init__(self, stage: str, kind: str, message: str, ledger: dict | None = None):
        super().__init__(kind, message, ledger)
        self.stage = stage


@dataclass
class Packing:
    """Disjoint triangles and quadrilaterals plus the uncovered remainder.

    Valid packings keep all cycles and the remainder pairwise disjoint and
    jointly covering the host graph's vertices.
    """

    triangles: list[Cycle]
    quadrilaterals: list[Cycle]
    remainder: frozenset[int]

    def scan_cycles(self) -> list[tuple[str, int, Cycle]]:
        """Cycles in pigeonhole scan order: quadrilaterals first, then
        triangles, ascending index."""
        out = [("quad", i, c) for i, c in enumerate(self.quadrilaterals)]
        out += [("tri", i, c) for i, c in enumerate(self.triangles)]
        return out

    def covered(self) -> frozenset[int]:
        vs: set[int] = set(self.remainder)
        for c in self.triangles + self.quadrilaterals:
            vs |= c.vertex_set
        return frozenset(vs)

    def violations(self, g: Graph) -> list[str]:
        """Structural problems: invalid cycles, overlaps, incomplete cover."""
        problems = []
        total = 0
        for c in self.triangles:
            total += 3
            if len(c) != 3:
                problems.append(f"triangle slot holds a {len(c)}-cycle")
            if not c.is_in(g):
                problems.append(f"missing edge in triangle {c.vertices}")
        for c in self.quadrilaterals:
            total += 4
            if len(c) != 4:
                problems.append(f"quadrilateral slot holds a {len(c)}-cycle")
            if not c.is_in(g):
                problems.append(f"missing edge in quadrilateral {c.vertices}")
        total += len(self.remainder)
        cov = self.covered()
        if len(cov) != total:
            problems.append("not disjoint: some vertex appears twice")
        if cov != frozenset(range(g.n)):
            problems.append(f"does not cover the graph: missing {sorted(set(range(g.n)) - cov)}")
        return problems


@dataclass(frozen=True, order=True)
class Potential:
    """Lexicographic progress measure of the refinement loop.

    stage: 0 = remainder has no two independent edges, 1 = it has two
    independent edges, 2 = it contains a 4-vertex path, 3 = it induces at
    least four edges, 4 = it contains a quadrilateral or the packing is
    complete.  m_value totals the induced edge counts over all packed
    cycles.
    """

    stage: int
    m_value: int

    @classmethod
    def of(cls, g: Graph, p: Packing) -> "Potential":
        m = sum(
            induced_edge_count(g, c.vertex_set)
            for c in p.triangles + p.quadrilaterals
        )
        return cls(stage=_stage_of(g, p), m_value=m)


@dataclass(frozen=True)
class ConditionReport:
    """Measured hypothesis flags for a (graph, r, s) instance."""

    n: int
    r: int
    s: int
    sigma2: int | float
    order_ok: bool
    sigma_ok: bool
    ratio_ok: bool


def check_conditions(g: Graph, r: int, s: int) -> ConditionReport:
    """Report whether the instance satisfies the order, degree-sum, and
    triangle/quadrilateral ratio hypotheses.  Reporting only; never gates."""
    if r < 1 or s < 1:
        raise ValueError(f"r and s must be positive, got r={r}, s={s}")
    sigma = g.sigma2()
    return ConditionReport(
        n=g.n,
        r=r,
        s=s,
        sigma2=sigma,
        order_ok=(g.n == 3 * r + 4 * s),
        sigma_ok=(sigma >= g.n + r),
        ratio_ok=(r >= 2 * s - 2),
    )


def _remainder_edges(g: Graph, d: Iterable[int]) -> list[tuple[int, int]]:
    members = sorted(d)
    return [
        (a, b)
        for i, a in enumerate(members)
        for b in members[i + 1:]
        if g.has_edge(a, b)
    ]


def _independent_edge_pair(
    edges: list[tuple[int, int]],
) -> tuple[tuple[int, int], tuple[int, int]] | None:
    for i, e1 in enumerate(edges):
        for e2 in edges[i + 1:]:
            if not (set(e1) & set(e2)):
                return e1, e2
    return None


def _stage_of(g: Graph, p: Packing) -> int:
    d = p.remainder
    if not d:
        return 4
    if len(d) != 4:
        raise ValueError(f"remainder must have 0 or 4 vertices, got {len(d)}")
    if find_cycle(g, d, 4) is not None:
        return 4
    edges = _remainder_edges(g, d)
    if len(edges) >= 4:
        return 3
    if find_path4(g, d) is not None:
        return 2
    if _independent_edge_pair(edges) is not None:
        return 1
    return 0


# -- initial packing ---------------------------------------------------------

_EXACT_NODE_DEFAULT = 10 ** 6


class _BudgetExhausted(Exception):
    pass


def _greedy_harvest(g: Graph, r: int, s: int) -> Packing | None:
    """Grab lexicographically smallest cycles while they last: r triangles,
    then s - 1 quadrilaterals.  Fast path; returns None when it stalls."""
    free = set(range(g.n))
    triangles: list[Cycle] = []
    quadrilaterals: list[Cycle] = []
    for _ in range(r):
        c = find_cycle(g, free, 3)
        if c is None:
            return None
        triangles.append(c)
        free -= c.vertex_set
    for _ in range(s - 1):
        c = find_cycle(g, free, 4)
        if c is None:
            return None
        quadrilaterals.append(c)
        free -= c.vertex_set
    return Packing(triangles, quadrilaterals, frozenset(free))


def _exact_harvest(g: Graph, r: int, s: int, budget: int | None) -> Packing | None:
    """Backtracking over all placements of r triangles, s - 1
    quadrilaterals, and a 4-vertex leftover, anchored at the smallest
    uncovered vertex.  Deterministic ascending order; optional node budget.
    """
    n = g.n
    covered = bytearray(n)
    adj = [sorted(g.neighbors(v)) for v in range(n)]
    triangles: list[Cycle] = []
    quadrilaterals: list[Cycle] = []
    leftovers: list[int] = []
    nodes = 0

    def uncovered_after(start: int) -> int | None:
        for v in range(start, n):
            if not covered[v]:
                return v
        return None

    def walk(tri_left: int, quad_left: int, rem_left: int, start: int) -> bool:
        nonlocal nodes
        v = uncovered_after(start)
        if v is None:
            return tri_left == 0 and quad_left == 0 and rem_left == 0
        nodes += 1
        if budget is not None and nodes > budget:
            raise _BudgetExhausted
        covered[v] = 1
        if tri_left:
            nbrs = [w for w in adj[v] if w > v and not covered[w]]
            for i, a in enumerate(nbrs):
                covered[a] = 1
                for b in nbrs[i + 1:]:
                    if not covered[b] and g.has_edge(a, b):
                        covered[b] = 1
                        triangles.append(Cycle((v, a, b)))
                        if walk(tri_left - 1, quad_left, rem_left, v + 1):
                            return True
                        triangles.pop()
                        covered[b] = 0
                covered[a] = 0
        if quad_left:
            nbrs = [w for w in adj[v] if w > v and not covered[w]]
            for i, a in enumerate(nbrs):
                covered[a] = 1
                for c in nbrs[i + 1:]:
                    if covered[c]:
                        continue
                    covered[c] = 1
                    for b in sorted(g.neighbors(a)):
                        if b > v and not covered[b] and g.has_edge(b, c):
                            covered[b] = 1
                            quadrilaterals.append(Cycle((v, a, b, c)))
                            if walk(tri_left, quad_left - 1, rem_left, v + 1):
                                return True
                            quadrilaterals.pop()
                            covered[b] = 0
                    covered[c] = 0
                covered[a] = 0
        if rem_left:
            leftovers.append(v)
            if walk(tri_left, quad_left, rem_left - 1, v + 1):
                return True
            leftovers.pop()
        covered[v] = 0
        return False

    if walk(r, s - 1, 4, 0):
        return Packing(triangles, quadrilaterals, frozenset(leftovers))
    return None


def initial_packing(g: Graph, r: int, s: int, budget: int | None = None) -> Packing:
    """Pack r triangles and s - 1 quadrilaterals, leaving a 4-vertex
    remainder: greedy harvesting first, exact backtracking as fallback.

    budget caps the backtracking nodes; None means unlimited up to 24
    vertices and 10**6 nodes beyond that.
    """
    if r < 1 or s < 1:
        raise ValueError(f"r and s must be positive, got r={r}, s={s}")
    if g.n != 3 * r + 4 * s:
        raise SolveError(
            "initial-packing",
            "order-mismatch",
            f"graph has {g.n} vertices but 3r + 4s = {3 * r + 4 * s}",
            {"n": g.n, "r": r, "s": s},
        )
    greedy = _greedy_harvest(g, r, s)
    if greedy is not None:
        return greedy
    if budget is None and g.n > 24:
        budget = _EXACT_NODE_DEFAULT
    sigma = g.sigma2()
    sigma_ok = sigma >= g.n + r
    try:
        exact = _exact_harvest(g, r, s, budget)
    except _BudgetExhausted:
        raise SolveError(
            "initial-packing",
            "budget-exhausted",
            f"no packing within {budget} nodes; the degree-sum hypothesis "
            f"{'held, so a larger budget may succeed' if sigma_ok else 'did not hold'}",
            {"budget": budget, "sigma2": sigma, "sigma_ok": sigma_ok},
        ) from None
    if exact is None:
        raise SolveError(
            "initial-packing",
            "no-initial-packing",
            f"the graph has no {r} triangles plus {s - 1} quadrilaterals; "
            f"degree-sum hypothesis {'held (unexpected)' if sigma_ok else 'did not hold'}",
            {"sigma2": sigma, "sigma_ok": sigma_ok, "required": g.n + r},
        )
    return exact


# -- remainder refinement ----------------------------------------------------


def _pigeonhole_cycle(
    g: Graph,
    p: Packing,
    sources: frozenset[int],
    threshold: int,
    stage: str,
    claim: str,
    log: list | None,
) -> tuple[str, int, Cycle, int]:
    """First packed cycle (quadrilaterals before triangles) receiving at
    least `threshold` edges from `sources`; the counting arguments guarantee
    one exists, so exhausting the scan reports a hypothesis violation."""
    counts = []
    for kind, idx, cyc in p.scan_cycles():
        cnt = g.cross_edge_count(sources, cyc.vertex_set)
        counts.append(cnt)
        if cnt >= threshold:
            if log is not None:
                log.append(
                    {"stage": stage, "target": f"{kind}[{idx}]",
                     "measured": cnt, "threshold": threshold,
                     "ok": cnt >= threshold}
                )
            return kind, idx, cyc, cnt
    sigma = g.sigma2()
    r = len(p.triangles)
    raise SolveError(
        stage,
        "no-qualifying-cycle",
        f"no packed cycle receives {threshold} edges from {sorted(sources)}; "
        f"broken bound: {claim}",
        {
            "threshold": threshold,
            "per_cycle_counts": counts,
            "total_cross": sum(counts),
            "sigma2": sigma,
            "sigma_required": g.n + r,
            "sigma_ok": sigma >= g.n + r,
        },
    )


def _replace_cycle(
    p: Packing, kind: str, idx: int, new_cycle: Cycle, new_remainder: frozenset[int]
) -> Packing:
    triangles = list(p.triangles)
    quadrilaterals = list(p.quadrilaterals)
    if kind == "tri":
        triangles[idx] = new_cycle
    else:
        quadrilaterals[idx] = new_cycle
    return Packing(triangles, quadrilaterals, new_remainder)


def _advance_no_independent_edges(g: Graph, p: Packing, log: list | None) -> Packing:
    """Stage 0 move: trade a non-adjacent remainder pair against a packed
    cycle until the remainder holds two independent edges (at most a few
    exchanges; each adds a remainder edge or finishes the stage)."""
    for _ in range(4):
        d = sorted(p.remainder)
        edges = _remainder_edges(g, d)
        if _independent_edge_pair(edges) is not None:
            return p
        in_edge = {v for e in edges for v in e}
        isolated_pairs = [
            (x, y)
            for i, x in enumerate(d)
            for y in d[i + 1:]
            if x not in in_edge and y not in in_edge and not g.has_edge(x, y)
        ]
        if isolated_pairs:
            x, y = isolated_pairs[0]
            claim = "d(x)+d(y) >= sigma2 > 4(r+s-1) for an isolated non-adjacent pair"
        else:
            # no independent pair and some edge: the two vertices off the
            # lexicographically smallest edge are necessarily non-adjacent
            u, v = edges[0]
            x, y = (w for w in d if w not in (u, v))
            assert not g.has_edge(x, y), "xy and uv would be independent edges"
            claim = "d(x)+d(y) >= sigma2 - 2 > 4(r+s-1) off a remainder edge"
        kind, idx, cyc, _ = _pigeonhole_cycle(
            g, p, frozenset((x, y)), 5, "refine-remainder", claim, log
        )
        if len(cyc) == 4:
            out = exchange_c4_pair(g, cyc, x, y)
        else:
            out = exchange_c3_pair(g, cyc, x, y)
        new_rem = (frozenset(d) - {x, y}) | frozenset(out.edge)
        p = _replace_cycle(p, kind, idx, out.cycle, new_rem)
    raise AssertionError("stage-0 exchanges failed to produce independent edges")


def _advance_independent_edges(g: Graph, p: Packing, log: list | None) -> Packing:
    """Stage 1 move: two independent remainder edges with no edge between
    them trade against a cycle receiving nine of their edges, leaving a
    4-vertex path (or better) in the remainder."""
    d = sorted(p.remainder)
    pair = _independent_edge_pair(_remainder_edges(g, d))
    assert pair is not None, "stage 1 requires two independent remainder edges"
    m1, m2 = pair
    kind, idx, cyc, _ = _pigeonhole_cycle(
        g, p, frozenset(d), 9, "refine-remainder",
        "e(D,H) >= 2*sigma2 - 4 > 8(r+s-1) for independent remainder edges", log
    )
    if len(cyc) == 4:
        out = exchange_c4_two_edges(g, cyc, m1, m2)
        new_rem = frozenset(out.path)
    else:
        out = exchange_c3_two_edges(g, cyc, m1, m2)
        new_rem = out.dense
    return _replace_cycle(p, kind, idx, out.cycle, new_rem)


def _advance_path(g: Graph, p: Packing, log: list | None) -> Packing:
    """Stage 2 move: the remainder is exactly a 4-vertex path; trade it
    against a cycle receiving nine of its edges.  Either the remainder
    densifies to four edges, or a strictly denser quadrilateral is adopted
    and the loop re-enters with a larger packing potential."""
    d = sorted(p.remainder)
    path = find_path4(g, d)
    assert path is not None and len(_remainder_edges(g, d)) == 3, \
        "stage 2 requires the remainder to be exactly a 4-vertex path"
    kind, idx, cyc, _ = _pigeonhole_cycle(
        g, p, frozenset(d), 9, "refine-remainder",
        "e(D,H) >= 2*sigma2 - 6 > 8(r+s-1) for a path remainder", log
    )
    if len(cyc) == 4:
        out = exchange_c4_p4_max(
            g, cyc, path, induced_edge_count(g, cyc.vertex_set)
        )
        if isinstance(out, CyclePlusPath4):
            new_rem = frozenset(out.path)
        else:
            new_rem = out.dense
    else:
        out = exchange_c3_two_edges(g, cyc, (path[0], path[1]), (path[2], path[3]))
        new_rem = out.dense
    return _replace_cycle(p, kind, idx, out.cycle, new_rem)


def refine_remainder(
    g: Graph, p: Packing, trace: list | None = None, log: list | None = None
) -> Packing:
    """Exchange packed cycles against the remainder until it induces at
    least four edges.

    Appends a (stage, m_value) potential to `trace` initially and after
    every loop iteration; the sequence is strictly lexicographically
    increasing, which bounds the loop.  `log` collects one record per
    pigeonhole-selected exchange for auditing the counting arguments.
    """
    problems = p.violations(g)
    if problems:
        raise ValueError(f"invalid packing: {problems[0]}")
    if len(p.remainder) != 4:
        raise ValueError(f"remainder must have 4 vertices, got {len(p.remainder)}")
    pot = Potential.of(g, p)
    if trace is not None:
        trace.append(pot)
    m_max = 3 * len(p.triangles) + 6 * len(p.quadrilaterals)
    guard = 5 * (m_max + 2)
    for _ in range(guard):
        if pot.stage >= 3:
            return p
        if pot.stage == 0:
            p = _advance_no_independent_edges(g, p, log)
        elif pot.stage == 1:
            p = _advance_independent_edges(g, p, log)
        else:
            p = _advance_path(g, p, log)
        broken = p.violations(g)
        if broken:
            raise AssertionError(f"exchange broke the packing: {broken[0]}")
        new_pot = Potential.of(g, p)
        if not new_pot > pot:
            raise AssertionError(
                f"potential failed to increase: {pot} -> {new_pot}"
            )
        pot = new_pot
        if trace is not None:
            trace.append(pot)
    raise AssertionError(f"refinement exceeded its {guard}-iteration bound")


# -- remainder absorption ----------------------------------------------------


def absorb_remainder(g: Graph, p: Packing, log: list | None = None) -> Packing:
    """Turn a refined packing (remainder inducing at least four edges) into
    a full partition by promoting a remainder quadrilateral or merging the
    paw remainder into a packed cycle."""
    problems = p.violations(g)
    if problems:
        raise ValueError(f"invalid packing: {problems[0]}")
    d = p.remainder
    if len(d) != 4 or induced_edge_count(g, d) < 4:
        raise ValueError("absorption requires a 4-vertex remainder with >= 4 induced edges")
    found = detect_remainder(g, d)
    if isinstance(found, Cycle):
        return Packing(
            list(p.triangles), list(p.quadrilaterals) + [found], frozenset()
        )
    assert isinstance(found, F4Config), "dense quadrilateral-free remainder is a paw"
    f = found
    periphery = frozenset(f.periphery)
    for idx, q in enumerate(p.quadrilaterals):
        cnt = g.cross_edge_count(periphery, q.vertex_set)
        if cnt >= 9:
            if log is not None:
                log.append({"stage": "absorb-remainder", "target": f"quad[{idx}]",
                            "measured": cnt, "threshold": 9, "ok": cnt >= 9})
            out = absorb_f4_quadrilateral(g, q, f)
            quadrilaterals = list(p.quadrilaterals)
            quadrilaterals[idx] = out.first
            quadrilaterals.append(out.second)
            return Packing(list(p.triangles), quadrilaterals, frozenset())
    for idx, t in enumerate(p.triangles):
        cnt = g.cross_edge_count(periphery, t.vertex_set)
        if cnt >= 7:
            if log is not None:
                log.append({"stage": "absorb-remainder", "target": f"tri[{idx}]",
                            "measured": cnt, "threshold": 7, "ok": cnt >= 7})
            out = absorb_f4_triangle_7(g, t, f)
            triangles = list(p.triangles)
            triangles[idx] = out.triangle
            return Packing(
                triangles, list(p.quadrilaterals) + [out.quadrilateral], frozenset()
            )
    for idx, t in enumerate(p.triangles):
        d3 = g.degree_toward(f.u3, t.vertex_set)
        cnt = g.cross_edge_count(periphery, t.vertex_set)
        satisfied = d3 >= 2 or (cnt >= 6 and d3 > 0)
        if satisfied:
            if log is not None:
                log.append({"stage": "absorb-remainder", "target": f"tri[{idx}]",
                            "measured": cnt, "threshold": 6,
                            "pendant_degree": d3, "ok": satisfied})
            out = absorb_f4_triangle(g, t, f)
            triangles = list(p.triangles)
            triangles[idx] = out.triangle
            return Packing(
                triangles, list(p.quadrilaterals) + [out.quadrilateral], frozenset()
            )
    # No target matched: under the theorem's hypotheses the counting chain
    # below is contradictory, so report every measured quantity.
    r = len(p.triangles)
    s = len(p.quadrilaterals) + 1
    sigma = g.sigma2()
    tri_counts = [g.cross_edge_count(periphery, t.vertex_set) for t in p.triangles]
    quad_counts = [g.cross_edge_count(periphery, q.vertex_set) for q in p.quadrilaterals]
    r1 = sum(1 for c in tri_counts if c <= 5)
    r2 = sum(1 for c in tri_counts if c == 6)
    h_t = frozenset().union(*(t.vertex_set for t in p.triangles)) if p.triangles else frozenset()
    h_q = (
        frozenset().union(*(q.vertex_set for q in p.quadrilaterals))
        if p.quadrilaterals else frozenset()
    )
    ledger = {
        "sigma2": sigma,
        "weighted_degree_sum": g.degree(f.u1) + g.degree(f.u2) + 2 * g.degree(f.u3),
        "weighted_degree_bound": 8 * r + 8 * s,
        "periphery_to_quads": sum(quad_counts),
        "periphery_to_quads_bound": 8 * (s - 1),
        "periphery_to_triangles": sum(tri_counts),
        "r1": r1,
        "r2": r2,
        "pendant_to_triangles": g.degree_toward(f.u3, h_t),
        "pendant_to_quads": g.degree_toward(f.u3, h_q),
        "pendant_to_quads_bound": 4 * (s - 1),
        "ratio_ok": r >= 2 * s - 2,
    }
    raise SolveError(
        "absorb-remainder",
        "no-absorption-target",
        "no packed cycle can absorb the paw remainder; with the degree-sum "
        "and ratio hypotheses this contradicts the counting chain "
        "d(u3,H_Q) >= 2r + 2 > 4(s-1)",
        ledger,
    )


def verify_packing(g: Graph, p: Packing, r: int, s: int) -> str | None:
    """Independent check that p is a full partition into r triangles and s
    quadrilaterals of g.  Returns None when valid, else a description."""
    if p.remainder:
        return f"nonempty remainder: {sorted(p.remainder)}"
    if len(p.triangles) != r:
        return f"wrong triangle count: {len(p.triangles)} != {r}"
    if len(p.quadrilaterals) != s:
        return f"wrong quadrilateral count: {len(p.quadrilaterals)} != {s}"
    seen: set[int] = set()
    for c in p.triangles + p.quadrilaterals:
        for a, b in c.edge_pairs():
            if not g.has_edge(a, b):
                return f"missing edge ({a}, {b}) in cycle {c.vertices}"
        if seen & c.vertex_set:
            return f"not disjoint: {sorted(seen & c.vertex_set)} reused in {c.vertices}"
        seen |= c.vertex_set
    if seen != frozenset(range(g.n)):
        return f"does not cover the graph: missing {sorted(set(range(g.n)) - seen)}"
    return None


def solve(
    g: Graph,
    r: int,
    s: int,
    budget: int | None = None,
    trace: list | None = None,
    log: list | None = None,
) -> Packing:
    """Full pipeline: initial packing, remainder refinement, absorption.

    Returns a validated partition into r triangles and s quadrilaterals.
    Raises SolveError tagged with the failing stage when a hypothesis is
    violated (or the search budget runs out).
    """
    p = initial_packing(g, r, s, budget=budget)
    p = refine_remainder(g, p, trace=trace, log=log)
    p = absorb_remainder(g, p, log=log)
    bad = verify_packing(g, p, r, s)
    if bad is not None:
        raise AssertionError(f"solver produced an invalid partition: {bad}")
    return p
