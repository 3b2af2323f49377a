"""Batch verification drivers: exhaustive gadget sweeps for every exchange
operation, and the exhaustive small-order comparison of the constructive
solver against the exact oracle.

The theorem driver walks the labeled-graph space in Gray-code order so each
step flips a single edge, keeping the degree bookkeeping incremental; shards
of the walk are independent, so the work parallelizes across processes.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass, field
from typing import Iterator

from .exchanges import (
    CyclePlusPath4,
    F4Config,
    HypothesisError,
    WitnessNotFoundError,
    absorb_f4_quadrilateral,
    absorb_f4_triangle,
    absorb_f4_triangle_7,
    exchange_c3_pair,
    exchange_c3_two_edges,
    exchange_c4_pair,
    exchange_c4_two_edges,
    exchange_c4_p4_max,
    exchange_p3_p2,
    exchange_p3_p3,
    outcome_violations,
)
from .graph import Cycle, Graph, induced_edge_count
from .oracle import (
    GadgetInstance,
    enumerate_lemma_gadgets,
    exact_partition,
    graph_count,
    pair_order,
)
from .solver import solve, verify_packing


def run_gadget(inst: GadgetInstance):
    """Apply the exchange operation named by the gadget to its host graph."""
    g = inst.graph
    a = inst.args
    lemma = inst.lemma
    if lemma == "p3p2":
        return exchange_p3_p2(g, a["p"], a["q"])
    if lemma == "p3p3":
        return exchange_p3_p3(g, a["p"], a["q"])
    if lemma == "c4pair":
        return exchange_c4_pair(g, Cycle(a["c"]), a["u"], a["v"])
    if lemma == "c3pair":
        return exchange_c3_pair(g, Cycle(a["c"]), a["u"], a["v"])
    if lemma == "c4edges":
        return exchange_c4_two_edges(g, Cycle(a["c"]), a["m1"], a["m2"])
    if lemma == "c3edges":
        return exchange_c3_two_edges(g, Cycle(a["c"]), a["m1"], a["m2"])
    if lemma == "c4p4max":
        return exchange_c4_p4_max(g, Cycle(a["c"]), a["p"], a["internal"])
    if lemma == "f4quad":
        return absorb_f4_quadrilateral(g, Cycle(a["cycle"]), F4Config(*a["f4"]))
    if lemma == "f4tri":
        return absorb_f4_triangle(g, Cycle(a["cycle"]), F4Config(*a["f4"]))
    if lemma == "f4tri7":
        return absorb_f4_triangle_7(g, Cycle(a["cycle"]), F4Config(*a["f4"]))
    raise ValueError(f"unknown lemma id {lemma!r}")


@dataclass
class LemmaVerification:
    lemma: str
    exhaustive: bool
    total: int = 0
    witnessed: int = 0
    improved: int = 0
    failures: list[dict] = field(default_factory=list)

    FAILURE_CAP = 20

    @property
    def complete(self) -> bool:
        return self.total > 0 and self.witnessed == self.total

    def summary(self) -> str:
        extra = f" ({self.improved} via improvement)" if self.improved else ""
        return f"{self.witnessed}/{self.total} configurations witnessed{extra}"


def verify_lemma(
    lemma: str,
    exhaustive: bool = False,
    edge_threshold: int | None = None,
) -> LemmaVerification:
    """Run an exchange operation over its gadget stream and validate every
    returned witness structurally.

    The default stream keeps only minimal hypothesis-satisfying patterns
    (removing any cross edge breaks the hypothesis: the hardest cases);
    exhaustive mode runs every qualifying pattern.
    """
    result = LemmaVerification(lemma=lemma, exhaustive=exhaustive)
    for inst in enumerate_lemma_gadgets(
        lemma, edge_threshold=edge_threshold, minimal_only=not exhaustive
    ):
        result.total += 1
        problems: list[str] = []
        try:
            outcome = run_gadget(inst)
        except (HypothesisError, WitnessNotFoundError) as exc:
            problems.append(str(exc))
            outcome = None
        if outcome is not None:
            problems.extend(outcome_violations(inst.graph, outcome, range(inst.graph.n)))
            if isinstance(outcome, CyclePlusPath4) and outcome.improved:
                baseline = inst.args.get("internal", 0)
                gained = induced_edge_count(inst.graph, outcome.cycle.vertex_set)
                if gained <= baseline:
                    problems.append(
                        f"improvement did not increase induced edges: {gained} <= {baseline}"
                    )
                else:
                    result.improved += 1
        if problems:
            if len(result.failures) < result.FAILURE_CAP:
                result.failures.append(
                    {"cross_mask": inst.cross_mask, "problems": problems}
                )
        else:
            result.witnessed += 1
    return result


# -- exhaustive theorem run ---------------------------------------------------


def gray_qualifying(n: int, bound: int, lo: int, hi: int) -> Iterator[int]:
    """Yield the edge-set cursors of all graphs visited by Gray-walk steps
    lo..hi-1 whose minimum non-adjacent degree sum reaches `bound`.

    Step i visits cursor i ^ (i >> 1); consecutive steps differ in exactly
    one edge, so degrees update in O(1) per step.  The union over all steps
    is exactly the full cursor space.
    """
    pairs = pair_order(n)
    npairs = len(pairs)
    mask = lo ^ (lo >> 1)
    deg = [0] * n
    for i in range(npairs):
        if (mask >> i) & 1:
            a, b = pairs[i]
            deg[a] += 1
            deg[b] += 1
    i = lo
    while i < hi:
        qualifies = True
        for j in range(npairs):
            if not (mask >> j) & 1:
                a, b = pairs[j]
                if deg[a] + deg[b] < bound:
                    qualifies = False
                    break
        if qualifies:
            yield mask
        i += 1
        if i >= hi:
            break
        flip = (i & -i).bit_length() - 1
        a, b = pairs[flip]
        bit = 1 << flip
        if mask & bit:
            mask ^= bit
            deg[a] -= 1
            deg[b] -= 1
        else:
            mask |= bit
            deg[a] += 1
            deg[b] += 1


@dataclass
class TheoremVerification:
    n: int
    r: int
    s: int
    total: int = 0
    qualifying: int = 0
    oracle_found: int = 0
    solve_ok: int = 0
    trace_ok: int = 0
    ledger_ok: int = 0
    failures: list[dict] = field(default_factory=list)

    FAILURE_CAP = 20

    @property
    def complete(self) -> bool:
        return (
            self.qualifying
            == self.oracle_found
            == self.solve_ok
            == self.trace_ok
            == self.ledger_ok
        )

    def summary(self) -> str:
        lines = [
            f"labeled graphs on {self.n} vertices: {self.total}",
            f"satisfying sigma2 >= {self.n + self.r}: {self.qualifying}",
            f"oracle found a partition: {self.oracle_found}",
            f"solver succeeded and validated: {self.solve_ok}",
            f"potential traces strictly increasing and bounded: {self.trace_ok}",
            f"pigeonhole ledger clean: {self.ledger_ok}",
            "OK" if self.complete else f"FAILED (first cursors: {self.failures[:5]})",
        ]
        return "\n".join(lines)


def _trace_is_sound(trace: list, m_max: int) -> bool:
    if not trace:
        return False
    if trace[-1].stage < 3:
        return False
    if len(trace) > 4 + m_max:
        return False
    return all(b > a for a, b in zip(trace, trace[1:]))


def _theorem_shard(args: tuple[int, int, int, int, int]) -> dict:
    n, r, s, lo, hi = args
    pairs = pair_order(n)
    m_max = 3 * r + 6 * (s - 1)
    out = {
        "qualifying": 0,
        "oracle_found": 0,
        "solve_ok": 0,
        "trace_ok": 0,
        "ledger_ok": 0,
        "failures": [],
    }
    for cursor in gray_qualifying(n, n + r, lo, hi):
        out["qualifying"] += 1
        g = Graph(n, (pairs[i] for i in range(len(pairs)) if (cursor >> i) & 1))
        problems = []
        if exact_partition(g, r, s) is not None:
            out["oracle_found"] += 1
        else:
            problems.append("oracle found no partition")
        trace: list = []
        log: list = []
        try:
            p = solve(g, r, s, trace=trace, log=log)
            bad = verify_packing(g, p, r, s)
            if bad is None:
                out["solve_ok"] += 1
            else:
                problems.append(f"solve output invalid: {bad}")
        except (HypothesisError, WitnessNotFoundError) as exc:
            problems.append(f"solve failed: {exc}")
        if _trace_is_sound(trace, m_max):
            out["trace_ok"] += 1
        else:
            problems.append(f"bad potential trace: {trace}")
        if all(entry.get("ok") for entry in log):
            out["ledger_ok"] += 1
        else:
            problems.append("pigeonhole ledger violation")
        if problems and len(out["failures"]) < TheoremVerification.FAILURE_CAP:
            out["failures"].append({"cursor": cursor, "problems": problems})
    return out


def verify_theorem(
    n: int, r: int, s: int, workers: int = 1, start: int = 0, stop: int | None = None
) -> TheoremVerification:
    """Exhaustively compare solver and oracle over every labeled graph on n
    vertices satisfying the degree-sum condition.

    Requires n = 3r + 4s.  The Gray-walk step range [start, stop) defaults
    to the whole space; workers > 1 shards it across processes.
    """
    if n != 3 * r + 4 * s:
        raise ValueError(f"need n = 3r + 4s, got n={n}, r={r}, s={s}")
    total = graph_count(n)
    if stop is None:
        stop = total
    if not (0 <= start <= stop <= total):
        raise ValueError(f"bad step range [{start}, {stop})")
    result = TheoremVerification(n=n, r=r, s=s, total=stop - start)
    span = stop - start
    if span == 0:
        return result
    workers = max(1, workers)
    chunks = max(1, min(span, workers * 4))
    step = (span + chunks - 1) // chunks
    shard_args = [
        (n, r, s, lo, min(lo + step, stop)) for lo in range(start, stop, step)
    ]
    if workers == 1:
        shard_results = [_theorem_shard(a) for a in shard_args]
    else:
        with multiprocessing.Pool(workers) as pool:
            shard_results = pool.map(_theorem_shard, shard_args)
    failures: list[dict] = []
    for shard in shard_results:
        result.qualifying += shard["qualifying"]
        result.oracle_found += shard["oracle_found"]
        result.solve_ok += shard["solve_ok"]
        result.trace_ok += shard["trace_ok"]
        result.ledger_ok += shard["ledger_ok"]
        failures.extend(shard["failures"])
    failures.sort(key=lambda f: f["cursor"])
    result.failures = failures[: TheoremVerification.FAILURE_CAP]
    return result
