"""Acceptance suite: one test per criterion, each printing a pass/fail line.

The exhaustive seven-vertex sweep and the thousand-instance random runs are
session fixtures shared by the criteria that consume them.
"""

import time
from math import comb
from pathlib import Path

import pytest

from triquad import (
    GeneratorSpec,
    HypothesisError,
    LEMMA_IDS,
    WitnessNotFoundError,
    check_conditions,
    complete_bipartite,
    cycle_graph,
    emit_edge_list,
    exact_partition,
    induced_edge_count,
    initial_packing,
    random_graph,
    refine_remainder,
    solve,
    verify_lemma,
    verify_packing,
    verify_theorem,
)

# Frozen during development from two independent computations (a vectorized
# popcount pass and the incremental Gray-walk filter); the harness tests
# additionally pin the walk against the per-graph definition on small orders.
QUALIFYING_SEVEN_VERTEX_GRAPHS = 16_916

EXPECTED_GADGET_COUNTS = {
    "p3p2": sum(comb(6, k) for k in range(3, 7)),
    "p3p3": sum(comb(9, k) for k in range(4, 10)),
    "c4pair": sum(comb(8, k) for k in range(5, 9)),
    "c3pair": sum(comb(6, k) for k in range(5, 7)),
    "c4edges": sum(comb(16, k) for k in range(9, 17)),
    "c3edges": sum(comb(12, k) for k in range(9, 13)),
    "c4p4max": sum(comb(16, k) for k in range(9, 17)),
    "f4quad": sum(comb(12, k) for k in range(9, 13)),
    "f4tri": 4 * 2 ** 6 + 3 * sum(comb(6, k) for k in range(5, 7)),
    "f4tri7": sum(comb(9, k) for k in range(7, 10)),
}

RANDOM_SCALE_CONFIGS = [
    {"n": 10, "r": 2, "s": 1, "p": 0.8, "instances": 1000},
    {"n": 14, "r": 2, "s": 2, "p": 0.75, "instances": 1000},
]

WORKERS = 2


def report(criterion: int, ok: bool, detail: str) -> None:
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")


def persist_counterexample(name: str, g) -> Path:
    directory = Path(__file__).resolve().parent.parent / "counterexamples"
    directory.mkdir(exist_ok=True)
    path = directory / f"{name}.txt"
    path.write_text(emit_edge_list(g))
    return path


@pytest.fixture(scope="session")
def exhaustive_seven():
    return verify_theorem(7, 1, 1, workers=WORKERS)


@pytest.fixture(scope="session")
def random_scale():
    """Criterion 4's condition-filtered runs, keeping the exchange logs for
    criterion 6."""
    results = []
    for cfg in RANDOM_SCALE_CONFIGS:
        run = {
            "config": cfg,
            "solved": 0,
            "log_entries": [],
            "failures": [],
        }
        for seed in range(cfg["instances"]):
            spec = GeneratorSpec(
                kind="condition-filtered",
                n=cfg["n"], p=cfg["p"], seed=seed, r=cfg["r"], s=cfg["s"],
            )
            g = random_graph(spec)
            assert g.sigma2() >= cfg["n"] + cfg["r"]
            log: list = []
            try:
                packing = solve(g, cfg["r"], cfg["s"], log=log)
                bad = verify_packing(g, packing, cfg["r"], cfg["s"])
            except (HypothesisError, WitnessNotFoundError) as exc:
                bad = str(exc)
            run["log_entries"].extend(log)
            if bad is None:
                run["solved"] += 1
            else:
                name = f"n{cfg['n']}_r{cfg['r']}_s{cfg['s']}_seed{seed}"
                path = persist_counterexample(name, g)
                run["failures"].append({"seed": seed, "problem": bad, "file": str(path)})
        results.append(run)
    return results


def test_criterion_1_lemma_completeness():
    started = time.monotonic()
    outcomes = {}
    for lemma in LEMMA_IDS:
        outcomes[lemma] = verify_lemma(lemma, exhaustive=True)
    elapsed = time.monotonic() - started
    count_ok = all(
        outcomes[lemma].total == EXPECTED_GADGET_COUNTS[lemma] for lemma in LEMMA_IDS
    )
    witness_ok = all(result.complete for result in outcomes.values())
    # improvements count as witnesses only after their strict-increase check
    # inside verify_lemma, so completeness covers that clause
    ok = count_ok and witness_ok and elapsed < 120
    detail = (
        f"{sum(r.total for r in outcomes.values())} configurations across "
        f"{len(LEMMA_IDS)} sweeps in {elapsed:.1f}s, "
        f"{outcomes['c4p4max'].improved} improvement outcomes"
    )
    report(1, ok, detail)
    assert count_ok, {k: v.total for k, v in outcomes.items()}
    assert witness_ok, {k: v.failures for k, v in outcomes.items() if not v.complete}
    assert elapsed < 120


def test_criterion_2_theorem_exhaustive(exhaustive_seven):
    res = exhaustive_seven
    ok = (
        res.total == 2_097_152
        and res.qualifying == QUALIFYING_SEVEN_VERTEX_GRAPHS
        and res.oracle_found == res.qualifying
        and res.solve_ok == res.qualifying
        and not res.failures
    )
    report(
        2, ok,
        f"{res.qualifying} qualifying graphs of {res.total}; "
        f"oracle {res.oracle_found}, solver {res.solve_ok}",
    )
    assert res.total == 2_097_152
    assert res.qualifying == QUALIFYING_SEVEN_VERTEX_GRAPHS
    assert res.oracle_found == res.qualifying, res.failures[:5]
    assert res.solve_ok == res.qualifying, res.failures[:5]
    assert not res.failures


def test_criterion_3_refinement_traces(exhaustive_seven):
    res = exhaustive_seven
    ok = res.trace_ok == res.qualifying
    report(
        3, ok,
        f"{res.trace_ok}/{res.qualifying} strictly increasing traces within "
        f"the 4 + M bound",
    )
    assert res.trace_ok == res.qualifying, res.failures[:5]


def test_criterion_4_randomized_scale(random_scale):
    ok = all(run["solved"] == run["config"]["instances"] for run in random_scale)
    detail = "; ".join(
        f"(n={run['config']['n']}, r={run['config']['r']}, s={run['config']['s']}): "
        f"{run['solved']}/{run['config']['instances']}"
        for run in random_scale
    )
    report(4, ok, detail)
    for run in random_scale:
        assert run["solved"] == run["config"]["instances"], run["failures"][:3]


def test_criterion_5_negative_controls():
    c7 = cycle_graph(7)
    c7_report = check_conditions(c7, 1, 1)
    c7_failed = False
    try:
        solve(c7, 1, 1)
    except HypothesisError:
        c7_failed = True

    k34_none = exact_partition(complete_bipartite(3, 4), 1, 1) is None

    ratio_flags = []
    refine_hits = 0
    instances = 200
    for seed in range(instances):
        spec = GeneratorSpec(
            kind="condition-filtered", n=11, p=0.8, seed=seed, r=1, s=2
        )
        g = random_graph(spec)
        assert g.sigma2() >= 12
        ratio_flags.append(check_conditions(g, 1, 2).ratio_ok)
        refined = refine_remainder(g, initial_packing(g, 1, 2))
        if induced_edge_count(g, refined.remainder) >= 4:
            refine_hits += 1

    ok = (
        not c7_report.sigma_ok
        and c7_failed
        and k34_none
        and not any(ratio_flags)
        and refine_hits == instances
    )
    report(
        5, ok,
        f"C7 rejected (sigma_ok={c7_report.sigma_ok}), bipartite oracle none, "
        f"ratio-violating refinement {refine_hits}/{instances}",
    )
    assert not c7_report.sigma_ok and c7_failed
    assert k34_none
    assert not any(ratio_flags)
    assert refine_hits == instances


def test_criterion_6_pigeonhole_ledger(exhaustive_seven, random_scale):
    exhaustive_ok = exhaustive_seven.ledger_ok == exhaustive_seven.qualifying
    entries = [e for run in random_scale for e in run["log_entries"]]
    random_ok = all(
        e["measured"] >= e["threshold"] or e.get("pendant_degree", 0) >= 2
        for e in entries
    )
    ok = exhaustive_ok and random_ok
    report(
        6, ok,
        f"{exhaustive_seven.ledger_ok} exhaustive ledgers clean, "
        f"{len(entries)} randomized exchange records all at threshold",
    )
    assert exhaustive_ok
    assert random_ok and entries
