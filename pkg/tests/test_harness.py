import pytest

from triquad import decode_graph, graph_count, verify_lemma, verify_theorem
from triquad.harness import gray_qualifying, run_gadget
from triquad.oracle import GadgetInstance
from triquad import Graph


class TestGrayQualifying:
    @pytest.mark.parametrize("n,bound", [(4, 5), (4, 6), (5, 6), (5, 7)])
    def test_agrees_with_direct_filter(self, n, bound):
        fast = sorted(gray_qualifying(n, bound, 0, graph_count(n)))
        slow = sorted(
            cursor
            for cursor in range(graph_count(n))
            if decode_graph(n, cursor).sigma2() >= bound
        )
        assert fast == slow

    def test_shards_union_to_full_walk(self):
        n, bound, total = 5, 6, graph_count(5)
        whole = sorted(gray_qualifying(n, bound, 0, total))
        pieces = []
        for lo in range(0, total, 300):
            pieces.extend(gray_qualifying(n, bound, lo, min(lo + 300, total)))
        assert sorted(pieces) == whole

    def test_complete_graph_always_qualifies(self):
        # the all-ones cursor is the complete graph; no bound excludes it
        assert (graph_count(4) - 1) in set(gray_qualifying(4, 99, 0, graph_count(4)))


class TestVerifyLemmaHarness:
    def test_minimal_subset_of_exhaustive(self):
        minimal = verify_lemma("c4pair", exhaustive=False)
        full = verify_lemma("c4pair", exhaustive=True)
        assert minimal.complete and full.complete
        assert minimal.total < full.total

    def test_detects_missing_witnesses(self):
        # weaken the hypothesis below the operation's gate: the sweep must
        # report incomplete rather than quietly passing
        result = verify_lemma("c3pair", exhaustive=True, edge_threshold=3)
        assert not result.complete
        assert result.failures
        assert result.witnessed < result.total

    def test_unknown_gadget_rejected(self):
        bogus = GadgetInstance(
            lemma="c9pair", graph=Graph(1), args={}, cross_mask=0, cross_count=0
        )
        with pytest.raises(ValueError):
            run_gadget(bogus)


class TestVerifyTheoremHarness:
    def test_subrange_sharding_is_consistent(self):
        inline = verify_theorem(7, 1, 1, workers=1, start=0, stop=40_000)
        sharded = verify_theorem(7, 1, 1, workers=2, start=0, stop=40_000)
        assert inline.qualifying == sharded.qualifying
        assert inline.solve_ok == sharded.solve_ok
        assert inline.oracle_found == sharded.oracle_found
        assert inline.failures == sharded.failures

    def test_requires_matching_order(self):
        with pytest.raises(ValueError):
            verify_theorem(8, 1, 1)

    def test_summary_mentions_outcome(self):
        result = verify_theorem(7, 1, 1, start=0, stop=1000)
        assert "OK" in result.summary()
