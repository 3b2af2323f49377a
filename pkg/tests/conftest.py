from __future__ import annotations

import hypothesis.strategies as st

from triquad import decode_graph, graph_count


@st.composite
def small_graphs(draw, min_n: int = 1, max_n: int = 8):
    """Arbitrary labeled graph on up to eight vertices, drawn through the
    enumeration encoding so shrinking stays meaningful."""
    n = draw(st.integers(min_n, max_n))
    cursor = draw(st.integers(0, graph_count(n) - 1))
    return decode_graph(n, cursor)
