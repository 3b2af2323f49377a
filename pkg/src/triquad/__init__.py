"""Constructive partition of dense graphs into vertex-disjoint triangles
and quadrilaterals, with exhaustively verified exchange operations."""

from .edgelist import EdgeListError, emit_edge_list, parse_edge_list
from .exchanges import (
    CyclePlusDense4,
    CyclePlusEdge,
    CyclePlusPath4,
    F4Config,
    HypothesisError,
    TrianglePlusQuadrilateral,
    TwoQuadrilaterals,
    WitnessNotFoundError,
    absorb_f4_quadrilateral,
    absorb_f4_triangle,
    absorb_f4_triangle_7,
    detect_remainder,
    exchange_c3_pair,
    exchange_c3_two_edges,
    exchange_c4_pair,
    exchange_c4_two_edges,
    exchange_c4_p4_max,
    exchange_p3_p2,
    exchange_p3_p3,
    outcome_violations,
)
from .graph import (
    Cycle,
    Graph,
    complete,
    complete_bipartite,
    cycle_graph,
    find_cycle,
    find_path4,
    induced_edge_count,
    iter_cycles,
    iter_paths4,
    path_graph,
)
from .harness import (
    LemmaVerification,
    TheoremVerification,
    verify_lemma,
    verify_theorem,
)
from .oracle import (
    LEMMA_IDS,
    EnumerationStream,
    GadgetInstance,
    GeneratorSpec,
    decode_graph,
    enumerate_labeled_graphs,
    enumerate_lemma_gadgets,
    exact_partition,
    graph_count,
    pair_order,
    random_graph,
)
from .solver import (
    ConditionReport,
    Packing,
    Potential,
    SolveError,
    absorb_remainder,
    check_conditions,
    initial_packing,
    refine_remainder,
    solve,
    verify_packing,
)

__version__ = "0.1.0"
