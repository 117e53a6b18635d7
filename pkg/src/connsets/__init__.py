"""Exact counts and sizes of connected vertex sets in graphs.

For a connected graph ``G`` the engine computes ``N(G)`` (the number of
nonempty vertex sets inducing a connected subgraph), ``S(G)`` (their total
size), the average size ``A = S/N`` and the density ``D = A/n``, all exactly.
"""

from .blocks import (
    BlockCutTree,
    NearTreeClass,
    biconnected_blocks,
    block_cut_tree,
    classify_near_tree,
    is_biconnected,
    near_tree_class,
)
from .counting import (
    DEFAULT_BUDGET,
    Budget,
    ConnStats,
    CutDecomposition,
    RootedStats,
    cut_decomposition,
    iter_connected_masks,
    path_closed_form,
    rooted_stats,
    stats,
    stats_bruteforce,
    vertex_profile,
)
from .errors import (
    BudgetExceeded,
    ByteOutOfRange,
    ConnsetsError,
    Disconnected,
    DuplicateEdge,
    EmptyRoot,
    GraphFormatError,
    InvalidParams,
    Malformed,
    NotACutVertex,
    RootNotConnected,
    SelfLoop,
    TrailingGarbage,
    TruncatedInput,
    UnknownStatement,
    VertexOutOfRange,
)
from .families import FAMILIES, FamilySpec, Pcg32, expand_family, family_stream, generate, parse_family
from .formats import (
    encode_graph6,
    format_edge_list,
    iter_edge_lists,
    iter_graph6,
    parse_edge_list,
    parse_graph6,
    to_graph6,
)
from .graph import Graph, SpanningTree, bfs_spanning_tree, connected_components, is_connected
from .minimal import AvCheck, Entry, MinimalFamily, av, av_inequality, minimal_family, partition_ok
from .theorems import (
    REGISTRY,
    CheckResult,
    Statement,
    check_av_inequality,
    check_graph,
    check_main_bound,
    check_rooted_bound,
    find_root_vertex,
    list_statements,
    mine_exceptions_twice,
    recheck,
    run_statement_suite,
    summarize,
)

__version__ = "0.1.0"
