"""Rainbow cycles in properly edge-colored graphs: exact detection,
extremal constructions, and a randomized level-tree search."""

from .colored_graph import (
    ColorSet,
    ColoredEdge,
    ColoredGraph,
    DuplicateEdge,
    GraphError,
    ImproperColoring,
    LoopEdge,
    RainbowCycleCertificate,
    bipartite_half,
    build_graph,
    certificate_defect,
    check_proper,
    degree_to_set,
    peel_min_degree,
    verify_certificate,
)
from .detect import (
    BudgetExceeded,
    SearchBudget,
    brute_force_enumerate,
    has_rainbow_c2k,
    is_rainbow_acyclic,
    shortest_rainbow_cycle,
)
from .edgelist import format_edge_list, parse_edge_list, read_edge_list, write_edge_list
from .generators import (
    BkWitness,
    bk_witness,
    gen_cayley_bk,
    gen_hypercube,
    gen_random_proper,
    is_bk_star,
    max_bk_star_exhaustive,
)
from .level_tree import (
    ColorPartition,
    ExpansionParams,
    LevelState,
    expand_level,
    grow_tree,
    growth_recurrence_check,
    hoeffding_bounds,
    shrink_subset,
    split_colors,
    theorem_k,
)

__version__ = "0.1.0"
