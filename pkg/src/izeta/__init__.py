"""Ihara zeta functions of graphs: evaluation, poles, spectral bounds and random-graph experiments."""

from .errors import (
    BudgetExceededError,
    DomainError,
    GenerationError,
    IzetaError,
    NumericalError,
    SingularPencilError,
)
from .graphs import (
    DegreeProfile,
    ErdosRenyiSpec,
    Graph,
    circular_ladder,
    complete_graph,
    count_closed_bt_paths,
    cycle_graph,
    degree_profile,
    girth,
    is_bipartite,
    parse_edge_list,
    path_graph,
    petersen_graph,
    random_regular,
    read_edge_list,
    sample_erdos_renyi,
    write_edge_list,
)
from .tolerances import TOL, Tolerances
from .zeta import (
    NonBacktrackingMatrix,
    evaluate_all,
    inverse_zeta_bass,
    inverse_zeta_edge,
    log_zeta_series,
    non_backtracking_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError", "DomainError", "GenerationError", "IzetaError",
    "NumericalError", "SingularPencilError", "DegreeProfile", "ErdosRenyiSpec",
    "Graph", "circular_ladder", "complete_graph", "count_closed_bt_paths",
    "cycle_graph", "degree_profile", "girth", "is_bipartite", "parse_edge_list",
    "path_graph", "petersen_graph", "random_regular", "read_edge_list",
    "sample_erdos_renyi", "write_edge_list", "TOL", "Tolerances",
    "NonBacktrackingMatrix", "evaluate_all", "inverse_zeta_bass",
    "inverse_zeta_edge", "log_zeta_series", "non_backtracking_matrix",
    "__version__",
]
