"""Horn MaxSAT toolkit.

Exact weighted MaxSAT for Horn formulas via the implicit hitting set
scheme, backed by linear-time Horn propagation, plus Horn encodings of
classic graph, set, knapsack, SAT, CSP and pigeonhole problems.
"""

from .analysis import (
    Core,
    HardUnsatError,
    HornAnalyzer,
    Mcs,
    Mus,
    compute_mcs,
    disjoint_cores,
    extract_core,
    minimize_to_mus,
)
from .cardinality import EncodingError, VarPool, encode_atmost_k, encode_pb_leq
from .encodings import (
    Decoded,
    DecodeError,
    EncodingResult,
    decode,
    encode_csp,
    encode_knapsack,
    encode_max_clique,
    encode_max_independent_set,
    encode_max_set_packing,
    encode_min_dominating_set,
    encode_min_hitting_set,
    encode_min_set_cover,
    encode_min_vertex_cover,
    encode_php,
    encode_sat,
    generate_clique_pendant_graph,
)
from .formula import (
    Clause,
    WcnfInstance,
    WcnfParseError,
    emit_wcnf,
    evaluate,
    is_horn,
    is_horn_instance,
    parse_wcnf,
)
from .hitting import HittingSet, HsProblem, add_set, solve_min_hs
from .ltur import LturOutcome, LturSolver, conflict_antecedents
from .ltur import solve as ltur_solve
from .problems import (
    CnfFormula,
    CspInstance,
    Graph,
    KnapsackInstance,
    SetSystem,
    complement,
    emit_graph,
    parse_cnf,
    parse_csp,
    parse_graph,
    parse_knapsack,
    parse_set_system,
    set_cover_dual,
)
from .solver import (
    HARD_UNSAT,
    OPTIMUM,
    IterationRecord,
    SolveResult,
    SolverOptions,
    SolverTimeout,
    SolveStats,
    solve,
    solve_with_trace,
)

__version__ = "0.1.0"
