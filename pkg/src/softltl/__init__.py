"""Planning of infinite trajectories under a hard LTL mission and prioritized soft LTL constraints.

The library synthesizes a minimum-cost accepting lasso over a state-weighted
product of the mission automaton, the environment transition system, and one
nonblocking automaton per soft constraint.  An exact shortest-lasso baseline
and a direct semantic evaluator over ultimately periodic words serve as
independent checks on the greedy planner.
"""

from .ltl import (
    LtlFormula,
    TrueF,
    FalseF,
    Atom,
    Not,
    And,
    Or,
    Implies,
    Next,
    Until,
    Release,
    Eventually,
    Globally,
    LassoWord,
    LtlSyntaxError,
    UnknownAtomError,
    parse_ltl,
    format_ltl,
    to_nnf,
    eval_lasso,
    satisfied_set,
)
from .automata import (
    BuchiAutomaton,
    GeneralizedBuchiAutomaton,
    ltl_to_gba,
    degeneralize,
    make_nonblocking,
    prune_unproductive,
    accepts_lasso,
    automaton_to_json,
    automaton_to_dot,
)
from .transition_system import (
    TransitionSystem,
    TsPath,
    InvalidTransitionSystem,
    InvalidPath,
    load_ts,
    trace_of,
)
from .product import (
    ProductAutomaton,
    Cost,
    ApMismatchError,
    cost_of_vector,
    trace_cost,
    build_product,
    product_to_json,
    product_from_json,
)
from .synthesis import (
    SccInfo,
    Lasso,
    strongly_connected_components,
    select_optimal_scc,
    bfs_shortest_path,
    covering_targets,
    greedy_covering_cycle,
    minimum_cost_accepting_lasso,
    project_to_ts,
    resynthesize_with_priorities,
    validate_lasso,
)
from .baseline import (
    BruteForceResult,
    shortest_covering_cycle,
    brute_force_shortest_lasso,
    feasible_subset,
)
from .planner import (
    Problem,
    PlanResult,
    load_problem,
    solve,
    result_to_json,
    verify_result,
)
from .random_products import RandomSpec, generate_random_product, paper_row_spec
from .experiment import ExperimentRow, TrialOutcome, run_experiment

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
