"""Reachability, generalized reachability and explorability games on static,
explicit temporal and symbolic temporal graphs."""

from ._kernels import BACKEND
from .arena import (
    Explore,
    GenReach,
    Linearization,
    Player,
    ProductStrategy,
    RankedRegion,
    Reach,
    ReachPreorder,
    SolveOutcome,
    StaticArena,
    WitnessPath,
    attractor,
    reach_preorder,
    solve_generalized_reachability,
    solve_reachability,
    solve_static_explorability,
    validate_arena,
)
from .errors import *  # noqa: F401,F403
from .gamefile import GameSpec, emit_game_file, format_avail, parse_avail, parse_game_file
from .qbf import QbfFormula, Quantifier, normalize_qbf, parse_qdimacs, qbf_brute_force, to_qdimacs
from .reductions import (
    hamiltonian_to_exploration,
    qbf_to_symbolic_reachability,
    qbf_to_temporal_explorability,
    reach_to_explore,
)
from .symbolic import (
    ALWAYS,
    NEVER,
    And,
    ArithProg,
    AvailFormula,
    BitEq,
    Interval,
    Not,
    Or,
    PeriodBound,
    SymbolicTemporalGraph,
    eval_avail,
    period_bounds,
    periodic_product,
    solve_symbolic,
)
from .temporal import (
    TemporalGraph,
    TimeSet,
    apply_waiting,
    enumerate_explorations,
    expand,
    horizon,
    solve_temporal,
)
from .verify import check_strategy, check_witness, minimax_oracle

__version__ = "0.1.0"
