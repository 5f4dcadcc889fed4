"""Prediction-boosted randomized minimum cut toolkit."""

from .graph import (
    WeightedGraph,
    Cut,
    ContractionState,
    GraphError,
    build_graph,
    cut_from_side,
    induced_simple_graph,
    read_graph_file,
    write_graph_file,
)
from .dsu import RollbackDSU, RollbackError
from .sampler import PrefixWeightIndex, SamplerError, exponential_clock_order
from .exact import brute_force_min_cut, stoer_wagner
from .contraction import (
    QSchedule,
    TrialStats,
    RepeatResult,
    ParameterError,
    NOT_FOUND,
    karger_trial,
    boosted_karger_trial,
    fpz,
    boosted_fpz,
    repeat_until,
    default_boosted_karger_params,
    default_boosted_fpz_params,
)
from .predictions import (
    Prediction,
    ErrorProfile,
    PredictionError,
    measure,
    synthesize,
    perfect_prediction,
    heuristic_predict,
    read_prediction_file,
    write_prediction_file,
)
from .generators import bipartite_matchings, cycle_union, dumbbell
from .learner import (
    SurrogateContext,
    LearnerConfig,
    LearnerError,
    surrogate_context,
    surrogate_value,
    surrogate_gradient,
    surrogate_u,
    rho_tilde,
    project_Kb,
    ogd_for_b,
    learn,
    pilot_grid,
)
from .experiment import CSV_HEADER, ConfigError, ExperimentConfig, run_experiment

__version__ = "0.1.0"
