"""Group testing with diluted (probabilistic) measurements."""

from .analysis import (
    BoundReport,
    DisjunctReport,
    Witness,
    column_weight_stats,
    converse_pair,
    ks_guarantee_margin,
    prob_design_failure_bound,
    prop2_stochastic_error_bound,
    verify_disjunct,
)
from .decoding import (
    DecodeResult,
    distance_decode,
    evaluate_decode,
    oracle_consistent_supports,
)
from .designs import (
    InfeasibleParameters,
    KSDesignParams,
    ProbDesignParams,
    build_kautz_singleton,
    build_probabilistic,
    derive_ks_params,
    derive_prob_params,
)
from .experiments import SweepSpec, TrialRecord, run_sweep, run_trial, sweep_csv
from .gf import GaloisField, RSCode, enumerate_messages, rs_encode
from .gtmat import load_matrix, save_matrix
from .model import (
    ChannelSpec,
    ContactMatrix,
    DesignMeta,
    Outcome,
    SamplingMatrix,
    SparseSignal,
    adversarial_corrupt,
    dilute,
    end_to_end_sample,
    measure,
)

__version__ = "0.1.0"
