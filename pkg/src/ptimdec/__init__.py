"""Monte Carlo study of a repetition code under random error and syndrome
measurements, with a ladder of decoders (full knowledge, stepwise majority
vote, minimum weight matching, maximum likelihood)."""

from .lattice import Params, SyndromeRecord, candidate_strings, syndrome_of_config
from .sampler import RngStream, Trajectory, run_classical, evaluate_fbi
from .mvd import decode_mvd
from .matching import decode_mwpm, extract_defects, build_defect_graph
from .mld import decode_mld, class_weights
from .stabilizer import run_quantum, evaluate_fqm, pattern_survives
from .metrics import (
    DECODERS,
    Estimate,
    MtffResult,
    analytic_pd_mwpm_q0,
    decode_record,
    estimate_pd,
    mtff,
    threshold_crossing,
)

__all__ = [
    "Params",
    "SyndromeRecord",
    "candidate_strings",
    "syndrome_of_config",
    "RngStream",
    "Trajectory",
    "run_classical",
    "evaluate_fbi",
    "decode_mvd",
    "decode_mwpm",
    "extract_defects",
    "build_defect_graph",
    "decode_mld",
    "class_weights",
    "run_quantum",
    "evaluate_fqm",
    "pattern_survives",
    "DECODERS",
    "Estimate",
    "MtffResult",
    "analytic_pd_mwpm_q0",
    "decode_record",
    "estimate_pd",
    "mtff",
    "threshold_crossing",
]

__version__ = "0.1.0"
