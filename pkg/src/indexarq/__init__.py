"""Index-coding ARQ over broadcast erasure channels, with SR and Metzner baselines."""

from .baselines import ideal_fec_bound
from .clique import brute_force_max_clique, greedy_search, index_generator, is_clique_matrix
from .harness import (
    PROTOCOLS,
    ThroughputEstimate,
    TrialResult,
    estimate_throughput,
    run_trial,
    sweep,
)
from .model import ERASED, CodedPacket, PacketSequence, ReceiverState, is_complete

__all__ = [
    "PROTOCOLS", "ERASED", "CodedPacket", "PacketSequence", "ReceiverState",
    "ThroughputEstimate", "TrialResult", "brute_force_max_clique", "estimate_throughput",
    "greedy_search", "ideal_fec_bound", "index_generator", "is_clique_matrix", "is_complete",
    "run_trial", "sweep",
]
__version__ = "0.1.0"
