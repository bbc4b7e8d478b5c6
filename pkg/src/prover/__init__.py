from .bound import *
from .config import *
from .engine import *
from .lemmas import *
from .metrics import *
from .table import *

__all__ = [
    # config
    'Heuristic',
    'DEFAULT_BUDGET',
    'DEFAULT_SCAN_RADIUS',
    'PROGRESS_INTERVAL',
    'BoundConstraint',
    'SearchSettings',
    'ProverConfig',
    # bound
    'BoundWitness',
    'detect_bound_violation',
    # table
    'PairTable',
    'dependency_box',
    'classification_cache_info',
    # engine
    'RunSummary',
    'ProofResult',
    'expand',
    # lemmas
    'FORBIDDEN_STAGES',
    'prove_forbidden',
    'prove_boost',
    'EdgeClassResult',
    'CorroborationReport',
    'long_edge_classes',
    'corroborate_short_edges',
    # metrics
    'nodes_expanded_total',
    'terminal_leaves_total',
    'classification_cache_total',
    'proof_duration_seconds',
    'track_proof',
    'write_metrics',
]
