from .admissible import *
from .candidates import *
from .model import *

__all__ = [
    # model
    'ClosePair',
    'PathCandidate',
    'CaseTag',
    'PairCase',
    'close_pair_offsets',
    'parse_path',
    'format_path',
    'parse_point',
    'format_point',
    # admissible
    'STEPS',
    'enumerate_admissible',
    'path_fits',
    'long_edge_may_connect',
    'classify_pair',
    # candidates
    'BOOST_THRESHOLD',
    'KNIGHT_TARGET',
    'STORED_CANDIDATES',
    'canonicalize',
    'subpaths_within_bound',
    'enumerate_shortest_candidates',
]
