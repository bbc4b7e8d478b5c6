from .lemma24 import *
from .periodic import *
from .shortest import *

__all__ = [
    # shortest
    'Neighbours',
    'patch_neighbours',
    'dijkstra',
    'shortest_path_length',
    'shortest_path',
    'dilation_ceiling',
    'pair_dilation_ok',
    # periodic
    'VariantBlock',
    'PeriodicSpec',
    'PeriodLattice',
    'PeriodicReport',
    'TightnessReport',
    'ENVELOPE_RADIUS',
    'BUILTIN_SPECS',
    'parse_periodic_spec',
    'load_periodic_spec',
    'verify_periodic_local_optimality',
    'unit_neighbour_tightness',
    # lemma24
    'HGraphWeight',
    'H_WEIGHTS',
    'Lemma24Entry',
    'Lemma24Report',
    'InductionCertificate',
    'SCAN_NORM_LIMIT',
    'lemma24_bounded_check',
    'induction_inequality_certificate',
]
