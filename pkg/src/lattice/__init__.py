from .geometry import *
from .patch import *
from .patterns import *
from .symmetry import *

__all__ = [
    # geometry
    'Point',
    'Edge',
    'Box',
    'edge',
    'norm_sq',
    'offset',
    'is_short',
    'is_diagonal',
    'chebyshev',
    'orientation',
    'segments_intersect',
    'opposite_diagonal',
    'octile',
    'CLOSE_NORMS',
    'CLOSE_OFFSETS',
    # patch
    'GraphPatch',
    'EMPTY',
    'MAX_DEGREE',
    'is_valid_partial',
    'parse_edge_list',
    'format_edge_list',
    # symmetry
    'D4',
    'D4_NAMES',
    'Transform',
    'IDENTITY',
    'apply_symmetry',
    # patterns
    'H1',
    'H2',
    'UNIT_EDGE',
    'DIAGONAL_EDGE',
    'PATTERNS',
    'get_pattern',
    'pattern_diameter',
    'find_pattern',
]
