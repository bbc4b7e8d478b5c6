from .state import *
from .svg import *
from .templates import *

__all__ = [
    # state
    'PairHighlight',
    'PathHighlight',
    'PatternHighlight',
    'BoundWitness',
    'Annotation',
    'ProofState',
    'BUILTIN_STATES',
    'decode_state',
    'encode_state',
    'load_state',
    'state_patch',
    # svg
    'SCALE',
    'PADDING',
    'COLOURS',
    'render_svg',
    'render_state',
    # templates
    'TEMPLATE_DIR',
    'JINJA_ENV_CACHE',
    'jinja_env',
]
