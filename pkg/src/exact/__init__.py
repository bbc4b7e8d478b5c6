from .zr2 import *

__all__ = [
    'Zr2',
    'ZERO',
    'ONE',
    'SQRT2',
    'DILATION',
    'sign',
    'leq_scaled_sqrt',
    'scaled_sqrt_lt',
]
