from .checker import *
from .codec import *
from .model import *
from .version_policy import *

__all__ = [
    # model
    'PointT',
    'EdgeT',
    'Zr2T',
    'PathT',
    'Pair',
    'BoundSpec',
    'Header',
    'ContradictionNode',
    'PatternHitNode',
    'BoundHitNode',
    'DeductionNode',
    'BranchChild',
    'BranchNode',
    'ProofNode',
    'Certificate',
    # codec
    'encode',
    'decode',
    'read_certificate',
    'write_certificate',
    'walk',
    'referenced_points',
    'canonical_problems',
    # checker
    'NodeFailure',
    'CheckReport',
    'check_certificate',
    # version_policy
    'ENGINE_VERSION',
    'FORMAT_VERSION',
    'FORMAT_POLICY',
    'VersionStatus',
    'FormatPolicy',
    'is_disabled_version_check',
    'check_format_version',
    'format_unsupported_message',
]
