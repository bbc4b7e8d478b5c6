"""Proof certificates as msgspec structs.

Points are ``[x, y]`` arrays, edges ``[[x1, y1], [x2, y2]]`` and numbers of
Z[√2] the pair ``[a, b]``. Proof nodes form a tagged union on the ``kind`` field.
"""

from typing import Literal

from msgspec import Struct

__all__ = [
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
]

PointT = tuple[int, int]
EdgeT = tuple[PointT, PointT]
Zr2T = tuple[int, int]
PathT = list[PointT]


class Pair(Struct, frozen=True):
    p: PointT
    q: PointT


class BoundSpec(Struct, frozen=True):
    """Refute graphs where ``d(u, v) >= c``."""

    u: PointT
    v: PointT
    c: Zr2T


class Header(Struct, frozen=True):
    format_version: str
    engine_version: str
    heuristic: str
    scan_radius: int
    # xmin, ymin, xmax, ymax over every point the certificate references
    bounds: tuple[int, int, int, int]


class ContradictionNode(Struct, frozen=True, tag='contradiction', tag_field='kind'):
    pair: Pair


class PatternHitNode(Struct, frozen=True, tag='pattern', tag_field='kind'):
    pattern: str
    linear: int
    shift: PointT


class BoundHitNode(Struct, frozen=True, tag='bound', tag_field='kind'):
    side: Literal['u', 'v']
    path: PathT
    shortcut: PointT


class DeductionNode(Struct, frozen=True, tag='deduction', tag_field='kind'):
    pair: Pair
    path: PathT
    child: 'ProofNode'


class BranchChild(Struct, frozen=True):
    path: PathT
    node: 'ProofNode'


class BranchNode(Struct, frozen=True, tag='branch', tag_field='kind'):
    pair: Pair
    children: list[BranchChild]


ProofNode = ContradictionNode | PatternHitNode | BoundHitNode | DeductionNode | BranchNode


class Certificate(Struct, frozen=True):
    header: Header
    s0: list[EdgeT]
    patterns: list[str]
    bound: BoundSpec | None
    root: ProofNode
