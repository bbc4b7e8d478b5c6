"""Proof states on disk: an edge set plus the annotations to draw over it."""

import logging
from pathlib import Path

import msgspec
import msgspec.json
from msgspec import Struct

from lattice import GraphPatch, edge

__all__ = [
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
]

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).parent / 'data'

BUILTIN_STATES: dict[str, str] = {f'fig6-{i}': f'fig6-{i}.json' for i in range(1, 5)}

_Point = tuple[int, int]


class PairHighlight(Struct, frozen=True, tag='pair', tag_field='kind'):
    """A close pair with no admissible path."""

    p: _Point
    q: _Point


class PathHighlight(Struct, frozen=True, tag='path', tag_field='kind'):
    """A forced path."""

    vertices: list[_Point]


class PatternHighlight(Struct, frozen=True, tag='pattern', tag_field='kind'):
    """A copy of a built-in pattern under ``D4[linear]`` and ``shift``."""

    pattern: str
    linear: int = 0
    shift: _Point = (0, 0)


class BoundWitness(Struct, frozen=True, tag='bound', tag_field='kind'):
    """A path inside S from ``u`` whose last vertex is close to ``v``."""

    u: _Point
    v: _Point
    path: list[_Point]


Annotation = PairHighlight | PathHighlight | PatternHighlight | BoundWitness


class ProofState(Struct, frozen=True):
    edges: list[tuple[int, int, int, int]]
    annotations: list[Annotation] = []
    name: str = ''
    caption: str = ''


_decoder = msgspec.json.Decoder(ProofState)
_encoder = msgspec.json.Encoder()


def decode_state(data: bytes | str) -> ProofState:
    return _decoder.decode(data)


def encode_state(state: ProofState) -> bytes:
    return msgspec.json.format(_encoder.encode(state), indent=1) + b'\n'


def load_state(source: str | Path) -> ProofState:
    """Load a state file, or one of the bundled states by name (``fig6-1`` ... ``fig6-4``)."""
    if isinstance(source, str) and source in BUILTIN_STATES:
        path = DATA_DIR / BUILTIN_STATES[source]
    else:
        path = Path(source)
    logger.debug("loading proof state %s", path)
    return decode_state(path.read_bytes())


def state_patch(state: ProofState) -> GraphPatch:
    return GraphPatch(frozenset(edge((x1, y1), (x2, y2)) for x1, y1, x2, y2 in state.edges))
