"""JSON encoding of certificates, with canonical-form validation."""

import logging
import re
from collections.abc import Iterator
from pathlib import Path

import msgspec
import msgspec.json

from com.exceptions import CertificateFormatError, CertificateVersionError

from .model import (
    BoundHitNode,
    BranchNode,
    Certificate,
    ContradictionNode,
    DeductionNode,
    PatternHitNode,
    PointT,
    ProofNode,
)
from .version_policy import VersionStatus, check_format_version, format_unsupported_message

__all__ = [
    'encode',
    'decode',
    'read_certificate',
    'write_certificate',
    'walk',
    'referenced_points',
    'canonical_problems',
]

logger = logging.getLogger(__name__)

_encoder = msgspec.json.Encoder()
_decoder = msgspec.json.Decoder(Certificate)

_BYTE_RE = re.compile(r'\(byte (\d+)\)')


def encode(cert: Certificate) -> bytes:
    """Indented JSON with fields in declaration order; equal certificates encode to equal bytes."""
    return msgspec.json.format(_encoder.encode(cert), indent=1) + b'\n'


def _line_of(data: bytes, offset: int) -> tuple[int, int]:
    head = data[:offset]
    line = head.count(b'\n') + 1
    return line, offset - (head.rfind(b'\n') + 1) + 1


def decode(data: bytes | str) -> Certificate:
    """Decode and check the format version; canonical form is checked separately."""
    raw = data.encode() if isinstance(data, str) else data
    try:
        cert = _decoder.decode(raw)
    except msgspec.ValidationError as e:
        # msgspec reports the offending field as a `$.a.b[0]` path
        raise CertificateFormatError(f"invalid certificate: {e}") from e
    except msgspec.DecodeError as e:
        m = _BYTE_RE.search(str(e))
        line, col = _line_of(raw, int(m.group(1)) if m else len(raw))
        raise CertificateFormatError(
            f"malformed certificate at line {line}, column {col}: {e}"
        ) from e
    if check_format_version(cert.header.format_version) is not VersionStatus.OK:
        raise CertificateVersionError(format_unsupported_message(cert.header.format_version))
    return cert


def write_certificate(cert: Certificate, path: Path) -> None:
    path.write_bytes(encode(cert))
    logger.info("wrote certificate %s", path)


def read_certificate(path: Path) -> Certificate:
    return decode(path.read_bytes())


def walk(root: ProofNode, where: str = 'root') -> Iterator[tuple[str, ProofNode]]:
    """Pre-order traversal yielding ``(node path, node)``."""
    stack: list[tuple[str, ProofNode]] = [(where, root)]
    while stack:
        path, node = stack.pop()
        yield path, node
        match node:
            case DeductionNode(child=child):
                stack.append((f"{path}/deduction", child))
            case BranchNode(children=children):
                for i in reversed(range(len(children))):
                    stack.append((f"{path}/branch[{i}]", children[i].node))


def _node_points(node: ProofNode) -> Iterator[PointT]:
    match node:
        case ContradictionNode(pair=pair):
            yield pair.p
            yield pair.q
        case PatternHitNode():
            pass
        case BoundHitNode(path=path, shortcut=shortcut):
            yield from path
            yield shortcut
        case DeductionNode(pair=pair, path=path):
            yield pair.p
            yield pair.q
            yield from path
        case BranchNode(pair=pair, children=children):
            yield pair.p
            yield pair.q
            for child in children:
                yield from child.path


def referenced_points(cert: Certificate) -> Iterator[PointT]:
    for p, q in cert.s0:
        yield p
        yield q
    if cert.bound is not None:
        yield cert.bound.u
        yield cert.bound.v
    for _, node in walk(cert.root):
        yield from _node_points(node)


def canonical_problems(cert: Certificate) -> list[tuple[str, str]]:
    """Departures from canonical form as ``(node path, message)``; empty when canonical."""
    problems: list[tuple[str, str]] = []
    s0 = [tuple(e) for e in cert.s0]
    if any(p >= q for p, q in s0):
        problems.append(('s0', "edge endpoints must be ordered"))
    if any(a >= b for a, b in zip(s0, s0[1:])):
        problems.append(('s0', "edges must be strictly increasing"))
    if cert.patterns != sorted(set(cert.patterns)):
        problems.append(('patterns', "pattern ids must be sorted and distinct"))
    for where, node in walk(cert.root):
        match node:
            case ContradictionNode(pair=pair) | DeductionNode(pair=pair) | BranchNode(pair=pair):
                if not tuple(pair.p) < tuple(pair.q):
                    problems.append((where, "pair endpoints must be ordered"))
        if isinstance(node, BranchNode):
            keys = [[tuple(v) for v in child.path] for child in node.children]
            if any(a >= b for a, b in zip(keys, keys[1:])):
                problems.append((where, "branch children must be strictly increasing by path"))
    return problems
