"""Prometheus metrics for proof search."""

import time
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path

from prometheus_client import REGISTRY, Counter, Histogram, write_to_textfile

__all__ = [
    'nodes_expanded_total',
    'terminal_leaves_total',
    'classification_cache_total',
    'proof_duration_seconds',
    'track_proof',
    'write_metrics',
]

nodes_expanded_total = Counter(
    'lattice_prover_nodes_expanded_total', 'Total number of proof nodes expanded'
)

terminal_leaves_total = Counter(
    'lattice_prover_terminal_leaves_total', 'Terminal leaves by justification', ['kind']
)

classification_cache_total = Counter(
    'lattice_prover_classification_cache_total',
    'Local pair classification lookups',
    ['result'],
)

proof_duration_seconds = Histogram(
    'lattice_prover_proof_duration_seconds',
    'Wall time of complete proof searches',
    ['outcome'],
    buckets=[0.1, 0.5, 1.0, 5.0, 10.0, 30.0, 60.0, 300.0, 600.0, 1800.0],
)


@contextmanager
def track_proof() -> Iterator[None]:
    """Record the duration of one search under ``refuted`` or ``inconclusive``."""
    start_time = time.time()
    outcome = "refuted"
    try:
        yield
    except Exception:
        outcome = "inconclusive"
        raise
    finally:
        proof_duration_seconds.labels(outcome=outcome).observe(time.time() - start_time)


def write_metrics(path: Path) -> None:
    """Write the default registry in the text exposition format."""
    write_to_textfile(str(path), REGISTRY)
