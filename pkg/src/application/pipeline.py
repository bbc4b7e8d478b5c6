"""The CLI stages, each wrapped in a span and turned into a report stage."""

import logging
from dataclasses import dataclass
from pathlib import Path

from opentelemetry import trace

from cert import check_certificate, read_certificate, write_certificate
from com.exceptions import CertificateError, InconclusiveError
from dilation import (
    induction_inequality_certificate,
    lemma24_bounded_check,
    load_periodic_spec,
    unit_neighbour_tightness,
    verify_periodic_local_optimality,
)
from lattice import parse_edge_list
from paths import (
    KNIGHT_TARGET,
    STORED_CANDIDATES,
    ClosePair,
    classify_pair,
    enumerate_shortest_candidates,
)
from prover import (
    ProofResult,
    SearchSettings,
    corroborate_short_edges,
    prove_boost,
    prove_forbidden,
)
from render import load_state, render_state

from .reports import (
    CheckFailureRow,
    CheckStage,
    ClassifyStage,
    ConclusionStage,
    CorroborationStage,
    EdgeClassRow,
    InductionStage,
    Lemma24Row,
    Lemma24Stage,
    PeriodicStage,
    ProofStage,
    RenderStage,
    ShortestClass,
    ShortestStage,
    Stage,
    TightnessStage,
)

__all__ = [
    'RunContext',
    'PERIODIC_SPECS',
    'CONCLUSION',
    'verify_periodic_stage',
    'lower_bound_stage',
    'lemma24_stages',
    'enumerate_shortest_stage',
    'prove_forbidden_stage',
    'prove_boost_stages',
    'corroborate_stage',
    'check_cert_stage',
    'classify_stage',
    'render_stage',
    'run_all',
]

logger = logging.getLogger(__name__)

PERIODIC_SPECS = ('fig2-left', 'fig2-middle', 'fig2-right', 'fig3')

CONCLUSION = (
    "every locally optimal degree-3 plane graph on Z^2 has dilation exactly 1+√2 "
    "(M_loc = M), so the verified periodic graphs attain degree-3 dilation 1+√2"
)


@dataclass(frozen=True)
class RunContext:
    settings: SearchSettings
    tracer: trace.Tracer
    cert_dir: Path | None = None


def verify_periodic_stage(ctx: RunContext, spec_source: str) -> PeriodicStage:
    with ctx.tracer.start_as_current_span("verify-periodic") as span:
        spec = load_periodic_spec(spec_source)
        span.set_attribute("spec", spec.name)
        r = verify_periodic_local_optimality(spec, threads=ctx.settings.threads)
        span.set_attribute("ok", r.ok)
        return PeriodicStage(
            r.name, r.ok, r.index, r.max_degree, r.pairs_checked, r.assignments_checked, r.failure
        )


def lower_bound_stage(ctx: RunContext, spec_source: str) -> TightnessStage:
    with ctx.tracer.start_as_current_span("lower-bound"):
        spec = load_periodic_spec(spec_source)
        r = unit_neighbour_tightness(spec)
        return TightnessStage(r.name, r.ok, len(r.witnesses), list(r.missing))


def lemma24_stages(ctx: RunContext) -> list[Stage]:
    with ctx.tracer.start_as_current_span("lemma24"):
        bounded = lemma24_bounded_check()
        induction = induction_inequality_certificate()
    positive = [e.margin for e in bounded.entries if not e.saturated]
    return [
        Lemma24Stage(
            ok=bounded.ok,
            points_checked=bounded.checked,
            saturated=sum(e.saturated for e in bounded.entries),
            min_positive_margin=min(positive, default=0.0),
            entries=[
                Lemma24Row(e.q, e.distance.pair(), e.saturated, e.margin)
                for e in bounded.entries
            ],
        ),
        InductionStage(
            ok=induction.ok,
            coefficients={k: c.pair() for k, c in induction.coefficients.items()},
            side_conditions=induction.side_conditions,
        ),
    ]


def enumerate_shortest_stage(ctx: RunContext) -> ShortestStage:
    with ctx.tracer.start_as_current_span("enumerate-shortest"):
        classes = enumerate_shortest_candidates((0, 0), KNIGHT_TARGET)
    matches = set(classes) == set(STORED_CANDIDATES)
    return ShortestStage(
        ok=matches,
        classes=[ShortestClass(str(p), p.length.pair()) for p in classes],
        matches_stored=matches,
    )


def _proof_stage(ctx: RunContext, name: str, result: ProofResult) -> ProofStage:
    cert = result.certificate
    report = check_certificate(cert, threads=ctx.settings.threads)
    if not report.valid:
        logger.error("certificate for %s failed replay: %s", name, report.failures[:3])
    written = None
    if ctx.cert_dir is not None:
        ctx.cert_dir.mkdir(parents=True, exist_ok=True)
        path = ctx.cert_dir / f"{name}.cert"
        write_certificate(cert, path)
        written = str(path)
    s = result.summary
    return ProofStage(
        name=name,
        ok=report.valid,
        nodes=s.nodes,
        max_depth=s.max_depth,
        wall_time=s.wall_time,
        cache_hit_ratio=s.cache_hit_ratio,
        leaves=s.leaves,
        replay_valid=report.valid,
        certificate=written,
        reason='' if report.valid else f"{len(report.failures)} node(s) failed replay",
    )


def _inconclusive(name: str, e: InconclusiveError) -> ProofStage:
    logger.warning("%s inconclusive: %s", name, e)
    return ProofStage(name=name, ok=False, nodes=e.nodes, reason=str(e))


def prove_forbidden_stage(ctx: RunContext, pattern_id: str) -> ProofStage:
    name = f"forbidden-{pattern_id.lower()}"
    with ctx.tracer.start_as_current_span("prove-forbidden") as span:
        span.set_attribute("pattern", pattern_id)
        try:
            result = prove_forbidden(pattern_id, ctx.settings)
        except InconclusiveError as e:
            return _inconclusive(name, e)
        return _proof_stage(ctx, name, result)


def prove_boost_stages(ctx: RunContext) -> list[ProofStage]:
    with ctx.tracer.start_as_current_span("prove-boost"):
        try:
            results = prove_boost(ctx.settings)
        except InconclusiveError as e:
            return [_inconclusive("boost", e)]
        return [_proof_stage(ctx, f"boost-p{i}", r) for i, r in enumerate(results, start=1)]


def corroborate_stage(ctx: RunContext, max_norm_sq: int) -> CorroborationStage:
    with ctx.tracer.start_as_current_span("corroborate-short-edges"):
        report = corroborate_short_edges(max_norm_sq, ctx.settings)
    rows = []
    for c in report.classes:
        if c.result is not None and ctx.cert_dir is not None:
            _proof_stage(ctx, f"edge-{c.edge[0]}-{c.edge[1]}", c.result)
        rows.append(EdgeClassRow(c.edge, c.norm_sq, c.refuted, c.nodes, c.reason))
    return CorroborationStage(report.ok, max_norm_sq, rows)


def check_cert_stage(ctx: RunContext, file: Path) -> CheckStage:
    with ctx.tracer.start_as_current_span("check-cert"):
        try:
            cert = read_certificate(file)
        except CertificateError as e:
            return CheckStage(str(file), False, 0, failures=[CheckFailureRow('document', str(e))])
        report = check_certificate(cert, threads=ctx.settings.threads)
    return CheckStage(
        file=str(file),
        ok=report.valid,
        nodes_checked=report.nodes_checked,
        leaves=report.leaves,
        failures=[CheckFailureRow(f.where, f.message) for f in report.failures],
    )


def classify_stage(ctx: RunContext, edge_file: Path, p: tuple[int, int], q: tuple[int, int]):
    with ctx.tracer.start_as_current_span("classify"):
        S = parse_edge_list(edge_file.read_text())
        case = classify_pair(S, ClosePair(p, q))
    return ClassifyStage(True, p, q, case.tag.value, [str(path) for path in case.paths])


def render_stage(ctx: RunContext, state_source: str, output: Path) -> RenderStage:
    with ctx.tracer.start_as_current_span("render"):
        state = load_state(state_source)
        output.write_text(render_state(state))
    logger.info("wrote %s", output)
    return RenderStage(True, str(output), len(state.edges), len(state.annotations))


def run_all(ctx: RunContext) -> list[Stage]:
    """Every stage in order, stopping at the first failure."""
    stages: list[Stage] = []
    steps = [
        ("lemma24", lambda: lemma24_stages(ctx)),
        ("enumerate-shortest", lambda: [enumerate_shortest_stage(ctx)]),
        ("prove forbidden h1", lambda: [prove_forbidden_stage(ctx, 'h1')]),
        ("prove forbidden h2", lambda: [prove_forbidden_stage(ctx, 'h2')]),
        ("prove boost", lambda: prove_boost_stages(ctx)),
        *(
            (f"verify-periodic {name}", lambda name=name: [verify_periodic_stage(ctx, name)])
            for name in PERIODIC_SPECS
        ),
    ]
    with ctx.tracer.start_as_current_span("all"):
        for label, step in steps:
            logger.info("stage %s", label)
            produced = step()
            stages.extend(produced)
            if not all(s.ok for s in produced):
                logger.error("stage %s failed", label)
                return stages
        stages.append(ConclusionStage(True, CONCLUSION))
    return stages
