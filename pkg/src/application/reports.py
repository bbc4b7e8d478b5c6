"""Stage results and their text (rich) and JSON (msgspec) renderings.

The text report is generated from the same builtins the JSON report encodes,
so both always carry the same numbers.
"""

from typing import Any

import msgspec
import msgspec.json
from msgspec import Struct
from rich.console import Console
from rich.markup import escape
from rich.table import Table

__all__ = [
    'PeriodicStage',
    'TightnessStage',
    'Lemma24Row',
    'Lemma24Stage',
    'InductionStage',
    'ShortestClass',
    'ShortestStage',
    'ProofStage',
    'EdgeClassRow',
    'CorroborationStage',
    'CheckFailureRow',
    'CheckStage',
    'ClassifyStage',
    'RenderStage',
    'ConclusionStage',
    'Stage',
    'Report',
    'encode_report',
    'print_report',
]

PointT = tuple[int, int]
Zr2T = tuple[int, int]


class PeriodicStage(Struct, tag='verify-periodic', tag_field='stage'):
    name: str
    ok: bool
    index: int
    max_degree: int
    pairs_checked: int
    assignments_checked: int
    failure: tuple[PointT, PointT] | None = None


class TightnessStage(Struct, tag='lower-bound', tag_field='stage'):
    name: str
    ok: bool
    witnessed: int
    missing: list[PointT] = []


class Lemma24Row(Struct):
    q: PointT
    distance: Zr2T
    saturated: bool
    margin: float


class Lemma24Stage(Struct, tag='lemma24', tag_field='stage'):
    ok: bool
    points_checked: int
    saturated: int
    min_positive_margin: float
    entries: list[Lemma24Row] = []


class InductionStage(Struct, tag='induction', tag_field='stage'):
    ok: bool
    coefficients: dict[str, Zr2T]
    side_conditions: dict[str, bool]


class ShortestClass(Struct):
    path: str
    length: Zr2T


class ShortestStage(Struct, tag='enumerate-shortest', tag_field='stage'):
    ok: bool
    classes: list[ShortestClass]
    matches_stored: bool


class ProofStage(Struct, tag='prove', tag_field='stage'):
    name: str
    ok: bool
    nodes: int
    max_depth: int = 0
    wall_time: float = 0.0
    cache_hit_ratio: float = 0.0
    leaves: dict[str, int] = {}
    replay_valid: bool = False
    certificate: str | None = None
    reason: str = ''


class EdgeClassRow(Struct):
    edge: PointT
    norm_sq: int
    refuted: bool
    nodes: int
    reason: str = ''


class CorroborationStage(Struct, tag='corroborate-short-edges', tag_field='stage'):
    ok: bool
    max_norm_sq: int
    classes: list[EdgeClassRow]


class CheckFailureRow(Struct):
    where: str
    message: str


class CheckStage(Struct, tag='check-cert', tag_field='stage'):
    file: str
    ok: bool
    nodes_checked: int
    leaves: dict[str, int] = {}
    failures: list[CheckFailureRow] = []


class ClassifyStage(Struct, tag='classify', tag_field='stage'):
    ok: bool
    p: PointT
    q: PointT
    case: str
    paths: list[str] = []


class RenderStage(Struct, tag='render', tag_field='stage'):
    ok: bool
    output: str
    edges: int
    annotations: int


class ConclusionStage(Struct, tag='conclusion', tag_field='stage'):
    ok: bool
    statement: str


Stage = (
    PeriodicStage
    | TightnessStage
    | Lemma24Stage
    | InductionStage
    | ShortestStage
    | ProofStage
    | CorroborationStage
    | CheckStage
    | ClassifyStage
    | RenderStage
    | ConclusionStage
)


class Report(Struct):
    command: str
    ok: bool
    stages: list[Stage]
    error: str = ''


def encode_report(report: Report) -> bytes:
    return msgspec.json.format(msgspec.json.encode(report), indent=2) + b'\n'


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, list) and len(value) == 2 and all(isinstance(v, int) for v in value):
        return f"({value[0]}, {value[1]})"
    return escape(str(value))


def _stage_tables(stage: dict[str, Any]) -> list[Table]:
    name = stage.pop('stage')
    title = f"{name}: {stage['name']}" if 'name' in stage else name
    main = Table(title=title, show_header=False)
    main.add_column("field", style="bold")
    main.add_column("value")
    nested: list[Table] = []
    for key, value in stage.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            sub = Table(title=f"{title} / {key}")
            for col in value[0]:
                sub.add_column(col)
            for row in value:
                sub.add_row(*(_cell(v) for v in row.values()))
            nested.append(sub)
            continue
        if isinstance(value, dict):
            value = ', '.join(f"{k}={_cell(v)}" for k, v in value.items())
        main.add_row(key, _cell(value))
    return [main, *nested]


def print_report(report: Report, console: Console | None = None) -> None:
    console = console or Console()
    for stage in msgspec.to_builtins(report.stages):
        for table in _stage_tables(stage):
            console.print(table)
    verdict = "[green]OK[/green]" if report.ok else "[red]FAILED[/red]"
    console.print(f"{report.command}: {verdict}")
    if report.error:
        console.print(report.error, style="red", markup=False)
