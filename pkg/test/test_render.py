import re

import pytest

from lattice import GraphPatch
from render import (
    BUILTIN_STATES,
    COLOURS,
    BoundWitness,
    PairHighlight,
    PathHighlight,
    PatternHighlight,
    ProofState,
    decode_state,
    encode_state,
    load_state,
    render_state,
    render_svg,
)

EDGE_RE = re.compile(r'<line class="edge" ')


@pytest.mark.parametrize('name', sorted(BUILTIN_STATES))
def test_one_line_per_edge(name):
    state = load_state(name)
    svg = render_state(state)
    assert svg.startswith('<?xml')
    assert len(EDGE_RE.findall(svg)) == len(state.edges)


def test_rendering_is_deterministic():
    state = load_state('fig6-3')
    assert render_state(state) == render_state(load_state('fig6-3'))


def test_view_box_is_centred():
    svg = render_state(load_state('fig6-1'))
    # farthest point is (4, 1), plus two units of padding at 40px each
    assert 'viewBox="-240 -240 480 480"' in svg


def test_y_axis_points_up():
    svg = render_svg(GraphPatch.of([((0, 0), (0, 1))]))
    assert '<line class="edge" x1="0" y1="0" x2="0" y2="-40"/>' in svg


def test_overlays():
    S = GraphPatch.of([((0, 0), (1, 0)), ((1, 0), (1, 1))])
    svg = render_svg(
        S,
        [
            PairHighlight((0, 0), (1, 1)),
            PathHighlight([(0, 0), (0, 1), (1, 1)]),
            PatternHighlight('unit'),
            BoundWitness((0, 0), (2, 1), [(0, 0), (1, 0)]),
        ],
    )
    for kind in ('contradiction', 'deduction', 'pattern', 'bound'):
        assert f'<g class="overlay {kind}">' in svg
        assert COLOURS[kind] in svg
    assert 'class="bound shortcut"' in svg
    assert '>u</text>' in svg and '>v</text>' in svg


def test_title_is_escaped():
    svg = render_svg(GraphPatch.of([((0, 0), (1, 0))]), title="d(u, v) < 5")
    assert '<title>d(u, v) &lt; 5</title>' in svg


def test_unknown_annotation():
    with pytest.raises(TypeError):
        render_svg(GraphPatch.of([((0, 0), (1, 0))]), [object()])


def test_state_files():
    state = ProofState(
        edges=[(0, 0, 1, 0)],
        annotations=[PatternHighlight('h1', 2, (3, 1))],
        name='example',
    )
    assert decode_state(encode_state(state)) == state
    assert load_state('fig6-3').annotations == [PatternHighlight('h1', 2, (3, 1))]


def test_load_state_from_path(tmp_path):
    path = tmp_path / 'state.json'
    path.write_bytes(encode_state(load_state('fig6-2')))
    assert load_state(path) == load_state('fig6-2')
