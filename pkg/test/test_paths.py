import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from com.exceptions import PreconditionError
from exact import DILATION, Zr2, leq_scaled_sqrt
from lattice import (
    CLOSE_OFFSETS,
    EMPTY,
    GraphPatch,
    Transform,
    apply_symmetry,
    edge,
    is_valid_partial,
    norm_sq,
)
from paths import (
    BOOST_THRESHOLD,
    KNIGHT_TARGET,
    STORED_CANDIDATES,
    CaseTag,
    ClosePair,
    PathCandidate,
    canonicalize,
    classify_pair,
    close_pair_offsets,
    enumerate_admissible,
    enumerate_shortest_candidates,
    format_path,
    long_edge_may_connect,
    parse_path,
    path_fits,
    subpaths_within_bound,
)
from render import load_state, state_patch


def test_close_pair_validation():
    assert len(close_pair_offsets()) == 20
    assert ClosePair((0, 0), (1, 2)).norm_sq == 5
    with pytest.raises(PreconditionError):
        ClosePair((0, 0), (2, 2))
    pair = ClosePair((1, 0), (0, 0))
    assert pair.canonical() == ClosePair((0, 0), (1, 0))
    assert str(pair) == "1,0-0,0"


def test_path_candidate():
    path = PathCandidate.of([(0, 0), (1, 1), (1, 2)])
    assert path.length == Zr2(1, 1)
    assert path.edges() == [edge((0, 0), (1, 1)), edge((1, 1), (1, 2))]
    assert path.reversed().start == (1, 2)
    with pytest.raises(PreconditionError, match="revisits"):
        PathCandidate.of([(0, 0), (1, 0), (0, 0)])
    with pytest.raises(PreconditionError, match="not a unit or diagonal"):
        PathCandidate.of([(0, 0), (2, 0)])
    with pytest.raises(PreconditionError):
        PathCandidate.of([(0, 0)])


def test_path_text():
    vertices = ((0, 0), (-1, 1), (0, 2))
    assert parse_path(format_path(vertices)) == vertices
    with pytest.raises(ValueError, match="expected 'x,y'"):
        parse_path("0,0 1")


def test_admissible_on_empty_unit_pair():
    paths = enumerate_admissible(EMPTY, ClosePair((0, 0), (1, 0)))
    assert PathCandidate.of([(0, 0), (1, 0)]) in paths
    # the detours through a corner of either adjacent square
    assert PathCandidate.of([(0, 0), (0, 1), (1, 0)]) in paths
    assert PathCandidate.of([(0, 0), (1, 1), (1, 0)]) in paths
    assert len(paths) == 5
    assert paths == sorted(paths)


@pytest.mark.parametrize('offset', close_pair_offsets())
def test_admissible_paths_respect_the_bound(offset):
    pair = ClosePair((0, 0), offset)
    paths = enumerate_admissible(EMPTY, pair)
    assert paths
    for path in paths:
        assert path.start == pair.p and path.end == pair.q
        assert leq_scaled_sqrt(path.length, DILATION, pair.norm_sq)
        assert is_valid_partial(GraphPatch.of(path.edges()))


def test_admissible_respects_degree_and_crossing():
    # (0,0) is saturated, so only existing edges may leave it
    S = GraphPatch.of([((0, 0), (-1, 0)), ((0, 0), (0, -1)), ((0, 0), (1, 1))])
    paths = enumerate_admissible(S, ClosePair((0, 0), (1, 0)))
    assert paths
    assert all(path.vertices[1] in S.neighbours((0, 0)) for path in paths)
    # a diagonal crossing an existing one is never used
    S = GraphPatch.of([((0, 1), (1, 0))])
    paths = enumerate_admissible(S, ClosePair((0, 0), (1, 1)))
    assert PathCandidate.of([(0, 0), (1, 1)]) not in paths


def test_path_fits():
    S = GraphPatch.of([((0, 1), (1, 0))])
    assert not path_fits(S, PathCandidate.of([(0, 0), (1, 1)]))
    assert path_fits(S, PathCandidate.of([(0, 0), (0, 1), (1, 1)]))
    full = GraphPatch.of([((0, 0), (-1, 0)), ((0, 0), (0, -1)), ((0, 0), (-1, -1))])
    assert not path_fits(full, PathCandidate.of([(0, 0), (1, 0)]))


def test_path_fits_agrees_with_enumeration():
    pair = ClosePair((0, 0), (1, 2))
    S = GraphPatch.of([((0, 1), (1, 0)), ((1, 0), (1, 1)), ((0, 1), (0, 2))])
    old = enumerate_admissible(EMPTY, pair)
    assert [p for p in old if path_fits(S, p)] == enumerate_admissible(S, pair)


def test_long_edge_may_connect():
    S = GraphPatch.of([((0, 0), (2, 1))])
    assert long_edge_may_connect(S, ClosePair((0, 0), (2, 1)))
    # the chord plus a diagonal back overshoots 1+√2
    assert not long_edge_may_connect(S, ClosePair((0, 0), (1, 0)))
    far = GraphPatch.of([((10, 10), (12, 11))])
    assert not long_edge_may_connect(far, ClosePair((0, 0), (1, 0)))
    assert not long_edge_may_connect(EMPTY, ClosePair((0, 0), (1, 0)))


def test_classify_satisfaction():
    S = GraphPatch.of([((0, 0), (1, 0))])
    case = classify_pair(S, ClosePair((0, 0), (1, 0)))
    assert case.tag is CaseTag.SATISFACTION
    assert case.paths == ()
    with pytest.raises(ValueError):
        _ = case.path


def test_classify_exploration_on_empty():
    case = classify_pair(EMPTY, ClosePair((0, 0), (1, 2)))
    assert case.tag is CaseTag.EXPLORATION
    assert len(case.paths) > 1


def test_classify_contradiction():
    # both ends saturated and no existing edge leads anywhere useful
    S = GraphPatch.of(
        [
            ((0, 0), (-1, 0)),
            ((0, 0), (-1, -1)),
            ((0, 0), (0, -1)),
            ((1, 0), (2, 0)),
            ((1, 0), (2, -1)),
            ((1, 0), (1, -1)),
        ]
    )
    case = classify_pair(S, ClosePair((0, 0), (1, 0)))
    assert case.tag is CaseTag.CONTRADICTION


def test_classify_deduction_from_bundled_state():
    S = state_patch(load_state('fig6-2'))
    case = classify_pair(S, ClosePair((1, 0), (2, 1)))
    assert case.tag is CaseTag.DEDUCTION
    assert case.path == PathCandidate.of([(1, 0), (2, 0), (3, 1), (2, 1)])


def test_classify_contradiction_from_bundled_state():
    S = state_patch(load_state('fig6-1'))
    assert is_valid_partial(S)
    case = classify_pair(S, ClosePair((1, 1), (3, 2)))
    assert case.tag is CaseTag.CONTRADICTION
    # with (1,2) one edge short of saturation the pair still has a way through it
    opened = GraphPatch(S.edges - {edge((1, 2), (1, 3))})
    case = classify_pair(opened, ClosePair((1, 1), (3, 2)))
    assert PathCandidate.of([(1, 1), (1, 2), (2, 2), (3, 1), (3, 2)]) in case.paths


def test_stored_candidates_are_canonical():
    for path in STORED_CANDIDATES:
        assert path.start == (0, 0) and path.end == KNIGHT_TARGET
        assert canonicalize(path) == path
        assert canonicalize(path.reversed()) == path
        assert path.length > BOOST_THRESHOLD
        assert subpaths_within_bound(path)


def test_canonicalize_symmetric_image():
    # P4 mirrored through the pair's midpoint
    image = PathCandidate.of([(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2)])
    assert canonicalize(image) == STORED_CANDIDATES[3]
    with pytest.raises(PreconditionError):
        canonicalize(PathCandidate.of([(0, 0), (1, 1)]))


def test_enumerate_shortest_candidates():
    found = enumerate_shortest_candidates((0, 0), KNIGHT_TARGET)
    assert found == sorted(STORED_CANDIDATES)
    assert {p.length for p in found} == {Zr2(1, 3), Zr2(5, 0)}
    # any knight-move pair gives the same classes
    assert enumerate_shortest_candidates((3, 3), (1, 2)) == found
    with pytest.raises(PreconditionError):
        enumerate_shortest_candidates((0, 0), (1, 1))


def test_subpath_rule_rejects_u_turns():
    path = PathCandidate.of([(0, 0), (-1, 1), (-1, 2), (0, 1), (1, 2)])
    assert norm_sq(path.start, path.end) == 5
    assert not subpaths_within_bound(path)


SHORT_EDGES = [
    edge((x, y), (x + dx, y + dy))
    for x in range(-2, 3)
    for y in range(-2, 3)
    for dx, dy in ((1, 0), (0, 1), (1, 1), (1, -1))
]
valid_patches = (
    st.sets(st.sampled_from(SHORT_EDGES), max_size=8).map(GraphPatch.of).filter(is_valid_partial)
)
pairs = st.builds(
    lambda p, d: ClosePair(p, (p[0] + d[0], p[1] + d[1])),
    st.tuples(st.integers(-1, 1), st.integers(-1, 1)),
    st.sampled_from(CLOSE_OFFSETS),
)
transforms = st.builds(
    Transform,
    st.integers(0, 7),
    st.tuples(st.integers(-5, 5), st.integers(-5, 5)),
)


def _vertex_sets(case) -> set[tuple]:
    return {p.vertices for p in case.paths}


@settings(deadline=None)
@given(valid_patches, pairs, transforms)
def test_classification_is_invariant_under_symmetry(S, pair, T):
    case = classify_pair(S, pair)
    image = ClosePair(T.apply_point(pair.p), T.apply_point(pair.q))
    moved = classify_pair(apply_symmetry(T, S), image)
    assert moved.tag is case.tag
    assert _vertex_sets(moved) == {tuple(map(T.apply_point, vs)) for vs in _vertex_sets(case)}


@settings(deadline=None)
@given(valid_patches, pairs)
def test_reversed_pair_has_reversed_paths(S, pair):
    case = classify_pair(S, pair)
    back = classify_pair(S, pair.reversed())
    assert back.tag is case.tag
    assert _vertex_sets(back) == {vs[::-1] for vs in _vertex_sets(case)}


@settings(deadline=None)
@given(valid_patches, pairs)
def test_edges_only_remove_admissible_paths(S, pair):
    assert set(enumerate_admissible(S, pair)) <= set(enumerate_admissible(EMPTY, pair))
