import msgspec
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from msgspec import structs

from cert import (
    FORMAT_VERSION,
    BoundHitNode,
    BoundSpec,
    BranchChild,
    BranchNode,
    Certificate,
    ContradictionNode,
    DeductionNode,
    Header,
    Pair,
    PatternHitNode,
    VersionStatus,
    canonical_problems,
    check_certificate,
    check_format_version,
    decode,
    encode,
    read_certificate,
    referenced_points,
    walk,
    write_certificate,
)
from com.exceptions import CertificateFormatError, CertificateVersionError
from lattice import Box, GraphPatch
from paths import ClosePair, classify_pair
from render import load_state, state_patch

# both endpoints of the unit pair (0,0)-(1,0) are saturated by edges pointing away
BLOCKED = GraphPatch.of(
    [
        ((0, 0), (-1, 0)),
        ((0, 0), (-1, -1)),
        ((0, 0), (0, -1)),
        ((1, 0), (2, 0)),
        ((1, 0), (2, -1)),
        ((1, 0), (1, -1)),
    ]
)

UNIT_HIT = PatternHitNode('unit', 0, (0, 0))


def _certificate(S: GraphPatch, root, patterns=(), bound=None) -> Certificate:
    cert = Certificate(
        header=Header(FORMAT_VERSION, '0.0.0-test', 'fail-first', 2, (0, 0, 0, 0)),
        s0=S.sorted_edges(),
        patterns=sorted(patterns),
        bound=bound,
        root=root,
    )
    box = Box.around(tuple(p) for p in referenced_points(cert))
    return structs.replace(cert, header=structs.replace(cert.header, bounds=tuple(box)))


def contradiction_cert() -> Certificate:
    return _certificate(BLOCKED, ContradictionNode(Pair((0, 0), (1, 0))))


def deduction_cert() -> Certificate:
    S = state_patch(load_state('fig6-2'))
    path = [(1, 0), (2, 0), (3, 1), (2, 1)]
    return _certificate(S, DeductionNode(Pair((1, 0), (2, 1)), path, UNIT_HIT), ['unit'])


def branch_cert() -> Certificate:
    S = GraphPatch.of([((0, 0), (1, 0))])
    case = classify_pair(S, ClosePair((0, 0), (0, 1)))
    children = [BranchChild(list(p.vertices), UNIT_HIT) for p in case.paths]
    return _certificate(S, BranchNode(Pair((0, 0), (0, 1)), children), ['unit'])


@pytest.fixture(params=['contradiction', 'deduction', 'branch'])
def valid_cert(request) -> Certificate:
    return {
        'contradiction': contradiction_cert,
        'deduction': deduction_cert,
        'branch': branch_cert,
    }[request.param]()


def test_valid_certificates_check(valid_cert):
    assert canonical_problems(valid_cert) == []
    report = check_certificate(valid_cert)
    assert report.valid, report.failures
    assert report.nodes_checked == sum(1 for _ in walk(valid_cert.root))


def test_encoding_is_stable(valid_cert):
    data = encode(valid_cert)
    assert data.endswith(b'\n')
    assert decode(data) == valid_cert
    assert encode(decode(data)) == data


def test_file_round_trip(tmp_path):
    cert = branch_cert()
    path = tmp_path / 'branch.cert'
    write_certificate(cert, path)
    assert read_certificate(path) == cert


def test_leaf_counts():
    report = check_certificate(branch_cert())
    assert report.leaves == {'pattern': len(branch_cert().root.children)}
    assert check_certificate(contradiction_cert()).leaves == {'contradiction': 1}


def test_threaded_check_matches():
    cert = branch_cert()
    assert check_certificate(cert, threads=4) == check_certificate(cert)


def test_walk_paths():
    where = [w for w, _ in walk(deduction_cert().root)]
    assert where == ['root', 'root/deduction']
    where = [w for w, _ in walk(branch_cert().root)]
    assert where[0] == 'root'
    assert where[1] == 'root/branch[0]'


def test_truncated_certificate_reports_position():
    data = encode(branch_cert())
    with pytest.raises(CertificateFormatError, match=r"malformed certificate at line \d+"):
        decode(data[: len(data) // 2])


def test_wrong_field_type_names_the_field():
    doc = msgspec.json.decode(encode(contradiction_cert()))
    doc['header']['scan_radius'] = "two"
    with pytest.raises(CertificateFormatError, match=r"scan_radius"):
        decode(msgspec.json.encode(doc))


def test_unknown_node_kind():
    doc = msgspec.json.decode(encode(contradiction_cert()))
    doc['root']['kind'] = 'oracle'
    with pytest.raises(CertificateFormatError):
        decode(msgspec.json.encode(doc))


@pytest.mark.parametrize('version', ['2.0', '0.9', 'banana'])
def test_unsupported_version(version):
    doc = msgspec.json.decode(encode(contradiction_cert()))
    doc['header']['format_version'] = version
    with pytest.raises(CertificateVersionError, match="not supported"):
        decode(msgspec.json.encode(doc))


def test_version_check_can_be_disabled(monkeypatch):
    monkeypatch.setenv('LATTICE_DISABLE_VERSION_CHECK', '1')
    assert check_format_version('7.0') is VersionStatus.OK
    monkeypatch.delenv('LATTICE_DISABLE_VERSION_CHECK')
    assert check_format_version('1.3') is VersionStatus.OK
    assert check_format_version('7.0') is VersionStatus.UNSUPPORTED


def _failures(cert: Certificate) -> list[str]:
    report = check_certificate(cert)
    assert not report.valid
    return [f"{f.where}: {f.message}" for f in report.failures]


def test_reordered_branch_children_are_rejected():
    cert = branch_cert()
    root = cert.root
    swapped = structs.replace(root, children=root.children[::-1])
    failures = _failures(structs.replace(cert, root=swapped))
    assert any("strictly increasing" in f for f in failures)


def test_reordered_s0_is_rejected():
    cert = contradiction_cert()
    failures = _failures(structs.replace(cert, s0=cert.s0[::-1]))
    assert any(f.startswith('s0') for f in failures)


def test_unordered_pair_is_rejected():
    cert = contradiction_cert()
    failures = _failures(structs.replace(cert, root=ContradictionNode(Pair((1, 0), (0, 0)))))
    assert any("pair endpoints must be ordered" in f for f in failures)


def test_points_outside_header_bounds():
    cert = contradiction_cert()
    header = structs.replace(cert.header, bounds=(0, 0, 1, 1))
    failures = _failures(structs.replace(cert, header=header))
    assert any("outside" in f for f in failures)


def test_missing_branch_child():
    cert = branch_cert()
    root = cert.root
    pruned = structs.replace(root, children=root.children[1:])
    failures = _failures(structs.replace(cert, root=pruned))
    assert any("1 path(s) missing" in f for f in failures)


def test_wrong_deduction_path():
    cert = deduction_cert()
    node = structs.replace(cert.root, path=[(1, 0), (2, 0), (2, 1)])
    failures = _failures(structs.replace(cert, root=node))
    assert any("the only admissible path is" in f for f in failures)


def test_contradiction_that_is_satisfied():
    S = GraphPatch.of([((0, 0), (1, 0))])
    cert = _certificate(S, ContradictionNode(Pair((0, 0), (1, 0))))
    failures = _failures(cert)
    assert any("satisfaction, not a contradiction" in f for f in failures)


def test_pattern_not_forbidden():
    cert = deduction_cert()
    failures = _failures(structs.replace(cert, patterns=[]))
    assert any("not forbidden" in f for f in failures)


def test_pattern_image_missing():
    cert = _certificate(BLOCKED, PatternHitNode('unit', 0, (5, 5)), ['unit'])
    failures = _failures(cert)
    assert any("is not in S" in f for f in failures)


def test_degenerate_bound():
    cert = _certificate(BLOCKED, ContradictionNode(Pair((0, 0), (1, 0))))
    bad = structs.replace(cert, bound=BoundSpec((0, 0), (0, 0), (5, 0)))
    failures = _failures(bad)
    assert any(f.startswith('bound') for f in failures)


def test_every_single_mutation_of_a_leaf_pair_is_caught():
    cert = branch_cert()
    for i, child in enumerate(cert.root.children):
        mutated = list(cert.root.children)
        mutated[i] = structs.replace(child, node=ContradictionNode(Pair((0, 0), (1, 0))))
        bad = structs.replace(cert, root=structs.replace(cert.root, children=mutated))
        report = check_certificate(bad)
        assert not report.valid
        assert report.failures[0].where == f"root/branch[{i}]"


def test_bound_hit_needs_a_strict_shortcut():
    S = state_patch(load_state('fig6-4'))
    hit = BoundHitNode('u', [(0, 0), (0, 1)], (0, 1))
    cert = _certificate(S, hit, bound=BoundSpec((0, 0), (1, 2), (5, 0)))
    assert check_certificate(cert).valid
    # 1 + (1+√2)·√2 = 3+√2 is not below 3
    failures = _failures(structs.replace(cert, bound=BoundSpec((0, 0), (1, 2), (3, 0))))
    assert any("is not below" in f for f in failures)


def _sites(node: dict, out: list[tuple[str, dict]]) -> list[tuple[str, dict]]:
    match node['kind']:
        case 'contradiction':
            out.append(('leaf', node))
        case 'pattern':
            out.append(('pattern', node))
        case 'deduction':
            out += [('pair', node), ('path', node)]
            _sites(node['child'], out)
        case 'branch':
            out += [('pair', node), ('children', node)]
            for child in node['children']:
                out.append(('path', child))
                _sites(child['node'], out)
    return out


deltas = st.tuples(st.integers(-2, 2), st.integers(-2, 2)).filter(lambda d: d != (0, 0))


def _mutate(doc: dict, data) -> None:
    kind, site = data.draw(st.sampled_from([('bounds', doc['header'])] + _sites(doc['root'], [])))
    match kind:
        case 'bounds':
            side = data.draw(st.integers(0, 3))
            # bounds are tight, so pulling any side in leaves a point outside
            site['bounds'][side] += 1 if side < 2 else -1
        case 'leaf':
            site.clear()
            site.update(kind='pattern', pattern='h2', linear=0, shift=[0, 0])
        case 'pattern':
            if data.draw(st.booleans()):
                site['pattern'] = 'h2'
            else:
                site['linear'] = data.draw(st.sampled_from([-1, 8, 9, 100]))
        case 'pair':
            end = data.draw(st.sampled_from(['p', 'q']))
            dx, dy = data.draw(deltas)
            site['pair'][end] = [site['pair'][end][0] + dx, site['pair'][end][1] + dy]
        case 'path':
            i = data.draw(st.integers(0, len(site['path']) - 1))
            dx, dy = data.draw(deltas)
            site['path'][i] = [site['path'][i][0] + dx, site['path'][i][1] + dy]
        case 'children':
            i = data.draw(st.integers(0, len(site['children']) - 1))
            if data.draw(st.booleans()):
                del site['children'][i]
            else:
                site['children'].insert(i, site['children'][i])


def _rejected(doc: dict) -> bool:
    try:
        cert = decode(msgspec.json.encode(doc))
    except CertificateFormatError:
        return True
    return not check_certificate(cert).valid


@pytest.mark.timeout(600)
@settings(max_examples=1000, deadline=None)
@given(st.sampled_from([contradiction_cert, deduction_cert, branch_cert]), st.data())
def test_every_mutant_is_rejected(build, data):
    doc = msgspec.to_builtins(build())
    _mutate(doc, data)
    assert _rejected(doc)
