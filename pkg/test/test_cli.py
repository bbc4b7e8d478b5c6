import json

import pytest

from application.main import EXIT_FAILED, EXIT_OK, EXIT_USAGE, build_parser, run
from lattice import format_edge_list
from render import encode_state, load_state, state_patch

BASE = ['--report', 'json', '--disable-otel']


def _run(capsys, *argv: str) -> tuple[int, dict]:
    code = run([*BASE, *argv])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_lemma24(capsys):
    code, report = _run(capsys, 'lemma24')
    assert code == EXIT_OK
    assert report['ok']
    assert [s['stage'] for s in report['stages']] == ['lemma24', 'induction']
    assert report['stages'][0]['points_checked'] == 148


def test_enumerate_shortest(capsys):
    code, report = _run(capsys, 'enumerate-shortest')
    assert code == EXIT_OK
    (stage,) = report['stages']
    assert stage['matches_stored']
    assert len(stage['classes']) == 4


def test_unknown_pattern_is_a_usage_error(capsys):
    code, report = _run(capsys, 'prove', 'forbidden', '--pattern', 'h3')
    assert code == EXIT_USAGE
    assert not report['ok']
    assert 'h3' in report['error']


def test_verify_periodic(capsys):
    code, report = _run(capsys, 'verify-periodic', 'fig2-left')
    assert code == EXIT_OK
    assert report['stages'][0]['stage'] == 'verify-periodic'


def test_missing_spec_file(capsys, tmp_path):
    code, _ = _run(capsys, 'verify-periodic', str(tmp_path / 'nope.txt'))
    assert code == EXIT_USAGE


def test_brick_wall_fails(capsys, tmp_path):
    spec = tmp_path / 'brick.txt'
    spec.write_text("period 2 0 1 1\n0 0 1 0\n1 0 2 0\n0 0 0 1\n")
    code, report = _run(capsys, 'verify-periodic', str(spec))
    assert code == EXIT_FAILED
    assert report['stages'][0]['failure'] is not None


def test_lower_bound(capsys):
    code, report = _run(capsys, 'lower-bound', 'fig3')
    assert code == EXIT_OK
    assert report['stages'][0]['missing'] == []


def test_render(capsys, tmp_path):
    out = tmp_path / 'state.svg'
    code, report = _run(capsys, 'render', 'fig6-3', '-o', str(out))
    assert code == EXIT_OK
    assert report['stages'][0]['edges'] == 14
    assert out.read_text().count('<line class="edge" ') == 14


def test_render_from_state_file(capsys, tmp_path):
    source = tmp_path / 'state.json'
    source.write_bytes(encode_state(load_state('fig6-1')))
    out = tmp_path / 'state.svg'
    code, report = _run(capsys, 'render', str(source), '-o', str(out))
    assert code == EXIT_OK
    assert report['stages'][0]['edges'] == 14
    assert 'class="overlay contradiction"' in out.read_text()


def test_classify(capsys, tmp_path):
    edges = tmp_path / 'edges.txt'
    edges.write_text(format_edge_list(state_patch(load_state('fig6-2'))))
    code, report = _run(capsys, 'classify', str(edges), '1,0', '2,1')
    assert code == EXIT_OK
    (stage,) = report['stages']
    assert stage['case'] == 'deduction'
    assert stage['p'] == [1, 0] and stage['q'] == [2, 1]


def test_corroborate_and_check(capsys, tmp_path):
    certs = tmp_path / 'certs'
    code, report = _run(
        capsys,
        '--budget', '1',
        '--emit-cert', str(certs),
        'corroborate-short-edges', '--max-norm-sq', '4',
    )  # fmt: skip
    assert code == EXIT_OK
    (row,) = report['stages'][0]['classes']
    assert row['edge'] == [2, 0] and row['refuted'] and row['nodes'] == 1

    cert = certs / 'edge-2-0.cert'
    code, report = _run(capsys, 'check-cert', str(cert))
    assert code == EXIT_OK
    assert report['stages'][0]['nodes_checked'] == 1

    garbage = tmp_path / 'garbage.cert'
    garbage.write_text('{"not": "a certificate"')
    code, report = _run(capsys, 'check-cert', str(garbage))
    assert code == EXIT_FAILED
    assert report['stages'][0]['failures'][0]['where'] == 'document'


def test_check_missing_certificate(capsys, tmp_path):
    code, _ = _run(capsys, 'check-cert', str(tmp_path / 'missing.cert'))
    assert code == EXIT_USAGE


def test_metrics_file(capsys, tmp_path):
    metrics = tmp_path / 'metrics.prom'
    code, _ = _run(capsys, '--metrics-file', str(metrics), '--budget', '1',
                   'corroborate-short-edges', '--max-norm-sq', '4')  # fmt: skip
    assert code == EXIT_OK
    assert 'lattice_prover_nodes_expanded_total' in metrics.read_text()


def test_text_report(capsys):
    assert run(['--disable-otel', 'enumerate-shortest']) == EXIT_OK
    assert 'enumerate-shortest' in capsys.readouterr().out


def test_version(capsys):
    with pytest.raises(SystemExit) as e:
        build_parser().parse_args(['--version'])
    assert e.value.code == 0
    assert capsys.readouterr().out.startswith('lattice-spanners ')


@pytest.mark.slow_proof
def test_all_writes_the_same_certificates_with_more_threads(capsys, tmp_path):
    for threads in ('1', '8'):
        code, report = _run(
            capsys, '--threads', threads, '--emit-cert', str(tmp_path / threads), 'all'
        )
        assert code == EXIT_OK, report['error']
    single = sorted(p.name for p in (tmp_path / '1').iterdir())
    assert single == sorted(p.name for p in (tmp_path / '8').iterdir())
    assert len(single) == 6
    for name in single:
        assert (tmp_path / '1' / name).read_bytes() == (tmp_path / '8' / name).read_bytes()
