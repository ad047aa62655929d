import csv
import json

import numpy as np
import pytest

from discordlab.app import EXIT_INPUT, EXIT_NUMERICAL, EXIT_OK, create_parser, main
from discordlab.config import Config
from discordlab.errors import NumericalError
from discordlab.models.state import DensityMatrix
from discordlab.services.file_service import StateFileService
from discordlab.services.hierarchy_service import HierarchyService


def run_json(capsys, *argv):
    code = main(['--format', 'json', *argv])
    captured = capsys.readouterr()
    assert code == EXIT_OK, captured.err
    return json.loads(captured.out)


@pytest.fixture
def state_file(tmp_path):
    """Write a state through make-state and return its path"""
    def make(name, *flags):
        path = str(tmp_path / f"{name}.json")
        assert main(['make-state', *flags, '--out', path]) == EXIT_OK
        return path
    return make


class TestMakeState:

    def test_bell(self, state_file):
        rho = StateFileService.load_state(state_file('bell', '--family', 'bell', '--m', '2'))
        assert rho.dims == (2, 2)
        assert rho.matrix[0, 3] == pytest.approx(0.5)

    def test_werner_counterexample(self, state_file):
        rho = StateFileService.load_state(state_file('werner', '--family', 'werner', '--m', '8', '--z', '-1'))
        assert rho.matrix.shape == (64, 64)

    def test_random_is_byte_identical(self, state_file):
        flags = ('--family', 'random', '--dim', '6', '--rank', '6', '--seed', '42')
        first, second = state_file('first', *flags), state_file('second', *flags)
        with open(first, 'rb') as a, open(second, 'rb') as b:
            assert a.read() == b.read()
        assert StateFileService.load_state(first).dims == (2, 3)

    def test_reserialize_round_trip(self, state_file, tmp_path):
        path = state_file('random', '--family', 'random', '--dims', '3x2', '--seed', '5')
        rho = StateFileService.load_state(path)
        again = str(tmp_path / 'again.json')
        StateFileService.save_state(rho, again)
        np.testing.assert_array_equal(StateFileService.load_state(again).matrix, rho.matrix)

    def test_cq_mixed_blocks(self, state_file):
        path = state_file('cq', '--family', 'cq', '--dims', '2x3', '--probs', '0.5,0.5', '--mixed-blocks')
        np.testing.assert_allclose(StateFileService.load_state(path).matrix, np.eye(6) / 6)

    def test_invalid_parameters(self, tmp_path, capsys):
        out = str(tmp_path / 'x.json')
        assert main(['make-state', '--family', 'werner', '--m', '3', '--z', '2', '--out', out]) == EXIT_INPUT
        assert 'error' in capsys.readouterr().err
        assert main(['make-state', '--family', 'random', '--out', out]) == EXIT_INPUT
        assert main(['make-state', '--family', 'cq', '--dims', '2x2', '--probs', 'a,b', '--out', out]) == EXIT_INPUT


class TestMeasures:

    def test_bell(self, state_file, capsys):
        report = run_json(capsys, 'measures', state_file('bell', '--family', 'bell'))
        assert report['negativity_trace'] == pytest.approx(1.0)
        assert report['negativity_witness'] == pytest.approx(0.5)
        assert report['n_minus'] == 1
        assert set(report['gd2']) == {'closed_form', 'optimizer', 'fixed_basis'}
        for entry in report['gd2'].values():
            assert entry['value'] == pytest.approx(0.5, abs=1e-8)
            assert entry['normalized'] == pytest.approx(1.0, abs=1e-8)
        assert report['seed'] == 0

    def test_maximally_mixed(self, state_file, capsys):
        path = state_file('mixed', '--family', 'cq', '--dims', '2x2', '--probs', '0.5,0.5', '--mixed-blocks')
        report = run_json(capsys, 'measures', path)
        assert report['negativity_trace'] == 0.0
        assert report['negativity_witness'] == 0.0
        assert all(entry['value'] <= 1e-12 for entry in report['gd2'].values())
        assert all(bound <= 1e-12 for bound in report['gd1_bounds'].values())

    def test_route_subset_and_repartition(self, state_file, capsys):
        path = state_file('werner', '--family', 'werner', '--m', '8', '--z', '-1')
        report = run_json(capsys, 'measures', path, '--routes', 'closed_form,fixed_basis',
                          '--repartition', '2x32')
        assert report['dims'] == [2, 32]
        assert report['gd2']['closed_form']['value'] == pytest.approx(1 / 98, abs=1e-9)
        assert report['negativity_witness'] == pytest.approx(5 / 28, abs=1e-12)

    def test_corrupted_state(self, tmp_path, capsys):
        path = tmp_path / 'bad.json'
        path.write_text(json.dumps({'dims': [1, 2], 'matrix': [[[1.5, 0], [0, 0]], [[0, 0], [-0.5, 0]]]}))
        assert main(['measures', str(path)]) == EXIT_INPUT
        assert 'min eigenvalue' in capsys.readouterr().err

    @pytest.mark.parametrize('bad', [float('nan'), float('inf')])
    def test_non_finite_state(self, tmp_path, capsys, bad):
        path = tmp_path / 'nonfinite.json'
        path.write_text(json.dumps({'dims': [1, 2], 'matrix': [[[0.5, 0], [bad, 0]], [[bad, 0], [0.5, 0]]]}))
        assert 'NaN' in path.read_text() or 'Infinity' in path.read_text()
        assert main(['--format', 'json', 'measures', str(path)]) == EXIT_INPUT
        captured = capsys.readouterr()
        assert captured.out == ''
        assert 'NaN or Inf' in captured.err

    def test_unknown_route(self, state_file, capsys):
        path = state_file('bell', '--family', 'bell')
        assert main(['measures', path, '--routes', 'simplex']) == EXIT_INPUT

    def test_text_and_csv_formats(self, state_file, capsys):
        path = state_file('bell', '--family', 'bell')
        assert main(['measures', path, '--routes', 'closed_form']) == EXIT_OK
        text = capsys.readouterr().out
        assert 'negativity_trace' in text
        assert 'gd2.closed_form.value' in text
        assert main(['measures', path, '--routes', 'closed_form', '--format', 'csv']) == EXIT_OK
        header, values = list(csv.reader(capsys.readouterr().out.splitlines()))
        assert dict(zip(header, values))['n_minus'] == '1'


class TestCheck:

    def test_werner_eq4(self, state_file, capsys):
        path = state_file('werner', '--family', 'werner', '--m', '8', '--z', '-1')
        report = run_json(capsys, 'check', path, '--inequality', 'eq4', '--repartition', '2x32')
        assert report['violated'] is True
        assert report['lhs'] == pytest.approx(1 / 49, abs=1e-9)
        assert report['rhs'] == pytest.approx(25 / 784, abs=1e-9)
        assert report['convention'] == 'witness'
        assert report['seed'] == 0

    def test_cq_eq3(self, state_file, capsys):
        path = state_file('cq', '--family', 'cq', '--dims', '2x2', '--probs', '0.3,0.7')
        report = run_json(capsys, 'check', path, '--inequality', 'eq3')
        assert report['violated'] is False
        assert report['inequality'] == 'eq3_normalized'

    def test_bell_4x4_d1(self, state_file, capsys):
        path = state_file('bell4', '--family', 'bell', '--m', '4')
        report = run_json(capsys, 'check', path, '--inequality', 'd1', '--convention', 'trace')
        assert report['violated'] is True
        assert report['status'] == 'violated'

    def test_erratum_and_normalized_eq3(self, state_file, capsys):
        path = state_file('bell', '--family', 'bell')
        report = run_json(capsys, 'check', path, '--inequality', 'erratum')
        assert report['status'] == 'satisfied'
        report = run_json(capsys, 'check', path, '--inequality', 'eq3', '--normalized',
                          '--convention', 'witness')
        assert report['lhs'] == pytest.approx(1.0)

    def test_incompatible_repartition(self, state_file, capsys):
        path = state_file('bell', '--family', 'bell')
        assert main(['check', path, '--inequality', 'eq4', '--repartition', '3x3']) == EXIT_INPUT
        assert 'repartition' in capsys.readouterr().err.lower()

    def test_single_level_subsystem(self, tmp_path, capsys):
        path = tmp_path / 'qubit_b.json'
        StateFileService.save_state(DensityMatrix.from_array(np.diag([0.5, 0.5]), (1, 2)), str(path))
        assert main(['check', str(path), '--inequality', 'eq3']) == EXIT_INPUT
        assert 'm >= 2' in capsys.readouterr().err

        trivial = tmp_path / 'trivial.json'
        StateFileService.save_state(DensityMatrix.from_array(np.eye(1), (1, 1)), str(trivial))
        assert main(['check', str(trivial), '--inequality', 'erratum']) == EXIT_INPUT
        assert 'd >= 2' in capsys.readouterr().err


class TestScans:

    def test_werner_scan(self, tmp_path):
        out = tmp_path / 'scan.csv'
        assert main(['werner-scan', '--m', '8', '--z-from', '-1', '--z-to', '0', '--steps', '101',
                     '--bipartition', '2x32', '--out', str(out)]) == EXIT_OK
        with open(out, newline='') as f:
            rows = list(csv.DictReader(f))
        assert len(rows) == 101
        assert list(rows[0]) == ['z', 'm_part', 'n_part', 'd2', 'd2_normalized', 'neg_witness',
                                 'neg_trace', 'eq4_lhs', 'eq4_rhs', 'violated']
        for row in rows:
            assert (row['violated'] == 'true') == (float(row['z']) < -34 / 43)

    def test_single_step(self, tmp_path):
        out = tmp_path / 'one.csv'
        assert main(['werner-scan', '--m', '8', '--z-from', '-1', '--z-to', '0', '--steps', '1',
                     '--bipartition', '2x32', '--out', str(out)]) == EXIT_OK
        with open(out, newline='') as f:
            rows = list(csv.DictReader(f))
        assert len(rows) == 1
        assert rows[0]['violated'] == 'true'

    def test_unsplit_bipartition(self, tmp_path):
        out = tmp_path / 'square.csv'
        assert main(['werner-scan', '--m', '8', '--z-from', '-1', '--z-to', '-1', '--steps', '1',
                     '--bipartition', '8x8', '--out', str(out)]) == EXIT_OK
        with open(out, newline='') as f:
            row, = csv.DictReader(f)
        assert float(row['neg_witness']) == pytest.approx(1 / 8, abs=1e-12)

    def test_werner_scan_dimension_mismatch(self, tmp_path):
        assert main(['werner-scan', '--m', '8', '--z-from', '-1', '--z-to', '0', '--steps', '3',
                     '--bipartition', '3x3', '--out', str(tmp_path / 'x.csv')]) == EXIT_INPUT

    def test_erratum_scan(self, capsys):
        report = run_json(capsys, '--seed', '4', 'erratum-scan', '--dims', '2x2,3x3', '--samples', '30')
        assert report['seed'] == 4
        assert report['holds'] is True
        assert [pair['dims'] for pair in report['pairs']] == [[2, 2], [3, 3]]

    @pytest.mark.parametrize('dims', ['', ','])
    def test_erratum_scan_needs_a_pair(self, capsys, dims):
        assert main(['erratum-scan', '--dims', dims, '--samples', '5']) == EXIT_INPUT
        assert 'dimension pair' in capsys.readouterr().err

    def test_ancilla(self, state_file, capsys):
        report = run_json(capsys, 'ancilla', state_file('bell', '--family', 'bell'), '--k', '2')
        assert report['d2_before'] == pytest.approx(0.5, abs=1e-8)
        assert report['d2_after'] == pytest.approx(0.25, abs=1e-8)
        assert report['neg_trace_after'] == pytest.approx(1.0)


class TestGlobalFlags:

    def test_flags_reach_config(self, state_file, capsys):
        path = state_file('bell', '--family', 'bell')
        assert main(['measures', path, '--routes', 'closed_form', '--seed', '9',
                     '--tolerance', '1e-8', '--workers', '2', '--format', 'json']) == EXIT_OK
        assert Config.DEFAULT_SEED == 9
        assert Config.EIGEN_ZERO_TOL == 1e-8
        assert Config.SCAN_WORKERS == 2
        assert json.loads(capsys.readouterr().out)['seed'] == 9

    @pytest.mark.parametrize('tolerance', ['0', '-1e-10', 'nan'])
    def test_tolerance_must_be_positive(self, state_file, capsys, tolerance):
        path = state_file('bell', '--family', 'bell')
        capsys.readouterr()
        assert main([f'--tolerance={tolerance}', 'measures', path]) == EXIT_INPUT
        assert 'positive' in capsys.readouterr().err
        assert Config.EIGEN_ZERO_TOL == 1e-10

    def test_bad_arguments(self, capsys):
        assert main(['check']) == EXIT_INPUT
        assert main(['measures', 'x.json', '--format', 'yaml']) == EXIT_INPUT
        assert main(['werner-scan', '--m', '8', '--z-from', '-1', '--z-to', '0', '--steps', '3',
                     '--bipartition', '2by32', '--out', 'x.csv']) == EXIT_INPUT

    def test_missing_file(self, tmp_path, capsys):
        assert main(['measures', str(tmp_path / 'absent.json')]) == EXIT_INPUT
        assert 'not found' in capsys.readouterr().err

    def test_help_exits_cleanly(self, capsys):
        assert main(['--help']) == EXIT_OK
        assert 'werner-scan' in capsys.readouterr().out

    def test_parser_lists_every_command(self):
        subparsers = next(a for a in create_parser()._actions if a.dest == 'command')
        assert set(subparsers.choices) == {
            'measures', 'check', 'werner-scan', 'erratum-scan', 'make-state', 'ancilla'
        }


class TestExitCodes:

    @pytest.mark.parametrize('failure', [
        NumericalError('eigensolver returned a non-Hermitian spectrum'),
        np.linalg.LinAlgError('Eigenvalues did not converge'),
    ])
    def test_numerical_failure(self, state_file, capsys, monkeypatch, failure):
        path = state_file('bell', '--family', 'bell')

        def fail(rho):
            raise failure

        monkeypatch.setattr(HierarchyService, 'check_eq4', staticmethod(fail))
        assert main(['check', path, '--inequality', 'eq4']) == EXIT_NUMERICAL
        assert 'numerical failure' in capsys.readouterr().err

    def test_unexpected_error_is_not_reported_as_input(self, state_file, capsys, monkeypatch):
        path = state_file('bell', '--family', 'bell')

        def fail(rho, routes):
            raise RuntimeError('boom')

        monkeypatch.setattr('discordlab.commands.measures.measures_report', fail)
        assert main(['measures', path]) == EXIT_NUMERICAL
        assert 'internal error: boom' in capsys.readouterr().err
