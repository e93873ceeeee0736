import io
import json
from fractions import Fraction

import pytest

import cli
import harmonics
from errors import (EXIT_INTERNAL, EXIT_IO, EXIT_OK, EXIT_QUADRIC, EXIT_RANGE, EXIT_SYNTAX,
                    EXIT_USAGE, UsageError)


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def test_parse_fischer_infers_dimension():
    cmd = cli.parse_args(['fischer', '--q', 'x1^2 + x2^2 + x3^2 - 1', '--f', 'x1^2'])
    assert cmd.verb == 'fischer'
    assert cmd.config.dimension == 3
    assert cmd.quadric.kind == 'ellipsoid'
    assert cmd.polynomial.dimension == 3


def test_parse_common_flags():
    cmd = cli.parse_args(['bound-grid', '-d', '3', '--max-degree', '5', '--tol', '2^-30',
                          '--format', 'csv', '--jobs', '2', '--seed', '9'])
    assert cmd.config.dimension == 3
    assert cmd.config.max_degree == 5
    assert cmd.config.tolerance == Fraction(1, 2 ** 30)
    assert cmd.config.output_format == 'csv'
    assert cmd.config.jobs == 2
    assert cmd.config.seed == 9


def test_environment_defaults(monkeypatch):
    monkeypatch.setenv('HARMQUAD_FORMAT', 'json')
    monkeypatch.setenv('HARMQUAD_DIMENSION', '4')
    cmd = cli.parse_args(['basis'])
    assert cmd.config.output_format == 'json'
    assert cmd.config.dimension == 4
    assert cli.parse_args(['basis', '--format', 'text']).config.output_format == 'text'


def test_parse_jacobi_alphas():
    cmd = cli.parse_args(['jacobi', '--alpha', '1/2', '--alpha', '0'])
    assert cmd.options['alphas'] == (Fraction(1, 2), Fraction(0))


def test_fischer_needs_data():
    with pytest.raises(UsageError):
        cli.parse_args(['fischer', '--q', 'x1^2 + x2^2 - 1'])


@pytest.mark.parametrize("argv", [[], ['frobnicate'], ['bound-grid', '--jobs', 'many']])
def test_usage_errors(argv):
    code, out, err = run(argv)
    assert code == EXIT_USAGE
    assert out == ''
    assert err.startswith('error:')


def test_syntax_error_exit():
    code, _, err = run(['fischer', '--q', 'x1^2 +', '--f', 'x1'])
    assert code == EXIT_SYNTAX
    assert 'error' in err


def test_range_error_exit():
    assert run(['bound-grid', '-d', '1'])[0] == EXIT_RANGE
    assert run(['bound-grid', '--tol', '2^-0.5'])[0] == EXIT_RANGE


def test_quadric_error_exit():
    code, _, err = run(['fischer', '--q', 'x1*x2 - 1', '--f', 'x1'])
    assert code == EXIT_QUADRIC
    assert 'cross term' in err


def test_fischer_json():
    code, out, _ = run(['fischer', '--q', 'x1^2 + x2^2 - 1', '--f', 'x1^2', '--format', 'json'])
    assert code == EXIT_OK
    document = json.loads(out)
    assert document['result']['s'] == '1/2'
    assert document['result']['r'] == '1/2*x1^2 - 1/2*x2^2 + 1/2'
    assert document['result']['kind'] == 'ellipsoid'
    assert document['meta']['verb'] == 'fischer'


def test_fischer_text():
    code, out, _ = run(['fischer', '--q', 'x2^2 - x1', '--f', 'x2^2'])
    assert code == EXIT_OK
    assert 'r=x1' in out.splitlines()
    assert 'checks.laplacian_zero=true' in out.splitlines()


def test_bound_grid_csv():
    code, out, _ = run(['bound-grid', '-d', '2', '--max-degree', '4', '--format', 'csv'])
    assert code == EXIT_OK
    lines = out.splitlines()
    meta = [line for line in lines if line.startswith('#')]
    table = [line for line in lines if not line.startswith('#')]
    assert '# verb=bound-grid' in meta
    assert table[0] == ','.join(harmonics.BOUND_GRID_FIELDS)
    assert len(table) == 1 + 1 + 2 * 4
    assert all(line.endswith(',true') for line in table[1:])


def test_bound_grid_is_byte_identical():
    argv = ['bound-grid', '-d', '3', '--max-degree', '3', '--format', 'csv']
    assert run(argv)[1] == run(argv)[1]


def test_bound_grid_with_routes():
    code, out, _ = run(['bound-grid', '-d', '2', '--max-degree', '4', '--routes'])
    assert code == EXIT_OK
    assert '# table=route_agreement' in out


def test_route_range_flag():
    cmd = cli.parse_args(['bound-grid', '-d', '2', '--max-degree', '1', '--routes',
                          '--route-max-m', '3'])
    assert cmd.options['route_max_m'] == 3
    code, out, _ = run(['bound-grid', '-d', '2', '--max-degree', '1', '--routes', '--route-max-m', '3',
                        '--format', 'csv'])
    assert code == EXIT_OK
    table = out.split('# table=route_agreement')[1]
    assert any(line.startswith('2,3,') for line in table.splitlines())
    assert run(['bound-grid', '--routes', '--route-max-m', '-1'])[0] == EXIT_USAGE


def test_basis_json():
    code, out, _ = run(['basis', '-d', '3', '--max-degree', '2', '--format', 'json'])
    assert code == EXIT_OK
    rows = json.loads(out)['rows']
    assert len(rows) == 1 + 3 + 5
    assert rows[1]['k'] == 1


def test_jacobi_table():
    code, out, _ = run(['jacobi', '--max-degree', '3', '--alpha', '0', '--format', 'json'])
    assert code == EXIT_OK
    rows = json.loads(out)['rows']
    assert [row['n'] for row in rows] == [1, 2, 3]
    assert [row['route'] for row in rows] == ['exact', 'exact', 'bound']
    assert rows[2]['pass'] is True


def test_dirichlet_report():
    code, out, _ = run(['dirichlet', '--q', 'x1^2 + x2^2 - 1', '--f', 'x1^3',
                        '--samples', '12', '--format', 'json'])
    assert code == EXIT_OK
    boundary = json.loads(out)['result']['boundary']
    assert boundary['points'] == 12
    assert boundary['exact_points'] is False
    assert float(boundary['max_residual']) < 1e-30


def test_series_report():
    code, out, _ = run(['series', '--q', 'x1^2 - 1', '-d', '2', '--series', 'cos',
                        '--max-degree', '8', '--truncations', '8,10', '--format', 'json'])
    assert code == EXIT_OK
    result = json.loads(out)['result']
    assert result['kind'] == 'slab'
    assert result['diagnostics']['truncation_degree'] == 8
    assert result['stabilization'][0]['max_change'] == '1/3628800'


def test_series_bad_truncations():
    assert run(['series', '--q', 'x1^2 - 1', '--series', 'exp', '--truncations', 'a,b'])[0] \
        == EXIT_USAGE


def test_out_file(tmp_path):
    target = tmp_path / 'grid.csv'
    code, out, _ = run(['bound-grid', '--max-degree', '2', '--format', 'csv', '--out', str(target)])
    assert code == EXIT_OK
    assert out == ''
    assert target.read_text(encoding='utf-8').startswith('# verb=bound-grid')


def test_unwritable_out_file(tmp_path):
    target = tmp_path / 'missing' / 'grid.csv'
    code, out, err = run(['bound-grid', '-d', '2', '--max-degree', '1', '--out', str(target)])
    assert code == EXIT_IO
    assert out == ''
    assert err.startswith('error:')


def test_unexpected_failure_dumps_diagnostic(monkeypatch):
    def broken(cmd):
        raise KeyError('lost')

    monkeypatch.setitem(cli.HANDLERS, 'basis', broken)
    code, _, err = run(['basis', '-d', '2', '--max-degree', '1'])
    assert code == EXIT_INTERNAL
    dump = json.loads(err)
    assert dump['error'] == 'KeyError'
    assert dump['argv'][0] == 'basis'


@pytest.mark.slow
def test_selftest():
    code, out, _ = run(['selftest', '--format', 'csv'])
    assert code == EXIT_OK
    assert 'false' not in out
