"""
harmquad command line.

    python cli.py bound-grid -d 3 --max-degree 8 --format csv
    python cli.py dirichlet --q "x1^2+x2^2-1" --f "x1^2"
    python cli.py selftest

Exit codes: 0 all checks passed, 1 a certification row failed, 2 usage,
3 polynomial syntax, 4 numeric range, 5 invalid quadric, 70 internal failure,
74 report file could not be written.
"""
import argparse
import json
import logging
import sys
import traceback
from dataclasses import dataclass, field
from typing import Optional

import fischer
import harmonics
import jacobi
import reports
from config import RunConfig, parse_tolerance
from errors import (EXIT_CERTIFICATION_FAILED, EXIT_INTERNAL, EXIT_IO, EXIT_OK,
                    HarmQuadError, UsageError)
from polycore import parse_polynomial
from selftest import SELFTEST_FIELDS, run_selftest
from utils import configure_logging, log_event, parse_rational

logger = logging.getLogger(__name__)

VERBS = ('jacobi', 'basis', 'bound-grid', 'fischer', 'dirichlet', 'series', 'selftest')


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class Command:
    verb: str
    config: RunConfig
    quadric: Optional[fischer.NonhyperbolicQuadric] = None
    polynomial: Optional[object] = None
    out: Optional[str] = None
    options: dict = field(default_factory=dict)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument('-d', '--dimension', type=int)
    common.add_argument('--max-degree', type=int)
    common.add_argument('--tol')
    common.add_argument('--precision', type=int)
    common.add_argument('--format', dest='output_format')
    common.add_argument('--jobs', type=int)
    common.add_argument('--seed', type=int)
    common.add_argument('--out')

    parser = _Parser(prog='harmquad', description='Harmonic Dirichlet solver and bound certifier')
    verbs = parser.add_subparsers(dest='verb', parser_class=_Parser)
    verbs.required = True

    jacobi_parser = verbs.add_parser('jacobi', parents=[common], help='zero and bound table')
    jacobi_parser.add_argument('--alpha', action='append')

    verbs.add_parser('basis', parents=[common], help='emit spherical harmonic basis')

    grid = verbs.add_parser('bound-grid', parents=[common], help='certify the block bounds')
    grid.add_argument('--routes', action='store_true', help='also compare eigenvalue routes')
    grid.add_argument('--route-max-m', type=int, help='largest block index m for --routes')

    for name in ('fischer', 'dirichlet', 'series'):
        sub = verbs.add_parser(name, parents=[common])
        sub.add_argument('--q', required=True)
        sub.add_argument('--f')
        if name == 'dirichlet':
            sub.add_argument('--samples', type=int, default=100)
        if name == 'series':
            sub.add_argument('--series', choices=('cos', 'exp'))
            sub.add_argument('--order')
            sub.add_argument('--truncations', default='8,10,12')

    verbs.add_parser('selftest', parents=[common])
    return parser


def quadric_from_expression(text, dimension=None):
    return fischer.NonhyperbolicQuadric.from_polynomial(parse_polynomial(text, dimension))


def _infer_dimension(*texts):
    highest = 1
    for text in texts:
        if text:
            highest = max(highest, parse_polynomial(text).dimension)
    return max(highest, 2)


def parse_args(argv):
    args = build_parser().parse_args(argv)
    explicit_dimension = args.dimension
    options = {}

    q_text = getattr(args, 'q', None)
    f_text = getattr(args, 'f', None)
    dimension = explicit_dimension
    if dimension is None and q_text:
        dimension = _infer_dimension(q_text, f_text)

    config = RunConfig.from_env().with_overrides(
        dimension=dimension,
        max_degree=args.max_degree,
        tolerance=parse_tolerance(args.tol) if args.tol else None,
        precision=args.precision,
        output_format=args.output_format,
        jobs=args.jobs,
        seed=args.seed,
    )

    quadric = polynomial = None
    if q_text:
        quadric = quadric_from_expression(q_text, config.dimension)
    if f_text:
        polynomial = parse_polynomial(f_text, config.dimension)
    if args.verb in ('fischer', 'dirichlet') and not f_text:
        raise UsageError(f"{args.verb} needs --f")

    if args.verb == 'jacobi':
        options['alphas'] = tuple(parse_rational(a, 'alpha') for a in args.alpha) \
            if args.alpha else jacobi.ALPHA_GRID
    elif args.verb == 'bound-grid':
        options['routes'] = args.routes
        if args.route_max_m is not None and args.route_max_m < 0:
            raise UsageError('--route-max-m must be >= 0')
        options['route_max_m'] = args.route_max_m
    elif args.verb == 'dirichlet':
        options['samples'] = args.samples
    elif args.verb == 'series':
        if not f_text and not args.series:
            raise UsageError("series needs --f or --series")
        options['series'] = args.series
        options['order'] = float(parse_rational(args.order, 'order')) if args.order else None
        try:
            options['truncations'] = tuple(int(v) for v in args.truncations.split(','))
        except ValueError:
            raise UsageError(f"--truncations must be comma-separated integers, got {args.truncations!r}")

    return Command(args.verb, config, quadric, polynomial, args.out, options)


def _meta(cmd, **extra):
    meta = {'verb': cmd.verb, 'seed': cmd.config.seed, 'd': cmd.config.dimension,
            'max_degree': cmd.config.max_degree, 'tol': cmd.config.tolerance}
    meta.update(extra)
    return meta


def _run_jacobi(cmd):
    n_max = max(cmd.config.max_degree, 1)
    rows = jacobi.zero_bound_table(range(1, n_max + 1), cmd.options['alphas'],
                                   precision=cmd.config.precision)
    output = [row.as_row() for row in rows]
    text = reports.render(output, jacobi.ZERO_BOUND_FIELDS, cmd.config.output_format, _meta(cmd))
    passed = all(row.passed for row in rows if row.route == 'bound')
    return text, passed


def _run_basis(cmd):
    basis = harmonics.build_basis(cmd.config.dimension, cmd.config.max_degree)
    rows = [{'d': entry.index.d, 'k': entry.index.k, 's': entry.index.s, 'l': entry.index.l,
             'polynomial': str(entry.polynomial), 'norm_sq': str(entry.norm_sq)}
            for entry in basis]
    fields = ('d', 'k', 's', 'l', 'polynomial', 'norm_sq')
    return reports.render(rows, fields, cmd.config.output_format, _meta(cmd)), True


def _run_bound_grid(cmd):
    config = cmd.config
    report = harmonics.verify_bound_grid(config.dimension, config.max_degree, config.tolerance,
                                         config.jobs, config.precision)
    text = reports.render([row.as_row() for row in report.rows], harmonics.BOUND_GRID_FIELDS,
                          config.output_format, _meta(cmd))
    passed = report.passed
    if cmd.options.get('routes'):
        max_m = cmd.options.get('route_max_m')
        if max_m is None:
            max_m = config.max_degree // 2
        routes = harmonics.route_agreement(config.dimension, max_m, config.tolerance)
        fields = tuple(routes[0]) if routes else ()
        text += reports.render(routes, fields, config.output_format, {'table': 'route_agreement'})
        passed = passed and all(row['agree'] for row in routes if row['s'] % 2 == 0)
    return text, passed


def _run_fischer(cmd):
    result = fischer.fischer_decompose(cmd.polynomial, cmd.quadric)
    document = result.as_dict()
    document['kind'] = cmd.quadric.kind
    document['beta'] = cmd.quadric.beta
    return reports.render_document(document, cmd.config.output_format, _meta(cmd)), True


def _run_dirichlet(cmd):
    result = fischer.fischer_decompose(cmd.polynomial, cmd.quadric)
    residual = fischer.boundary_residual(cmd.polynomial, result.r, cmd.quadric,
                                         cmd.options['samples'], cmd.config.precision,
                                         cmd.config.seed)
    document = {
        'r': str(result.r),
        'quadric': str(cmd.quadric),
        'kind': cmd.quadric.kind,
        'checks': result.as_dict()['checks'],
        'boundary': {
            'max_residual': residual.max_residual,
            'points': residual.points,
            'requested': residual.requested,
            'exact_points': residual.exact,
        },
    }
    passed = result.residual_is_zero and result.laplacian_is_zero
    return reports.render_document(document, cmd.config.output_format, _meta(cmd)), passed


def _series_builder(cmd):
    d = cmd.config.dimension
    if cmd.options['series'] == 'cos':
        return lambda n: fischer.cosine_series(d, n)
    if cmd.options['series'] == 'exp':
        return lambda n: fischer.exponential_series(d, n)
    order = cmd.options['order']
    return lambda n: fischer.SeriesData.from_polynomial(cmd.polynomial, n, order)


def _run_series(cmd):
    builder = _series_builder(cmd)
    data = builder(cmd.config.max_degree)
    if cmd.options['order'] is not None:
        data = fischer.SeriesData(data.parts, cmd.options['order'])
    r_series, diagnostics = fischer.dirichlet_solve_series(data, cmd.quadric)
    document = {
        'quadric': str(cmd.quadric),
        'kind': cmd.quadric.kind,
        'beta': cmd.quadric.beta,
        'r': str(r_series.polynomial()),
        'diagnostics': diagnostics.as_dict(),
        'stabilization': [
            {key: str(value) for key, value in row.items()}
            for row in fischer.stabilization_probe(builder, cmd.quadric, cmd.options['truncations'])
        ],
    }
    return reports.render_document(document, cmd.config.output_format, _meta(cmd)), True


def _run_selftest(cmd):
    rows = run_selftest(cmd.config)
    text = reports.render(rows, SELFTEST_FIELDS, cmd.config.output_format, _meta(cmd))
    return text, all(row['pass'] for row in rows)


HANDLERS = {
    'jacobi': _run_jacobi,
    'basis': _run_basis,
    'bound-grid': _run_bound_grid,
    'fischer': _run_fischer,
    'dirichlet': _run_dirichlet,
    'series': _run_series,
    'selftest': _run_selftest,
}


def run(cmd, stream=None):
    """
    Execute a command, write its report and return the exit status
    """
    stream = stream or sys.stdout
    text, passed = HANDLERS[cmd.verb](cmd)
    if cmd.out:
        with open(cmd.out, 'w', encoding='utf-8', newline='\n') as handle:
            handle.write(text)
    else:
        stream.write(text)
    log_event('run_complete', {'verb': cmd.verb, 'passed': passed})
    return EXIT_OK if passed else EXIT_CERTIFICATION_FAILED


def _diagnostic_dump(error, argv):
    return json.dumps({
        'error': type(error).__name__,
        'message': str(error),
        'argv': list(argv),
        'traceback': traceback.format_exception(type(error), error, error.__traceback__),
    }, indent=2)


def main(argv=None, stream=None, err=None):
    argv = sys.argv[1:] if argv is None else argv
    err = err or sys.stderr
    configure_logging()
    try:
        cmd = parse_args(argv)
        return run(cmd, stream)
    except HarmQuadError as e:
        if e.exit_code == EXIT_INTERNAL:
            err.write(_diagnostic_dump(e, argv) + '\n')
        else:
            err.write(f"error: {e}\n")
        return e.exit_code
    except OSError as e:
        log_event('io_failure', {'argv': list(argv), 'error': str(e)}, logging.ERROR)
        err.write(f"error: {e}\n")
        return EXIT_IO
    except Exception as e:
        log_event('internal_failure', {'argv': list(argv), 'error': type(e).__name__},
                  logging.ERROR)
        err.write(_diagnostic_dump(e, argv) + '\n')
        return EXIT_INTERNAL


if __name__ == '__main__':
    sys.exit(main())
