from flask import Flask, request, jsonify
from flask_cors import CORS
from datetime import datetime, timezone
from fractions import Fraction
from dotenv import load_dotenv

# Load environment variables FIRST
load_dotenv()

import fischer
import harmonics
import jacobi
from config import RunConfig, parse_tolerance, service_settings
from errors import HarmQuadError
from polycore import parse_polynomial
from reports import to_json_value
from utils import configure_logging, create_response, log_event, parse_rational, validate_expression

configure_logging()

app = Flask(__name__)
CORS(app)

settings = service_settings()


def _error(e):
    """Map a library error onto the standard error body"""
    status = e.http_status if isinstance(e, HarmQuadError) else 500
    if status == 500:
        log_event('service_failure', {'error': type(e).__name__, 'message': str(e)})
    return jsonify(create_response(False, str(e), error_code=type(e).__name__)), status


def _read_quadric_and_data(data):
    """Parse q and f from a request body, inferring the dimension when absent"""
    for key in ('q', 'f'):
        if key in data and not validate_expression(data[key]):
            raise ValueError(f'{key} contains characters outside the polynomial grammar')
    dimension = data.get('dimension')
    if dimension is None:
        dimension = max(2, parse_polynomial(data['q']).dimension,
                        parse_polynomial(data['f']).dimension if 'f' in data else 1)
    dimension = int(dimension)
    if dimension > settings['max_dimension']:
        return dimension, None, None
    quadric = fischer.NonhyperbolicQuadric.from_polynomial(parse_polynomial(data['q'], dimension))
    f = parse_polynomial(data['f'], dimension) if 'f' in data else None
    return dimension, quadric, f


def _too_large(dimension=None, degree=None):
    if dimension is not None and dimension > settings['max_dimension']:
        return jsonify({'error': 'Dimension too large (max {})'.format(settings['max_dimension'])}), 413
    if degree is not None and degree > settings['max_degree']:
        return jsonify({'error': 'Degree too large (max {})'.format(settings['max_degree'])}), 413
    return None


def _decomposition_too_large(dimension, degree):
    """Size limits plus the order of the largest leading block the solve inverts"""
    rejected = _too_large(dimension, degree)
    if rejected or degree is None:
        return rejected
    block = fischer.leading_block_size(dimension, degree)
    if block > settings['max_block_size']:
        return jsonify({'error': 'Leading block of order {} too large (max {})'.format(
            block, settings['max_block_size'])}), 413
    return None


@app.route('/health', methods=['GET'])
def health_check():
    """Health check endpoint"""
    return jsonify({'status': 'healthy', 'timestamp': datetime.now(timezone.utc).isoformat()})


@app.route('/fischer', methods=['POST'])
def fischer_decomposition():
    """
    Decompose f = q*s + r with r harmonic
    Body: {q, f, dimension?}
    """
    try:
        data = request.get_json(silent=True)
        if not data or 'q' not in data or 'f' not in data:
            return jsonify({'error': 'q and f are required'}), 400

        dimension, quadric, f = _read_quadric_and_data(data)
        rejected = _decomposition_too_large(dimension, f.degree if f is not None else None)
        if rejected:
            return rejected

        result = fischer.fischer_decompose(f, quadric)
        payload = result.as_dict()
        payload['kind'] = quadric.kind
        payload['beta'] = quadric.beta
        return jsonify(create_response(True, 'Decomposition computed', payload)), 200

    except HarmQuadError as e:
        return _error(e)
    except ValueError as e:
        return jsonify({'error': str(e)}), 400
    except Exception as e:
        return _error(e)


@app.route('/dirichlet', methods=['POST'])
def dirichlet():
    """
    Harmonic r with r = f on {q = 0}, plus a sampled boundary residual
    Body: {q, f, dimension?, samples?}
    """
    try:
        data = request.get_json(silent=True)
        if not data or 'q' not in data or 'f' not in data:
            return jsonify({'error': 'q and f are required'}), 400

        samples = int(data.get('samples', 100))
        if samples < 1 or samples > 1000:
            return jsonify({'error': 'samples must be between 1 and 1000'}), 400

        dimension, quadric, f = _read_quadric_and_data(data)
        rejected = _decomposition_too_large(dimension, f.degree if f is not None else None)
        if rejected:
            return rejected

        result = fischer.fischer_decompose(f, quadric)
        residual = fischer.boundary_residual(f, result.r, quadric, samples)
        return jsonify(create_response(True, 'Dirichlet problem solved', {
            'r': str(result.r),
            'quadric': str(quadric),
            'kind': quadric.kind,
            'checks': result.as_dict()['checks'],
            'boundary': to_json_value({
                'max_residual': residual.max_residual,
                'points': residual.points,
                'requested': residual.requested,
                'exact_points': residual.exact,
            }),
        })), 200

    except HarmQuadError as e:
        return _error(e)
    except ValueError as e:
        return jsonify({'error': str(e)}), 400
    except Exception as e:
        return _error(e)


@app.route('/jacobi', methods=['POST'])
def jacobi_zero():
    """
    First positive zero of P_2n^(alpha, alpha) and its lower bound
    Body: {n, alpha, width_bits?}
    """
    try:
        data = request.get_json(silent=True)
        if not data or 'n' not in data or 'alpha' not in data:
            return jsonify({'error': 'n and alpha are required'}), 400

        n = int(data['n'])
        alpha = parse_rational(data['alpha'], 'alpha')
        width = parse_tolerance(data.get('width_bits', 64))
        rejected = _too_large(degree=2 * n)
        if rejected:
            return rejected

        row = jacobi.zero_bound_row(n, alpha, width)
        return jsonify(create_response(True, 'Zero isolated', to_json_value(row.as_row()))), 200

    except HarmQuadError as e:
        return _error(e)
    except ValueError as e:
        return jsonify({'error': str(e)}), 400
    except Exception as e:
        return _error(e)


@app.route('/bound-grid', methods=['POST'])
def bound_grid():
    """
    Certify the sphere quotient bound on every block up to max_degree
    Body: {dimension, max_degree, tol?}
    """
    try:
        data = request.get_json(silent=True)
        if not data or 'dimension' not in data or 'max_degree' not in data:
            return jsonify({'error': 'dimension and max_degree are required'}), 400

        config = RunConfig().with_overrides(
            dimension=int(data['dimension']),
            max_degree=int(data['max_degree']),
            tolerance=parse_tolerance(data['tol']) if 'tol' in data else None,
        )
        rejected = _too_large(config.dimension, config.max_degree)
        if rejected:
            return rejected

        report = harmonics.verify_bound_grid(config.dimension, config.max_degree,
                                             config.tolerance)
        return jsonify(create_response(report.passed, 'Bound grid verified', {
            'rows': [to_json_value(row.as_row()) for row in report.rows],
            'summary': to_json_value(report.summary),
        })), 200

    except HarmQuadError as e:
        return _error(e)
    except ValueError as e:
        return jsonify({'error': str(e)}), 400
    except Exception as e:
        return _error(e)


@app.route('/basis', methods=['POST'])
def basis():
    """
    Spherical harmonic basis polynomials
    Body: {dimension, max_degree}
    """
    try:
        data = request.get_json(silent=True)
        if not data or 'dimension' not in data or 'max_degree' not in data:
            return jsonify({'error': 'dimension and max_degree are required'}), 400

        dimension, max_degree = int(data['dimension']), int(data['max_degree'])
        rejected = _too_large(dimension, max_degree)
        if rejected:
            return rejected

        entries = harmonics.build_basis(dimension, max_degree)
        return jsonify(create_response(True, 'Basis built', [
            {'k': entry.index.k, 's': entry.index.s, 'l': entry.index.l,
             'polynomial': str(entry.polynomial), 'norm_sq': str(entry.norm_sq)}
            for entry in entries
        ])), 200

    except HarmQuadError as e:
        return _error(e)
    except ValueError as e:
        return jsonify({'error': str(e)}), 400
    except Exception as e:
        return _error(e)


@app.route('/series', methods=['POST'])
def series():
    """
    Truncated entire data: exact solve of the truncation plus growth diagnostics
    Body: {q, f, order?}
    """
    try:
        data = request.get_json(silent=True)
        if not data or 'q' not in data or 'f' not in data:
            return jsonify({'error': 'q and f are required'}), 400

        dimension, quadric, f = _read_quadric_and_data(data)
        rejected = _decomposition_too_large(dimension, f.degree if f is not None else None)
        if rejected:
            return rejected

        order = float(Fraction(str(data['order']))) if 'order' in data else None
        series_data = fischer.SeriesData.from_polynomial(f, declared_order=order)
        r_series, diagnostics = fischer.dirichlet_solve_series(series_data, quadric)
        return jsonify(create_response(True, 'Series solved', {
            'r': str(r_series.polynomial()),
            'kind': quadric.kind,
            'beta': quadric.beta,
            'diagnostics': diagnostics.as_dict(),
        })), 200

    except HarmQuadError as e:
        return _error(e)
    except ValueError as e:
        return jsonify({'error': str(e)}), 400
    except Exception as e:
        return _error(e)


if __name__ == '__main__':
    app.run(host='0.0.0.0', port=settings['port'], debug=settings['debug'])
