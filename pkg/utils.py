import datetime
import logging
import os
import re
from fractions import Fraction

from errors import ParameterRangeError

logger = logging.getLogger('harmquad')

_EXPRESSION_CHARS = re.compile(r'^[0-9x^*/+\-\s]+$')

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


def configure_logging(level=None):
    """
    Configure root logging once, from LOG_LEVEL unless a level is given.
    Logs go to stderr so reports on stdout stay byte-identical.
    """
    level = level or os.getenv('LOG_LEVEL', 'WARNING')
    logging.basicConfig(level=level.upper(), format=LOG_FORMAT)


def validate_expression(text):
    """
    Check that a polynomial expression only uses grammar characters
    """
    if not isinstance(text, str) or not text.strip():
        return False
    if len(text) > 20000:
        return False
    return bool(_EXPRESSION_CHARS.match(text))


def parse_rational(value, name='value'):
    """
    Parse an int, a Fraction or a `p/q` string into a Fraction
    """
    if isinstance(value, bool):
        raise ParameterRangeError(f"{name} must be rational, got {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise ParameterRangeError(f"{name} must be an integer or p/q, got {value!r}")


def create_response(success=True, message="", data=None, error_code=None):
    """
    Create standardized API response
    """
    response = {
        'success': success,
        'message': message,
        'timestamp': None
    }

    if data is not None:
        response['data'] = data

    if error_code is not None:
        response['error_code'] = error_code

    return response


def log_event(event_type, details, level=logging.INFO):
    """
    Log certification outcomes and hard failures as structured entries
    """
    timestamp = datetime.datetime.now(datetime.timezone.utc).isoformat()

    log_entry = {
        'timestamp': timestamp,
        'event_type': event_type,
        'details': details,
    }

    logger.log(level, "event %s", log_entry)

    return log_entry
