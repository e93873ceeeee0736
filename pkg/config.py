"""
Run configuration: environment defaults (via .env) overridden by CLI flags
or request JSON.
"""
import os
import re
from dataclasses import asdict, dataclass, replace
from fractions import Fraction

from dotenv import load_dotenv

from errors import ParameterRangeError

# Load environment variables FIRST
load_dotenv()

OUTPUT_FORMATS = ('csv', 'json', 'text')

DEFAULT_TOLERANCE_BITS = 40
DEFAULT_PRECISION = 128
MIN_PRECISION = 64

_TOLERANCE = re.compile(r'^(?:2\^-)?(\d+)$')


def parse_tolerance(text):
    """
    Parse a tolerance written as `2^-40` or as the bare exponent `40`.
    Both mean the rational 2**-40.
    """
    if isinstance(text, Fraction):
        if text <= 0:
            raise ParameterRangeError(f"tolerance must be positive, got {text}")
        return text
    match = _TOLERANCE.match(str(text).strip().replace(' ', ''))
    if not match:
        raise ParameterRangeError(
            f"tolerance must look like 2^-40 or 40, got {text!r}"
        )
    bits = int(match.group(1))
    if bits < 1 or bits > 4096:
        raise ParameterRangeError(f"tolerance exponent out of range: {bits}")
    return Fraction(1, 2 ** bits)


def _env_int(name, default):
    value = os.getenv(name)
    if value is None or value == '':
        return default
    try:
        return int(value)
    except ValueError:
        raise ParameterRangeError(f"{name} must be an integer, got {value!r}")


@dataclass(frozen=True)
class RunConfig:
    dimension: int = 2
    max_degree: int = 4
    tolerance: Fraction = Fraction(1, 2 ** DEFAULT_TOLERANCE_BITS)
    precision: int = DEFAULT_PRECISION
    output_format: str = 'text'
    jobs: int = 1
    seed: int = 0

    @classmethod
    def from_env(cls):
        """
        Build the defaults from HARMQUAD_* environment variables
        """
        tolerance = os.getenv('HARMQUAD_TOL')
        config = cls(
            dimension=_env_int('HARMQUAD_DIMENSION', 2),
            max_degree=_env_int('HARMQUAD_MAX_DEGREE', 4),
            tolerance=parse_tolerance(tolerance) if tolerance else cls.tolerance,
            precision=_env_int('HARMQUAD_PRECISION', DEFAULT_PRECISION),
            output_format=os.getenv('HARMQUAD_FORMAT', 'text'),
            jobs=_env_int('HARMQUAD_JOBS', 1),
            seed=_env_int('HARMQUAD_SEED', 0),
        )
        return config.validate()

    def validate(self):
        if self.dimension < 2:
            raise ParameterRangeError(f"dimension must be at least 2, got {self.dimension}")
        if self.max_degree < 0:
            raise ParameterRangeError(f"max degree must be nonnegative, got {self.max_degree}")
        if self.tolerance <= 0:
            raise ParameterRangeError("tolerance must be positive")
        if self.precision < MIN_PRECISION:
            raise ParameterRangeError(
                f"precision must be at least {MIN_PRECISION} bits, got {self.precision}"
            )
        if self.output_format not in OUTPUT_FORMATS:
            raise ParameterRangeError(
                f"format must be one of {', '.join(OUTPUT_FORMATS)}, got {self.output_format!r}"
            )
        if self.jobs < 1:
            raise ParameterRangeError(f"jobs must be at least 1, got {self.jobs}")
        return self

    def with_overrides(self, **overrides):
        """
        Replace the given fields, ignoring None values, and validate
        """
        changes = {key: value for key, value in overrides.items() if value is not None}
        return replace(self, **changes).validate()

    def as_dict(self):
        data = asdict(self)
        data['tolerance'] = str(self.tolerance)
        return data


def service_settings():
    """
    Host settings for the HTTP surface
    """
    return {
        'port': _env_int('PORT', 5000),
        'debug': os.getenv('DEBUG', 'False').lower() == 'true',
        'max_degree': _env_int('HARMQUAD_SERVICE_MAX_DEGREE', 12),
        'max_dimension': _env_int('HARMQUAD_SERVICE_MAX_DIMENSION', 6),
        # order of the largest exact inverse a decomposition request may build
        'max_block_size': _env_int('HARMQUAD_SERVICE_MAX_BLOCK', 126),
    }
