import os
import re
import logging
from fractions import Fraction

# --- LOGGING SETUP ---
LOG_FILE = 'manin_log.txt'

def setup_logger():
    """Sets up a logger to write to manin_log.txt."""
    logger = logging.getLogger('manin_toolkit')
    logger.setLevel(logging.INFO)

    logger.propagate = False

    if not logger.handlers:
        handler = logging.FileHandler(LOG_FILE, mode='w', delay=True)
        handler.setLevel(logging.INFO)
        formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
        handler.setFormatter(formatter)
        logger.addHandler(handler)

    return logger

logger = setup_logger()

# --- Centralized Settings ---
DEFAULT_GROUP_BOUND = 10_000
DATASET_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "datasets")

# --- ERRORS ---
class ManinError(Exception):
    """Base class for every error raised by the toolkit."""


class InputError(ManinError):
    """Malformed input: wrong dimensions, bad flags, unparsable values."""


class SchemaError(InputError):
    """A dataset violates the schema. `field` is the dotted path of the offending entry."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class ConeError(InputError):
    """The input does not describe a pointed rational cone under a usable pairing."""


class PreconditionError(ManinError):
    """An operation was called outside its precondition."""


class GroupClosureError(ManinError):
    """Closure enumeration of a matrix group exceeded its bound."""


class EnumerationBoundError(ManinError):
    """A lattice enumeration produced a solution on its search bound."""


# --- RATIONAL SYNTAX ---
RATIONAL_PATTERN = re.compile(r"^[+-]?\d+(/\d+)?$")

def parse_rational(text, field="value"):
    """Parses 'p' or 'p/q' (optional sign, no whitespace) into a Fraction."""
    if isinstance(text, bool):
        raise SchemaError(field, f"expected a rational string, got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str) or not RATIONAL_PATTERN.match(text):
        logger.error(f"Rejected rational literal {text!r} at '{field}'.")
        raise SchemaError(field, f"expected a rational like '3' or '-1/2', got {text!r}")
    if '/' in text:
        num, den = text.split('/')
        if int(den) == 0:
            raise SchemaError(field, f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))

def format_rational(value):
    """Inverse of parse_rational: 'p' for integers, 'p/q' otherwise."""
    return str(Fraction(value))

def parse_vector(items, field="vector"):
    if not isinstance(items, (list, tuple)):
        raise SchemaError(field, f"expected a list of rationals, got {type(items).__name__}")
    return tuple(parse_rational(item, f"{field}[{i}]") for i, item in enumerate(items))

def format_vector(values):
    return [format_rational(v) for v in values]

def parse_cli_vector(text):
    """Comma separated rationals from the command line, e.g. '1,-1/2,0'."""
    try:
        return parse_vector(text.split(','), "vector")
    except SchemaError as e:
        raise InputError(str(e)) from e
