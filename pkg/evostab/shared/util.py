"""
SPDX-License-Identifier: BSD-3-Clause

Exact rational helpers shared by the evolution and dynamics apps.
"""

import re
from fractions import Fraction

from django.core.exceptions import ImproperlyConfigured

RATIONAL_RE = re.compile(r'^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$')


def parse_rational(value):
    """Parse ``"a/b"`` or ``"a"`` (decimal integers, b > 0) into a Fraction.

    Integers are accepted as they are. Floats are rejected so that no value
    ever makes a round trip through binary floating point.
    """
    if isinstance(value, bool):
        raise ValueError(f'not a rational: {value!r}')
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if not isinstance(value, str):
        raise ValueError(f'not a rational: {value!r}')
    match = RATIONAL_RE.match(value)
    if not match:
        raise ValueError(f'not a rational: {value!r}')
    numerator, denominator = match.groups()
    if denominator is not None and int(denominator) == 0:
        raise ValueError(f'zero denominator: {value!r}')
    return Fraction(int(numerator), int(denominator or 1))


def format_rational(value):
    """Render a Fraction as ``"a/b"``, or ``"a"`` when it is an integer."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


def format_vector(values):
    """Render a sequence of rationals as the strategy literal ``[a/b,...]``."""
    return '[' + ','.join(format_rational(x) for x in values) + ']'


def compositions(total, parts):
    """Yield the ``parts``-tuples of nonnegative integers summing to ``total``.

    Tuples come out in ascending lexicographic order.
    """
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def positive_int_setting(name, value, default=1):
    """Read a worker count from the environment value of setting ``name``.

    Unset or empty values give ``default``; counts below 1 are raised to 1.
    """
    if value is None or not value.strip():
        return default
    try:
        return max(1, int(value))
    except ValueError:
        raise ImproperlyConfigured(f'{name} must be an integer, got {value!r}')
