"""
SPDX-License-Identifier: BSD-3-Clause

Define parsers for the game file and strategy literal formats.

A game file is a JSON document::

    {"k": 2, "payoffs": [["-1", "0"], ["0", "-1"]], "labels": ["A", "B"]}

where every payoff is a string ``"a/b"`` or ``"a"``. A strategy literal is a
bracketed list of such rationals, quoted or not: ``[1/2,1/2]``.
"""

import json

from django.core.exceptions import ValidationError
from rest_framework.exceptions import ParseError

from shared.util import parse_rational
from .models import MixedStrategy
from .serializers import GameSerializer


def flatten_errors(errors, prefix=''):
    """Flatten nested serializer errors into ``field[i][j]: message`` lines.

    Dictionary keys become field names (or indices for list children) and
    the leaves are the error messages reported by the serializer.
    """
    if isinstance(errors, dict):
        lines = []
        for key, value in errors.items():
            if key == 'non_field_errors':
                path = prefix
            elif isinstance(key, int):
                path = f'{prefix}[{key}]'
            else:
                path = f'{prefix}.{key}' if prefix else str(key)
            lines.extend(flatten_errors(value, path))
        return lines
    if isinstance(errors, (list, tuple)):
        lines = []
        for value in errors:
            lines.extend(flatten_errors(value, prefix))
        return lines
    if prefix:
        return [f'{prefix}: {errors}']
    return [str(errors)]


def parse_game(text):
    """Parse a UTF-8 game document into a SymmetricGame.

    Payoffs are parsed exactly; a ParseError names the offending field.
    """
    try:
        if isinstance(text, bytes):
            text = text.decode('utf-8')
        data = json.loads(text)
    except ValueError as exc:
        raise ParseError(f'JSON parse error - {exc}')
    if not isinstance(data, dict):
        raise ParseError('JSON parse error - expected an object')
    serializer = GameSerializer(data=data)
    if not serializer.is_valid():
        raise ParseError('; '.join(flatten_errors(serializer.errors)))
    return serializer.save()


def load_game(path):
    """Read and parse the game file at ``path``."""
    try:
        with open(path, 'rb') as fp:
            text = fp.read()
    except OSError as exc:
        raise ParseError(f'cannot read game file {path}: {exc.strerror}')
    return parse_game(text)


def parse_rational_list(text, name='value'):
    """Parse ``[a/b, c, ...]`` or ``a/b,c,...`` into a list of Fractions."""
    body = text.strip()
    if body.startswith('[') and body.endswith(']'):
        body = body[1:-1]
    if not body.strip():
        raise ParseError(f'{name}: empty list')
    values = []
    for i, item in enumerate(body.split(',')):
        item = item.strip().strip('"\'')
        try:
            values.append(parse_rational(item))
        except ValueError:
            raise ParseError(f'{name}[{i}]: unparseable rational {item!r}')
    return values


def parse_strategy(text, k=None, name='strategy'):
    """Parse a strategy literal into a MixedStrategy with ``k`` weights."""
    weights = parse_rational_list(text, name)
    if k is not None and len(weights) != k:
        raise ParseError(f'{name}: expected {k} weights, got {len(weights)}')
    try:
        return MixedStrategy(tuple(weights))
    except ValidationError as exc:
        raise ParseError(f'{name}: ' + '; '.join(exc.messages))
