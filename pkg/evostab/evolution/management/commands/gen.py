"""
SPDX-License-Identifier: BSD-3-Clause

Implement gen command.

This command writes one of the named example games, or a seeded random game,
as game JSON.
"""

import json
import random

from django.core.management.base import CommandError

from evolution.management.base import INPUT_ERROR, GameCommand
from evolution.models import SymmetricGame
from evolution.serializers import GameSerializer


def example1():
    """Return the anti-coordination game [[-1, 0], [0, -1]]."""
    return SymmetricGame(((-1, 0), (0, -1)), ('e1', 'e2'))


def example2():
    """Return the game [[-1, 0], [0, 0]] where e2 only weakly dominates."""
    return SymmetricGame(((-1, 0), (0, 0)), ('e1', 'e2'))


def hawk_dove(value, cost):
    """Return Hawk-Dove with resource ``value`` and fight ``cost``."""
    if not 0 < value < cost:
        raise CommandError('hawk-dove needs 0 < V < C',
                           returncode=INPUT_ERROR)
    return SymmetricGame((((value - cost) / 2, value), (0, value / 2)),
                         ('Hawk', 'Dove'))


def random_game(k, seed):
    """Return a k x k game with entries drawn from -3..3."""
    rng = random.Random(seed)
    return SymmetricGame(
        tuple(tuple(rng.randint(-3, 3) for _ in range(k)) for _ in range(k)),
        tuple(f'e{i + 1}' for i in range(k)))


class Command(GameCommand):
    """Implement the gen command."""

    help = 'Generate example1, example2, hawk-dove [V C] or random K SEED.'

    def add_arguments(self, parser):
        """Arguments for gen."""
        parser.add_argument('name', choices=['example1', 'example2',
                                             'hawk-dove', 'random'])
        parser.add_argument('params', nargs='*',
                            help='V C for hawk-dove, K SEED for random.')
        parser.add_argument('--out', help='Write the game to this file.')

    def handle(self, *args, **options):
        """Build the game and write it out."""
        name, params = options['name'], options['params']
        if name == 'example1':
            game = example1()
        elif name == 'example2':
            game = example2()
        elif name == 'hawk-dove':
            values = self.rationals(','.join(params or ['2', '4']), 'params')
            if len(values) != 2:
                raise CommandError('hawk-dove takes V and C',
                                   returncode=INPUT_ERROR)
            game = hawk_dove(*values)
        else:
            try:
                k, seed = (int(x) for x in params)
            except ValueError:
                raise CommandError('random takes K and SEED as integers',
                                   returncode=INPUT_ERROR)
            if k < 1:
                raise CommandError('random needs K >= 1',
                                   returncode=INPUT_ERROR)
            game = random_game(k, seed)
        text = json.dumps(GameSerializer(game).data, indent=2)
        if options['out']:
            with open(options['out'], 'w', encoding='utf-8') as fp:
                fp.write(text + '\n')
        else:
            self.stdout.write(text)
