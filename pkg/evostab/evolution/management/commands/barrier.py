"""
SPDX-License-Identifier: BSD-3-Clause

Implement barrier command.

This command prints the maximal box invasion barrier of a strategy against
the given mutants, a uniform barrier against any M mutants, or the h-values
at a given proportion vector.
"""

from django.core.management.base import CommandError

from evolution.barriers import MutationSet, check_robust_at, h_values, \
    max_box_barrier, uniform_barrier
from evolution.management.base import INPUT_ERROR, GameCommand
from evolution.serializers import BarrierResultSerializer
from shared.util import format_rational


class Command(GameCommand):
    """Implement the barrier command."""

    help = 'Compute invasion barriers against simultaneous mutations.'

    def add_arguments(self, parser):
        """Arguments for barrier."""
        self.add_game_argument(parser)
        parser.add_argument('strategy', help='Incumbent strategy literal.')
        parser.add_argument('mutants', nargs='*',
                            help='Mutant strategy literals.')
        parser.add_argument('--uniform', type=int, metavar='M',
                            help='Uniform barrier against any M mutants.')
        parser.add_argument('--eps', metavar='E1,...,EM',
                            help='Print the h-values at these proportions.')

    def handle(self, *args, **options):
        """Compute and print the barrier."""
        game = self.load(options)
        p = self.strategy(game, options['strategy'])
        if options['uniform'] is not None:
            result = uniform_barrier(game, p, options['uniform'])
            self.write_json(BarrierResultSerializer(result).data)
            return
        if not options['mutants']:
            raise CommandError('give at least one mutant or --uniform',
                               returncode=INPUT_ERROR)
        mutants = [self.strategy(game, text, f'mutants[{i}]')
                   for i, text in enumerate(options['mutants'])]
        ms = MutationSet(p, tuple(mutants))
        if options['eps'] is None:
            self.write_json(BarrierResultSerializer(
                max_box_barrier(game, ms)).data)
            return
        eps = self.rationals(options['eps'], 'eps')
        values = h_values(game, ms, eps)
        self.write_json({
            'proportions': [format_rational(e) for e in eps],
            'h_values': [format_rational(h) for h in values],
            'robust': check_robust_at(game, ms, eps),
        })
