"""
SPDX-License-Identifier: BSD-3-Clause

Implement certify command.

This command searches a simplex grid for mutants and proportions that break
robustness of a strategy against simultaneous mutations. Finding none only
holds at the resolution searched.
"""

from django.conf import settings

from evolution.management.base import GameCommand
from evolution.oracle import GridSpec, certify, escalate
from evolution.serializers import CertificationSerializer


class Command(GameCommand):
    """Implement the certify command."""

    help = 'Search the grid for a counterexample to M-ESS.'

    def add_arguments(self, parser):
        """Arguments for certify."""
        self.add_game_argument(parser)
        parser.add_argument('strategy', help='Strategy literal to certify.')
        parser.add_argument('--denom', type=int,
                            help='Grid denominator; with --escalate the '
                                 'largest denominator searched.')
        parser.add_argument('--m', type=int, default=2,
                            help='Number of simultaneous mutants.')
        parser.add_argument('--eps', metavar='E1,E2,...',
                            help='Candidate proportions.')
        parser.add_argument('--escalate', action='store_true',
                            help='Search the configured resolution schedule.')
        parser.add_argument('--radius',
                            help='Also search for a local dominance breach '
                                 'within this L1 radius.')

    def handle(self, *args, **options):
        """Run the search and print the certification."""
        game = self.load(options)
        p = self.strategy(game, options['strategy'])
        eps = None
        if options['eps']:
            eps = tuple(self.rationals(options['eps'], 'eps'))
        radius = None
        if options['radius']:
            radius = self.rationals(options['radius'], 'radius')[0]
        if options['escalate']:
            denominators = settings.ORACLE_DENOMINATORS
            if options['denom']:
                denominators = [d for d in denominators
                                if d <= options['denom']] or [options['denom']]
            result = escalate(game, p, denominators, eps_list=eps,
                              radius=radius)
        else:
            if eps is None:
                eps = tuple(settings.ORACLE_EPS)
            spec = GridSpec(options['denom'] or settings.ORACLE_DENOMINATORS[-1],
                            eps, options['m'])
            result = certify(game, p, spec, radius)
        self.write_json(CertificationSerializer(result).data)
