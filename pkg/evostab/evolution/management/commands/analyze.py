"""
SPDX-License-Identifier: BSD-3-Clause

Implement analyze command.

This command decides every stability notion for one strategy, or for all
pure strategies, and prints the analysis report as JSON.
"""

from django.conf import settings

from evolution.barriers import uniform_barrier
from evolution.management.base import GameCommand
from evolution.models import AnalysisDocument
from evolution.oracle import escalate
from evolution.serializers import AnalysisDocumentSerializer
from evolution.stability import analyze, pure_sweep


class Command(GameCommand):
    """Implement the analyze command."""

    help = 'Decide NE, strict NE, ESS, M-ESS and local dominance.'

    def add_arguments(self, parser):
        """Arguments for analyze."""
        self.add_game_argument(parser)
        group = parser.add_mutually_exclusive_group()
        group.add_argument('--strategy', action='append',
                           help='Strategy literal such as "[1/2,1/2]"; '
                                'may be repeated.')
        group.add_argument('--pure-sweep', action='store_true',
                           help='Analyze every pure strategy (the default).')
        parser.add_argument('--uniform', type=int, metavar='M',
                            help='Add a uniform barrier against M mutants '
                                 'for every M-ESS found.')
        parser.add_argument('--certify', action='store_true',
                            help='Add an oracle certification per strategy.')

    def handle(self, *args, **options):
        """Analyze the strategies and print the report."""
        game = self.load(options)
        if options['strategy']:
            strategies = [self.strategy(game, text, f'strategy[{i}]')
                          for i, text in enumerate(options['strategy'])]
            results = [analyze(game, p) for p in strategies]
        else:
            results = pure_sweep(game)
        barriers = []
        if options['uniform'] is not None:
            barriers = [uniform_barrier(game, report.strategy,
                                        options['uniform'])
                        for report in results if report.mess]
        certifications = []
        if options['certify']:
            certifications = [escalate(game, report.strategy)
                              for report in results]
        document = AnalysisDocument(
            k=game.k, labels=game.labels, source=options['game_file'],
            results=tuple(results), barriers=tuple(barriers),
            certifications=tuple(certifications),
            version=settings.EVOSTAB_VERSION)
        self.write_json(AnalysisDocumentSerializer(document).data)
