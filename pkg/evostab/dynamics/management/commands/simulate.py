"""
SPDX-License-Identifier: BSD-3-Clause

Implement simulate command.

This command integrates replicator dynamics for an incumbent invaded by one
or more mutant strains, writes the trajectory as CSV and prints the outcome.
"""

from django.conf import settings
from django.core.management.base import CommandError

from dynamics.models import InvasionScenario
from dynamics.replicator import IntegrationDiverged, simulate, \
    write_trajectory_csv
from evolution.management.base import INDETERMINATE, INPUT_ERROR, \
    GameCommand


class Command(GameCommand):
    """Implement the simulate command."""

    help = 'Simulate a multi-mutant invasion with replicator dynamics.'

    def add_arguments(self, parser):
        """Arguments for simulate."""
        self.add_game_argument(parser)
        parser.add_argument('--incumbent', required=True,
                            help='Incumbent strategy literal.')
        parser.add_argument('--mutant', action='append', default=[],
                            help='Mutant strategy literal; may be repeated.')
        parser.add_argument('--shares', required=True,
                            help='Initial shares, incumbent first, as '
                                 'comma separated decimals.')
        parser.add_argument('--dt', type=float, default=settings.DYNAMICS_DT)
        parser.add_argument('--t-end', type=float,
                            default=settings.DYNAMICS_T_END)
        parser.add_argument('--stride', type=int,
                            default=settings.DYNAMICS_STRIDE)
        parser.add_argument('--out', help='Write the CSV to this file '
                                          'instead of stdout.')

    def handle(self, *args, **options):
        """Run the simulation and report the outcome."""
        game = self.load(options)
        strategies = [self.strategy(game, options['incumbent'], 'incumbent')]
        strategies += [self.strategy(game, text, f'mutant[{i}]')
                       for i, text in enumerate(options['mutant'])]
        try:
            shares = [float(x) for x in options['shares'].split(',')]
        except ValueError:
            raise CommandError(f'shares: unparseable {options["shares"]!r}',
                               returncode=INPUT_ERROR)
        scenario = InvasionScenario(game, tuple(strategies), tuple(shares),
                                    options['dt'], options['t_end'],
                                    options['stride'])
        try:
            trajectory = simulate(scenario)
        except IntegrationDiverged as exc:
            raise CommandError(str(exc), returncode=INDETERMINATE)
        if options['out']:
            with open(options['out'], 'w', encoding='utf-8', newline='') as fp:
                write_trajectory_csv(trajectory, fp)
            self.stdout.write(f'outcome={trajectory.outcome}')
        else:
            write_trajectory_csv(trajectory, self.stdout)
