"""
SPDX-License-Identifier: BSD-3-Clause

Define the base class shared by the commands that read a game file.
"""

import json
from logging import getLogger

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError
from rest_framework.exceptions import ParseError

from evolution.parsers import load_game, parse_rational_list, parse_strategy
from evolution.stability import IndeterminateError, NotMESSError

logger = getLogger('evolution')

INPUT_ERROR = 2
INDETERMINATE = 3
PRECONDITION_FAILED = 4


class GameCommand(BaseCommand):
    """Read a game file and map domain errors onto exit codes.

    2 means the input was unusable, 3 that a decision came back
    indeterminate and 4 that a precondition of the operation failed.
    """

    def add_game_argument(self, parser):
        """Add the positional game file argument."""
        parser.add_argument('game_file', help='Path of the game JSON file.')

    def execute(self, *args, **options):
        """Run the command, translating exceptions into CommandError."""
        try:
            return super().execute(*args, **options)
        except ParseError as exc:
            raise CommandError(str(exc.detail), returncode=INPUT_ERROR)
        except NotMESSError as exc:
            raise CommandError('; '.join(exc.messages),
                               returncode=PRECONDITION_FAILED)
        except ValidationError as exc:
            raise CommandError('; '.join(exc.messages),
                               returncode=INPUT_ERROR)
        except IndeterminateError as exc:
            raise CommandError(str(exc), returncode=INDETERMINATE)

    def load(self, options):
        """Load the game named by the game_file option."""
        logger.info(f'loading game from {options["game_file"]}')
        return load_game(options['game_file'])

    def strategy(self, game, text, name='strategy'):
        """Parse a strategy literal for ``game``."""
        return parse_strategy(text, game.k, name)

    def rationals(self, text, name):
        """Parse a comma separated list of rationals."""
        return parse_rational_list(text, name)

    def write_json(self, data):
        """Write ``data`` to stdout as indented JSON."""
        self.stdout.write(json.dumps(data, indent=2))
