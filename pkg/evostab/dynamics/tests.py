"""
SPDX-License-Identifier: BSD-3-Clause

Define test cases for dynamics app.
"""

import csv
import json
import os
import random
from fractions import Fraction
from io import StringIO
from tempfile import TemporaryDirectory

import numpy as np
from django import test
from django.core.exceptions import ValidationError
from django.core.management import call_command
from django.core.management.base import CommandError

from evolution.barriers import uniform_barrier
from evolution.models import MixedStrategy, SymmetricGame
from evolution.oracle import simplex_grid
from evolution.serializers import GameSerializer
from evolution.stability import is_mess
from .models import InvasionScenario, Trajectory
from .replicator import IntegrationDiverged, classify_outcome, \
    restricted_game, simulate, write_trajectory_csv

F = Fraction


def strategy(*weights):
    """Build a mixed strategy from ints, Fractions or "a/b" strings."""
    return MixedStrategy(tuple(F(w) for w in weights))


def example1():
    """Return the anti-coordination game [[-1, 0], [0, -1]]."""
    return SymmetricGame(((-1, 0), (0, -1)))


def example2():
    """Return the game [[-1, 0], [0, 0]]."""
    return SymmetricGame(((-1, 0), (0, 0)))


def trajectory(incumbent):
    """Build a two-strain trajectory from the incumbent's shares."""
    incumbent = np.array(incumbent, dtype=float)
    times = np.linspace(0.0, 10.0, len(incumbent))
    shares = np.column_stack([incumbent, 1 - incumbent])
    return Trajectory(times, shares)


class InvasionScenarioTestCase(test.SimpleTestCase):
    """Test validation of invasion scenarios."""

    def test_valid(self):
        """Verify a valid scenario."""
        scenario = InvasionScenario(example2(), (strategy(0, 1),
                                                 strategy(1, 0)), (0.9, 0.1))
        self.assertEqual(scenario.m, 1)
        self.assertEqual(scenario.t_end, 200.0)

    def test_invalid(self):
        """Verify invalid scenarios are refused."""
        p, r = strategy(0, 1), strategy(1, 0)
        for strategies, shares in (
                ((p, r), (0.9, 0.2)),
                ((p, r), (1.1, -0.1)),
                ((p, r), (0.0, 1.0)),
                ((p, r), (1.0,)),
                ((p, p), (0.5, 0.5)),
                ((), ()),
                ((p, strategy(1, 0, 0)), (0.5, 0.5))):
            with self.assertRaises(ValidationError):
                InvasionScenario(example2(), strategies, shares)
        with self.assertRaises(ValidationError):
            InvasionScenario(example2(), (p, r), (0.5, 0.5), dt=0)
        with self.assertRaises(ValidationError):
            InvasionScenario(example2(), (p, r), (0.5, 0.5), stride=0)


class ReplicatorTestCase(test.SimpleTestCase):
    """Test integration and classification of replicator trajectories."""

    def test_restricted_game(self):
        """Verify the payoff matrix between scenario strategies."""
        matrix = restricted_game(example1(), (strategy('1/2', '1/2'),
                                              strategy('1/4', '3/4')))
        np.testing.assert_array_equal(matrix, [[-0.5, -0.5],
                                               [-0.5, -0.625]])

    def test_example1_drifts(self):
        """Verify example 1 mutants drift neutrally."""
        scenario = InvasionScenario(
            example1(), (strategy('1/2', '1/2'), strategy('1/4', '3/4'),
                         strategy('3/4', '1/4')), (0.9, 0.05, 0.05))
        result = simulate(scenario)
        self.assertEqual(result.outcome, Trajectory.NEUTRAL_DRIFT)
        np.testing.assert_allclose(result.final_shares, [0.9, 0.05, 0.05],
                                   atol=1e-9)

    def test_example2_restored(self):
        """Verify example 2 restores the incumbent."""
        scenario = InvasionScenario(example2(), (strategy(0, 1),
                                                 strategy(1, 0)), (0.9, 0.1))
        result = simulate(scenario)
        self.assertEqual(result.outcome, Trajectory.RESTORED)
        # the mutant only dies out algebraically, like 1 / (10 + t)
        self.assertGreater(result.final_shares[0], 0.995)
        self.assertTrue(np.all(np.diff(result.incumbent_shares) >= 0))

    def test_two_mutants_restored(self):
        """Verify example 2 repels two mutants at once."""
        scenario = InvasionScenario(
            example2(), (strategy(0, 1), strategy(1, 0),
                         strategy('1/2', '1/2')), (0.8, 0.1, 0.1))
        self.assertEqual(simulate(scenario).outcome, Trajectory.RESTORED)

    def test_hawk_dove_invaded(self):
        """Verify Hawk is invaded by Dove."""
        game = SymmetricGame(((-1, 2), (0, 1)))
        scenario = InvasionScenario(game, (strategy(1, 0), strategy(0, 1)),
                                    (0.9, 0.1), t_end=20.0)
        result = simulate(scenario)
        self.assertEqual(result.outcome, Trajectory.INVADED)
        self.assertAlmostEqual(result.final_shares[0], 0.5, places=3)

    def test_zero_mutant_share(self):
        """Verify an absent mutant leaves the incumbent restored."""
        scenario = InvasionScenario(example1(), (strategy(1, 0),
                                                 strategy(0, 1)), (1.0, 0.0))
        result = simulate(scenario)
        self.assertEqual(result.outcome, Trajectory.RESTORED)
        np.testing.assert_array_equal(result.final_shares, [1.0, 0.0])

    def test_recorded_times(self):
        """Verify the stride and the final step are recorded."""
        scenario = InvasionScenario(example2(), (strategy(0, 1),
                                                 strategy(1, 0)), (0.9, 0.1),
                                    dt=0.01, t_end=1.0, stride=30)
        result = simulate(scenario)
        np.testing.assert_allclose(result.times, [0.0, 0.3, 0.6, 0.9, 1.0])
        np.testing.assert_allclose(result.shares.sum(axis=1), 1.0)

    def test_restored_below_uniform_barrier(self):
        """Verify mutants within the uniform barrier always die out."""
        rng = random.Random(61)
        scenarios = 0
        while scenarios < 20:
            game = SymmetricGame(tuple(
                tuple(F(rng.randint(-3, 3)) for _ in range(3))
                for _ in range(3)))
            robust = [MixedStrategy.pure(3, i) for i in range(3)
                      if is_mess(game, MixedStrategy.pure(3, i))]
            if not robust:
                continue
            scenarios += 1
            p = rng.choice(robust)
            mutants = rng.sample([q for q in simplex_grid(3, 4) if q != p], 2)
            total = 0.9 * float(uniform_barrier(game, p, 2).total)
            scenario = InvasionScenario(game, (p, *mutants),
                                        (1 - total, total / 2, total / 2),
                                        t_end=50.0)
            self.assertEqual(simulate(scenario).outcome, Trajectory.RESTORED,
                             (game, p, mutants, total))

    def test_shift_invariance(self):
        """Verify shifting payoffs leaves the trajectory unchanged."""
        game = SymmetricGame(((1, 3, 0), (0, 2, 1), (2, -1, 1)))
        strategies = (strategy(1, 0, 0), strategy(0, 1, 0), strategy(0, 0, 1))
        shares = (0.6, 0.3, 0.1)
        first = simulate(InvasionScenario(game, strategies, shares,
                                          t_end=20.0))
        second = simulate(InvasionScenario(game.transformed(1, 7), strategies,
                                           shares, t_end=20.0))
        np.testing.assert_allclose(first.shares, second.shares, atol=1e-9)
        self.assertEqual(first.outcome, second.outcome)

    def test_divergence(self):
        """Verify overflow raises IntegrationDiverged."""
        game = SymmetricGame(((0, 0), (10 ** 308, 0)))
        scenario = InvasionScenario(game, (strategy(1, 0), strategy(0, 1)),
                                    (0.5, 0.5))
        with self.assertLogs('dynamics', 'WARNING'):
            with self.assertRaises(IntegrationDiverged) as cm:
                simulate(scenario)
        self.assertEqual(cm.exception.last_time, 0.0)

    def test_classify_outcome(self):
        """Verify each outcome label."""
        rising = np.linspace(0.9, 0.98, 21)
        falling = np.linspace(0.9, 0.6, 21)
        dip = np.concatenate([np.linspace(0.9, 0.5, 11),
                              np.linspace(0.5, 0.9, 11)[1:]])
        self.assertEqual(classify_outcome(trajectory(rising)),
                         Trajectory.RESTORED)
        self.assertEqual(classify_outcome(trajectory([0.9, 0.99999])),
                         Trajectory.RESTORED)
        self.assertEqual(classify_outcome(trajectory(falling)),
                         Trajectory.INVADED)
        self.assertEqual(classify_outcome(trajectory(np.full(21, 0.9))),
                         Trajectory.NEUTRAL_DRIFT)
        self.assertEqual(classify_outcome(trajectory(dip)),
                         Trajectory.UNDECIDED)
        self.assertEqual(
            classify_outcome(trajectory([0.9, 0.90001, 0.9]), tol=1e-6),
            Trajectory.UNDECIDED)

    def test_write_csv(self):
        """Verify the CSV layout."""
        scenario = InvasionScenario(example2(), (strategy(0, 1),
                                                 strategy(1, 0)), (0.9, 0.1),
                                    t_end=1.0)
        result = simulate(scenario)
        out = StringIO()
        write_trajectory_csv(result, out)
        lines = out.getvalue().splitlines()
        self.assertEqual(lines[0], 't,share_0,share_1')
        self.assertEqual(lines[-1], f'# outcome={result.outcome}')
        rows = list(csv.reader(lines[1:-1]))
        self.assertEqual(len(rows), len(result.times))
        self.assertEqual(rows[0], ['0', '0.9', '0.1'])
        self.assertAlmostEqual(float(rows[-1][0]), 1.0)


class SimulateCommandTestCase(test.SimpleTestCase):
    """Test the simulate command."""

    def setUp(self):
        tmp = TemporaryDirectory()
        self.addCleanup(tmp.cleanup)
        self.tmp = tmp.name

    def write_game(self, game):
        path = os.path.join(self.tmp, 'game.json')
        with open(path, 'w', encoding='utf-8') as fp:
            json.dump(GameSerializer(game).data, fp)
        return path

    def test_simulate_stdout(self):
        """Verify simulate writes CSV to stdout."""
        out = StringIO()
        call_command('simulate', self.write_game(example2()),
                     '--incumbent', '[0,1]', '--mutant', '[1,0]',
                     '--shares', '0.9,0.1', '--t-end', '2', stdout=out)
        lines = out.getvalue().splitlines()
        self.assertEqual(lines[0], 't,share_0,share_1')
        self.assertTrue(lines[-1].startswith('# outcome='))

    def test_simulate_out(self):
        """Verify simulate writes the file and prints the outcome."""
        out = StringIO()
        path = os.path.join(self.tmp, 'trajectory.csv')
        call_command('simulate', self.write_game(example2()),
                     '--incumbent', '[0,1]', '--mutant', '[1,0]',
                     '--mutant', '[1/2,1/2]', '--shares', '0.8,0.1,0.1',
                     '--out', path, stdout=out)
        self.assertEqual(out.getvalue().strip(), 'outcome=restored')
        with open(path, encoding='utf-8') as fp:
            self.assertEqual(fp.readline().strip(),
                             't,share_0,share_1,share_2')

    def test_simulate_errors(self):
        """Verify simulate input errors exit with 2."""
        path = self.write_game(example2())
        for shares in ('0.5,0.6', 'a,b', '0.5'):
            with self.assertRaises(CommandError) as cm:
                call_command('simulate', path, '--incumbent', '[0,1]',
                             '--mutant', '[1,0]', '--shares', shares,
                             stdout=StringIO())
            self.assertEqual(cm.exception.returncode, 2)
        with self.assertRaises(CommandError) as cm:
            call_command('simulate', path, '--incumbent', '[0,1,0]',
                         '--shares', '1', stdout=StringIO())
        self.assertEqual(cm.exception.returncode, 2)

    def test_simulate_diverged(self):
        """Verify divergence exits with 3."""
        path = self.write_game(SymmetricGame(((0, 0), (10 ** 308, 0))))
        with self.assertLogs('dynamics', 'WARNING'):
            with self.assertRaises(CommandError) as cm:
                call_command('simulate', path, '--incumbent', '[1,0]',
                             '--mutant', '[0,1]', '--shares', '0.5,0.5',
                             stdout=StringIO())
        self.assertEqual(cm.exception.returncode, 3)
