"""
SPDX-License-Identifier: BSD-3-Clause

Define test cases for evolution app.
"""

import json
import os
import random
from fractions import Fraction
from io import StringIO
from itertools import combinations_with_replacement, permutations
from tempfile import TemporaryDirectory

import hypothesis.strategies as st
from django import test
from django.core.exceptions import ValidationError
from django.core.management import call_command
from django.core.management.base import CommandError
from hypothesis import given, settings as hypothesis_settings
from rest_framework.exceptions import ParseError

from .barriers import BarrierResult, MutationSet, check_robust_at, \
    h_values, max_box_barrier, uniform_barrier
from .models import AnalysisDocument, MixedStrategy, SymmetricGame, \
    best_response_set, is_nash, is_strict_nash, mixture, payoff, \
    payoff_vector
from .oracle import Certification, GridSpec, escalate, \
    search_local_dominance_violation, search_mess_counterexample, \
    simplex_grid
from .parsers import parse_game, parse_strategy
from .serializers import AnalysisDocumentSerializer, GameSerializer
from .stability import IndeterminateError, NotMESSError, analyze, \
    check_disjoint_support_strictness, is_ess, is_locally_dominant, \
    is_mess, is_strictly_locally_dominant, pure_sweep

F = Fraction


def strategy(*weights):
    """Build a mixed strategy from ints, Fractions or "a/b" strings."""
    return MixedStrategy(tuple(F(w) for w in weights))


def example1():
    """Return the anti-coordination game whose mixed ESS is not robust."""
    return SymmetricGame(((-1, 0), (0, -1)))


def example2():
    """Return the game whose second pure strategy is robust but not strict."""
    return SymmetricGame(((-1, 0), (0, 0)))


def hawk_dove():
    """Return Hawk-Dove with V = 2 and C = 4."""
    return SymmetricGame(((-1, 2), (0, 1)), ('Hawk', 'Dove'))


def boundary_game(a, b):
    """Return a game where e1 faces a three-strategy boundary cone."""
    return SymmetricGame(((0, 0, 0), (0, -1, F(a)), (0, F(b), -1)))


def random_game(rng, k, numerator=6, denominator=3):
    """Return a k x k game with small random rational entries."""
    return SymmetricGame(tuple(
        tuple(F(rng.randint(-numerator, numerator),
                rng.randint(1, denominator)) for _ in range(k))
        for _ in range(k)))


def make_nash(game, p):
    """Shift the rows in the support of p so that p becomes Nash."""
    values = payoff_vector(game, p)
    best = max(values)
    return SymmetricGame(tuple(
        tuple(x + best - values[i] for x in row) if i in p.support else row
        for i, row in enumerate(game.payoffs)))


def outcome(game, p):
    """Return the flags of p, or 'indeterminate'."""
    try:
        return analyze(game, p).flags
    except IndeterminateError:
        return 'indeterminate'


def below_uniform(game, p, m):
    """Return proportions that a uniform barrier guarantees against m."""
    barrier = uniform_barrier(game, p, m)
    eps = [barrier.epsilon / 2]
    if not barrier.open:
        eps.append(barrier.epsilon)
    return tuple(eps)


rationals = st.builds(F, st.integers(-6, 6), st.integers(1, 3))


def games(k):
    """Return a hypothesis strategy for k x k rational games."""
    return st.lists(st.lists(rationals, min_size=k, max_size=k),
                    min_size=k, max_size=k).map(
        lambda rows: SymmetricGame(tuple(tuple(row) for row in rows)))


def mixed_strategies(k):
    """Return a hypothesis strategy for mixed strategies with k weights."""
    return st.lists(st.integers(0, 5), min_size=k, max_size=k).filter(
        any).map(lambda w: MixedStrategy(tuple(F(x, sum(w)) for x in w)))


NEIGHBOURHOODS = ((F(1, 4), 16), (F(1, 8), 16), (F(1, 16), 32))


def strict_breach(game, p, radius, denom):
    """Return whether some s, r near p have u(p, r) <= u(s, r)."""
    near = [q for q in simplex_grid(game.k, denom)
            if q != p and q.l1_distance(p) <= radius]
    return any(payoff(game, p, r) <= payoff(game, s, r)
               for r in near for s in near)


class SymmetricGameTestCase(test.SimpleTestCase):
    """Test games, strategies and exact payoffs."""

    def test_payoff_example1(self):
        """Verify u(p, p) for the mixed equilibrium of example 1."""
        p = strategy('1/2', '1/2')
        self.assertEqual(payoff(example1(), p, p), F(-1, 2))

    def test_payoff_against_two_mutants(self):
        """The incumbent earns -1/2 against any population state."""
        game = example1()
        p = strategy('1/2', '1/2')
        r1, r2 = strategy('1/4', '3/4'), strategy('3/4', '1/4')
        for eps in (F(1, 10), F(1, 4)):
            w = mixture([r1, r2, p], [eps, eps, 1 - 2 * eps])
            self.assertEqual(payoff(game, p, w), F(-1, 2))
            self.assertEqual(payoff(game, r1, w), F(-1, 2))

    def test_best_response_set(self):
        """Verify the pure best replies are found exactly."""
        self.assertEqual(best_response_set(example2(), strategy(0, 1)),
                         frozenset({0, 1}))
        self.assertEqual(best_response_set(example1(), strategy(1, 0)),
                         frozenset({1}))

    def test_nash(self):
        """Verify the Nash and strict Nash predicates."""
        self.assertTrue(is_nash(example2(), strategy(0, 1)))
        self.assertFalse(is_strict_nash(example2(), strategy(0, 1)))
        self.assertFalse(is_nash(example1(), strategy(1, 0)))
        self.assertTrue(is_nash(example1(), strategy('1/2', '1/2')))
        coordination = SymmetricGame(((1, 0), (0, 1)))
        self.assertTrue(is_strict_nash(coordination, strategy(1, 0)))
        self.assertFalse(is_nash(hawk_dove(), strategy(1, 0)))
        self.assertTrue(is_nash(hawk_dove(), strategy('1/2', '1/2')))

    def test_one_by_one(self):
        """Verify a game with a single pure strategy is handled."""
        game = SymmetricGame(((F(3, 2),),))
        p = strategy(1)
        self.assertEqual(payoff(game, p, p), F(3, 2))
        self.assertTrue(is_strict_nash(game, p))

    def test_invalid_strategies(self):
        """Verify strategies off the simplex are refused."""
        with self.assertRaises(ValidationError):
            strategy('1/2', '1/3')
        with self.assertRaises(ValidationError):
            strategy(2, -1)
        with self.assertRaises(ValidationError):
            MixedStrategy(())

    def test_non_square_game(self):
        """Verify malformed payoff matrices are refused."""
        with self.assertRaises(ValidationError):
            SymmetricGame(((1, 2), (3,)))
        with self.assertRaises(ValidationError):
            SymmetricGame(((1, 2), (3, 4)), ('only one label',))

    def test_dimension_mismatch(self):
        """Verify a strategy of the wrong length is refused."""
        with self.assertRaises(ValidationError):
            payoff(example1(), strategy(1), strategy(1, 0))

    def test_transformed_and_permuted(self):
        """Verify affine transforms and relabelling of games."""
        game = SymmetricGame(((1, 2), (3, 4)), ('A', 'B'))
        self.assertEqual(game.transformed(2, -1).payoffs,
                         ((1, 3), (5, 7)))
        swapped = game.permuted((1, 0))
        self.assertEqual(swapped.payoffs, ((4, 3), (2, 1)))
        self.assertEqual(swapped.labels, ('B', 'A'))
        self.assertEqual(strategy('1/3', '2/3').permuted((1, 0)),
                         strategy('2/3', '1/3'))
        with self.assertRaises(ValidationError):
            game.transformed(0)
        with self.assertRaises(ValidationError):
            game.permuted((0, 0))

    def test_strategy_helpers(self):
        """Verify support, purity, mixing and distances."""
        p = strategy('1/2', 0, '1/2')
        self.assertEqual(p.support, frozenset({0, 2}))
        self.assertFalse(p.is_pure)
        self.assertIsNone(p.pure_index)
        self.assertEqual(MixedStrategy.pure(3, 1).pure_index, 1)
        self.assertEqual(str(p), '[1/2,0,1/2]')
        self.assertEqual(p.l1_distance(MixedStrategy.pure(3, 0)), 1)
        self.assertEqual(p.mix(MixedStrategy.pure(3, 1), F(1, 2)),
                         strategy('1/4', '1/2', '1/4'))

    @hypothesis_settings(deadline=None, max_examples=100)
    @given(games(3), mixed_strategies(3), mixed_strategies(3),
           mixed_strategies(3), st.fractions(0, 1, max_denominator=12))
    def test_payoff_bilinear(self, game, p, other, q, alpha):
        """Verify payoffs are linear in each argument."""
        mixed = p.mix(other, alpha)
        self.assertEqual(payoff(game, mixed, q),
                         alpha * payoff(game, p, q) +
                         (1 - alpha) * payoff(game, other, q))
        self.assertEqual(payoff(game, q, mixed),
                         alpha * payoff(game, q, p) +
                         (1 - alpha) * payoff(game, q, other))


class ParserTestCase(test.SimpleTestCase):
    """Test the game file and strategy literal parsers."""

    def test_parse_game(self):
        """Verify a game document is parsed exactly."""
        game = parse_game('{"k": 2, "payoffs": [["-1", "0"], ["0", "1/2"]],'
                          ' "labels": ["A", "B"]}')
        self.assertEqual(game.payoffs, ((-1, 0), (0, F(1, 2))))
        self.assertEqual(game.labels, ('A', 'B'))
        self.assertEqual(game.label(1), 'B')

    def test_integer_payoffs(self):
        """Verify bare JSON integers are accepted as payoffs."""
        game = parse_game('{"k": 1, "payoffs": [[3]]}')
        self.assertEqual(game.payoffs, ((3,),))
        self.assertEqual(game.label(0), 'e1')

    def test_non_square(self):
        """Verify a non-square matrix is reported against payoffs."""
        with self.assertRaises(ParseError) as cm:
            parse_game('{"k": 2, "payoffs": [["1"]]}')
        self.assertIn('payoffs', str(cm.exception.detail))
        self.assertIn('square', str(cm.exception.detail))
        with self.assertRaises(ParseError):
            parse_game('{"k": 2, "payoffs": [["1", "2"], ["3"]]}')

    def test_bad_rational_names_field(self):
        """Verify a bad payoff entry is reported with its path."""
        with self.assertRaises(ParseError) as cm:
            parse_game('{"k": 2, "payoffs": [["1", "0"], ["x", "1"]]}')
        self.assertIn('payoffs[1][0]', str(cm.exception.detail))
        with self.assertRaises(ParseError) as cm:
            parse_game('{"k": 1, "payoffs": [[0.5]]}')
        self.assertIn('payoffs[0][0]', str(cm.exception.detail))
        with self.assertRaises(ParseError):
            parse_game('{"k": 1, "payoffs": [["1/0"]]}')

    def test_bad_json(self):
        """Verify malformed documents raise ParseError."""
        with self.assertRaises(ParseError):
            parse_game('{"k": 2,')
        with self.assertRaises(ParseError):
            parse_game('[1, 2]')
        with self.assertRaises(ParseError):
            parse_game('{"payoffs": [["1"]]}')
        with self.assertRaises(ParseError) as cm:
            parse_game(b'{"k": 1, "payoffs": [["\xff"]]}')
        self.assertIn('JSON parse error', str(cm.exception.detail))

    def test_parse_strategy(self):
        """Verify strategy literals in their accepted forms."""
        self.assertEqual(parse_strategy('[1/2,1/2]', 2),
                         strategy('1/2', '1/2'))
        self.assertEqual(parse_strategy('["1/3", "2/3"]', 2),
                         strategy('1/3', '2/3'))
        self.assertEqual(parse_strategy('0,1'), strategy(0, 1))

    def test_parse_strategy_errors(self):
        """Verify strategy literal errors name the field."""
        with self.assertRaises(ParseError):
            parse_strategy('[1/2,1/3]', 2)
        with self.assertRaises(ParseError):
            parse_strategy('[1]', 2)
        with self.assertRaises(ParseError) as cm:
            parse_strategy('[1/2,a]', 2)
        self.assertIn('strategy[1]', str(cm.exception.detail))
        with self.assertRaises(ParseError):
            parse_strategy('[]')

    def test_game_serializer_round_trip(self):
        """Verify a game survives writing and reading back."""
        game = SymmetricGame(((F(-1, 3), 2), (0, F(7, 5))), ('x', 'y'))
        data = json.loads(json.dumps(GameSerializer(game).data))
        self.assertEqual(data['payoffs'], [['-1/3', '2'], ['0', '7/5']])
        self.assertEqual(parse_game(json.dumps(data)), game)


class StabilityTestCase(test.SimpleTestCase):
    """Test the stability decision procedures on worked games."""

    def test_example1(self):
        """Verify the mixed ESS of example 1 is not M-ESS."""
        game = example1()
        p = strategy('1/2', '1/2')
        self.assertTrue(is_ess(game, p))
        decision = is_mess(game, p)
        self.assertFalse(decision)
        self.assertEqual(decision.witness.kind, 'vertex_dominance')
        self.assertEqual(decision.witness.index, 0)
        self.assertEqual(decision.witness.other, 1)
        self.assertFalse(is_locally_dominant(game, p))
        self.assertFalse(is_strictly_locally_dominant(game, p))

    def test_example1_pure_is_not_ess(self):
        """Verify a pure strategy of example 1 is not even Nash."""
        decision = is_ess(example1(), strategy(1, 0))
        self.assertFalse(decision)
        self.assertEqual(decision.witness.kind, 'better_reply')
        self.assertEqual(decision.witness.index, 1)

    def test_coordination_mixed_is_not_ess(self):
        """Verify the mixed equilibrium of coordination is invadable."""
        game = SymmetricGame(((1, 0), (0, 1)))
        self.assertTrue(is_ess(game, strategy(1, 0)))
        decision = is_ess(game, strategy('1/2', '1/2'))
        self.assertFalse(decision)
        self.assertEqual(decision.witness.strategy, strategy(1, 0))
        self.assertEqual(decision.witness.value, F(-1, 2))

    def test_example2(self):
        """Verify the second pure strategy of example 2 is M-ESS."""
        game = example2()
        p = strategy(0, 1)
        self.assertTrue(is_ess(game, p))
        self.assertTrue(is_mess(game, p))
        self.assertTrue(is_locally_dominant(game, p))
        self.assertTrue(is_strictly_locally_dominant(game, p))
        self.assertFalse(is_ess(game, strategy(1, 0)))

    def test_analyze_example1(self):
        """Verify the full report for example 1."""
        report = analyze(example1(), strategy('1/2', '1/2'))
        self.assertEqual(report.flags, {
            'nash': True, 'strict_nash': False, 'ess': True, 'mess': False,
            'locally_dominant': False, 'strictly_locally_dominant': False})
        self.assertEqual(report.witness.flag, 'strict_nash')
        self.assertEqual(report.witness.kind, 'not_pure')

    def test_analyze_example2(self):
        """Verify the full report for example 2."""
        report = analyze(example2(), strategy(0, 1))
        self.assertEqual(report.flags, {
            'nash': True, 'strict_nash': False, 'ess': True, 'mess': True,
            'locally_dominant': True, 'strictly_locally_dominant': True})
        self.assertEqual(report.witness.kind, 'alternative_best_reply')
        self.assertEqual(report.witness.index, 0)

    def test_analyze_one_by_one(self):
        """Verify every flag holds in a one-strategy game."""
        report = analyze(SymmetricGame(((5,),)), strategy(1))
        self.assertTrue(all(report.flags.values()))
        self.assertIsNone(report.witness)

    def test_not_nash_witness(self):
        """Verify a failed Nash test names the better reply."""
        decision = is_ess(hawk_dove(), strategy(1, 0))
        self.assertFalse(decision)
        self.assertEqual(decision.witness.kind, 'better_reply')
        self.assertEqual(decision.witness.index, 1)
        self.assertEqual(decision.witness.value, 1)

    def test_hawk_dove_has_no_mess(self):
        """Verify Hawk-Dove has an ESS but no M-ESS."""
        game = hawk_dove()
        for report in pure_sweep(game):
            self.assertFalse(report.mess)
            self.assertFalse(report.ess)
        report = analyze(game, strategy('1/2', '1/2'))
        self.assertTrue(report.ess)
        self.assertFalse(report.mess)

    def test_locally_but_not_strictly_dominant(self):
        """Verify a weak tie breaks strict local dominance only."""
        game = SymmetricGame(((0, 1, 0), (0, 0, 0), (-1, 0, 0)))
        report = analyze(game, strategy(1, 0, 0))
        self.assertEqual(report.flags, {
            'nash': True, 'strict_nash': False, 'ess': True, 'mess': True,
            'locally_dominant': True, 'strictly_locally_dominant': False})
        decision = is_strictly_locally_dominant(game, strategy(1, 0, 0))
        self.assertEqual(decision.witness.kind, 'weak_dominance')
        self.assertEqual((decision.witness.index, decision.witness.other),
                         (1, 2))

    def test_strict_nash_is_strictly_locally_dominant(self):
        """Verify strict equilibria are strictly locally dominant."""
        game = SymmetricGame(((2, 0), (0, 1)))
        self.assertTrue(is_strictly_locally_dominant(game, strategy(1, 0)))
        self.assertTrue(is_strictly_locally_dominant(game, strategy(0, 1)))

    def test_interior_ess_definite(self):
        """Verify a negative definite interior face is ESS."""
        game = SymmetricGame(((-1, 0, 0), (0, -1, 0), (0, 0, -1)))
        self.assertTrue(is_ess(game, MixedStrategy.uniform(3)))

    def test_interior_ess_refuted_at_first_pivot(self):
        """Verify the invader built from the first failed pivot."""
        game = SymmetricGame(((1, 0, 0), (0, 1, 0), (0, 0, 1)))
        decision = is_ess(game, MixedStrategy.uniform(3))
        self.assertFalse(decision)
        self.assertEqual(decision.witness.strategy, strategy(0, '2/3', '1/3'))
        self.assertEqual(decision.witness.value, F(-2, 9))

    def test_interior_ess_refuted_at_second_pivot(self):
        """Verify the invader built from a later failed pivot."""
        game = SymmetricGame(((-1, 1, 0), (1, -1, 0), (0, 0, 0)))
        decision = is_ess(game, MixedStrategy.uniform(3))
        self.assertFalse(decision)
        self.assertEqual(decision.witness.strategy, strategy(0, 0, 1))
        self.assertEqual(decision.witness.value, 0)

    def test_boundary_cone_certified(self):
        """Verify the grid certifies ESS on a boundary cone."""
        game = boundary_game(1, 0)
        p = strategy(1, 0, 0)
        self.assertTrue(is_ess(game, p))
        decision = is_mess(game, p)
        self.assertFalse(decision)
        self.assertEqual((decision.witness.index, decision.witness.other),
                         (1, 2))

    def test_boundary_cone_refuted(self):
        """Verify the grid refutes ESS on a boundary cone."""
        decision = is_ess(boundary_game(3, 3), strategy(1, 0, 0))
        self.assertFalse(decision)
        self.assertEqual(decision.witness.strategy,
                         strategy(0, '1/2', '1/2'))
        self.assertEqual(decision.witness.value, -1)

    def test_boundary_cone_indeterminate(self):
        """Verify a near-degenerate cone comes back indeterminate."""
        game = boundary_game(1, F(24, 25))
        with self.assertRaises(IndeterminateError) as cm:
            is_ess(game, strategy(1, 0, 0))
        self.assertEqual(cm.exception.denom, 64)
        self.assertEqual(cm.exception.minimum, F(1, 100))
        with self.assertRaises(IndeterminateError):
            analyze(game, strategy(1, 0, 0))

    @test.override_settings(ESS_GRID_DENOMINATORS=(2, 4, 8, 16))
    def test_boundary_cone_schedule_from_settings(self):
        """Verify the grid schedule is read from settings."""
        with self.assertRaises(IndeterminateError) as cm:
            is_ess(boundary_game(1, 0), strategy(1, 0, 0))
        self.assertEqual(cm.exception.denom, 16)

    def test_disjoint_support_strictness(self):
        """Verify p beats every disjoint-support strategy near p."""
        self.assertTrue(check_disjoint_support_strictness(
            example2(), strategy(0, 1), F(1, 4), 8))
        game = SymmetricGame(((1, 1, 1), (0, 0, 0), (0, 0, 0)))
        self.assertTrue(check_disjoint_support_strictness(
            game, strategy(1, 0, 0), F(1, 4), 8))
        self.assertTrue(check_disjoint_support_strictness(
            SymmetricGame(((0,),)), strategy(1), 1, 4))
        with self.assertRaises(NotMESSError):
            check_disjoint_support_strictness(
                example1(), strategy('1/2', '1/2'), F(1, 4), 8)

    def test_pure_sweep(self):
        """Verify the sweep reports every pure strategy in order."""
        reports = pure_sweep(example2())
        self.assertEqual([r.strategy for r in reports],
                         [strategy(1, 0), strategy(0, 1)])
        self.assertFalse(any(reports[0].flags.values()))
        self.assertTrue(reports[1].mess)

    @test.override_settings(EVOSTAB_THREADS=4)
    def test_pure_sweep_parallel_matches_serial(self):
        """Verify a threaded sweep matches the serial one."""
        rng = random.Random(11)
        for _ in range(20):
            game = random_game(rng, 4)
            try:
                parallel = pure_sweep(game)
            except IndeterminateError:
                continue
            with self.settings(EVOSTAB_THREADS=1):
                self.assertEqual(pure_sweep(game), parallel)


class StabilityPropertyTestCase(test.SimpleTestCase):
    """Test the stability decisions on random games."""

    @hypothesis_settings(deadline=None, max_examples=60)
    @given(st.integers(2, 4).flatmap(games))
    def test_implication_chain(self, game):
        """Verify the implications between the stability notions."""
        denom = 3 if game.k < 4 else 2
        for p in simplex_grid(game.k, denom):
            flags = outcome(game, p)
            if flags == 'indeterminate':
                continue
            if flags['strict_nash']:
                self.assertTrue(flags['strictly_locally_dominant'])
            if flags['strictly_locally_dominant']:
                self.assertTrue(flags['locally_dominant'])
            self.assertEqual(flags['mess'], flags['locally_dominant'])
            if flags['mess']:
                self.assertTrue(flags['ess'])
                self.assertTrue(p.is_pure)
            if flags['ess']:
                self.assertTrue(flags['nash'])

    @hypothesis_settings(deadline=None, max_examples=100)
    @given(st.integers(2, 4).flatmap(games), st.data())
    def test_failed_ess_witness_invades(self, game, data):
        """Verify an ESS witness really invades p."""
        p = data.draw(st.sampled_from(simplex_grid(game.k, 2)))
        try:
            decision = is_ess(game, p)
        except IndeterminateError:
            return
        witness = decision.witness
        if decision or witness.kind != 'invading_strategy':
            return
        q = witness.strategy
        self.assertNotEqual(q, p)
        self.assertTrue(q.support <= best_response_set(game, p))
        self.assertLessEqual(payoff(game, p, q) - payoff(game, q, q), 0)
        self.assertEqual(witness.value, payoff(game, p, q) - payoff(game, q, q))

    def test_purity(self):
        """Strategies mixing two or more pure strategies are never robust."""
        rng = random.Random(3)
        for n in range(500):
            k = 3 if n % 2 else 4
            game = random_game(rng, k)
            for p in simplex_grid(k, 3):
                if not p.is_pure:
                    self.assertFalse(is_mess(game, p))

    def test_purity_oracle_finds_counterexamples(self):
        """Verify the oracle refutes mixed equilibria."""
        rng = random.Random(5)
        mixed = [p for p in simplex_grid(3, 3) if not p.is_pure]
        found = 0
        for _ in range(60):
            p = rng.choice(mixed)
            game = make_nash(random_game(rng, 3), p)
            self.assertTrue(is_nash(game, p))
            self.assertFalse(is_mess(game, p))
            result = escalate(game, p, denominators=(6,),
                              mutation_counts=(2,))
            if result.counterexample is not None:
                found += 1
                ce = result.counterexample
                self.assertEqual(ce.replay(game, p), ce.h_value)
                self.assertLessEqual(ce.h_value, 0)
        self.assertGreaterEqual(found, 50)

    def test_two_by_two_ess_is_mess(self):
        """Verify ESS and M-ESS agree on 2 x 2 games."""
        rng = random.Random(7)
        for _ in range(2000):
            game = random_game(rng, 2)
            for i in range(2):
                p = MixedStrategy.pure(2, i)
                self.assertEqual(bool(is_ess(game, p)), bool(is_mess(game, p)),
                                 (game, p))

    @hypothesis_settings(deadline=None, max_examples=200)
    @given(games(2))
    def test_two_by_two_ess_is_mess_property(self, game):
        """Verify ESS and M-ESS agree on generated 2 x 2 games."""
        for i in range(2):
            p = MixedStrategy.pure(2, i)
            self.assertEqual(bool(is_ess(game, p)), bool(is_mess(game, p)))

    def test_affine_invariance(self):
        """Verify the flags survive positive affine payoff transforms."""
        rng = random.Random(13)
        transforms = ((1, 5), (3, -2), (F(1, 2), F(7, 3)))
        for _ in range(100):
            game = random_game(rng, 3)
            for p in simplex_grid(3, 2):
                expected = outcome(game, p)
                for alpha, c in transforms:
                    self.assertEqual(outcome(game.transformed(alpha, c), p),
                                     expected, (game, p, alpha, c))

    def test_permutation_equivariance(self):
        """Verify the flags follow a relabelling of strategies."""
        rng = random.Random(17)
        for _ in range(100):
            game = random_game(rng, 3)
            for p in simplex_grid(3, 2):
                expected = outcome(game, p)
                for perm in permutations(range(3)):
                    self.assertEqual(
                        outcome(game.permuted(perm), p.permuted(perm)),
                        expected, (game, p, perm))


class BarrierTestCase(test.SimpleTestCase):
    """Test h-values and invasion barriers."""

    def setUp(self):
        self.p1 = strategy('1/2', '1/2')
        self.ms1 = MutationSet(self.p1, (strategy('1/4', '3/4'),
                                         strategy('3/4', '1/4')))

    def test_h_values_example1(self):
        """Verify both mutants tie with p in example 1."""
        self.assertEqual(h_values(example1(), self.ms1, (F(1, 4), F(1, 4))),
                         (0, 0))
        self.assertFalse(check_robust_at(example1(), self.ms1,
                                         (F(1, 4), F(1, 4))))

    def test_h_values_single_mutant_is_ess_margin(self):
        """Verify one mutant reduces to the ESS margin."""
        game = SymmetricGame(((1, 3, 0), (0, 2, 1), (2, -1, 1)))
        p, r = strategy(1, 0, 0), strategy('1/3', '1/3', '1/3')
        eps = F(1, 7)
        w = r.mix(p, eps)
        self.assertEqual(h_values(game, MutationSet(p, (r,)), (eps,)),
                         (payoff(game, p, w) - payoff(game, r, w),))

    def test_h_values_match_direct_evaluation(self):
        """Verify h-values against payoffs in the mixed population."""
        rng = random.Random(19)
        grid = simplex_grid(3, 4)
        for _ in range(50):
            game = random_game(rng, 3)
            p = rng.choice(grid)
            mutants = tuple(rng.choice([q for q in grid if q != p])
                            for _ in range(3))
            eps = (F(1, 10), F(1, 5), F(1, 20))
            w = mixture(mutants + (p,), eps + (1 - sum(eps),))
            expected = tuple(payoff(game, p, w) - payoff(game, r, w)
                             for r in mutants)
            self.assertEqual(h_values(game, MutationSet(p, mutants), eps),
                             expected)

    def test_h_values_at_zero(self):
        """Verify h-values at zero proportions."""
        game = example2()
        ms = MutationSet(strategy(0, 1), (strategy(1, 0),
                                          strategy('1/2', '1/2')))
        self.assertEqual(h_values(game, ms, (0, 0)), (0, 0))

    def test_infeasible_proportions(self):
        """Verify infeasible proportions are refused."""
        with self.assertRaises(ValidationError):
            h_values(example1(), self.ms1, (F(3, 4), F(1, 2)))
        with self.assertRaises(ValidationError):
            check_robust_at(example1(), self.ms1, (0, F(1, 2)))
        with self.assertRaises(ValidationError):
            h_values(example1(), self.ms1, (F(1, 4),))

    def test_mutation_set_validation(self):
        """Verify mutation set invariants."""
        with self.assertRaises(ValidationError):
            MutationSet(self.p1, (self.p1,))
        with self.assertRaises(ValidationError):
            MutationSet(self.p1, ())
        with self.assertRaises(ValidationError):
            MutationSet(self.p1, (strategy(1, 0, 0),))

    def test_max_box_barrier_example1(self):
        """Verify example 1 admits no barrier."""
        result = max_box_barrier(example1(), self.ms1)
        self.assertEqual(result.kind, BarrierResult.NONE)
        self.assertEqual(result.proportions, (F(1, 2), F(1, 2)))
        self.assertEqual(result.violated_index, 0)
        self.assertEqual(result.h_value, 0)

    def test_max_box_barrier_example2(self):
        """Verify example 2 is capped at 1/m."""
        ms = MutationSet(strategy(0, 1), (strategy(1, 0),
                                          strategy('1/2', '1/2')))
        result = max_box_barrier(example2(), ms)
        self.assertEqual(result.kind, BarrierResult.BARRIER)
        self.assertEqual(result.epsilon, F(1, 2))
        self.assertTrue(result.cap_applied)
        self.assertFalse(result.open)
        for eps in (F(1, 100), F(1, 10), F(1, 4), F(1, 2)):
            self.assertTrue(check_robust_at(example2(), ms, (eps, eps)))

    def test_single_mutant_barrier(self):
        """Verify an open barrier at the root of h."""
        game = SymmetricGame(((2, 0), (0, 1)))
        ms = MutationSet(strategy(1, 0), (strategy(0, 1),))
        result = max_box_barrier(game, ms)
        self.assertEqual(result.epsilon, F(2, 3))
        self.assertTrue(result.open)
        self.assertFalse(result.cap_applied)
        self.assertEqual(h_values(game, ms, (F(2, 3),)), (0,))
        self.assertTrue(check_robust_at(game, ms, (F(2, 3) - F(1, 1000),)))

    def test_single_mutant_barrier_capped(self):
        """Verify a barrier limited only by the cap."""
        game = SymmetricGame(((2, 3), (0, 1)))
        ms = MutationSet(strategy(1, 0), (strategy(0, 1),))
        result = max_box_barrier(game, ms)
        self.assertEqual(result.epsilon, 1)
        self.assertTrue(result.cap_applied)
        self.assertFalse(result.open)

    def test_closed_bound_with_rising_direction(self):
        """Verify a bound stays closed when another direction helps p."""
        # h_1 = 1 - 4 e_1 + 4 e_2 only vanishes where e_2 = 0
        game = SymmetricGame(((0, 0, 0), (-1, 3, -5), (-1, -1, -1)))
        p = strategy(1, 0, 0)
        ms = MutationSet(p, (strategy(0, 1, 0), strategy(0, 0, 1)))
        result = max_box_barrier(game, ms)
        self.assertEqual(result.kind, BarrierResult.BARRIER)
        self.assertEqual(result.epsilon, F(1, 4))
        self.assertFalse(result.open)
        self.assertFalse(result.cap_applied)
        self.assertEqual(h_values(game, ms, (F(1, 4), F(1, 1000))),
                         (F(1, 250), 1))
        self.assertTrue(check_robust_at(game, ms, (F(1, 4), F(1, 4))))

    def test_negative_margin_counterexample(self):
        """Verify the counterexample for a better reply."""
        game = SymmetricGame(((0, 0), (1, -1)))
        ms = MutationSet(strategy(1, 0), (strategy(0, 1),))
        result = max_box_barrier(game, ms)
        self.assertEqual(result.kind, BarrierResult.NONE)
        self.assertEqual(result.proportions, (F(1, 4),))
        self.assertEqual(result.h_value, F(-1, 2))
        self.assertEqual(h_values(game, ms, result.proportions)[0],
                         result.h_value)

    def test_uniform_barrier_example2(self):
        """Verify the uniform barrier of example 2."""
        result = uniform_barrier(example2(), strategy(0, 1), 3)
        self.assertEqual(result.epsilon, F(1, 3))
        self.assertEqual(result.total, 1)
        self.assertEqual(uniform_barrier(example2(), strategy(0, 1), 1).epsilon,
                         1)

    def test_uniform_barrier_requires_mess(self):
        """Verify uniform barriers need an M-ESS."""
        with self.assertRaises(NotMESSError):
            uniform_barrier(example1(), self.p1, 2)
        with self.assertRaises(ValidationError):
            uniform_barrier(example2(), strategy(0, 1), 0)

    def test_uniform_barrier_one_by_one(self):
        """Verify the uniform barrier of a one-strategy game."""
        result = uniform_barrier(SymmetricGame(((0,),)), strategy(1), 4)
        self.assertEqual(result.epsilon, F(1, 4))

    def test_box_barrier_matches_decision(self):
        """Verify box barriers exist exactly for M-ESS."""
        rng = random.Random(23)
        for _ in range(100):
            game = random_game(rng, 3)
            grid = simplex_grid(3, 2)
            for i in range(3):
                p = MixedStrategy.pure(3, i)
                mutants = [q for q in grid if q != p]
                kinds = {max_box_barrier(game, MutationSet(p, pair)).kind
                         for pair in combinations_with_replacement(mutants, 2)}
                if is_mess(game, p):
                    self.assertEqual(kinds, {BarrierResult.BARRIER})
                else:
                    self.assertIn(BarrierResult.NONE, kinds)

    def test_uniform_scaling(self):
        """Verify the uniform barrier against random mutants."""
        rng = random.Random(29)
        grid = simplex_grid(3, 4)
        games = 0
        while games < 100:
            game = random_game(rng, 3)
            robust = [MixedStrategy.pure(3, i) for i in range(3)
                      if is_mess(game, MixedStrategy.pure(3, i))]
            if not robust:
                continue
            games += 1
            p = robust[0]
            mutants = [q for q in grid if q != p]
            for m in (2, 3, 5):
                barrier = uniform_barrier(game, p, m)
                top = 9 if barrier.open else 10
                for _ in range(5):
                    ms = MutationSet(p, tuple(rng.choice(mutants)
                                              for _ in range(m)))
                    eps = tuple(barrier.epsilon * F(rng.randint(1, top), 10)
                                for _ in range(m))
                    self.assertTrue(check_robust_at(game, ms, eps),
                                    (game, p, ms, eps))

    def test_pairwise_barrier_scales_to_more_mutants(self):
        """Verify pairwise barriers divided by m protect m mutants."""
        rng = random.Random(31)
        checked = 0
        while checked < 30:
            game = random_game(rng, 3)
            k = rng.randrange(3)
            p = MixedStrategy.pure(3, k)
            if not is_mess(game, p):
                continue
            checked += 1
            family = [MixedStrategy.pure(3, j) for j in range(3) if j != k]
            pairs = [MutationSet(p, pair)
                     for pair in combinations_with_replacement(family, 2)]
            results = [max_box_barrier(game, ms) for ms in pairs]
            bar = min(r.epsilon / 2 if r.open else r.epsilon for r in results)
            for m in (3, 4, 5):
                for _ in range(5):
                    ms = MutationSet(p, tuple(rng.choice(family)
                                              for _ in range(m)))
                    eps = tuple(bar / m * F(rng.randint(1, 10), 10)
                                for _ in range(m))
                    self.assertTrue(check_robust_at(game, ms, eps))

    def test_barrier_monotone(self):
        """Verify robustness below a barrier and failure at a counterexample."""
        rng = random.Random(37)
        grid = simplex_grid(3, 3)
        for _ in range(100):
            game = random_game(rng, 3)
            p = rng.choice(grid)
            ms = MutationSet(p, tuple(rng.choice([q for q in grid if q != p])
                                      for _ in range(2)))
            result = max_box_barrier(game, ms)
            if not result:
                self.assertLessEqual(
                    h_values(game, ms, result.proportions)[
                        result.violated_index], 0)
                continue
            top = result.epsilon * F(99, 100) if result.open \
                else result.epsilon
            for scale in (1, F(1, 2), F(1, 10)):
                eps = top * scale
                self.assertTrue(check_robust_at(game, ms, (eps, eps)))
                self.assertTrue(check_robust_at(game, ms, (eps, eps / 3)))


class OracleTestCase(test.SimpleTestCase):
    """Test the brute-force searches."""

    def test_simplex_grid(self):
        """Verify grid order and size."""
        self.assertEqual(simplex_grid(2, 2), [
            strategy(0, 1), strategy('1/2', '1/2'), strategy(1, 0)])
        self.assertEqual(len(simplex_grid(3, 2)), 6)
        self.assertEqual(len(simplex_grid(4, 6)), 84)
        self.assertEqual(simplex_grid(1, 5), [strategy(1)])

    def test_grid_spec_validation(self):
        """Verify grid resolution invariants."""
        with self.assertRaises(ValidationError):
            GridSpec(0, (F(1, 10),), 2)
        with self.assertRaises(ValidationError):
            GridSpec(4, (0,), 2)
        with self.assertRaises(ValidationError):
            GridSpec(4, (F(1, 10),), 0)
        self.assertEqual(GridSpec(4, ('1/2', '1/10', '1/2'), 2).eps_list,
                         (F(1, 10), F(1, 2)))

    def test_example1_counterexample(self):
        """Verify the oracle finds the example 1 counterexample."""
        p = strategy('1/2', '1/2')
        ce = search_mess_counterexample(example1(), p,
                                        GridSpec(4, (F(1, 4),), 2))
        self.assertEqual(ce.mutants, (strategy('1/4', '3/4'),
                                      strategy('3/4', '1/4')))
        self.assertEqual(ce.proportions, (F(1, 4), F(1, 4)))
        self.assertEqual(ce.violated_index, 0)
        self.assertEqual(ce.h_value, 0)
        self.assertEqual(ce.replay(example1(), p), 0)

    def test_example2_no_counterexample(self):
        """Verify the oracle finds nothing against example 2."""
        spec = GridSpec(6, (F(1, 10), F(1, 5)), 2)
        self.assertIsNone(search_mess_counterexample(example2(),
                                                     strategy(0, 1), spec))

    def test_one_by_one(self):
        """Verify a game with a single pure strategy is handled."""
        spec = GridSpec(4, (F(1, 10),), 2)
        self.assertIsNone(search_mess_counterexample(
            SymmetricGame(((0,),)), strategy(1), spec))
        self.assertIsNone(search_local_dominance_violation(
            SymmetricGame(((0,),)), strategy(1), 1, 4))

    def test_local_dominance_search(self):
        """Verify the local dominance search."""
        self.assertIsNone(search_local_dominance_violation(
            example2(), strategy(0, 1), F(1, 2), 8))
        s, r = search_local_dominance_violation(
            example1(), strategy('1/2', '1/2'), F(1, 2), 8)
        p = strategy('1/2', '1/2')
        self.assertTrue(payoff(example1(), p, r) < payoff(example1(), s, r) or
                        payoff(example1(), p, r) <= payoff(example1(), r, r))

    @test.override_settings(ORACLE_BATCH_SIZE=3, EVOSTAB_THREADS=4)
    def test_parallel_batches_agree(self):
        """Verify threaded batches return the serial hit."""
        rng = random.Random(41)
        spec = GridSpec(3, (F(1, 100), F(1, 10)), 2)
        for _ in range(10):
            game = random_game(rng, 3)
            p = MixedStrategy.pure(3, rng.randrange(3))
            parallel = search_mess_counterexample(game, p, spec)
            with self.settings(EVOSTAB_THREADS=1, ORACLE_BATCH_SIZE=512):
                serial = search_mess_counterexample(game, p, spec)
            self.assertEqual(parallel, serial)

    def test_escalate(self):
        """Verify escalation stops at the first counterexample."""
        result = escalate(example1(), strategy('1/2', '1/2'))
        self.assertIsInstance(result, Certification)
        self.assertTrue(result.found)
        self.assertEqual(result.verdict, 'counterexample')
        result = escalate(example2(), strategy(0, 1), denominators=(2, 4),
                          radius=F(1, 2))
        self.assertFalse(result.found)
        self.assertEqual(len(result.resolutions), 4)
        self.assertTrue(result.verdict.startswith(
            'no counterexample at resolution'))

    def test_agreement_with_decision(self):
        """Verify the oracle agrees with the M-ESS decision."""
        rng = random.Random(43)
        for n in range(400):
            k = 3 if n < 300 else 4
            game = random_game(rng, k)
            for i in range(k):
                p = MixedStrategy.pure(k, i)
                if is_mess(game, p):
                    eps = below_uniform(game, p, 2)
                    spec = GridSpec(4 if k == 3 else 2, eps, 2)
                    self.assertIsNone(
                        search_mess_counterexample(game, p, spec), (game, p))
                else:
                    spec = GridSpec(2, (F(1, 1000), F(1, 100), F(1, 10)), 2)
                    ce = search_mess_counterexample(game, p, spec)
                    self.assertIsNotNone(ce, (game, p))
                    self.assertEqual(ce.replay(game, p), ce.h_value)

    def test_mutation_count_invariance(self):
        """Verify an M-ESS survives two and three mutants."""
        rng = random.Random(47)
        games = 0
        while games < 100:
            game = random_game(rng, 3)
            robust = [MixedStrategy.pure(3, i) for i in range(3)
                      if is_mess(game, MixedStrategy.pure(3, i))]
            if not robust:
                continue
            games += 1
            p = robust[0]
            self.assertIsNone(search_mess_counterexample(
                game, p, GridSpec(4, below_uniform(game, p, 2), 2)))
            self.assertIsNone(search_mess_counterexample(
                game, p, GridSpec(2, below_uniform(game, p, 3), 3)))

    def test_local_dominance_matches_decision(self):
        """Verify the neighbourhood search agrees with local dominance."""
        rng = random.Random(53)
        for _ in range(100):
            game = random_game(rng, 3, numerator=3, denominator=1)
            for i in range(3):
                p = MixedStrategy.pure(3, i)
                clean = any(
                    search_local_dominance_violation(game, p, radius, denom)
                    is None for radius, denom in NEIGHBOURHOODS)
                self.assertEqual(clean, bool(is_locally_dominant(game, p)),
                                 (game, p))

    def test_strict_local_dominance_matches_decision(self):
        """Verify the strict criterion against a neighbourhood search."""
        rng = random.Random(59)
        for _ in range(100):
            game = random_game(rng, 3, numerator=3, denominator=1)
            for i in range(3):
                p = MixedStrategy.pure(3, i)
                clean = any(not strict_breach(game, p, radius, denom)
                            for radius, denom in NEIGHBOURHOODS)
                self.assertEqual(
                    clean, bool(is_strictly_locally_dominant(game, p)),
                    (game, p))

    def test_padded_counterexample(self):
        """A two-mutant counterexample also shows up among three mutants."""
        p = strategy('1/2', '1/2')
        ce = search_mess_counterexample(example1(), p,
                                        GridSpec(4, (F(1, 4),), 3))
        self.assertIsNotNone(ce)
        self.assertEqual(ce.replay(example1(), p), ce.h_value)


class CommandTestCase(test.SimpleTestCase):
    """Test the management commands."""

    def setUp(self):
        tmp = TemporaryDirectory()
        self.addCleanup(tmp.cleanup)
        self.tmp = tmp.name

    def write_game(self, game, name='game.json'):
        path = os.path.join(self.tmp, name)
        with open(path, 'w', encoding='utf-8') as fp:
            json.dump(GameSerializer(game).data, fp)
        return path

    def run_json(self, *args):
        out = StringIO()
        call_command(*args, stdout=out)
        return json.loads(out.getvalue())

    def test_gen(self):
        """Verify the named example games."""
        self.assertEqual(self.run_json('gen', 'example1')['payoffs'],
                         [['-1', '0'], ['0', '-1']])
        self.assertEqual(self.run_json('gen', 'example2')['payoffs'],
                         [['-1', '0'], ['0', '0']])
        data = self.run_json('gen', 'hawk-dove', '2', '4')
        self.assertEqual(data['payoffs'], [['-1', '2'], ['0', '1']])
        self.assertEqual(data['labels'], ['Hawk', 'Dove'])
        self.assertEqual(self.run_json('gen', 'hawk-dove'), data)

    def test_gen_random_is_deterministic(self):
        """Verify random games depend only on the seed."""
        first = self.run_json('gen', 'random', '3', '7')
        self.assertEqual(first, self.run_json('gen', 'random', '3', '7'))
        self.assertEqual(first['k'], 3)
        for row in first['payoffs']:
            for x in row:
                self.assertIn(int(x), range(-3, 4))

    def test_gen_out(self):
        """Verify gen writes the game file."""
        path = os.path.join(self.tmp, 'hd.json')
        call_command('gen', 'hawk-dove', '2', '4', '--out', path,
                     stdout=StringIO())
        with open(path, encoding='utf-8') as fp:
            self.assertEqual(parse_game(fp.read()), hawk_dove())

    def test_gen_errors(self):
        """Verify gen rejects bad parameters."""
        with self.assertRaises(CommandError) as cm:
            call_command('gen', 'hawk-dove', '4', '2', stdout=StringIO())
        self.assertEqual(cm.exception.returncode, 2)
        with self.assertRaises(CommandError) as cm:
            call_command('gen', 'random', '3', stdout=StringIO())
        self.assertEqual(cm.exception.returncode, 2)

    def test_analyze_strategy(self):
        """Verify analyze on a given strategy."""
        path = self.write_game(example1())
        data = self.run_json('analyze', path, '--strategy', '[1/2,1/2]')
        flags = data['results'][0]['flags']
        self.assertTrue(flags['ess'])
        self.assertFalse(flags['mess'])
        self.assertEqual(data['results'][0]['strategy'], ['1/2', '1/2'])
        self.assertEqual(data['game']['k'], 2)
        self.assertEqual(data['game']['source'], path)
        self.assertEqual(data['version'], '1.0.0')

    def test_analyze_pure_sweep(self):
        """Verify analyze with barriers and certifications."""
        path = self.write_game(example2())
        data = self.run_json('analyze', path, '--pure-sweep', '--uniform', '3',
                             '--certify')
        first, second = data['results']
        self.assertFalse(any(first['flags'].values()))
        self.assertTrue(second['flags']['mess'])
        self.assertEqual(data['barriers'][0]['epsilon'], '1/3')
        self.assertEqual(len(data['certifications']), 2)
        self.assertIsNotNone(data['certifications'][0]['counterexample'])
        self.assertIsNone(data['certifications'][1]['counterexample'])

    def test_analyze_errors(self):
        """Verify analyze exit codes."""
        with self.assertRaises(CommandError) as cm:
            call_command('analyze', os.path.join(self.tmp, 'missing.json'),
                         stdout=StringIO())
        self.assertEqual(cm.exception.returncode, 2)
        path = self.write_game(example1())
        with self.assertRaises(CommandError) as cm:
            call_command('analyze', path, '--strategy', '[1/2,1/3]',
                         stdout=StringIO())
        self.assertEqual(cm.exception.returncode, 2)
        path = self.write_game(boundary_game(1, F(24, 25)), 'cone.json')
        with self.assertRaises(CommandError) as cm:
            call_command('analyze', path, '--strategy', '[1,0,0]',
                         stdout=StringIO())
        self.assertEqual(cm.exception.returncode, 3)

    def test_analyze_undecodable_file(self):
        """Verify a game file that is not UTF-8 exits with 2."""
        path = os.path.join(self.tmp, 'binary.json')
        with open(path, 'wb') as fp:
            fp.write(b'{"k": 1, "payoffs": [["\xff"]]}')
        with self.assertRaises(CommandError) as cm:
            call_command('analyze', path, stdout=StringIO())
        self.assertEqual(cm.exception.returncode, 2)
        self.assertIn('JSON parse error', str(cm.exception))

    def test_analyze_document_round_trip(self):
        """Verify the report reads back into equal objects."""
        path = self.write_game(example2())
        out = StringIO()
        call_command('analyze', path, '--uniform', '2', '--certify',
                     stdout=out)
        serializer = AnalysisDocumentSerializer(data=json.loads(out.getvalue()))
        self.assertTrue(serializer.is_valid(), serializer.errors)
        document = serializer.save()
        self.assertIsInstance(document, AnalysisDocument)
        self.assertEqual(document.results, tuple(pure_sweep(example2())))
        again = json.loads(json.dumps(AnalysisDocumentSerializer(document).data))
        self.assertEqual(again, json.loads(out.getvalue()))

    def test_barrier(self):
        """Verify barrier prints a counterexample."""
        path = self.write_game(example1())
        data = self.run_json('barrier', path, '[1/2,1/2]', '[1/4,3/4]',
                             '[3/4,1/4]')
        self.assertEqual(data['kind'], 'none')
        self.assertEqual(data['proportions'], ['1/2', '1/2'])
        self.assertEqual(data['h_value'], '0')

    def test_barrier_uniform(self):
        """Verify barrier --uniform and its exit codes."""
        path = self.write_game(example2())
        data = self.run_json('barrier', path, '[0,1]', '--uniform', '3')
        self.assertEqual(data['epsilon'], '1/3')
        self.assertEqual(data['total'], '1')
        path = self.write_game(example1(), 'e1.json')
        with self.assertRaises(CommandError) as cm:
            call_command('barrier', path, '[1/2,1/2]', '--uniform', '2',
                         stdout=StringIO())
        self.assertEqual(cm.exception.returncode, 4)
        with self.assertRaises(CommandError) as cm:
            call_command('barrier', path, '[1/2,1/2]', stdout=StringIO())
        self.assertEqual(cm.exception.returncode, 2)

    def test_certify_replays_through_barrier(self):
        """Verify a certify counterexample replays through barrier."""
        path = self.write_game(example1())
        data = self.run_json('certify', path, '[1/2,1/2]', '--denom', '4',
                             '--m', '2', '--eps', '1/4')
        ce = data['counterexample']
        self.assertEqual(ce['mutants'], [['1/4', '3/4'], ['3/4', '1/4']])
        mutants = ['[' + ','.join(m) + ']' for m in ce['mutants']]
        replay = self.run_json('barrier', path, '[1/2,1/2]', *mutants,
                               '--eps', ','.join(ce['proportions']))
        self.assertEqual(replay['h_values'][ce['violated_index']],
                         ce['h_value'])
        self.assertFalse(replay['robust'])

    def test_certify_no_counterexample(self):
        """Verify certify on an M-ESS."""
        path = self.write_game(example2())
        data = self.run_json('certify', path, '[0,1]', '--denom', '6',
                             '--m', '2', '--eps', '1/10,1/5', '--radius',
                             '1/2')
        self.assertIsNone(data['counterexample'])
        self.assertIsNone(data['local_violation'])
        self.assertTrue(data['verdict'].startswith(
            'no counterexample at resolution'))

    def test_certify_escalate_mixed(self):
        """Verify escalation refutes a mixed equilibrium."""
        rng = random.Random(53)
        p = strategy('1/3', '2/3', 0)
        game = make_nash(random_game(rng, 3), p)
        path = self.write_game(game)
        data = self.run_json('certify', path, '[1/3,2/3,0]', '--escalate')
        self.assertIsNotNone(data['counterexample'])
