"""
SPDX-License-Identifier: BSD-3-Clause

Model symmetric games, mixed strategies and their payoffs.

Every quantity here is an exact rational (``fractions.Fraction``). Games and
strategies are immutable once built, so they may be shared freely between
threads.
"""

from dataclasses import dataclass
from fractions import Fraction
from logging import getLogger
from typing import FrozenSet, Optional, Sequence, Tuple

from django.core.exceptions import ValidationError

from shared.util import format_vector

logger = getLogger('evolution')


def check_dimension(game, *strategies):
    """Raise ValidationError unless every strategy has length ``game.k``."""
    for strategy in strategies:
        if len(strategy) != game.k:
            raise ValidationError(
                f'dimension mismatch: strategy has {len(strategy)} weights '
                f'but the game has {game.k} pure strategies')


@dataclass(frozen=True)
class SymmetricGame:
    """Model a symmetric two-player game by its k x k payoff matrix.

    Entry ``payoffs[i][j]`` is u(e^i, e^j), the payoff to pure strategy i
    played against pure strategy j.
    """

    payoffs: Tuple[Tuple[Fraction, ...], ...]
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        """Freeze the matrix as tuples of Fractions and validate its shape."""
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.payoffs)
        object.__setattr__(self, 'payoffs', rows)
        k = len(rows)
        if k < 1:
            raise ValidationError('a game needs at least one pure strategy')
        for i, row in enumerate(rows):
            if len(row) != k:
                raise ValidationError(
                    f'payoff matrix is not square: row {i} has {len(row)} '
                    f'entries, expected {k}')
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != k:
                raise ValidationError(
                    f'expected {k} labels, got {len(labels)}')
            object.__setattr__(self, 'labels', labels)

    @property
    def k(self):
        """Return the number of pure strategies."""
        return len(self.payoffs)

    def entry(self, i, j):
        """Return u(e^i, e^j)."""
        return self.payoffs[i][j]

    def label(self, i):
        """Return the display label of pure strategy ``i``."""
        if self.labels:
            return self.labels[i]
        return f'e{i + 1}'

    def transformed(self, alpha, c=0):
        """Return the game with payoffs alpha * U + c.

        Best responses, and therefore every stability notion, are invariant
        under this map for alpha > 0.
        """
        alpha, c = Fraction(alpha), Fraction(c)
        if alpha <= 0:
            raise ValidationError('alpha must be positive')
        return SymmetricGame(
            tuple(tuple(alpha * x + c for x in row) for row in self.payoffs),
            self.labels)

    def permuted(self, perm):
        """Relabel pure strategy ``i`` as ``perm[i]``."""
        perm = _check_permutation(perm, self.k)
        rows = [[None] * self.k for _ in range(self.k)]
        for i in range(self.k):
            for j in range(self.k):
                rows[perm[i]][perm[j]] = self.payoffs[i][j]
        labels = None
        if self.labels:
            labels = [None] * self.k
            for i in range(self.k):
                labels[perm[i]] = self.labels[i]
        return SymmetricGame(tuple(tuple(row) for row in rows), labels)


@dataclass(frozen=True)
class MixedStrategy:
    """Model a point of the probability simplex over the pure strategies."""

    weights: Tuple[Fraction, ...]

    def __post_init__(self):
        """Freeze the weights as Fractions and check the simplex invariants."""
        weights = tuple(Fraction(x) for x in self.weights)
        object.__setattr__(self, 'weights', weights)
        if not weights:
            raise ValidationError('a strategy needs at least one weight')
        for i, w in enumerate(weights):
            if w < 0:
                raise ValidationError(f'weight {i} is negative: {w}')
        if sum(weights) != 1:
            raise ValidationError(
                f'weights sum to {sum(weights)}, expected exactly 1')

    @classmethod
    def pure(cls, k, i):
        """Return the pure strategy e^i among ``k`` pure strategies."""
        if not 0 <= i < k:
            raise ValidationError(f'pure strategy index {i} out of range')
        return cls(tuple(Fraction(int(j == i)) for j in range(k)))

    @classmethod
    def uniform(cls, k):
        """Return the strategy putting weight 1/k on every pure strategy."""
        return cls(tuple(Fraction(1, k) for _ in range(k)))

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __getitem__(self, i):
        return self.weights[i]

    def __str__(self):
        return format_vector(self.weights)

    @property
    def support(self) -> FrozenSet[int]:
        """Return the indices receiving positive weight."""
        return frozenset(i for i, w in enumerate(self.weights) if w > 0)

    @property
    def is_pure(self):
        """Return whether this is a vertex of the simplex."""
        return len(self.support) == 1

    @property
    def pure_index(self):
        """Return ``i`` when this strategy is e^i, else None."""
        if self.is_pure:
            return next(iter(self.support))
        return None

    def mix(self, other, alpha):
        """Return alpha * self + (1 - alpha) * other."""
        alpha = Fraction(alpha)
        if not 0 <= alpha <= 1:
            raise ValidationError(f'mixing weight {alpha} outside [0, 1]')
        if len(other) != len(self):
            raise ValidationError('dimension mismatch between strategies')
        return MixedStrategy(tuple(alpha * a + (1 - alpha) * b
                                   for a, b in zip(self.weights, other)))

    def l1_distance(self, other):
        """Return the L1 distance to ``other``."""
        return sum(abs(a - b) for a, b in zip(self.weights, other))

    def permuted(self, perm):
        """Move the weight of pure strategy ``i`` to ``perm[i]``."""
        perm = _check_permutation(perm, len(self))
        weights = [None] * len(self)
        for i, w in enumerate(self.weights):
            weights[perm[i]] = w
        return MixedStrategy(tuple(weights))


def _check_permutation(perm, k):
    perm = tuple(perm)
    if sorted(perm) != list(range(k)):
        raise ValidationError(f'{perm} is not a permutation of 0..{k - 1}')
    return perm


def mixture(strategies: Sequence[MixedStrategy], proportions: Sequence[Fraction]):
    """Return the population state sum_i proportions[i] * strategies[i].

    The proportions must be nonnegative and sum to exactly 1.
    """
    if len(strategies) != len(proportions):
        raise ValidationError('one proportion is needed per strategy')
    k = len(strategies[0])
    weights = [Fraction(0)] * k
    for strategy, share in zip(strategies, proportions):
        if len(strategy) != k:
            raise ValidationError('dimension mismatch between strategies')
        for i, w in enumerate(strategy):
            weights[i] += share * w
    return MixedStrategy(tuple(weights))


def payoff(game: SymmetricGame, p, q):
    """Return u(p, q) = sum_{i,j} p_i q_j U_ij exactly."""
    check_dimension(game, p, q)
    values = payoff_vector(game, q)
    return sum((p[i] * values[i] for i in range(game.k) if p[i]), Fraction(0))


def payoff_vector(game: SymmetricGame, q):
    """Return the vector (u(e^i, q))_i of pure-strategy payoffs against q."""
    check_dimension(game, q)
    support = [j for j in range(game.k) if q[j]]
    return tuple(sum((row[j] * q[j] for j in support), Fraction(0))
                 for row in game.payoffs)


def best_response_set(game: SymmetricGame, p) -> FrozenSet[int]:
    """Return J = argmax_j u(e^j, p).

    BR(p) is the face of the simplex spanned by {e^j : j in J}, since u is
    affine in its first argument.
    """
    values = payoff_vector(game, p)
    best = max(values)
    return frozenset(j for j, v in enumerate(values) if v == best)


def is_nash(game: SymmetricGame, p):
    """Return whether p is a best response to itself."""
    return p.support <= best_response_set(game, p)


def is_strict_nash(game: SymmetricGame, p):
    """Return whether p is pure and the unique best response to itself."""
    if not p.is_pure:
        check_dimension(game, p)
        return False
    return best_response_set(game, p) == p.support


@dataclass(frozen=True)
class AnalysisDocument:
    """Everything one command run reports about a game.

    ``results`` holds StabilityReports, ``barriers`` BarrierResults and
    ``certifications`` oracle Certifications.
    """

    k: int
    labels: Optional[Tuple[str, ...]] = None
    source: Optional[str] = None
    results: Tuple = ()
    barriers: Tuple = ()
    certifications: Tuple = ()
    version: str = ''
