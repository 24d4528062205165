"""
SPDX-License-Identifier: BSD-3-Clause

Model invasion scenarios and the trajectories simulated from them.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from django.core.exceptions import ValidationError

from evolution.models import MixedStrategy, SymmetricGame, check_dimension


@dataclass(frozen=True)
class InvasionScenario:
    """An incumbent s^0 = p invaded by the mutant strains s^1..s^m.

    ``initial_shares[a]`` is the population share of strategy s^a at t = 0.
    """

    game: SymmetricGame
    strategies: Tuple[MixedStrategy, ...]
    initial_shares: Tuple[float, ...]
    dt: float = 0.01
    t_end: float = 200.0
    stride: int = 10

    def __post_init__(self):
        """Validate the strategies, shares and time grid."""
        strategies = tuple(self.strategies)
        shares = tuple(float(x) for x in self.initial_shares)
        object.__setattr__(self, 'strategies', strategies)
        object.__setattr__(self, 'initial_shares', shares)
        if not strategies:
            raise ValidationError('a scenario needs an incumbent strategy')
        check_dimension(self.game, *strategies)
        for a, strategy in enumerate(strategies[1:], start=1):
            if strategy == strategies[0]:
                raise ValidationError(f'mutant {a} equals the incumbent')
        if len(shares) != len(strategies):
            raise ValidationError(
                f'expected {len(strategies)} initial shares, got {len(shares)}')
        if any(not math.isfinite(x) or x < 0 for x in shares):
            raise ValidationError('initial shares must be nonnegative')
        if abs(sum(shares) - 1) > 1e-9:
            raise ValidationError(
                f'initial shares sum to {sum(shares)}, expected 1')
        if shares[0] <= 0:
            raise ValidationError('the incumbent needs a positive share')
        if not self.dt > 0 or not self.t_end > 0:
            raise ValidationError('dt and t_end must be positive')
        if self.stride < 1:
            raise ValidationError('the output stride must be at least 1')

    @property
    def m(self):
        """Return the number of mutant strains."""
        return len(self.strategies) - 1


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Recorded times and shares of a simulation, with its outcome.

    ``shares[n, a]`` is the share of strategy s^a at ``times[n]``.
    """

    RESTORED = 'restored'
    INVADED = 'invaded'
    NEUTRAL_DRIFT = 'neutral_drift'
    UNDECIDED = 'undecided'
    OUTCOME_CHOICES = (RESTORED, INVADED, NEUTRAL_DRIFT, UNDECIDED)

    times: np.ndarray
    shares: np.ndarray
    outcome: str = UNDECIDED

    @property
    def incumbent_shares(self):
        """Return the incumbent share at every recorded time."""
        return self.shares[:, 0]

    @property
    def final_shares(self):
        """Return the shares at the end of the horizon."""
        return self.shares[-1]
