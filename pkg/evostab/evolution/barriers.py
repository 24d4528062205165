"""
SPDX-License-Identifier: BSD-3-Clause

Compute invasion barriers against simultaneous mutations.

For a mutation set p; r^1..r^m and proportions eps, the mutant r^i earns
h_i(eps) = u(p, w) - u(r^i, w) less than the incumbent in the population
w = sum_j eps_j r^j + (1 - sum_j eps_j) p. Each h_i is affine:

    h_i(eps) = B_i + sum_j eps_j (A_ij - B_i)

with B_i = u(p, p) - u(r^i, p) and A_ij = u(p, r^j) - u(r^i, r^j), so the
largest box (0, e]^m on which every h_i stays positive is found exactly.
"""

from dataclasses import dataclass
from fractions import Fraction
from logging import getLogger
from typing import Optional, Tuple

from django.core.exceptions import ValidationError

from .models import MixedStrategy, SymmetricGame, check_dimension, mixture, \
    payoff, payoff_vector
from .stability import NotMESSError, is_mess

logger = getLogger('evolution')


@dataclass(frozen=True)
class MutationSet:
    """An incumbent p facing the ordered mutants r^1..r^m."""

    incumbent: MixedStrategy
    mutants: Tuple[MixedStrategy, ...]

    def __post_init__(self):
        """Check there is at least one mutant and none equals p."""
        mutants = tuple(self.mutants)
        object.__setattr__(self, 'mutants', mutants)
        if not mutants:
            raise ValidationError('a mutation set needs at least one mutant')
        for i, mutant in enumerate(mutants):
            if len(mutant) != len(self.incumbent):
                raise ValidationError(
                    f'dimension mismatch: mutant {i} has {len(mutant)} '
                    f'weights, the incumbent {len(self.incumbent)}')
            if mutant == self.incumbent:
                raise ValidationError(f'mutant {i} equals the incumbent')

    @property
    def m(self):
        """Return the number of mutants."""
        return len(self.mutants)


@dataclass(frozen=True)
class BarrierResult:
    """Either a barrier epsilon or proportions at which some mutant holds on.

    A barrier is valid on (0, epsilon]^m, or on (0, epsilon)^m when ``open``
    is set. ``total`` is the bound on the summed mutant share that a
    uniform barrier guarantees. A ``none`` result carries proportions at
    which mutant ``violated_index`` has h-value ``h_value`` <= 0.
    """

    BARRIER = 'barrier'
    NONE = 'none'

    kind: str
    incumbent: Optional[MixedStrategy] = None
    mutants: Optional[Tuple[MixedStrategy, ...]] = None
    m: Optional[int] = None
    epsilon: Optional[Fraction] = None
    open: bool = False
    cap_applied: bool = False
    total: Optional[Fraction] = None
    proportions: Optional[Tuple[Fraction, ...]] = None
    violated_index: Optional[int] = None
    h_value: Optional[Fraction] = None

    def __bool__(self):
        return self.kind == self.BARRIER


def _check_proportions(ms, eps, positive=False):
    eps = tuple(Fraction(e) for e in eps)
    if len(eps) != ms.m:
        raise ValidationError(
            f'expected {ms.m} proportions, got {len(eps)}')
    for i, e in enumerate(eps):
        if e < 0 or (positive and e == 0):
            raise ValidationError(f'proportion {i} must be positive: {e}')
    if sum(eps) > 1:
        raise ValidationError(
            f'infeasible proportions: they sum to {sum(eps)} > 1')
    return eps


def h_values(game: SymmetricGame, ms: MutationSet, eps):
    """Return (h_1, ..., h_m) at proportions ``eps``, exactly."""
    check_dimension(game, ms.incumbent, *ms.mutants)
    eps = _check_proportions(ms, eps)
    population = mixture(ms.mutants + (ms.incumbent,), eps + (1 - sum(eps),))
    values = payoff_vector(game, population)

    def against(strategy):
        return sum((strategy[i] * values[i] for i in strategy.support),
                   Fraction(0))

    incumbent = against(ms.incumbent)
    return tuple(incumbent - against(r) for r in ms.mutants)


def check_robust_at(game: SymmetricGame, ms: MutationSet, eps):
    """Return whether every mutant earns strictly less than p at ``eps``."""
    _check_proportions(ms, eps, positive=True)
    return min(h_values(game, ms, eps)) > 0


def coefficients(game: SymmetricGame, ms: MutationSet):
    """Return (B, C) with h_i(eps) = B[i] + sum_j eps_j C[i][j]."""
    check_dimension(game, ms.incumbent, *ms.mutants)
    p = ms.incumbent
    base = payoff(game, p, p)
    b = [base - payoff(game, r, p) for r in ms.mutants]
    c = [[payoff(game, p, rj) - payoff(game, ri, rj) - b[i]
          for rj in ms.mutants] for i, ri in enumerate(ms.mutants)]
    return b, c


def _counterexample(game, ms, i, b, row):
    """Return proportions at which h_i <= 0 for a mutant with no barrier."""
    m = ms.m
    delta = Fraction(1, m)
    total = sum(row)
    if b + delta * total <= 0:
        eps = (delta,) * m
    elif b < 0:
        eps = (min(delta, -b / (2 * total)),) * m
    else:
        # b == 0 and some coefficient is negative
        negative = sum(min(0, x) for x in row)
        positive = sum(max(0, x) for x in row)
        tiny = min(delta, -delta * negative / (2 * positive))
        eps = tuple(tiny if x > 0 else delta for x in row)
    value = h_values(game, ms, eps)[i]
    return BarrierResult(kind=BarrierResult.NONE, incumbent=ms.incumbent,
                         mutants=ms.mutants, proportions=eps,
                         violated_index=i, h_value=value)


def _bounds(b, c):
    """Yield (i, bound, open) per mutant, bound None when unbounded.

    A bound of False marks a mutant that admits no positive barrier.
    """
    for i, row in enumerate(c):
        slope = sum(min(0, x) for x in row)
        rising = any(x > 0 for x in row)
        if b[i] < 0 or (b[i] == 0 and (slope < 0 or not rising)):
            yield i, False, False
        elif slope < 0:
            yield i, b[i] / -slope, not rising
        else:
            yield i, None, False


def _combine(bounds, cap, faces=False):
    epsilon, is_open = None, False
    for _, bound, bound_open in bounds:
        if bound is None:
            continue
        bound_open = bound_open or faces
        if epsilon is None or bound < epsilon:
            epsilon, is_open = bound, bound_open
        elif bound == epsilon:
            is_open = is_open or bound_open
    if epsilon is None or cap < epsilon or (cap == epsilon and not is_open):
        return cap, False, True
    return epsilon, is_open, False


def max_box_barrier(game: SymmetricGame, ms: MutationSet):
    """Return the largest box barrier for ``ms``, capped at 1/m.

    When some mutant admits no positive barrier, return a ``none`` result
    with proportions at which that mutant does at least as well as p.
    """
    b, c = coefficients(game, ms)
    bounds = list(_bounds(b, c))
    for i, bound, _ in bounds:
        if bound is False:
            logger.debug(f'no barrier: mutant {i} has B={b[i]}, C={c[i]}')
            return _counterexample(game, ms, i, b[i], c[i])
    epsilon, is_open, capped = _combine(bounds, Fraction(1, ms.m))
    return BarrierResult(kind=BarrierResult.BARRIER, incumbent=ms.incumbent,
                         mutants=ms.mutants, epsilon=epsilon, open=is_open,
                         cap_applied=capped)


def uniform_barrier(game: SymmetricGame, p, m):
    """Return a barrier valid for every tuple of ``m`` mutants against p.

    p must be M-ESS, hence some pure e^k. The box barrier e for the pure
    mutants {e^j : j != k} must hold on the faces of the box too, since a
    mixed mutant population only spreads its mass over some of the pure
    directions. Every tuple of m mutants with proportions at most e/m then
    loses to p; ``total`` reports e itself, the bound on their summed share.
    """
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise ValidationError(f'm must be a positive integer, got {m!r}')
    if not is_mess(game, p):
        raise NotMESSError('no uniform barrier guaranteed: p is not M-ESS')
    k = p.pure_index
    if game.k == 1:
        total, is_open, capped = Fraction(1), False, True
    else:
        ms = MutationSet(p, tuple(MixedStrategy.pure(game.k, j)
                                  for j in range(game.k) if j != k))
        b, c = coefficients(game, ms)
        total, is_open, capped = _combine(_bounds(b, c), Fraction(1, ms.m),
                                          faces=True)
    logger.debug(f'uniform barrier for {p}: total {total}, open {is_open}')
    return BarrierResult(kind=BarrierResult.BARRIER, incumbent=p, m=m,
                         epsilon=total / m,
                         open=is_open, cap_applied=capped, total=total)
