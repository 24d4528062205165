"""
SPDX-License-Identifier: BSD-3-Clause

Search simplex grids for direct violations of the stability definitions.

Nothing here proves stability: absence of a counterexample only holds at the
resolution searched. The decision procedures in stability.py are checked
against these searches.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, islice, product
from logging import getLogger
from typing import Optional, Tuple

from django.conf import settings
from django.core.exceptions import ValidationError

from shared.util import compositions, format_rational
from .barriers import MutationSet, h_values
from .models import MixedStrategy, SymmetricGame, check_dimension, payoff
from .util import parallel_map, thread_count

logger = getLogger('evolution')


@dataclass(frozen=True)
class GridSpec:
    """One search resolution: grid denominator, proportions, mutant count."""

    denom: int
    eps_list: Tuple[Fraction, ...]
    m: int

    def __post_init__(self):
        """Normalise the proportions and check the resolution is usable."""
        eps = tuple(sorted(set(Fraction(e) for e in self.eps_list)))
        object.__setattr__(self, 'eps_list', eps)
        if self.denom < 1:
            raise ValidationError(f'denominator must be positive: {self.denom}')
        if self.m < 1:
            raise ValidationError(f'mutant count must be positive: {self.m}')
        if not eps or eps[0] <= 0:
            raise ValidationError('candidate proportions must be positive')

    def __str__(self):
        eps = ','.join(format_rational(e) for e in self.eps_list)
        return f'denom={self.denom} m={self.m} eps={{{eps}}}'


@dataclass(frozen=True)
class Counterexample:
    """Mutants and proportions at which one mutant does not lose to p."""

    mutants: Tuple[MixedStrategy, ...]
    proportions: Tuple[Fraction, ...]
    violated_index: int
    h_value: Fraction

    def replay(self, game: SymmetricGame, p):
        """Recompute the violated h-value through barriers.h_values."""
        ms = MutationSet(p, self.mutants)
        return h_values(game, ms, self.proportions)[self.violated_index]


@dataclass(frozen=True)
class Certification:
    """Summary of the oracle searches run for one strategy."""

    strategy: MixedStrategy
    resolutions: Tuple[GridSpec, ...] = ()
    counterexample: Optional[Counterexample] = None
    radius: Optional[Fraction] = None
    local_violation: Optional[Tuple[MixedStrategy, MixedStrategy]] = None

    @property
    def found(self):
        """Return whether any search produced a violation."""
        return self.counterexample is not None or \
            self.local_violation is not None

    @property
    def verdict(self):
        """Return a one-line description of the outcome."""
        if self.counterexample is not None:
            return 'counterexample'
        if self.local_violation is not None:
            return 'local dominance violation'
        searched = '; '.join(str(spec) for spec in self.resolutions)
        return f'no counterexample at resolution ({searched})'


def simplex_grid(k, denom):
    """Return every strategy with weights in {0, 1/denom, ..., 1}.

    There are C(denom + k - 1, k - 1) of them, in lexicographic order.
    """
    if k < 1 or denom < 1:
        raise ValidationError('simplex grid needs k >= 1 and denom >= 1')
    return [MixedStrategy(tuple(Fraction(c, denom) for c in comp))
            for comp in compositions(denom, k)]


def nearest_first(grid, p):
    """Sort grid points by L1 distance from p, ties lexicographically."""
    return sorted(grid, key=lambda q: (q.l1_distance(p), q.weights))


def search_mess_counterexample(game: SymmetricGame, p, spec: GridSpec):
    """Search for mutants and proportions violating robustness of p.

    Mutants are grid points other than p taken nearest-first, combined into
    multisets of size m, and each multiset is tried with every proportion
    vector drawn from ``spec.eps_list`` whose sum is at most 1. The first
    tuple where some h_i <= 0 is returned.
    """
    check_dimension(game, p)
    mutants = nearest_first([q for q in simplex_grid(game.k, spec.denom)
                             if q != p], p)
    if not mutants:
        return None
    proportions = [v for v in product(spec.eps_list, repeat=spec.m)
                   if sum(v) <= 1]
    points = mutants + [p]
    table = [[payoff(game, a, b) for b in points] for a in points]
    home = len(mutants)

    def search_batch(batch):
        for chosen in batch:
            for eps in proportions:
                rest = 1 - sum(eps)
                for pos, i in enumerate(chosen):
                    h = rest * (table[home][home] - table[i][home])
                    for e, j in zip(eps, chosen):
                        h += e * (table[home][j] - table[i][j])
                    if h <= 0:
                        return chosen, eps, pos, h
        return None

    tuples = combinations_with_replacement(range(len(mutants)), spec.m)
    batch_size = getattr(settings, 'ORACLE_BATCH_SIZE', 512)
    workers = thread_count()
    while True:
        wave = [list(islice(tuples, batch_size)) for _ in range(workers)]
        wave = [batch for batch in wave if batch]
        if not wave:
            return None
        for hit in parallel_map(search_batch, wave):
            if hit is not None:
                chosen, eps, pos, h = hit
                return Counterexample(
                    mutants=tuple(mutants[i] for i in chosen),
                    proportions=tuple(eps), violated_index=pos, h_value=h)


def search_local_dominance_violation(game: SymmetricGame, p, radius, denom):
    """Search the grid around p for a breach of local dominance.

    Returns the first (s, r) with s, r within L1 distance ``radius`` of p,
    both other than p, where u(p, r) < u(s, r) or u(p, r) <= u(r, r). A
    breach of the second kind is returned as (r, r).
    """
    check_dimension(game, p)
    radius = Fraction(radius)
    near = nearest_first([q for q in simplex_grid(game.k, denom)
                          if q != p and q.l1_distance(p) <= radius], p)
    for r in near:
        incumbent = payoff(game, p, r)
        if incumbent <= payoff(game, r, r):
            return r, r
        for s in near:
            if incumbent < payoff(game, s, r):
                return s, r
    return None


def _setting_eps():
    return tuple(Fraction(e) for e in getattr(
        settings, 'ORACLE_EPS', ('1/1000', '1/100', '1/10')))


def escalate(game: SymmetricGame, p, denominators=None, mutation_counts=None,
             eps_list=None, radius=None):
    """Search increasing resolutions until a counterexample turns up.

    The schedule defaults to the ORACLE_DENOMINATORS, ORACLE_MUTATION_COUNTS
    and ORACLE_EPS settings. With ``radius`` the local dominance search also
    runs at each denominator.
    """
    denominators = denominators or getattr(settings, 'ORACLE_DENOMINATORS',
                                           (2, 4, 6, 8))
    mutation_counts = mutation_counts or getattr(
        settings, 'ORACLE_MUTATION_COUNTS', (2, 3))
    eps_list = eps_list or _setting_eps()
    searched = []
    for denom in denominators:
        for m in mutation_counts:
            spec = GridSpec(denom, eps_list, m)
            logger.info(f'searching {p} at {spec}')
            searched.append(spec)
            found = search_mess_counterexample(game, p, spec)
            if found is not None:
                return Certification(p, tuple(searched), found, radius)
        if radius is not None:
            violation = search_local_dominance_violation(game, p, radius,
                                                         denom)
            if violation is not None:
                return Certification(p, tuple(searched), radius=radius,
                                     local_violation=violation)
    return Certification(p, tuple(searched), radius=radius)


def certify(game: SymmetricGame, p, spec: GridSpec, radius=None):
    """Run the oracle at a single resolution and summarise it."""
    logger.info(f'searching {p} at {spec}')
    found = search_mess_counterexample(game, p, spec)
    violation = None
    if radius is not None:
        violation = search_local_dominance_violation(game, p, radius,
                                                     spec.denom)
    return Certification(p, (spec,), found, radius, violation)
