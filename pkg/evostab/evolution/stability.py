"""
SPDX-License-Identifier: BSD-3-Clause

Decide evolutionary stability of a strategy in a symmetric game.

Every decision reduces to finitely many exact comparisons, except ESS on a
best-response face that is a boundary cone around p. That case is settled on
a certified grid and may come back indeterminate.
"""

from dataclasses import dataclass, replace
from fractions import Fraction
from logging import getLogger
from typing import Optional

from django.conf import settings
from django.core.exceptions import ValidationError

from shared.util import compositions, format_rational
from .models import MixedStrategy, SymmetricGame, best_response_set, \
    check_dimension, payoff, payoff_vector
from .util import parallel_map

logger = getLogger('evolution')

FLAGS = ('nash', 'strict_nash', 'ess', 'mess', 'locally_dominant',
         'strictly_locally_dominant')


class IndeterminateError(Exception):
    """The certified grid could neither prove nor refute ESS."""

    def __init__(self, denom, minimum, bound):
        self.denom = denom
        self.minimum = minimum
        self.bound = bound
        super().__init__(
            f'resolution exhausted at denominator {denom}: grid minimum '
            f'{format_rational(minimum)} does not exceed the certification '
            f'bound {format_rational(bound)}')


class NotMESSError(ValidationError):
    """A procedure needing an M-ESS was handed something else."""

    def __init__(self, message='p is not M-ESS'):
        super().__init__(message)


@dataclass(frozen=True)
class Witness:
    """Explain why a stability flag is false.

    ``index`` and ``other`` are pure strategy indices, ``strategy`` and
    ``opponent`` are mixed strategies, and ``value`` is the offending payoff
    margin. Which of them are set depends on ``kind``.
    """

    flag: str
    kind: str
    index: Optional[int] = None
    other: Optional[int] = None
    strategy: Optional[MixedStrategy] = None
    opponent: Optional[MixedStrategy] = None
    value: Optional[Fraction] = None


@dataclass(frozen=True)
class Decision:
    """A verdict with the witness explaining it when it is negative."""

    holds: bool
    witness: Optional[Witness] = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class StabilityReport:
    """Collect the six stability flags of one strategy."""

    strategy: MixedStrategy
    nash: bool
    strict_nash: bool
    ess: bool
    mess: bool
    locally_dominant: bool
    strictly_locally_dominant: bool
    witness: Optional[Witness] = None

    @property
    def flags(self):
        """Return the flags as an ordered dictionary."""
        return {flag: getattr(self, flag) for flag in FLAGS}


def _holds():
    return Decision(True)


def _fails(**kwargs):
    return Decision(False, Witness(**kwargs))


def nash_decision(game: SymmetricGame, p):
    """Decide whether p is a Nash equilibrium, naming a better pure reply."""
    check_dimension(game, p)
    values = payoff_vector(game, p)
    current = sum((p[i] * values[i] for i in p.support), Fraction(0))
    best = max(values)
    if best == current:
        return _holds()
    j = values.index(best)
    return _fails(flag='nash', kind='better_reply', index=j,
                  value=best - current)


def strict_nash_decision(game: SymmetricGame, p):
    """Decide whether p is a strict Nash equilibrium."""
    check_dimension(game, p)
    if not p.is_pure:
        return _fails(flag='strict_nash', kind='not_pure')
    k = p.pure_index
    others = sorted(best_response_set(game, p) - {k})
    if not others:
        return _holds()
    j = others[0]
    return _fails(flag='strict_nash', kind='alternative_best_reply', index=j,
                  value=game.entry(j, k) - game.entry(k, k))


def _mess_violation(game, p, br):
    """Return the first violated vertex condition of M-ESS, or None."""
    k = game.k
    for j in sorted(br):
        if p.pure_index == j:
            continue
        pure_j = MixedStrategy.pure(k, j)
        for l in range(k):
            margin = (sum((p[i] * game.entry(i, l) for i in p.support), Fraction(0))
                      - game.entry(j, l))
            if margin < 0:
                return Witness(flag='mess', kind='vertex_dominance', index=j,
                               other=l, value=margin)
        margin = payoff(game, p, pure_j) - game.entry(j, j)
        if margin <= 0:
            return Witness(flag='mess', kind='diagonal_tie', index=j,
                           value=margin)
    return None


def is_mess(game: SymmetricGame, p):
    """Decide stability against multiple simultaneous mutations.

    With J the pure best replies to p, this holds iff p is Nash and, for
    every j in J with e^j != p, u(p, e^l) >= u(e^j, e^l) for every pure l and
    u(p, e^j) > u(e^j, e^j). A strategy with two or more pure strategies in
    its support always fails the second condition.
    """
    nash = nash_decision(game, p)
    if not nash:
        return Decision(False, replace(nash.witness, flag='mess'))
    witness = _mess_violation(game, p, best_response_set(game, p))
    if witness is not None:
        return Decision(False, witness)
    return _holds()


def is_locally_dominant(game: SymmetricGame, p):
    """Decide local dominance, which coincides with is_mess."""
    decision = is_mess(game, p)
    if decision:
        return decision
    return Decision(False, replace(decision.witness, flag='locally_dominant'))


def is_strictly_locally_dominant(game: SymmetricGame, p):
    """Decide strict local dominance.

    p must be a pure strategy e^k, and every other pure j must either do
    strictly worse against e^k or tie there and do strictly worse than e^k
    against every other pure strategy.
    """
    check_dimension(game, p)
    if not p.is_pure:
        return _fails(flag='strictly_locally_dominant', kind='not_pure')
    k = p.pure_index
    for j in range(game.k):
        if j == k:
            continue
        margin = game.entry(k, k) - game.entry(j, k)
        if margin > 0:
            continue
        if margin < 0:
            return _fails(flag='strictly_locally_dominant',
                          kind='better_reply', index=j, value=margin)
        for l in range(game.k):
            if l == k:
                continue
            margin = game.entry(k, l) - game.entry(j, l)
            if margin <= 0:
                return _fails(flag='strictly_locally_dominant',
                              kind='weak_dominance', index=j, other=l,
                              value=margin)
    return _holds()


def _ess_margin(game, p, q):
    return payoff(game, p, q) - payoff(game, q, q)


def _symmetric_part(game, indices):
    return {(a, b): (game.entry(a, b) + game.entry(b, a)) / 2
            for a in indices for b in indices}


def _first_nonpositive_pivot(matrix):
    """Run an exact LDL^T elimination on ``matrix``.

    Return (t, lower) where t is the index of the first pivot that is not
    strictly positive, or None when the matrix is positive definite.
    """
    n = len(matrix)
    work = [list(row) for row in matrix]
    lower = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for t in range(n):
        pivot = work[t][t]
        if pivot <= 0:
            return t, lower
        for i in range(t + 1, n):
            factor = work[i][t] / pivot
            lower[i][t] = factor
            for j in range(t, n):
                work[i][j] -= factor * work[t][j]
    return None, lower


def _ess_on_segment(game, p, br):
    a, b = sorted(br)
    curvature = (game.entry(b, b) - game.entry(b, a)
                 - game.entry(a, b) + game.entry(a, a))
    logger.debug(f'ESS segment test on {a},{b}: curvature {curvature}')
    if curvature < 0:
        return _holds()
    vertex = b if p.pure_index == a else a
    q = MixedStrategy.pure(game.k, vertex)
    return _fails(flag='ess', kind='invading_strategy', strategy=q,
                  value=_ess_margin(game, p, q))


def _ess_on_subspace(game, p, br):
    """Test negative definiteness of the payoff form on the face directions."""
    indices = sorted(br)
    base, rest = indices[0], indices[1:]
    sym = _symmetric_part(game, indices)
    n = len(rest)
    # Q_st = (e^s - e^base)^T S (e^t - e^base); test -Q for positive definiteness
    form = [[-(sym[s, t] - sym[s, base] - sym[base, t] + sym[base, base])
             for t in rest] for s in rest]
    failed, lower = _first_nonpositive_pivot(form)
    logger.debug(f'ESS subspace test on {indices}: failed pivot {failed}')
    if failed is None:
        return _holds()
    coeffs = [Fraction(0)] * n
    coeffs[failed] = Fraction(1)
    for s in range(failed - 1, -1, -1):
        coeffs[s] = -sum((lower[r][s] * coeffs[r]
                          for r in range(s + 1, failed + 1)), Fraction(0))
    direction = [Fraction(0)] * game.k
    for s, c in zip(rest, coeffs):
        direction[s] += c
        direction[base] -= c
    step = min(p[i] / -direction[i] for i in range(game.k) if direction[i] < 0)
    q = MixedStrategy(tuple(p[i] + step * direction[i] for i in range(game.k)))
    return _fails(flag='ess', kind='invading_strategy', strategy=q,
                  value=_ess_margin(game, p, q))


def _facet_points(k, br, removed, denom):
    coords = sorted(br - {removed})
    for comp in compositions(denom, len(coords)):
        weights = [Fraction(0)] * k
        for i, c in zip(coords, comp):
            weights[i] = Fraction(c, denom)
        yield tuple(weights)


def _ess_on_grid(game, p, br):
    """Certify or refute ESS on a boundary cone with a grid of its facets.

    Every ray leaving p inside the face crosses a facet where some
    coordinate in the support of p drops to zero, and the margin is
    quadratic along the ray, so its sign on those facets decides ESS.
    """
    indices = sorted(br)
    sym = _symmetric_part(game, indices)
    # Lipschitz constant for zero-sum directions after centring S
    spread = (max(sym.values()) - min(sym.values())) / 2
    denominators = getattr(settings, 'ESS_GRID_DENOMINATORS',
                           (2, 4, 8, 16, 32, 64))
    minimum = bound = None
    for denom in denominators:
        mesh = Fraction(len(indices) - 1, denom)
        bound = 4 * spread * mesh
        minimum = None
        for removed in sorted(p.support):
            for weights in _facet_points(game.k, br, removed, denom):
                delta = [weights[i] - p[i] for i in range(game.k)]
                value = -sum((delta[a] * game.entry(a, b) * delta[b]
                              for a in indices for b in indices), Fraction(0))
                if value <= 0:
                    q = MixedStrategy(weights)
                    logger.debug(f'ESS refuted on the grid at denominator '
                                 f'{denom} by {q}')
                    return _fails(flag='ess', kind='invading_strategy',
                                  strategy=q, value=_ess_margin(game, p, q))
                if minimum is None or value < minimum:
                    minimum = value
        logger.debug(f'ESS grid at denominator {denom}: minimum {minimum}, '
                     f'bound {bound}')
        if minimum > bound:
            return _holds()
    raise IndeterminateError(denominators[-1], minimum, bound)


def is_ess(game: SymmetricGame, p):
    """Decide whether p is an evolutionarily stable strategy.

    p must be Nash and satisfy u(p, q) > u(q, q) for every q != p in the
    best-response face. Faces of one or two pure strategies and faces equal
    to the support of p are decided exactly. Any other face is decided on a
    certified grid, which raises IndeterminateError when it runs out of
    resolution.
    """
    nash = nash_decision(game, p)
    if not nash:
        return Decision(False, replace(nash.witness, flag='ess'))
    br = best_response_set(game, p)
    if len(br) == 1:
        return _holds()
    if p.is_pure and _mess_violation(game, p, br) is None:
        return _holds()
    if len(br) == 2:
        return _ess_on_segment(game, p, br)
    if p.support == br:
        return _ess_on_subspace(game, p, br)
    return _ess_on_grid(game, p, br)


def check_disjoint_support_strictness(game: SymmetricGame, p, radius, denom):
    """Check u(p, r) > u(s, r) on a grid around an M-ESS p.

    r ranges over grid points other than p within L1 distance ``radius`` of
    p, and s over every grid strategy whose support misses the support of p.
    """
    from .oracle import simplex_grid

    if not is_mess(game, p):
        raise NotMESSError()
    radius = Fraction(radius)
    grid = simplex_grid(game.k, denom)
    near = [r for r in grid if r != p and r.l1_distance(p) <= radius]
    disjoint = [s for s in grid if not s.support & p.support]
    for r in near:
        incumbent = payoff(game, p, r)
        values = payoff_vector(game, r)
        for s in disjoint:
            margin = incumbent - sum((s[i] * values[i] for i in s.support),
                                     Fraction(0))
            if margin <= 0:
                return _fails(flag='disjoint_support', kind='disjoint_support',
                              strategy=s, opponent=r, value=margin)
    return _holds()


def _check_implications(report):
    assert not report.strict_nash or report.strictly_locally_dominant, report
    assert not report.strictly_locally_dominant or report.locally_dominant, report
    assert report.mess == report.locally_dominant, report
    assert not report.mess or report.ess, report
    assert not report.ess or report.nash, report


def analyze(game: SymmetricGame, p):
    """Run every decision procedure on p and collect a StabilityReport.

    The witness explains the first false flag. IndeterminateError from the
    ESS grid propagates to the caller.
    """
    check_dimension(game, p)
    decisions = {
        'nash': nash_decision(game, p),
        'strict_nash': strict_nash_decision(game, p),
        'ess': is_ess(game, p),
        'mess': is_mess(game, p),
        'locally_dominant': is_locally_dominant(game, p),
        'strictly_locally_dominant': is_strictly_locally_dominant(game, p),
    }
    witness = next((d.witness for d in decisions.values() if not d), None)
    report = StabilityReport(
        strategy=p, witness=witness,
        **{flag: decision.holds for flag, decision in decisions.items()})
    _check_implications(report)
    logger.debug(f'{p}: {report.flags}')
    return report


def pure_sweep(game: SymmetricGame):
    """Analyze every pure strategy; M-ESS candidates are exactly these."""
    strategies = [MixedStrategy.pure(game.k, i) for i in range(game.k)]
    return parallel_map(lambda p: analyze(game, p), strategies)
