"""
SPDX-License-Identifier: BSD-3-Clause

Integrate replicator dynamics over the strategies of an invasion scenario.

The shares x follow x_a' = x_a ((M x)_a - x^T M x), where M is the payoff
matrix restricted to the scenario's strategies.
"""

import csv
from dataclasses import replace
from logging import getLogger

import numpy as np
from django.conf import settings

from evolution.models import SymmetricGame, check_dimension, payoff
from .models import Trajectory

logger = getLogger('dynamics')


class IntegrationDiverged(Exception):
    """The state left the finite reals."""

    def __init__(self, last_time):
        self.last_time = last_time
        super().__init__(f'integration diverged after t={last_time:g}')


def restricted_game(game: SymmetricGame, strategies):
    """Return M with M[a, b] = u(s^a, s^b), converted to floats once."""
    check_dimension(game, *strategies)
    return np.array([[float(payoff(game, a, b)) for b in strategies]
                     for a in strategies], dtype=float)


def _velocity(matrix, x):
    fitness = matrix @ x
    return x * (fitness - x @ fitness)


def _rk4_step(matrix, x, dt):
    k1 = _velocity(matrix, x)
    k2 = _velocity(matrix, x + dt / 2 * k1)
    k3 = _velocity(matrix, x + dt / 2 * k2)
    k4 = _velocity(matrix, x + dt * k3)
    return x + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def simulate(scenario, tol=None):
    """Integrate the scenario with fixed-step RK4 and classify the result.

    Shares are clipped at zero and renormalised after every step. The
    initial state, every ``stride``-th step and the final step are recorded.
    """
    matrix = restricted_game(scenario.game, scenario.strategies)
    x = np.array(scenario.initial_shares, dtype=float)
    steps = max(1, int(round(scenario.t_end / scenario.dt)))
    times, states = [0.0], [x.copy()]
    logger.debug(f'simulating {len(x)} strategies for {steps} steps')
    for n in range(1, steps + 1):
        with np.errstate(over='ignore', invalid='ignore'):
            x = _rk4_step(matrix, x, scenario.dt)
            total = x.sum()
        if not np.all(np.isfinite(x)) or not total > 0:
            last_time = (n - 1) * scenario.dt
            logger.warning(f'integration diverged after t={last_time:g}')
            raise IntegrationDiverged(last_time)
        x = np.clip(x, 0.0, None)
        x /= x.sum()
        if n % scenario.stride == 0 or n == steps:
            times.append(n * scenario.dt)
            states.append(x.copy())
    trajectory = Trajectory(np.array(times), np.array(states))
    return replace(trajectory, outcome=classify_outcome(trajectory, tol))


def classify_outcome(trajectory, tol=None):
    """Label the fate of the incumbent over the horizon.

    restored: the incumbent ends within tol of fixation, or it has gained at
    least tol and is still gaining over the last tenth of the horizon.
    invaded: it has lost at least tol and is still losing there.
    neutral_drift: no share ever moves by tol. Anything else is undecided.
    """
    if tol is None:
        tol = getattr(settings, 'DYNAMICS_TOL', 1e-4)
    incumbent = trajectory.incumbent_shares
    initial, final = incumbent[0], incumbent[-1]
    times = trajectory.times
    tail = incumbent[times >= times[-1] - (times[-1] - times[0]) / 10]
    rising = tail[-1] > tail[0]
    falling = tail[-1] < tail[0]
    if final >= 1 - tol or (final >= initial + tol and rising):
        return Trajectory.RESTORED
    if final <= initial - tol and falling:
        return Trajectory.INVADED
    if np.max(np.abs(trajectory.shares - trajectory.shares[0])) < tol:
        return Trajectory.NEUTRAL_DRIFT
    return Trajectory.UNDECIDED


def write_trajectory_csv(trajectory, fp):
    """Write the trajectory as CSV with a trailing outcome comment."""
    writer = csv.writer(fp, lineterminator='\n')
    m = trajectory.shares.shape[1] - 1
    writer.writerow(['t'] + [f'share_{a}' for a in range(m + 1)])
    for t, row in zip(trajectory.times, trajectory.shares):
        writer.writerow([f'{t:.12g}'] + [f'{x:.12g}' for x in row])
    fp.write(f'# outcome={trajectory.outcome}\n')
