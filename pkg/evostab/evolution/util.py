"""
SPDX-License-Identifier: BSD-3-Clause
"""
import functools
from concurrent.futures.thread import ThreadPoolExecutor
from logging import getLogger

from django.conf import settings

logger = getLogger('evolution')


def log_exception(fn):
    """A decorator that logs uncaught exceptions and re-raises them.

    Worker functions run in a thread pool lose their traceback once the
    exception crosses back to the caller, so it is logged where it happened.
    """
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except Exception:
            logger.exception(f'Exception in function {fn.__name__}!')
            raise
    return wrapper


def thread_count():
    """Return the worker cap from the EVOSTAB_THREADS setting."""
    return max(1, int(getattr(settings, 'EVOSTAB_THREADS', 1)))


def parallel_map(fn, items):
    """Apply ``fn`` to ``items`` on up to EVOSTAB_THREADS threads.

    Results come back in input order, so serial and parallel runs agree.
    """
    items = list(items)
    workers = min(thread_count(), len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(log_exception(fn), items))
