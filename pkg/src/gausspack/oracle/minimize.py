"""Multi-start derivative-free minimization used by the energy checks.

The searches are deliberately agnostic: they pound on a black-box objective
from many random starting points with Nelder-Mead and report the best value
found, so an analytic lower bound can be tested without trusting any
gradient information derived from the same algebra.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize as _scipy_minimize

from ..constants import DEFAULT_SEED
from ..errors import InvalidParameterError

__all__ = ["MinimizeOutcome", "minimize_free", "worker_count"]

#: Environment variable capping the worker threads of parallel searches.
THREADS_ENV = "GAUSSPACK_THREADS"


def worker_count(n_tasks: int) -> int:
    """Number of threads to use for ``n_tasks`` independent searches.

    Honors the ``GAUSSPACK_THREADS`` environment variable as a cap, where
    unset or ``0`` means "pick automatically".
    """
    raw = os.environ.get(THREADS_ENV, "0").strip() or "0"
    try:
        cap = int(raw)
    except ValueError:
        raise InvalidParameterError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if cap < 0:
        raise InvalidParameterError(f"{THREADS_ENV} must be >= 0, got {cap}")
    if cap == 0:
        cap = min(8, os.cpu_count() or 1)
    return max(1, min(cap, n_tasks))


@dataclass(frozen=True)
class MinimizeOutcome:
    """Result of a multi-start search.

    ``start_values`` holds the best objective value reached from each start
    in start order, so callers can tell a sharp global minimum (many starts
    agree) from a lucky single hit.
    """

    best_value: float
    best_point: np.ndarray
    start_values: tuple[float, ...]
    n_evaluations: int

    @property
    def n_starts(self) -> int:
        return len(self.start_values)


def minimize_free(
    objective: Callable[[np.ndarray], float],
    sample_start: Callable[[np.random.Generator], np.ndarray],
    n_starts: int = 24,
    seed: int = DEFAULT_SEED,
    fatol: float = 1e-10,
    xatol: float = 1e-10,
    max_evaluations: int = 100_000,
) -> MinimizeOutcome:
    """Minimize a black-box objective from many random starting points.

    The objective may return ``inf`` outside its feasible region; starts are
    redrawn (up to a generous retry budget) until they are feasible.  The
    search runs the starts on a thread pool sized by :func:`worker_count`
    and reduces deterministically, so results do not depend on thread
    scheduling.
    """
    if n_starts < 1:
        raise InvalidParameterError(f"n_starts must be >= 1, got {n_starts}")
    rng = np.random.default_rng(seed)
    starts = []
    attempts = 0
    while len(starts) < n_starts:
        candidate = np.asarray(sample_start(rng), dtype=float)
        attempts += 1
        if np.isfinite(objective(candidate)):
            starts.append(candidate)
        if attempts > 200 * n_starts:
            raise InvalidParameterError(
                "could not draw enough feasible starting points; "
                "the sampler and the objective's feasible region disagree"
            )

    def run(start: np.ndarray):
        res = _scipy_minimize(
            objective,
            start,
            method="Nelder-Mead",
            options={
                "fatol": fatol,
                "xatol": xatol,
                "maxfev": max_evaluations,
                "adaptive": True,
            },
        )
        return float(res.fun), np.asarray(res.x), int(res.nfev)

    with ThreadPoolExecutor(max_workers=worker_count(n_starts)) as pool:
        results = list(pool.map(run, starts))

    values = tuple(r[0] for r in results)
    total_evals = sum(r[2] for r in results)
    best_idx = min(range(len(results)), key=lambda i: (results[i][0], i))
    return MinimizeOutcome(
        best_value=results[best_idx][0],
        best_point=results[best_idx][1],
        start_values=values,
        n_evaluations=total_evals,
    )
