"""Iterative proportional fitting of a probability table to prescribed margins.

The fitted table has the form ``q_ij = a_i p_ij b_j``, so every odds ratio of
``P`` is preserved and zero cells stay zero.  Each sweep rescales rows first,
then columns.
"""
from dataclasses import dataclass

import numpy as np

from .errors import InvalidTargets, NonConvergence
from .tables import ProbTable, _frozen

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 10_000
_TARGET_SUM_TOL = 1e-12


@dataclass(frozen=True)
class MarginFitResult:
    q: ProbTable
    a: np.ndarray
    b: np.ndarray
    iterations: int
    max_margin_error: float


def uniform_targets(n_rows, n_cols):
    if n_rows < 2 or n_cols < 2:
        raise InvalidTargets("uniform targets need at least 2 rows and 2 columns")
    return np.full(n_rows, 1.0 / n_rows), np.full(n_cols, 1.0 / n_cols)


def _check_target(t, n, name):
    t = np.asarray(t, dtype=np.float64)
    if t.shape != (n,):
        raise InvalidTargets(f"{name} has shape {t.shape}, expected ({n},)")
    if not np.all(t > 0):
        raise InvalidTargets(f"{name} must be strictly positive")
    if abs(t.sum() - 1.0) > _TARGET_SUM_TOL:
        raise InvalidTargets(f"{name} sums to {t.sum():.15g}, not 1")
    return t


def _margin_error(q, target_r, target_c):
    return max(
        float(np.abs(q.sum(axis=1) - target_r).max()),
        float(np.abs(q.sum(axis=0) - target_c).max()),
    )


def ipf_fit(P, target_r, target_c, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """Rake ``P`` until both margins are within ``tol`` (max-abs) of the targets.

    Parameters
    ----------
    P : ProbTable
    target_r, target_c : array_like
        Positive target margins, each summing to one.
    tol : float
        Maximum absolute margin deviation accepted.
    max_iter : int
        Maximum number of row-then-column sweeps.

    Returns
    -------
    MarginFitResult

    Raises
    ------
    NonConvergence
        If the tolerance is not met after ``max_iter`` sweeps, which usually
        means the zero pattern of ``P`` makes the targets infeasible.
    """
    n_rows, n_cols = P.shape
    target_r = _check_target(target_r, n_rows, "target_r")
    target_c = _check_target(target_c, n_cols, "target_c")
    if not tol > 0:
        raise InvalidTargets("tol must be positive")
    if max_iter < 1:
        raise InvalidTargets("max_iter must be at least 1")

    p = np.array(P.p)
    a = np.ones(n_rows)
    b = np.ones(n_cols)
    error = np.inf
    for sweep in range(1, max_iter + 1):
        a *= target_r / (a * (p @ b))
        b *= target_c / (b * ((a @ p)))
        q = a[:, None] * p * b[None, :]
        # all residual global scale goes into a
        a /= q.sum()
        q = a[:, None] * p * b[None, :]
        error = _margin_error(q, target_r, target_c)
        if error <= tol:
            q /= q.sum()
            fitted = ProbTable(q, P.row_labels, P.col_labels)
            return MarginFitResult(fitted, _frozen(a), _frozen(b), sweep, error)
    raise NonConvergence(max_iter, error)
