"""Bilinear factorization ``x_ij = sum_a f_a(i) g_a(j) / delta_a``.

Two engines are provided.

``weighted_svd``
    Ordinary singular value decomposition under the metrics ``(mI, mJ)``:
    ``sum_i f_a(i)^2 mI_i = delta_a^2`` and the axes are ``mI``-orthogonal.

``taxicab_svd``
    The L1 (taxicab) analogue.  Each axis maximizes
    ``D(u) = sum_i mI_i |sum_j x_ij mJ_j u_j|`` over sign vectors ``u``; the
    matrix is then deflated and the next axis extracted from the residual.

Signs are canonical: every axis is flipped so that its largest column
coordinate (in absolute value, first index on ties) is positive.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DimensionTooLarge, TableError
from .interactions import InteractionMatrix

RANK_TOL = 1e-12
EXHAUSTIVE_MAX_DIM = 25
_CHUNK = 1 << 16
_TIE_RTOL = 1e-12


@dataclass(frozen=True)
class Axis:
    delta: float
    f: np.ndarray
    g: np.ndarray


@dataclass(frozen=True)
class Decomposition:
    engine: str
    axes: tuple
    mI: np.ndarray
    mJ: np.ndarray
    residual: np.ndarray

    @property
    def deltas(self):
        return np.array([ax.delta for ax in self.axes])

    @property
    def row_coords(self):
        """I x k matrix whose columns are ``f_1 .. f_k``."""
        return _stack([ax.f for ax in self.axes], self.mI.size)

    @property
    def col_coords(self):
        return _stack([ax.g for ax in self.axes], self.mJ.size)

    def __len__(self):
        return len(self.axes)


def _stack(vectors, n):
    if not vectors:
        return np.zeros((n, 0))
    return np.column_stack(vectors)


def _readonly(a):
    a = np.array(a, dtype=np.float64)
    a.setflags(write=False)
    return a


def _orient(f, g):
    k = int(np.argmax(np.abs(g)))
    if g[k] < 0:
        return -f, -g
    return f, g


def _check_k(k, shape):
    limit = min(shape)
    if k is None:
        return limit
    if k < 0 or k > limit:
        raise TableError(f"cannot extract {k} axes from a {shape[0]}x{shape[1]} matrix")
    return int(k)


def reconstruct(d, upto=None):
    """Partial sum of the first ``upto`` bilinear terms."""
    upto = len(d.axes) if upto is None else upto
    if upto < 0 or upto > len(d.axes):
        raise TableError(f"decomposition has {len(d.axes)} axes, asked for {upto}")
    out = np.zeros((d.mI.size, d.mJ.size))
    for ax in d.axes[:upto]:
        out += np.outer(ax.f, ax.g) / ax.delta
    return out


def weighted_svd(X, k=None):
    """SVD of an interaction matrix under its own metrics.

    The singular triples of ``sqrt(mI) X sqrt(mJ)`` are mapped back to
    principal coordinates ``f = delta u / sqrt(mI)``, ``g = delta v / sqrt(mJ)``.
    Axes with ``delta < 1e-12`` are dropped.
    """
    k = _check_k(k, X.shape)
    sI = np.sqrt(X.mI)
    sJ = np.sqrt(X.mJ)
    U, s, Vt = np.linalg.svd(sI[:, None] * X.x * sJ[None, :], full_matrices=False)
    axes = []
    for a in range(min(k, s.size)):
        delta = float(s[a])
        if delta < RANK_TOL:
            break
        f, g = _orient(delta * U[:, a] / sI, delta * Vt[a] / sJ)
        axes.append(Axis(delta, _readonly(f), _readonly(g)))
    return _finish("svd", X, axes)


def _finish(engine, X, axes):
    d = Decomposition(engine, tuple(axes), X.mI, X.mJ, None)
    residual = _readonly(X.x - reconstruct(d))
    return Decomposition(engine, tuple(axes), X.mI, X.mJ, residual)


# -- taxicab ---------------------------------------------------------------


def taxicab_objective(x, mI, mJ, u):
    """``D(u) = sum_i mI_i |sum_j x_ij mJ_j u_j|``."""
    return float(mI @ np.abs(x @ (mJ * u)))


def _sign(a):
    # zeros map to +1 so that every coordinate carries a definite sign
    return np.where(a < 0, -1.0, 1.0)


def sign_vectors(n, start=0, stop=None):
    """Rows ``start..stop`` of the lexicographic list of sign vectors with ``u_1 = +1``.

    Order is lexicographic with ``-1 < +1``; row ``m`` encodes the bits of ``m``
    over coordinates 2..n, most significant first.
    """
    total = 1 << (n - 1)
    stop = total if stop is None else min(stop, total)
    m = np.arange(start, stop, dtype=np.int64)
    shifts = np.arange(n - 2, -1, -1, dtype=np.int64)
    bits = (m[:, None] >> shifts[None, :]) & 1
    out = np.empty((m.size, n))
    out[:, 0] = 1.0
    out[:, 1:] = 2.0 * bits - 1.0
    return out


def exhaustive_search(x, mI, mJ):
    """Global maximizer of ``D(u)`` over all ``2**(J-1)`` canonical sign vectors.

    Ties are broken towards the lexicographically smallest vector.
    """
    n = x.shape[1]
    if n > EXHAUSTIVE_MAX_DIM:
        raise DimensionTooLarge(
            f"exhaustive search over 2^{n} sign vectors exceeds the bound "
            f"min(I, J) <= {EXHAUSTIVE_MAX_DIM}; use the iterative strategy"
        )
    xm = x * mJ[None, :]
    total = 1 << (n - 1)
    scores = np.empty(total)
    for start in range(0, total, _CHUNK):
        block = sign_vectors(n, start, start + _CHUNK)
        scores[start:start + block.shape[0]] = mI @ np.abs(xm @ block.T)
    best = scores.max()
    m = int(np.flatnonzero(scores >= best - _TIE_RTOL * max(best, 1.0))[0])
    return sign_vectors(n, m, m + 1)[0]


def _ascend(x, mI, mJ, u):
    """Alternating sign updates from ``u``.

    Returns ``(u, D(u), trace)`` where ``trace`` lists ``D`` after every
    alternation, starting with the value at ``u``.
    """
    xm = x * mJ[None, :]
    best = taxicab_objective(x, mI, mJ, u)
    trace = [best]
    while True:
        v = _sign(xm @ u)
        u_new = _sign((mI * v) @ x)
        value = taxicab_objective(x, mI, mJ, u_new)
        trace.append(value)
        if value > best * (1.0 + _TIE_RTOL) + 1e-300:
            u, best = u_new, value
            continue
        if value >= best:
            u = u_new
        return u, best, trace


def iterative_ascent(x, mI, mJ, starts=16, seed=0):
    """Local maximizer of ``D(u)`` by alternating sign updates.

    Runs from the all-ones vector plus ``starts`` random sign vectors drawn
    with ``numpy.random.default_rng(seed)`` and keeps the best result.
    The returned vector is canonicalized to ``u_1 = +1``.
    """
    if starts < 1:
        raise ValueError("starts must be at least 1")
    x = np.asarray(x, dtype=np.float64)
    mI = np.asarray(mI, dtype=np.float64)
    mJ = np.asarray(mJ, dtype=np.float64)
    rng = np.random.default_rng(seed)
    n = x.shape[1]
    candidates = [np.ones(n)] + [rng.choice([-1.0, 1.0], size=n) for _ in range(starts)]
    best_u, best = None, -np.inf
    for u0 in candidates:
        u, value, _ = _ascend(x, mI, mJ, np.array(u0))
        if value > best * (1.0 + _TIE_RTOL) or best_u is None:
            best_u, best = u, value
    return best_u * best_u[0]


def taxicab_svd(X, k=None, strategy="exhaustive", starts=16, seed=0):
    """Taxicab SVD by successive sign-vector maximization and deflation.

    Parameters
    ----------
    X : InteractionMatrix
    k : int, optional
        Maximum number of axes; defaults to ``min(I, J)``.  Extraction stops
        early once ``delta`` drops below 1e-12.
    strategy : {"exhaustive", "iterative"}
        ``"exhaustive"`` enumerates all sign vectors over the smaller
        dimension (at most 25); ``"iterative"`` uses :func:`iterative_ascent`.
    starts, seed : int
        Random restarts and seed for the iterative strategy.
    """
    if strategy not in ("exhaustive", "iterative"):
        raise ValueError(f"unknown TSVD strategy {strategy!r}")
    k = _check_k(k, X.shape)
    n_rows, n_cols = X.shape
    if strategy == "exhaustive" and min(n_rows, n_cols) > EXHAUSTIVE_MAX_DIM:
        raise DimensionTooLarge(
            f"exhaustive TSVD needs min(I, J) <= {EXHAUSTIVE_MAX_DIM}, got {min(n_rows, n_cols)}"
        )
    # enumerate over the smaller dimension: run on the transpose, swap f and g back
    flip = n_rows < n_cols
    work = X.transpose() if flip else X
    x = np.array(work.x)
    mI, mJ = work.mI, work.mJ

    axes = []
    for _ in range(k):
        if strategy == "exhaustive":
            u = exhaustive_search(x, mI, mJ)
        else:
            u = iterative_ascent(x, mI, mJ, starts=starts, seed=seed)
        f = x @ (mJ * u)
        v = _sign(f)
        g = (mI * v) @ x
        delta = float(mI @ np.abs(f))
        if delta < RANK_TOL:
            break
        x = x - np.outer(f, g) / delta
        if flip:
            f, g = g, f
        f, g = _orient(f, g)
        axes.append(Axis(delta, _readonly(f), _readonly(g)))
    return _finish("tsvd", X, axes)
