"""Interaction indices of a two-way table.

Three indices measure departure from independence: the covariance residual
``p_ij - p_i+ p_+j``, the Pearson contrast ``p_ij / (p_i+ p_+j) - 1`` and the
weighted log-linear interaction (the double-centred log table).  The Box-Cox
index interpolates towards the log-linear one as the power goes to zero.

Each index comes back as an :class:`InteractionMatrix` carrying the row and
column metrics that the bilinear decomposition should use with it.
"""
import enum
from dataclasses import dataclass

import numpy as np

from .errors import TableError, ZeroCellError
from .tables import ProbTable, WeightPair, _frozen, default_labels

_CENTER_TOL = 1e-10


class Kind(enum.Enum):
    COVARIANCE = "covariance"
    PEARSON_CONTRAST = "pearson_contrast"
    LOGLINEAR = "loglinear"
    BOXCOX = "boxcox"
    FIRST_ORDER = "first_order"


_CENTERED_KINDS = {Kind.COVARIANCE, Kind.PEARSON_CONTRAST, Kind.LOGLINEAR, Kind.BOXCOX}


@dataclass(frozen=True)
class InteractionMatrix:
    """An I x J interaction matrix together with its metric pair.

    ``alpha`` is only set for :attr:`Kind.BOXCOX`.  Every kind except
    :attr:`Kind.FIRST_ORDER` is checked to be double-centred under its own
    metrics on construction.
    """

    x: np.ndarray
    kind: Kind
    mI: np.ndarray
    mJ: np.ndarray
    alpha: float = None

    def __post_init__(self):
        x = np.asarray(self.x, dtype=np.float64)
        mI = np.asarray(self.mI, dtype=np.float64)
        mJ = np.asarray(self.mJ, dtype=np.float64)
        if x.ndim != 2 or x.shape != (mI.size, mJ.size):
            raise TableError(
                f"interaction matrix {x.shape} does not match metrics "
                f"({mI.size}, {mJ.size})"
            )
        if not (np.all(mI > 0) and np.all(mJ > 0)):
            raise TableError("metric weights must be strictly positive")
        kind = Kind(self.kind)
        if kind in _CENTERED_KINDS:
            tol = _CENTER_TOL * max(1.0, float(np.abs(x).max(initial=0.0)))
            if np.abs(x @ mJ).max() > tol or np.abs(mI @ x).max() > tol:
                raise TableError(f"{kind.value} interaction is not double-centred")
        object.__setattr__(self, "x", _frozen(x))
        object.__setattr__(self, "mI", _frozen(mI))
        object.__setattr__(self, "mJ", _frozen(mJ))
        object.__setattr__(self, "kind", kind)

    @property
    def shape(self):
        return self.x.shape

    def transpose(self):
        return InteractionMatrix(self.x.T, self.kind, self.mJ, self.mI, self.alpha)


def double_center(a, w):
    """``a_ij - a_i. - a_.j + a_..`` with weighted means taken under ``w``."""
    a = np.asarray(a, dtype=np.float64)
    row_means = a @ w.wC
    col_means = w.wR @ a
    grand = w.wR @ a @ w.wC
    return a - row_means[:, None] - col_means[None, :] + grand


def _positive_cells(X, row_labels=None, col_labels=None):
    if isinstance(X, ProbTable):
        row_labels = X.row_labels if row_labels is None else row_labels
        col_labels = X.col_labels if col_labels is None else col_labels
        X = X.p
    elif hasattr(X, "values") and hasattr(X, "row_labels"):
        row_labels = X.row_labels if row_labels is None else row_labels
        col_labels = X.col_labels if col_labels is None else col_labels
        X = X.values
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise TableError("expected a two-dimensional table")
    bad = np.argwhere(~(X > 0))
    if bad.size:
        i, j = (int(k) for k in bad[0])
        rows = row_labels or default_labels("R", X.shape[0])
        cols = col_labels or default_labels("C", X.shape[1])
        raise ZeroCellError(
            f"cell ({rows[i]!r}, {cols[j]!r}) is {X[i, j]:g}; "
            f"log-ratio indices need strictly positive cells",
            row=rows[i],
            col=cols[j],
        )
    return X


def _check_weights(w, shape):
    if w.wR.size != shape[0] or w.wC.size != shape[1]:
        raise TableError(f"weights ({w.wR.size}, {w.wC.size}) do not match table {shape}")


def covariance_residual(P):
    x = P.p - np.outer(P.r, P.c)
    n_rows, n_cols = P.shape
    return InteractionMatrix(
        x, Kind.COVARIANCE, np.full(n_rows, 1.0 / n_rows), np.full(n_cols, 1.0 / n_cols)
    )


def pearson_contrast(P):
    """Pearson ratio minus one, with the margins as metrics (CA's triplet)."""
    x = P.p / np.outer(P.r, P.c) - 1.0
    return InteractionMatrix(x, Kind.PEARSON_CONTRAST, P.r, P.c)


def loglinear_interaction(X, w, row_labels=None, col_labels=None):
    """Double-centred natural log of a strictly positive table.

    ``X`` may be a :class:`ProbTable`, a :class:`CountTable` or any positive
    array; the result does not depend on its scale.
    """
    X = _positive_cells(X, row_labels, col_labels)
    _check_weights(w, X.shape)
    return InteractionMatrix(double_center(np.log(X), w), Kind.LOGLINEAR, w.wR, w.wC)


def boxcox_interaction(X, alpha, w, row_labels=None, col_labels=None):
    """Double-centred Box-Cox transform ``x**alpha / alpha``.

    Centering removes the constant ``1/alpha``, so the transform is evaluated
    as ``expm1(alpha * log x) / alpha``, which stays accurate for tiny alpha.
    """
    alpha = float(alpha)
    if not alpha > 0:
        raise TableError("alpha must be positive; use loglinear_interaction for the limit")
    X = _positive_cells(X, row_labels, col_labels)
    _check_weights(w, X.shape)
    transformed = np.expm1(alpha * np.log(X)) / alpha
    return InteractionMatrix(double_center(transformed, w), Kind.BOXCOX, w.wR, w.wC, alpha)


def boxcox_adaptive_weights(X, alpha):
    alpha = float(alpha)
    if not alpha > 0:
        raise TableError("alpha must be positive")
    X = _positive_cells(X)
    powered = X**alpha
    total = powered.sum()
    return WeightPair(powered.sum(axis=1) / total, powered.sum(axis=0) / total)


def first_order_lambda(P, w):
    """Linearisation of the log-linear interaction around the product ``w^R w^C``.

    Equals the Pearson contrast exactly when ``w`` are the margins of ``P``.
    """
    _check_weights(w, P.shape)
    x = (
        P.p / np.outer(w.wR, w.wC)
        - (P.r / w.wR)[:, None]
        - (P.c / w.wC)[None, :]
        + 1.0
    )
    return InteractionMatrix(x, Kind.FIRST_ORDER, w.wR, w.wC)


def log_odds(P, i, i1, j, j1):
    """Log odds ratio of the 2x2 subtable on rows ``i, i1`` and columns ``j, j1``.

    Indices are zero-based.
    """
    p = P.p if isinstance(P, ProbTable) else np.asarray(P, dtype=np.float64)
    cells = [(i, j), (i1, j1), (i, j1), (i1, j)]
    for a, b in cells:
        if not p[a, b] > 0:
            raise ZeroCellError(f"cell ({a}, {b}) is zero; log odds undefined", row=a, col=b)
    return float(np.log(p[i, j] * p[i1, j1] / (p[i, j1] * p[i1, j])))
