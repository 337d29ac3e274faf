"""Contingency tables, probability tables, weight pairs and indicator coding.

All containers are frozen dataclasses holding read-only numpy arrays, so a
table can be shared freely once built.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import TableError

_SUM_TOL = 1e-12


def _frozen(a, dtype=np.float64):
    a = np.array(a, dtype=dtype, copy=True)
    a.setflags(write=False)
    return a


def default_labels(prefix, n):
    return tuple(f"{prefix}{k + 1}" for k in range(n))


def _check_labels(labels, n, prefix, what):
    if labels is None:
        return default_labels(prefix, n)
    labels = tuple(str(s) for s in labels)
    if len(labels) != n:
        raise TableError(f"expected {n} {what} labels, got {len(labels)}")
    return labels


def _check_nonzero_margins(values, row_labels, col_labels):
    rows = values.sum(axis=1)
    for i in np.flatnonzero(rows <= 0):
        raise TableError(f"row {row_labels[i]!r} sums to zero")
    cols = values.sum(axis=0)
    for j in np.flatnonzero(cols <= 0):
        raise TableError(f"column {col_labels[j]!r} sums to zero")


@dataclass(frozen=True)
class CountTable:
    """Nonnegative I x J table of counts (or abundances) with labels.

    Zero cells are allowed; rows or columns summing to zero are not.
    Labels default to ``R1..RI`` and ``C1..CJ``.
    """

    values: np.ndarray
    row_labels: tuple = None
    col_labels: tuple = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 2:
            raise TableError("a count table must be two-dimensional")
        n_rows, n_cols = values.shape
        if n_rows < 2 or n_cols < 2:
            raise TableError(f"need at least 2 rows and 2 columns, got {n_rows}x{n_cols}")
        row_labels = _check_labels(self.row_labels, n_rows, "R", "row")
        col_labels = _check_labels(self.col_labels, n_cols, "C", "column")
        if not np.all(np.isfinite(values)):
            raise TableError("count table contains non-finite values")
        bad = np.argwhere(values < 0)
        if bad.size:
            i, j = bad[0]
            raise TableError(
                f"negative count {values[i, j]:g} in cell "
                f"({row_labels[i]!r}, {col_labels[j]!r})"
            )
        _check_nonzero_margins(values, row_labels, col_labels)
        object.__setattr__(self, "values", _frozen(values))
        object.__setattr__(self, "row_labels", row_labels)
        object.__setattr__(self, "col_labels", col_labels)

    @property
    def shape(self):
        return self.values.shape

    @property
    def total(self):
        return float(self.values.sum())

    def scaled(self, row_scales=None, col_scales=None):
        """Return the table ``diag(a) N diag(b)`` with the same labels."""
        a = np.ones(self.shape[0]) if row_scales is None else np.asarray(row_scales, float)
        b = np.ones(self.shape[1]) if col_scales is None else np.asarray(col_scales, float)
        return CountTable(a[:, None] * self.values * b[None, :], self.row_labels, self.col_labels)

    def transpose(self):
        return CountTable(self.values.T, self.col_labels, self.row_labels)

    def __eq__(self, other):
        if not isinstance(other, CountTable):
            return NotImplemented
        return (
            self.row_labels == other.row_labels
            and self.col_labels == other.col_labels
            and np.array_equal(self.values, other.values)
        )

    __hash__ = None


@dataclass(frozen=True)
class ProbTable:
    """Correspondence matrix ``P`` summing to one, with its margins ``r`` and ``c``.

    Build one with :func:`from_counts` or :meth:`ProbTable.from_array`; the
    margins are always derived from ``p`` itself.
    """

    p: np.ndarray
    row_labels: tuple = None
    col_labels: tuple = None
    r: np.ndarray = field(init=False)
    c: np.ndarray = field(init=False)

    def __post_init__(self):
        p = np.asarray(self.p, dtype=np.float64)
        if p.ndim != 2 or min(p.shape) < 2:
            raise TableError("a probability table must be at least 2x2")
        row_labels = _check_labels(self.row_labels, p.shape[0], "R", "row")
        col_labels = _check_labels(self.col_labels, p.shape[1], "C", "column")
        if np.any(p < 0) or not np.all(np.isfinite(p)):
            raise TableError("probabilities must be finite and nonnegative")
        if abs(p.sum() - 1.0) > _SUM_TOL:
            raise TableError(f"probabilities sum to {p.sum():.15g}, not 1")
        _check_nonzero_margins(p, row_labels, col_labels)
        object.__setattr__(self, "p", _frozen(p))
        object.__setattr__(self, "row_labels", row_labels)
        object.__setattr__(self, "col_labels", col_labels)
        object.__setattr__(self, "r", _frozen(p.sum(axis=1)))
        object.__setattr__(self, "c", _frozen(p.sum(axis=0)))

    @classmethod
    def from_array(cls, values, row_labels=None, col_labels=None):
        """Normalize any nonnegative matrix by its grand total."""
        values = np.asarray(values, dtype=np.float64)
        total = values.sum()
        if not total > 0:
            raise TableError("table total must be positive")
        return cls(values / total, row_labels, col_labels)

    @property
    def shape(self):
        return self.p.shape


@dataclass(frozen=True)
class WeightPair:
    """Strictly positive row and column probability weights."""

    wR: np.ndarray
    wC: np.ndarray

    def __post_init__(self):
        for name in ("wR", "wC"):
            w = np.asarray(getattr(self, name), dtype=np.float64)
            if w.ndim != 1 or w.size < 2:
                raise TableError(f"{name} must be a vector of length >= 2")
            if not np.all(w > 0):
                raise TableError(f"{name} must be strictly positive")
            if abs(w.sum() - 1.0) > _SUM_TOL:
                raise TableError(f"{name} sums to {w.sum():.15g}, not 1")
            object.__setattr__(self, name, _frozen(w))


@dataclass(frozen=True)
class IndicatorPair:
    """Indicator (dummy) coding of the individuals behind an integer table."""

    ZI: np.ndarray
    ZJ: np.ndarray

    def __post_init__(self):
        ZI = np.asarray(self.ZI, dtype=np.int64)
        ZJ = np.asarray(self.ZJ, dtype=np.int64)
        if ZI.shape[0] != ZJ.shape[0]:
            raise TableError("indicator blocks must have the same number of rows")
        for Z in (ZI, ZJ):
            if not (np.all((Z == 0) | (Z == 1)) and np.all(Z.sum(axis=1) == 1)):
                raise TableError("each indicator row must contain exactly one 1")
        object.__setattr__(self, "ZI", _frozen(ZI, np.int64))
        object.__setattr__(self, "ZJ", _frozen(ZJ, np.int64))


def from_counts(t):
    """Divide a count table by its grand total."""
    return ProbTable.from_array(t.values, t.row_labels, t.col_labels)


def uniform_weights(n_rows, n_cols):
    if n_rows < 2 or n_cols < 2:
        raise TableError("uniform weights need at least 2 rows and 2 columns")
    return WeightPair(np.full(n_rows, 1.0 / n_rows), np.full(n_cols, 1.0 / n_cols))


def marginal_weights(P):
    if np.any(P.r <= 0) or np.any(P.c <= 0):
        raise TableError("marginal weights require strictly positive margins")
    return WeightPair(P.r, P.c)


def indicator_coding(t):
    """Expand an integer count table into one indicator row per individual.

    Individuals are emitted i-major then j: ``n_ij`` copies of the pattern
    ``(e_i, e_j)``, so that ``ZI.T @ ZJ`` reproduces the table exactly.
    """
    values = t.values
    counts = np.rint(values)
    if not np.array_equal(counts, values):
        raise TableError("indicator coding requires integer counts")
    counts = counts.astype(np.int64)
    n_rows, n_cols = counts.shape
    ii, jj = np.meshgrid(np.arange(n_rows), np.arange(n_cols), indexing="ij")
    reps = counts.ravel()
    row_idx = np.repeat(ii.ravel(), reps)
    col_idx = np.repeat(jj.ravel(), reps)
    n = row_idx.size
    ZI = np.zeros((n, n_rows), dtype=np.int64)
    ZJ = np.zeros((n, n_cols), dtype=np.int64)
    ZI[np.arange(n), row_idx] = 1
    ZJ[np.arange(n), col_idx] = 1
    return IndicatorPair(ZI, ZJ)
