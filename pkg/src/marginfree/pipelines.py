"""End-to-end methods and dispersion reporting.

=========  ==========================================================
method     interaction, metrics and engine
=========  ==========================================================
ca         Pearson contrast of P, margins of P, SVD
tca        same interaction and metrics, taxicab SVD
mfca       Pearson contrast of the IPF table Q with uniform margins, SVD
mftca      same as mfca with taxicab SVD
cov        covariance residual of P, uniform metrics, SVD
lra_mw     log-linear interaction with marginal weights, SVD
lra_uw     log-linear interaction with uniform weights, SVD
tlra_mw    as lra_mw with taxicab SVD
tlra_uw    as lra_uw with taxicab SVD
=========  ==========================================================
"""
from dataclasses import dataclass

import numpy as np

from . import decomposition as dec
from . import interactions as ia
from .margin_fit import DEFAULT_MAX_ITER, DEFAULT_TOL, ipf_fit, uniform_targets
from .tables import from_counts, marginal_weights, uniform_weights

METHODS = ("ca", "mfca", "tca", "mftca", "cov", "lra_mw", "lra_uw", "tlra_mw", "tlra_uw")

DISPLAY_NAMES = {
    "ca": "CA",
    "mfca": "mfCA",
    "tca": "TCA",
    "mftca": "mfTCA",
    "cov": "COV",
    "lra_mw": "mwLRA",
    "lra_uw": "uwLRA",
    "tlra_mw": "mwTLRA",
    "tlra_uw": "uwTLRA",
}

_TAXICAB = {"tca", "mftca", "tlra_mw", "tlra_uw"}
_MARGIN_FREE = {"mfca", "mftca"}


def normalize_method(name):
    """Accept ``lra-mw`` style spellings and any case."""
    key = str(name).strip().lower().replace("-", "_")
    if key not in METHODS:
        raise ValueError(f"unknown method {name!r}; choose from {', '.join(METHODS)}")
    return key


@dataclass(frozen=True)
class MethodResult:
    method: str
    decomposition: dec.Decomposition
    interaction: ia.InteractionMatrix
    row_labels: tuple
    col_labels: tuple
    q_table: object = None

    @property
    def dispersion(self):
        return tuple(float(d) for d in self.decomposition.deltas)

    @property
    def row_coords(self):
        return self.decomposition.row_coords

    @property
    def col_coords(self):
        return self.decomposition.col_coords


def _interaction(t, method, ipf_tol, ipf_max_iter, weights):
    P = from_counts(t)
    if method in ("ca", "tca"):
        return ia.pearson_contrast(P), None
    if method in _MARGIN_FREE:
        fit = ipf_fit(P, *uniform_targets(*P.shape), tol=ipf_tol, max_iter=ipf_max_iter)
        return ia.pearson_contrast(fit.q), fit
    if method == "cov":
        return ia.covariance_residual(P), None
    if method in ("lra_mw", "tlra_mw"):
        w = marginal_weights(P) if weights is None else weights
        return ia.loglinear_interaction(P, w), None
    return ia.loglinear_interaction(P, uniform_weights(*P.shape)), None


def run_method(
    t,
    method,
    n_axes=2,
    ipf_tol=DEFAULT_TOL,
    ipf_max_iter=DEFAULT_MAX_ITER,
    tsvd_strategy="exhaustive",
    weights=None,
):
    """Run one method on a count table.

    Parameters
    ----------
    t : CountTable
    method : str
        One of :data:`METHODS` (hyphens accepted).
    n_axes : int or None
        Number of axes, capped at ``min(I, J) - 1``; ``None`` extracts all.
    ipf_tol, ipf_max_iter
        IPF settings for the margin-free methods.
    tsvd_strategy : {"exhaustive", "iterative"}
    weights : WeightPair, optional
        A priori weights for ``lra_mw``/``tlra_mw``.  Defaults to the margins
        of ``t`` itself.

    Raises
    ------
    ZeroCellError
        For the log-ratio methods on tables with zero cells.
    NonConvergence
        When IPF fails for the margin-free methods.
    """
    method = normalize_method(method)
    cap = min(t.shape) - 1
    k = cap if n_axes is None else min(int(n_axes), cap)
    if k < 1:
        raise ValueError("n_axes must be at least 1")
    X, fit = _interaction(t, method, ipf_tol, ipf_max_iter, weights)
    if method in _TAXICAB:
        d = dec.taxicab_svd(X, k, strategy=tsvd_strategy)
    else:
        d = dec.weighted_svd(X, k)
    return MethodResult(method, d, X, t.row_labels, t.col_labels, fit)


def dispersion_rows(results):
    """One row per result: display name followed by deltas at 3 decimals.

    Rows shorter than the longest one are padded with empty cells.
    """
    if not results:
        raise ValueError("need at least one result")
    width = max(len(r.dispersion) for r in results)
    rows = []
    for r in results:
        cells = [f"{d:.3f}" for d in r.dispersion]
        rows.append([DISPLAY_NAMES[r.method]] + cells + [""] * (width - len(cells)))
    return rows


def dispersion_table(results):
    """Plain-text table of dispersion values, methods down, axes across."""
    rows = dispersion_rows(results)
    width = len(rows[0]) - 1
    header = ["method"] + [f"delta{a + 1}" for a in range(width)]
    widths = [max(len(row[c]) for row in rows + [header]) for c in range(width + 1)]
    lines = []
    for row in [header] + rows:
        first = row[0].ljust(widths[0])
        rest = [cell.rjust(w) for cell, w in zip(row[1:], widths[1:])]
        lines.append("  ".join([first] + rest).rstrip())
    return "\n".join(lines) + "\n"


def goodman_rank_check(t, rel_tol=1e-6):
    """Number of non-negligible axes of uniform-weight LRA and of CA.

    An axis counts when ``delta_a >= rel_tol * delta_1``.
    """

    def significant(method):
        deltas = np.array(run_method(t, method, n_axes=None).dispersion)
        if deltas.size == 0:
            return 0
        return int(np.sum(deltas >= rel_tol * deltas[0]))

    return significant("lra_uw"), significant("ca")
