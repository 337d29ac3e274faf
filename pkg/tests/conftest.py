import os
from pathlib import Path

import numpy as np
import pytest

from marginfree.tables import CountTable, from_counts

DATA_DIR = Path(__file__).parent / "data"
GOODMAN = [[4, 10, 1], [10, 50, 10], [1, 10, 4]]


def rodent_path():
    """Location of the optional 28x9 rodent fixture (env var wins)."""
    return Path(os.environ.get("MARGINFREE_RODENT_CSV", DATA_DIR / "rodent.csv"))


@pytest.fixture
def goodman():
    return CountTable(GOODMAN)


@pytest.fixture
def goodman_p(goodman):
    return from_counts(goodman)


@pytest.fixture
def rng():
    return np.random.default_rng(20211014)


def random_positive(rng, shape, low=0.1, high=10.0):
    return rng.uniform(low, high, size=shape)


def independence_table(r, c):
    return np.outer(r, c)


def decomposition_violations(d, X, tol=1e-9, ordered=True):
    """List every violated condition of a decomposition (empty when valid).

    ``ordered=False`` skips the delta ordering check, which greedy taxicab
    deflation does not guarantee.
    """
    problems = []
    mI, mJ = d.mI, d.mJ
    deltas = d.deltas
    if ordered and np.any(np.diff(deltas) > tol):
        problems.append(f"deltas not non-increasing: {deltas}")
    F, G = d.row_coords, d.col_coords
    for a, ax in enumerate(d.axes):
        if abs(ax.f @ mI) > tol or abs(ax.g @ mJ) > tol:
            problems.append(f"axis {a + 1} not centred")
        if d.engine == "svd":
            norms = (ax.f**2 @ mI, ax.g**2 @ mJ)
            target = ax.delta**2
        else:
            norms = (np.abs(ax.f) @ mI, np.abs(ax.g) @ mJ)
            target = ax.delta
        if max(abs(n - target) for n in norms) > tol:
            problems.append(f"axis {a + 1} norm {norms} != {target}")
    k = len(d.axes)
    for a in range(k):
        for b in range(a):
            if d.engine == "svd":
                ortho = (F[:, a] * F[:, b] @ mI, G[:, a] * G[:, b] @ mJ)
            else:
                ortho = (
                    F[:, a] * np.sign(F[:, b]) @ mI,
                    G[:, a] * np.sign(G[:, b]) @ mJ,
                )
            if max(abs(o) for o in ortho) > tol:
                problems.append(f"axes {a + 1},{b + 1} not orthogonal: {ortho}")
    from marginfree.decomposition import reconstruct

    if np.abs(reconstruct(d) + d.residual - X.x).max() > tol:
        problems.append("reconstruction plus residual differs from X")
    return problems


def random_centered(rng, shape, metrics="random"):
    """A double-centred log-linear interaction of a random positive table."""
    from marginfree.interactions import loglinear_interaction
    from marginfree.tables import WeightPair, uniform_weights

    X = rng.uniform(0.1, 10.0, size=shape)
    if metrics == "uniform":
        w = uniform_weights(*shape)
    else:
        wR = rng.uniform(0.2, 1.0, shape[0])
        wC = rng.uniform(0.2, 1.0, shape[1])
        w = WeightPair(wR / wR.sum(), wC / wC.sum())
    return loglinear_interaction(X, w)


# -- acceptance reporting ----------------------------------------------------

_CRITERIA = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion label")


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        label = report.user_properties and dict(report.user_properties).get("criterion")
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        _CRITERIA.append((label or report.nodeid.split("::")[-1], status))


def pytest_collection_modifyitems(items):
    for item in items:
        marker = item.get_closest_marker("criterion")
        if marker is not None:
            label = marker.args[0]
            callspec = getattr(item, "callspec", None)
            if callspec is not None:
                label = f"{label} [{callspec.id}]"
            item.user_properties.append(("criterion", label))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, status in _CRITERIA:
        terminalreporter.write_line(f"{status}  {label}")
