import itertools

import numpy as np
import pytest

from conftest import decomposition_violations, random_centered
from marginfree.decomposition import (
    _ascend,
    exhaustive_search,
    iterative_ascent,
    reconstruct,
    sign_vectors,
    taxicab_objective,
    taxicab_svd,
    weighted_svd,
)
from marginfree.errors import DimensionTooLarge, TableError
from marginfree.interactions import InteractionMatrix, Kind, covariance_residual, pearson_contrast
from marginfree.tables import ProbTable


def brute_force_argmax(x, mI, mJ):
    """All 2**J sign vectors, scored with plain Python sums."""
    n_rows, n_cols = len(x), len(x[0])
    scores = {}
    for u in itertools.product((-1, 1), repeat=n_cols):
        scores[u] = sum(
            mI[i] * abs(sum(x[i][j] * mJ[j] * u[j] for j in range(n_cols)))
            for i in range(n_rows)
        )
    best = max(scores.values())
    return best, {u for u, s in scores.items() if s >= best - 1e-12}


def svd_oracle(X):
    """Singular values from the eigenvalues of the weighted cross-product."""
    S = np.sqrt(X.mI)[:, None] * X.x * np.sqrt(X.mJ)[None, :]
    ev = np.linalg.eigvalsh(S.T @ S)[::-1]
    return np.sqrt(np.clip(ev, 0, None))


def rank_one(rng, n_rows, n_cols):
    mI = rng.uniform(0.2, 1, n_rows)
    mI /= mI.sum()
    mJ = rng.uniform(0.2, 1, n_cols)
    mJ /= mJ.sum()
    f = rng.normal(size=n_rows)
    f -= f @ mI
    g = rng.normal(size=n_cols)
    g -= g @ mJ
    return InteractionMatrix(np.outer(f, g), Kind.LOGLINEAR, mI, mJ), f, g


class TestWeightedSvd:
    def test_goodman_ca(self, goodman_p):
        d = weighted_svd(pearson_contrast(goodman_p))
        assert len(d) == 2
        assert round(d.deltas[0], 2) == 0.20
        assert round(d.deltas[1], 3) == 0.048

    def test_matches_eigen_oracle(self, rng):
        for shape in [(4, 5), (6, 3), (3, 3)]:
            X = random_centered(rng, shape)
            d = weighted_svd(X)
            oracle = svd_oracle(X)
            oracle = oracle[oracle > 1e-7]
            np.testing.assert_allclose(d.deltas, oracle, atol=1e-9)

    def test_zero_matrix(self):
        X = InteractionMatrix(np.zeros((3, 4)), Kind.COVARIANCE, [1 / 3] * 3, [0.25] * 4)
        d = weighted_svd(X)
        assert len(d) == 0
        assert d.row_coords.shape == (3, 0)

    def test_full_reconstruction(self, rng):
        X = random_centered(rng, (5, 4))
        d = weighted_svd(X)
        np.testing.assert_allclose(reconstruct(d), X.x, atol=1e-9)

    def test_invariants(self, rng):
        for shape in [(4, 5), (5, 4), (7, 3)]:
            X = random_centered(rng, shape)
            assert decomposition_violations(weighted_svd(X), X) == []

    def test_k_limits(self, goodman_p):
        X = pearson_contrast(goodman_p)
        assert len(weighted_svd(X, 1)) == 1
        with pytest.raises(TableError):
            weighted_svd(X, 4)

    def test_sign_orientation(self, rng):
        X = random_centered(rng, (5, 6))
        for ax in weighted_svd(X).axes:
            assert ax.g[np.argmax(np.abs(ax.g))] > 0

    def test_canonical_correlation_identity(self, goodman_p, rng):
        for P in (goodman_p, ProbTable.from_array(rng.uniform(0, 5, (5, 4)))):
            d = weighted_svd(pearson_contrast(P))
            for ax in d.axes:
                corr = ax.f @ P.p @ ax.g / ax.delta**2
                assert corr == pytest.approx(ax.delta, abs=1e-9)

    def test_covariance_engine(self, goodman_p):
        X = covariance_residual(goodman_p)
        d = weighted_svd(X)
        assert decomposition_violations(d, X) == []


class TestTaxicabSvd:
    def test_goodman_tca(self, goodman_p):
        d = taxicab_svd(pearson_contrast(goodman_p))
        assert d.engine == "tsvd"
        assert round(d.deltas[0], 3) == 0.070
        assert round(d.deltas[1], 3) == 0.034

    def test_goodman_first_axis_sign_vector(self, goodman_p):
        X = pearson_contrast(goodman_p)
        sigma = covariance_residual(goodman_p).x
        # under CA metrics D(u) collapses to sum_i |sum_j sigma_ij u_j|
        best, argmax = brute_force_argmax(sigma.tolist(), [1.0] * 3, [1.0] * 3)
        assert best == pytest.approx(0.070, abs=1e-12)
        assert {(1, 1, -1), (-1, -1, 1)} <= argmax
        # the mirror symmetry of the table makes (1, -1, -1) an equal optimum; the
        # canonical tie-break keeps the lexicographically smallest with u_1 = +1
        assert {(1, -1, -1), (-1, 1, 1)} <= argmax
        u = exhaustive_search(X.x, X.mI, X.mJ)
        assert tuple(u) == (1, -1, -1)
        assert taxicab_objective(X.x, X.mI, X.mJ, u) == pytest.approx(best, abs=1e-12)

    def test_exhaustive_matches_brute_force(self, rng):
        for shape in [(4, 4), (5, 3), (3, 6)]:
            X = random_centered(rng, shape)
            x, mI, mJ = X.x, X.mI, X.mJ
            best, argmax = brute_force_argmax(x.tolist(), mI.tolist(), mJ.tolist())
            u = exhaustive_search(x, mI, mJ)
            assert tuple(int(s) for s in u) in argmax
            assert taxicab_objective(x, mI, mJ, u) == pytest.approx(best, abs=1e-12)

    def test_zero_matrix(self):
        X = InteractionMatrix(np.zeros((3, 3)), Kind.COVARIANCE, [1 / 3] * 3, [1 / 3] * 3)
        assert len(taxicab_svd(X)) == 0

    def test_invariants(self, rng):
        for shape in [(4, 5), (5, 4), (6, 6), (8, 3)]:
            X = random_centered(rng, shape)
            d = taxicab_svd(X)
            assert decomposition_violations(d, X) == []
            np.testing.assert_allclose(d.residual, 0, atol=1e-9)

    def test_transpose_symmetry(self, rng):
        for shape in [(4, 4), (4, 6), (7, 3)]:
            X = random_centered(rng, shape)
            np.testing.assert_allclose(
                taxicab_svd(X).deltas, taxicab_svd(X.transpose()).deltas, atol=1e-9
            )

    def test_monotone_fit(self, goodman_p):
        X = pearson_contrast(goodman_p)
        d = taxicab_svd(X)
        residuals = [np.abs(X.x - reconstruct(d, k)).max() for k in range(len(d) + 1)]
        assert residuals == sorted(residuals, reverse=True)
        assert residuals[-1] < 1e-12

    def test_rank_one_both_engines(self, rng):
        X, f, g = rank_one(rng, 4, 5)
        for engine in (weighted_svd, taxicab_svd):
            d = engine(X)
            assert len(d) == 1
            np.testing.assert_allclose(reconstruct(d), X.x, atol=1e-9)

    def test_dimension_bound(self):
        X = InteractionMatrix(np.zeros((26, 26)), Kind.FIRST_ORDER, [1 / 26] * 26, [1 / 26] * 26)
        with pytest.raises(DimensionTooLarge):
            taxicab_svd(X, strategy="exhaustive")
        with pytest.raises(DimensionTooLarge):
            exhaustive_search(X.x, X.mI, X.mJ)

    def test_large_side_is_transposed(self, rng):
        # 30 columns but only 4 rows: enumeration runs over the rows
        X = random_centered(rng, (4, 30))
        d = taxicab_svd(X, k=2)
        assert decomposition_violations(d, X) == []

    def test_iterative_strategy(self, goodman_p):
        d = taxicab_svd(pearson_contrast(goodman_p), strategy="iterative")
        assert round(d.deltas[0], 3) == 0.070

    def test_unknown_strategy(self, goodman_p):
        with pytest.raises(ValueError):
            taxicab_svd(pearson_contrast(goodman_p), strategy="greedy")


class TestSignVectors:
    def test_order(self):
        np.testing.assert_array_equal(
            sign_vectors(3), [[1, -1, -1], [1, -1, 1], [1, 1, -1], [1, 1, 1]]
        )

    def test_chunks(self):
        full = sign_vectors(6)
        np.testing.assert_array_equal(np.vstack([sign_vectors(6, 0, 10), sign_vectors(6, 10)]), full)
        assert len({tuple(u) for u in full}) == 32


class TestIterativeAscent:
    def test_goodman_from_ones(self, goodman_p):
        X = pearson_contrast(goodman_p)
        u, value, _ = _ascend(X.x, X.mI, X.mJ, np.ones(3))
        assert value == pytest.approx(0.070, abs=1e-12)
        u = iterative_ascent(X.x, X.mI, X.mJ, starts=1)
        assert taxicab_objective(X.x, X.mI, X.mJ, u) == pytest.approx(0.070, abs=1e-12)

    def test_rank_one_fixed_point(self, rng):
        X, f, g = rank_one(rng, 5, 4)
        u, _, trace = _ascend(X.x, X.mI, X.mJ, np.ones(4))
        assert len(trace) - 1 <= 2
        assert np.array_equal(u, np.sign(g)) or np.array_equal(u, -np.sign(g))

    def test_ascent_never_decreases(self, rng):
        for _ in range(50):
            X = random_centered(rng, (6, 7))
            u0 = rng.choice([-1.0, 1.0], size=7)
            _, _, trace = _ascend(X.x, X.mI, X.mJ, u0)
            assert np.all(np.diff(trace) >= -1e-15)

    def test_matches_exhaustive_mostly(self, rng):
        hits = 0
        for _ in range(200):
            X = random_centered(rng, (4, 4))
            u_it = iterative_ascent(X.x, X.mI, X.mJ, starts=16, seed=int(rng.integers(1 << 31)))
            u_ex = exhaustive_search(X.x, X.mI, X.mJ)
            d_it = taxicab_objective(X.x, X.mI, X.mJ, u_it)
            d_ex = taxicab_objective(X.x, X.mI, X.mJ, u_ex)
            assert d_it <= d_ex + 1e-12
            hits += d_it >= d_ex - 1e-12
        assert hits >= 190

    def test_canonical_first_entry(self, rng):
        X = random_centered(rng, (5, 5))
        assert iterative_ascent(X.x, X.mI, X.mJ)[0] == 1.0

    def test_deterministic(self, rng):
        X = random_centered(rng, (6, 8))
        a = iterative_ascent(X.x, X.mI, X.mJ, starts=4, seed=3)
        b = iterative_ascent(X.x, X.mI, X.mJ, starts=4, seed=3)
        np.testing.assert_array_equal(a, b)

    def test_rejects_zero_starts(self, goodman_p):
        X = pearson_contrast(goodman_p)
        with pytest.raises(ValueError):
            iterative_ascent(X.x, X.mI, X.mJ, starts=0)


class TestReconstruct:
    def test_upto_zero(self, goodman_p):
        d = weighted_svd(pearson_contrast(goodman_p))
        np.testing.assert_array_equal(reconstruct(d, 0), np.zeros((3, 3)))

    def test_upto_too_many(self, goodman_p):
        d = weighted_svd(pearson_contrast(goodman_p))
        with pytest.raises(TableError):
            reconstruct(d, 3)


def test_taxicab_order_follows_extraction(rng):
    # each axis is the exact optimum on its residual, yet a later axis can
    # carry more dispersion than an earlier one
    rng = np.random.default_rng(20211014 + 7)
    shapes = [(3, 3), (4, 4), (4, 5), (5, 4), (6, 3), (3, 7), (8, 6)]
    for trial in range(18):
        X = random_centered(rng, shapes[trial % 7], metrics="uniform" if trial % 2 else "random")
    d = taxicab_svd(X)
    assert d.deltas[2] > d.deltas[1]
    assert decomposition_violations(d, X, ordered=False) == []
