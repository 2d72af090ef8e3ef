"""Tests for the functional calculus and the finite-sum difference formulas."""

import numpy as np
import pytest

from paircalc import funcalc, linalg, poly
from paircalc.funcalc import FiniteTripleSum


def random_bi(rng, d1, d2):
    return rng.uniform(-1, 1, (d1 + 1, d2 + 1)) + 1j * rng.uniform(-1, 1, (d1 + 1, d2 + 1))


class TestPolyCalc:
    def test_constant(self):
        t = linalg.random_contraction(4, 0)
        np.testing.assert_allclose(funcalc.poly_calc([1], t), np.eye(4))

    def test_identity_polynomial(self):
        t = linalg.random_contraction(4, 1)
        np.testing.assert_allclose(funcalc.poly_calc([0, 1], t), t)

    def test_square_of_diagonal(self):
        t = np.diag([0.5, -0.25 + 0.1j])
        np.testing.assert_allclose(
            funcalc.poly_calc([0, 0, 1], t), np.diag([0.25, (-0.25 + 0.1j) ** 2])
        )

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            funcalc.poly_calc([1], np.zeros((2, 3)))


class TestFOfPair:
    def test_zw_is_t_times_r(self):
        t = linalg.random_contraction(5, 2)
        r = linalg.random_contraction(5, 3)
        np.testing.assert_allclose(funcalc.f_of_pair([[0, 0], [0, 1]], t, r), t @ r)

    def test_constant(self):
        t = linalg.random_contraction(3, 4)
        r = linalg.random_contraction(3, 5)
        np.testing.assert_allclose(
            funcalc.f_of_pair([[2 - 1j]], t, r), (2 - 1j) * np.eye(3)
        )

    def test_commuting_diagonal_pointwise_oracle(self):
        rng = np.random.default_rng(0)
        tvals = 0.9 * np.exp(2j * np.pi * rng.uniform(size=4))
        rvals = 0.8 * np.exp(2j * np.pi * rng.uniform(size=4))
        f = random_bi(rng, 3, 3)
        result = funcalc.f_of_pair(f, np.diag(tvals), np.diag(rvals))
        expected = np.diag([poly.eval_bi(f, tv, rv) for tv, rv in zip(tvals, rvals)])
        np.testing.assert_allclose(result, expected, atol=1e-12)

    def test_order_sensitivity(self):
        # fixed noncommuting 2x2 witness: f(z,w) = zw gives TR, not RT
        t = np.array([[0.0, 1.0], [0.0, 0.0]])
        r = np.array([[0.0, 0.0], [1.0, 0.0]])
        result = funcalc.f_of_pair([[0, 0], [0, 1]], t, r)
        np.testing.assert_allclose(result, t @ r)
        assert np.max(np.abs(t @ r - r @ t)) > 0.5

    def test_rejects_non_contraction(self):
        with pytest.raises(ValueError):
            funcalc.f_of_pair([[1]], 2 * np.eye(2), np.eye(2))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            funcalc.f_of_pair([[1]], np.eye(2), np.eye(3))


class TestTripleSum:
    def test_single_trivial_term(self):
        rng = np.random.default_rng(1)
        x = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        y = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        ts = FiniteTripleSum("type1", [[1]], [[1]], [[[1]]])
        t = linalg.random_contraction(3, 0)
        np.testing.assert_allclose(funcalc.triple_sum(ts, t, t, t, x, y), x @ y)

    def test_zero_factor(self):
        ts = FiniteTripleSum("type1", [[1]], [[1]], [[[1]]])
        t = linalg.random_contraction(3, 0)
        z = np.zeros((3, 3))
        np.testing.assert_allclose(funcalc.triple_sum(ts, t, t, t, z, np.eye(3)), z)

    def test_scalar_oracle(self):
        rng = np.random.default_rng(2)
        alphas = [poly.as_uni(rng.standard_normal(3)) for _ in range(2)]
        betas = [poly.as_uni(rng.standard_normal(3)) for _ in range(3)]
        gammas = [[poly.as_uni(rng.standard_normal(3)) for _ in range(3)] for _ in range(2)]
        t1, t2, t3 = (0.3 + 0.2j), (0.1 - 0.5j), (-0.4 + 0.1j)
        x, y = 1.2 - 0.7j, -0.3 + 2.1j
        ts = FiniteTripleSum("type1", alphas, betas, gammas)
        result = funcalc.triple_sum(
            ts, *(np.array([[v]]) for v in (t1, t2, t3, x, y))
        )[0, 0]
        oracle = sum(
            poly.eval_uni(alphas[j], t1) * x * poly.eval_uni(betas[k], t2) * y
            * poly.eval_uni(gammas[j][k], t3)
            for j in range(2)
            for k in range(3)
        )
        assert result == pytest.approx(oracle, rel=1e-12)

    def test_type2_scalar_oracle(self):
        rng = np.random.default_rng(3)
        betas = [poly.as_uni(rng.standard_normal(2)) for _ in range(2)]
        gammas = [poly.as_uni(rng.standard_normal(2)) for _ in range(2)]
        alphas = [[poly.as_uni(rng.standard_normal(2)) for _ in range(2)] for _ in range(2)]
        t1, t2, t3, x, y = 0.5, 0.25j, -0.5, 2.0, 1.0 + 1.0j
        ts = FiniteTripleSum("type2", betas, gammas, alphas)
        result = funcalc.triple_sum(
            ts, *(np.array([[v]]) for v in (t1, t2, t3, x, y))
        )[0, 0]
        oracle = sum(
            poly.eval_uni(alphas[j][k], t1) * x * poly.eval_uni(betas[j], t2) * y
            * poly.eval_uni(gammas[k], t3)
            for j in range(2)
            for k in range(2)
        )
        assert result == pytest.approx(oracle, rel=1e-12)

    def test_haagerup_type_bound(self):
        # type-1 bound with p = q = 4 (so r = 2): the S_2 norm is controlled
        # by the two ell-2 column sups, the grid matrix sup, and the S_4 norms
        rng = np.random.default_rng(4)
        n, deg, n1, n2 = 6, 3, 3, 3
        grid = poly.roots_grid(poly.oversample_size(deg))
        for _ in range(10):
            alphas = [poly.as_uni(rng.uniform(-1, 1, deg + 1)
                                  + 1j * rng.uniform(-1, 1, deg + 1)) for _ in range(n1)]
            betas = [poly.as_uni(rng.uniform(-1, 1, deg + 1)
                                 + 1j * rng.uniform(-1, 1, deg + 1)) for _ in range(n2)]
            gammas = [[poly.as_uni(rng.uniform(-1, 1, deg + 1)
                                   + 1j * rng.uniform(-1, 1, deg + 1)) for _ in range(n2)]
                      for _ in range(n1)]
            t1, t2, t3 = (linalg.random_contraction_from_rng(n, rng) for _ in range(3))
            x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            y = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            ts = FiniteTripleSum("type1", alphas, betas, gammas)
            lhs = linalg.schatten_norm(funcalc.triple_sum(ts, t1, t2, t3, x, y), 2)

            a_sup = np.sqrt(np.max(np.sum(
                [np.abs(poly.eval_uni(a, grid)) ** 2 for a in alphas], axis=0)))
            b_sup = np.sqrt(np.max(np.sum(
                [np.abs(poly.eval_uni(b, grid)) ** 2 for b in betas], axis=0)))
            g_vals = np.array([[poly.eval_uni(g, grid) for g in row] for row in gammas])
            g_sup = max(np.linalg.norm(g_vals[:, :, i], 2) for i in range(grid.size))
            rhs = (a_sup * b_sup * g_sup
                   * linalg.schatten_norm(x, 4) * linalg.schatten_norm(y, 4))
            assert lhs <= rhs * (1 + 1e-9)

    def test_bad_kind(self):
        with pytest.raises(ValueError):
            FiniteTripleSum("type3", [], [], [])

    def test_dimension_mismatch(self):
        ts = FiniteTripleSum("type1", [[1]], [[1]], [[[1]]])
        with pytest.raises(ValueError):
            funcalc.triple_sum(ts, np.eye(2), np.eye(2), np.eye(3), np.eye(2), np.eye(2))


class TestDiffFormulas:
    def test_diff_first_zero_perturbation(self):
        rng = np.random.default_rng(5)
        t = linalg.random_contraction_from_rng(4, rng)
        r = linalg.random_contraction_from_rng(4, rng)
        f = random_bi(rng, 3, 3)
        out = funcalc.diff_first(f, t, t, r, 3)
        np.testing.assert_allclose(out, 0, atol=1e-12)

    def test_diff_first_scalar_oracle(self):
        rng = np.random.default_rng(6)
        t0, t1, r = (0.6 * np.exp(2j * np.pi * rng.uniform()) for _ in range(3))
        f = random_bi(rng, 3, 3)
        out = funcalc.diff_first(
            f, np.array([[t0]]), np.array([[t1]]), np.array([[r]]), 3
        )[0, 0]
        assert out == pytest.approx(
            poly.eval_bi(f, t1, r) - poly.eval_bi(f, t0, r), rel=1e-10
        )

    def test_diff_first_zw(self):
        rng = np.random.default_rng(7)
        t0, t1, r = (linalg.random_contraction_from_rng(4, rng) for _ in range(3))
        out = funcalc.diff_first([[0, 0], [0, 1]], t0, t1, r, 2)
        np.testing.assert_allclose(out, (t1 - t0) @ r, atol=1e-12)

    def test_diff_second_zero_perturbation(self):
        rng = np.random.default_rng(8)
        t = linalg.random_contraction_from_rng(4, rng)
        r = linalg.random_contraction_from_rng(4, rng)
        f = random_bi(rng, 3, 3)
        np.testing.assert_allclose(funcalc.diff_second(f, t, r, r, 3), 0, atol=1e-12)

    def test_diff_second_zw(self):
        rng = np.random.default_rng(9)
        t0, r0, r1 = (linalg.random_contraction_from_rng(4, rng) for _ in range(3))
        out = funcalc.diff_second([[0, 0], [0, 1]], t0, r0, r1, 2)
        np.testing.assert_allclose(out, t0 @ (r1 - r0), atol=1e-12)

    def test_diff_second_direct_difference_oracle(self):
        rng = np.random.default_rng(10)
        t0, r0, r1 = (linalg.random_contraction_from_rng(8, rng) for _ in range(3))
        f = random_bi(rng, 4, 4)
        direct = funcalc.f_of_pair(f, t0, r1) - funcalc.f_of_pair(f, t0, r0)
        out = funcalc.diff_second(f, t0, r0, r1, 4)
        scale = 1 + linalg.schatten_norm(direct, np.inf)
        assert linalg.schatten_norm(out - direct, np.inf) <= 1e-8 * scale

    def test_full_difference_same_pair(self):
        rng = np.random.default_rng(11)
        t = linalg.random_contraction_from_rng(4, rng)
        r = linalg.random_contraction_from_rng(4, rng)
        f = random_bi(rng, 3, 3)
        np.testing.assert_allclose(funcalc.full_difference(f, t, r, t, r, 3), 0,
                                   atol=1e-12)

    def test_full_difference_reduces_to_first(self):
        rng = np.random.default_rng(12)
        t0, t1, r = (linalg.random_contraction_from_rng(4, rng) for _ in range(3))
        f = random_bi(rng, 3, 3)
        full = funcalc.full_difference(f, t0, r, t1, r, 3)
        np.testing.assert_allclose(full, funcalc.diff_first(f, t0, t1, r, 3),
                                   atol=1e-12)

    def test_full_difference_direct_oracle(self):
        rng = np.random.default_rng(13)
        t0, r0, t1, r1 = (linalg.random_contraction_from_rng(8, rng) for _ in range(4))
        f = random_bi(rng, 4, 4)
        direct = funcalc.f_of_pair(f, t1, r1) - funcalc.f_of_pair(f, t0, r0)
        out = funcalc.full_difference(f, t0, r0, t1, r1, 4)
        scale = 1 + linalg.schatten_norm(direct, np.inf)
        assert linalg.schatten_norm(out - direct, np.inf) <= 1e-8 * scale

    def test_telescoping_is_exact_sum(self):
        rng = np.random.default_rng(14)
        t0, r0, t1, r1 = (linalg.random_contraction_from_rng(5, rng) for _ in range(4))
        f = random_bi(rng, 3, 3)
        full = funcalc.full_difference(f, t0, r0, t1, r1, 3)
        parts = funcalc.diff_first(f, t0, t1, r1, 3) + funcalc.diff_second(
            f, t0, r0, r1, 3
        )
        np.testing.assert_array_equal(full, parts)

    def test_degree_violation(self):
        with pytest.raises(ValueError):
            funcalc.diff_first(np.ones((5, 5)), np.eye(2), np.eye(2), np.eye(2), 3)


class TestPathDerivative:
    def test_zero_velocities(self):
        rng = np.random.default_rng(15)
        t = linalg.random_contraction_from_rng(4, rng)
        r = linalg.random_contraction_from_rng(4, rng)
        f = random_bi(rng, 3, 3)
        z = np.zeros((4, 4))
        np.testing.assert_allclose(funcalc.path_derivative(f, t, z, r, z, 3), 0,
                                   atol=1e-13)

    def test_zw_constant_r(self):
        rng = np.random.default_rng(16)
        t, dt, r = (linalg.random_contraction_from_rng(4, rng) for _ in range(3))
        out = funcalc.path_derivative([[0, 0], [0, 1]], t, dt, r, np.zeros((4, 4)), 2)
        np.testing.assert_allclose(out, dt @ r, atol=1e-12)

    def test_finite_difference_oracle(self):
        rng = np.random.default_rng(17)
        t0 = linalg.random_contraction_from_rng(6, rng)
        r0 = linalg.random_contraction_from_rng(6, rng)
        f = random_bi(rng, 4, 4)
        s = 0.2

        def pair(u):
            return np.exp(1j * u) * t0, np.exp(-0.5j * u) * r0

        ts, rs = pair(s)
        deriv = funcalc.path_derivative(f, ts, 1j * ts, rs, -0.5j * rs, 4)
        h = 1e-5
        tp, rp = pair(s + h)
        tm, rm = pair(s - h)
        fd = (funcalc.f_of_pair(f, tp, rp) - funcalc.f_of_pair(f, tm, rm)) / (2 * h)
        assert linalg.schatten_norm(fd - deriv, np.inf) <= 1e-8 * (
            1 + linalg.schatten_norm(deriv, np.inf)
        )
