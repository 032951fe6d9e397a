"""Kernel tests: jet arithmetic against finite differences, linear algebra
helpers against elementary oracles, sampler reproducibility."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schrogeo import numkernel as nk
from schrogeo.numkernel import (
    ContractViolationError,
    Jet2,
    JetMatrix,
    SeededSampler,
    jet_det,
    jet_value,
    rank_nullspace,
    seed_point,
    sym_eigen,
)


def fd_grad_hess(f, x, h=1e-5):
    """Central-difference gradient and Hessian, the jet oracle."""
    x = np.asarray(x, dtype=float)
    n = x.size
    grad = np.zeros(n)
    hess = np.zeros((n, n))
    for i in range(n):
        xp, xm = x.copy(), x.copy()
        xp[i] += h
        xm[i] -= h
        grad[i] = (f(xp) - f(xm)) / (2 * h)
    f0 = f(x)
    for i in range(n):
        for j in range(n):
            if i == j:
                xp, xm = x.copy(), x.copy()
                xp[i] += h
                xm[i] -= h
                hess[i, i] = (f(xp) - 2 * f0 + f(xm)) / (h * h)
                continue
            xpp, xpm, xmp, xmm = x.copy(), x.copy(), x.copy(), x.copy()
            xpp[i] += h
            xpp[j] += h
            xmm[i] -= h
            xmm[j] -= h
            xpm[i] += h
            xpm[j] -= h
            xmp[i] -= h
            xmp[j] += h
            hess[i, j] = (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4 * h * h)
    return grad, hess


def scalar_fn_jets(p):
    x, y = p[0], p[1]
    return nk.sin(x) * nk.exp(y) + x * x * x * y + nk.sqrt(2.0 + x) / (1.0 + y * y)


def scalar_fn_floats(p):
    x, y = p[0], p[1]
    return np.sin(x) * np.exp(y) + x**3 * y + np.sqrt(2.0 + x) / (1.0 + y * y)


class TestJet2:
    def test_matches_finite_differences(self):
        p = [0.4, -0.7]
        j = scalar_fn_jets(seed_point(p))
        grad, hess = fd_grad_hess(scalar_fn_floats, p)
        assert j.value == pytest.approx(scalar_fn_floats(np.array(p)), abs=1e-14)
        assert np.abs(j.grad - grad).max() < 1e-9
        assert np.abs(j.hess - hess).max() < 1e-5

    def test_log_pow_chain(self):
        def f_jets(p):
            return nk.log(3.0 + nk.cos(p[0])) * p[1] ** 4

        def f_floats(p):
            return np.log(3.0 + np.cos(p[0])) * p[1] ** 4

        p = [1.1, 0.6]
        j = f_jets(seed_point(p))
        grad, hess = fd_grad_hess(f_floats, p)
        assert np.abs(j.grad - grad).max() < 1e-9
        assert np.abs(j.hess - hess).max() < 1e-5

    def test_division_and_rpow(self):
        p = [0.5, 0.25]
        j = (1.0 / (seed_point(p)[0] + 2.0)) * seed_point(p)[1] ** 0.5

        def f(q):
            return (1.0 / (q[0] + 2.0)) * q[1] ** 0.5

        grad, hess = fd_grad_hess(f, p)
        assert np.abs(j.grad - grad).max() < 1e-8
        assert np.abs(j.hess - hess).max() < 1e-4

    def test_hessian_symmetry(self):
        j = scalar_fn_jets(seed_point([0.3, 0.9]))
        assert np.abs(j.hess - j.hess.T).max() == 0.0

    def test_complex_combination(self):
        p = [0.2, -0.4]
        x, y = seed_point(p)
        j = (nk.cos(x) + 1j * nk.sin(x)) * y
        expected = (np.cos(0.2) + 1j * np.sin(0.2)) * (-0.4)
        assert abs(j.value - expected) < 1e-15

    def test_constant_and_variable(self):
        c = Jet2.constant(3.5, 4)
        v = Jet2.variable(2.0, 1, 4)
        assert c.grad.tolist() == [0, 0, 0, 0]
        assert v.grad.tolist() == [0, 1, 0, 0]
        assert (c * v).value == 7.0

    def test_log_negative_raises(self):
        with pytest.raises(ContractViolationError):
            nk.log(Jet2.constant(-1.0, 2))

    @given(
        st.floats(-2, 2),
        st.floats(-2, 2),
        st.floats(-2, 2),
        st.floats(-2, 2),
    )
    @settings(max_examples=60, deadline=None)
    def test_product_rule_exact(self, a, b, c, d):
        # (fg)' = f'g + fg' holds to machine precision, no truncation error
        x = Jet2(a, np.array([b]), np.array([[c]]))
        y = Jet2(d, np.array([a]), np.array([[b]]))
        z = x * y
        assert z.grad[0] == pytest.approx(b * d + a * a, rel=1e-12, abs=1e-12)
        assert z.hess[0, 0] == pytest.approx(
            c * d + 2 * b * a + a * b, rel=1e-12, abs=1e-12
        )


class TestJetDet:
    def test_matches_numpy_on_floats(self):
        rng = np.random.default_rng(0)
        m = rng.normal(size=(4, 4))
        assert jet_det([list(r) for r in m]) == pytest.approx(
            np.linalg.det(m), rel=1e-12
        )

    def test_gradient_of_det(self):
        # d/da det([[a, 1], [1, a]]) = 2a
        a = Jet2.variable(1.7, 0, 1)
        d = jet_det([[a, 1.0], [1.0, a]])
        assert d.value == pytest.approx(1.7**2 - 1.0)
        assert d.grad[0] == pytest.approx(2 * 1.7)
        assert d.hess[0, 0] == pytest.approx(2.0)


class TestJetMatrix:
    def test_matmul_product_rule(self):
        rng = np.random.default_rng(1)
        n, dim = 3, 2

        def entries(p, shift):
            # polynomial matrix in the seeded coordinates
            return [
                [
                    (p[0] + shift) * (p[1] + i - j) + 0.5 * p[0] * p[0] * i
                    for j in range(n)
                ]
                for i in range(n)
            ]

        p = seed_point([0.3, -0.6])
        A = JetMatrix.from_entries(entries(p, 1.0), dim)
        B = JetMatrix.from_entries(entries(p, -2.0), dim)
        C = A @ B
        # oracle: multiply the Jet2 entries one by one
        rows_a = A.to_entries()
        rows_b = B.to_entries()
        for i in range(n):
            for j in range(n):
                manual = sum(
                    (rows_a[i][k] * rows_b[k][j] for k in range(n)),
                    Jet2.constant(0.0, dim),
                )
                got = C.entry(i, j)
                assert abs(got.value - manual.value) < 1e-13
                assert np.abs(got.grad - manual.grad).max() < 1e-13
                assert np.abs(got.hess - manual.hess).max() < 1e-12

    def test_constant_and_scale(self):
        m = np.eye(2)
        J = JetMatrix.constant(m, 3).scale(2.5)
        assert J.entry(0, 0).value == 2.5
        assert np.abs(J.entry(0, 0).grad).max() == 0.0

    def test_rmatmul_by_plain_matrix(self):
        p = seed_point([0.5])
        A = JetMatrix.from_entries([[p[0], 1.0], [0.0, p[0] * p[0]]], 1)
        M = np.array([[2.0, 0.0], [0.0, 3.0]])
        left = M @ A
        assert left.entry(0, 0).value == pytest.approx(1.0)
        assert left.entry(1, 1).grad[0] == pytest.approx(3.0)


class TestLinearAlgebra:
    def test_rank_by_construction(self):
        rng = np.random.default_rng(2)
        for r in (1, 2, 4):
            m = rng.normal(size=(6, r)) @ rng.normal(size=(r, 5))
            rank, null = rank_nullspace(m)
            assert rank == r
            assert null.shape == (5 - r, 5)
            if null.size:
                assert np.abs(m @ null.T).max() < 1e-10

    def test_nullspace_annihilates(self):
        m = np.array([[1.0, 2.0, 3.0]])
        rank, null = rank_nullspace(m)
        assert rank == 1
        assert null.shape[0] == 2
        assert np.abs(null @ m.T).max() < 1e-12

    def test_sym_eigen_char_poly(self):
        rng = np.random.default_rng(3)
        a = rng.normal(size=(5, 5))
        s = 0.5 * (a + a.T)
        vals = sym_eigen(s)
        # each eigenvalue is a root of det(S - x I)
        for v in vals:
            assert abs(np.linalg.det(s - v * np.eye(5))) < 1e-8
        assert list(vals) == sorted(vals)

    def test_sym_eigen_rejects_asymmetric(self):
        with pytest.raises(ContractViolationError):
            sym_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestSeededSampler:
    def test_reproducible(self):
        a = SeededSampler(11, [(-1, 1), (0, 2)]).points(8)
        b = SeededSampler(11, [(-1, 1), (0, 2)]).points(8)
        assert np.array_equal(a, b)

    def test_respects_boxes(self):
        pts = SeededSampler(4, [(-1, 1), (5, 6)]).points(50)
        assert pts[:, 0].min() >= -1 and pts[:, 0].max() <= 1
        assert pts[:, 1].min() >= 5 and pts[:, 1].max() <= 6

    def test_exclusion_counts(self):
        s = SeededSampler(7, [(-1, 1)], exclude=lambda p: p[0] < 0)
        pts = s.points(20)
        assert pts.min() >= 0
        assert s.rejections > 0

    def test_rejects_bad_boxes(self):
        with pytest.raises(ContractViolationError):
            SeededSampler(0, [(1.0, 1.0)])

    @given(st.integers(0, 2**31 - 1))
    @settings(max_examples=25, deadline=None)
    def test_any_seed_stays_inside(self, seed):
        p = SeededSampler(seed, [(-0.5, 0.5)]).sample()
        assert -0.5 <= p[0] <= 0.5
