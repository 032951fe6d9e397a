"""Algebra, group, and witness machinery: nilpotent structure of the special
element, commutant dimensions, the block constraints, and the moving-frame
one-form checked against hand-expanded formulas."""

import numpy as np
import pytest
import scipy.linalg

from schrogeo.ambient import (
    SchBlocks,
    StabilizerConstraintError,
    ambient_gram,
    ambient_gram_split,
    assemble_group_element,
    basis_change,
    bracket_fields,
    build_Z0,
    coadjoint_oneform,
    commutant_basis,
    component_witnesses,
    cone_point,
    decompose_sch,
    exp_algebra,
    extract_blocks,
    flat_gram_matrix,
    g_adjoint,
    group_inverse,
    projective_action,
    random_algebra_element,
    random_group_element,
    realize_field,
    sch_dimension,
    sch_matrix,
    xi_vector,
)
from schrogeo.numkernel import ContractViolationError


def generic_tangent(d, rng):
    """G-skew matrix outside the commutant: a tangent of the big isometry
    group at the identity.  Uses G^2 = 1."""
    G = ambient_gram(d)
    N = rng.normal(size=G.shape)
    return 0.5 * (N - G @ N.T @ G)


class TestSpecialElement:
    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_square_zero_rank_two(self, d):
        Z0 = build_Z0(d).matrix
        assert np.abs(Z0 @ Z0).max() == 0.0
        assert np.linalg.matrix_rank(Z0) == 2

    def test_g_skew(self):
        d = 2
        Z0 = build_Z0(d).matrix
        G = ambient_gram(d)
        assert np.abs(G @ Z0 + (G @ Z0).T).max() == 0.0

    def test_entries_d2(self):
        Z0 = build_Z0(2).matrix
        expected = np.zeros((6, 6))
        expected[3, 5] = 1.0
        expected[4, 2] = -1.0
        assert np.array_equal(Z0, expected)

    def test_basis_change_recovers_split_gram(self):
        d = 2
        S = basis_change(d)
        G = ambient_gram(d)
        assert np.abs(S.T @ G @ S - ambient_gram_split(d)).max() < 1e-14


class TestCommutant:
    @pytest.mark.parametrize("d,dim", [(1, 6), (2, 9), (3, 13), (4, 18)])
    def test_dimension(self, d, dim):
        basis = commutant_basis(d)
        assert len(basis) == dim
        assert sch_dimension(d) == dim

    def test_dimension_stable_under_tolerance(self):
        for tol in (1e-9, 1e-11):
            assert len(commutant_basis(2, tol=tol)) == 9

    @pytest.mark.parametrize("d", [1, 2])
    def test_closed_under_bracket(self, d):
        basis = commutant_basis(d)
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                Z = basis[i].matrix @ basis[j].matrix - basis[j].matrix @ basis[i].matrix
                blocks = decompose_sch(Z, d)
                assert np.abs(sch_matrix(blocks, d) - Z).max() < 1e-10

    def test_elements_commute_with_special(self):
        d = 2
        Z0 = build_Z0(d).matrix
        for e in commutant_basis(d):
            assert np.abs(e.matrix @ Z0 - Z0 @ e.matrix).max() < 1e-12

    def test_decompose_round_trip_random(self):
        rng = np.random.default_rng(12)
        for d in (1, 3):
            e = random_algebra_element(d, rng)
            again = sch_matrix(decompose_sch(e.matrix, d), d)
            assert np.abs(again - e.matrix).max() < 1e-12


class TestRealization:
    def test_frozen_field_values(self):
        # hand expansion of Lam x + Gam - (alpha/2) g(x,x) xi + (alpha t) x
        d = 2
        lam = np.zeros((4, 4))
        lam[0, 1] = -0.3
        lam[1, 0] = 0.3
        blocks = SchBlocks(
            Lam=lam, Gam=np.array([0.1, -0.2, 0.05, 0.3]), alpha=0.2, chi=0.0
        )
        field, rate = realize_field(blocks, d)
        x = [0.5, -0.3, 0.7, 0.2]
        vals = [float(v) for v in field.components(x)]
        assert vals == pytest.approx([0.26, -0.092, 0.148, 0.266], abs=1e-15)
        assert rate(x) == pytest.approx(0.14, abs=1e-15)

    def test_rejects_vertical_violation(self):
        d = 1
        lam = np.zeros((3, 3))
        lam[0, 2] = 1.0  # moves the vertical direction
        blocks = SchBlocks(Lam=lam, Gam=np.zeros(3), alpha=0.0, chi=0.0)
        with pytest.raises(ContractViolationError):
            realize_field(blocks, d)

    def test_field_bracket_reverses_matrix_bracket(self):
        rng = np.random.default_rng(5)
        d = 2
        e1 = random_algebra_element(d, rng)
        e2 = random_algebra_element(d, rng)
        for p in ([0.4, -0.2, 0.6, 0.1], [0.0, 0.3, -0.5, 0.9]):
            res = bracket_fields(e1, e2, d, p)
            assert res["minus"] < 1e-9
            assert res["plus"] > 1e-3  # the sign is not an accident


class TestGroup:
    def test_identity_blocks(self):
        d = 2
        blocks = extract_blocks(np.eye(d + 4), d)
        ge = assemble_group_element(blocks, d)
        assert np.abs(ge.matrix - np.eye(d + 4)).max() == 0.0

    def test_random_elements_satisfy_defining_relations(self):
        rng = np.random.default_rng(3)
        d = 2
        G = ambient_gram(d)
        Z0 = build_Z0(d).matrix
        for _ in range(10):
            ge = random_group_element(d, rng)
            A = ge.matrix
            assert np.abs(g_adjoint(A, G) @ A - np.eye(d + 4)).max() < 1e-10
            assert np.abs(A @ Z0 - Z0 @ A).max() < 1e-10

    def test_first_constraint_trips(self):
        d = 2
        blocks = extract_blocks(np.eye(d + 4), d)
        bad = blocks.__class__(
            L=blocks.L + 0.01,
            B=blocks.B,
            C=blocks.C,
            a=blocks.a,
            b=blocks.b,
            dd=blocks.dd,
            e=blocks.e,
        )
        with pytest.raises(StabilizerConstraintError) as exc:
            assemble_group_element(bad, d)
        assert exc.value.index == 1

    def test_third_constraint_trips(self):
        # scaling only the spatial block keeps the vertical relations intact
        d = 2
        rng = np.random.default_rng(8)
        ge = random_group_element(d, rng)
        blocks = extract_blocks(ge.matrix, d)
        L = blocks.L.copy()
        L[:d, :d] *= 1.01
        bad = blocks.__class__(
            L=L, B=blocks.B, C=blocks.C, a=blocks.a, b=blocks.b, dd=blocks.dd, e=blocks.e
        )
        with pytest.raises(StabilizerConstraintError) as exc:
            assemble_group_element(bad, d)
        assert exc.value.index == 3

    def test_exponential_of_translation_terminates(self):
        d = 2
        blocks = SchBlocks(
            Lam=np.zeros((4, 4)), Gam=np.array([0.3, -0.1, 0.2, 0.4]), alpha=0.0, chi=0.0
        )
        Z = sch_matrix(blocks, d)
        # nilpotent: third power vanishes identically
        assert np.abs(np.linalg.matrix_power(Z, 3)).max() == 0.0
        assert np.abs(exp_algebra(Z) - scipy.linalg.expm(Z)).max() < 1e-15

    def test_inverse_round_trip(self):
        rng = np.random.default_rng(21)
        d = 1
        ge = random_group_element(d, rng)
        inv = group_inverse(ge)
        assert np.abs(ge.matrix @ inv.matrix - np.eye(d + 4)).max() < 1e-12

    def test_projective_action_lifts_to_cone(self):
        rng = np.random.default_rng(30)
        d = 2
        for _ in range(8):
            ge = random_group_element(d, rng)
            x = rng.uniform(-0.8, 0.8, size=d + 2)
            r = rng.uniform(0.5, 1.5)
            xp, rp = projective_action(ge, x, r)
            lifted = ge.matrix @ cone_point(x, r)
            assert np.abs(lifted - cone_point(xp, rp)).max() < 1e-12


class TestWitnesses:
    def test_component_splitting(self):
        rep = component_witnesses(2)
        assert rep.commutator_norms["identity"] == 0.0
        assert rep.commutator_norms["P"] == 0.0
        assert rep.commutator_norms["T"] > 0.1
        assert rep.commutator_norms["PT"] > 0.1
        assert rep.conjugation_residual < 1e-12
        for v in rep.isometry_residuals.values():
            assert v < 1e-12


class TestCoadjoint:
    def test_moving_frame_identity(self):
        rng = np.random.default_rng(17)
        d = 2
        ge = random_group_element(d, rng)
        A = ge.matrix
        W1, W2 = generic_tangent(d, rng), generic_tangent(d, rng)
        sample = coadjoint_oneform(A, A @ W1, A @ W2, d)
        assert sample.varpi == pytest.approx(sample.pbar_dq, abs=1e-14)
        assert abs(sample.varpi) > 1e-4  # genuinely nonzero on generic tangents

    def test_left_invariance(self):
        rng = np.random.default_rng(19)
        d = 1
        ge = random_group_element(d, rng)
        W = generic_tangent(d, rng)
        Wp = generic_tangent(d, rng)
        at_e = coadjoint_oneform(np.eye(d + 4), W, Wp, d)
        at_a = coadjoint_oneform(ge.matrix, ge.matrix @ W, ge.matrix @ Wp, d)
        assert at_a.varpi == pytest.approx(at_e.varpi, abs=1e-13)

    def test_vanishes_on_commutant_directions(self):
        # the form only sees directions transverse to the stabilizer
        d = 2
        basis = commutant_basis(d)
        for e in basis:
            s = coadjoint_oneform(np.eye(d + 4), e.matrix, basis[0].matrix, d)
            assert abs(s.varpi) < 1e-14

    def test_rejects_non_tangent(self):
        d = 1
        rng = np.random.default_rng(2)
        with pytest.raises(ContractViolationError):
            coadjoint_oneform(
                np.eye(d + 4), rng.normal(size=(d + 4, d + 4)), generic_tangent(d, rng), d
            )

    def test_rejects_non_isometry_base(self):
        d = 1
        rng = np.random.default_rng(4)
        W = generic_tangent(d, rng)
        with pytest.raises(ContractViolationError):
            coadjoint_oneform(1.1 * np.eye(d + 4), W, W, d)


class TestVerticalCompatibility:
    def test_realized_fields_commute_with_vertical(self):
        from schrogeo.bargmann import flat_bargmann
        from schrogeo.geometry import lie_bracket

        d = 2
        bg = flat_bargmann(d)
        for e in commutant_basis(d):
            field, _ = realize_field(e.blocks, d)
            br = lie_bracket(field, bg.xi, [0.3, -0.6, 0.8, 0.2])
            assert np.abs(br).max() < 1e-12

    def test_xi_vector_layout(self):
        xi = xi_vector(3)
        assert xi.tolist() == [0, 0, 0, 0, 1]
        g = flat_gram_matrix(3)
        assert g @ xi @ xi == 0.0  # null direction
