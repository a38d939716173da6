"""Tests for T_q on H_s, the joint eigenbasis and the measured gap."""

import math

import numpy as np
import pytest

from src.sphere.observables import SphereFunction, matrix_element_operator
from src.sphere.operator import (
    JointBasis,
    arc_shadow_norms,
    band_gap,
    joint_basis,
    joint_basis_problems,
    moment_trace,
    sphere_gap,
    time_averaged_matrix_direct,
    time_averaged_matrix_sphere,
    tq_on_hs,
)
from src.spectral.params import trivial_eigenvalue
from src.utils.errors import NumericalFailure


def degree_one_eigenvalues(rots):
    """On H_1, T_q acts on linear functions v.x as q^{-1/2} sum (g + g^T)."""
    total = sum(g + g.T for g in rots.generators) / math.sqrt(rots.q)
    return np.linalg.eigvalsh(total)


class TestTqOnHs:
    """Tests for the averaging operator matrix."""

    def test_constants(self, rots):
        np.testing.assert_allclose(tq_on_hs(0, rots), [[trivial_eigenvalue(3)]])

    def test_hermitian(self, rots):
        tq = tq_on_hs(5, rots)
        np.testing.assert_allclose(tq, tq.conj().T, atol=1e-14)

    def test_degree_one_matches_linear_action(self, rots):
        np.testing.assert_allclose(
            np.linalg.eigvalsh(tq_on_hs(1, rots)), degree_one_eigenvalues(rots), atol=1e-12
        )
        np.testing.assert_allclose(
            degree_one_eigenvalues(rots), np.array([2.4, 3.2, 3.2]) / math.sqrt(3), atol=1e-12
        )

    def test_spectrum_inside_trivial_bound(self, rots):
        values = np.linalg.eigvalsh(tq_on_hs(12, rots))
        assert np.all(np.abs(values) <= trivial_eigenvalue(3) + 1e-10)


class TestJointBasis:
    """Tests for the Hermitian eigensolve on H_s."""

    def test_invariants(self, rots):
        jb = joint_basis(6, rots)
        assert jb.dim == 13
        assert jb.unitarity_error() < 1e-10
        assert joint_basis_problems(jb, tq_on_hs(6, rots)) == []
        assert np.all(np.diff(jb.eigenvalues) >= 0)

    def test_gap_degree_one(self, rots):
        jb = joint_basis(1, rots)
        assert jb.lambda_star() == pytest.approx(3.2 / math.sqrt(3))
        assert jb.gap() == pytest.approx(math.log(3) / 2)

    def test_lambda_star_of_constants_is_zero(self, rots):
        assert joint_basis(0, rots).lambda_star() == 0.0

    def test_problems_reported(self):
        jb = JointBasis(s=1, q=3, eigenvalues=np.array([-3.0, 0.0, 0.0]), coefficients=2 * np.eye(3))
        problems = joint_basis_problems(jb)
        assert any("unitary" in p for p in problems)
        assert any("spectral band" in p for p in problems)

    def test_lapack_failure(self, rots, mocker):
        mocker.patch("scipy.linalg.eigh", side_effect=np.linalg.LinAlgError("boom"))
        with pytest.raises(NumericalFailure, match="H_2"):
            joint_basis(2, rots)


class TestMoments:
    """Tests for trace moments."""

    def test_order_zero_is_dimension(self, rots):
        assert moment_trace(4, rots, 0) == 9.0

    def test_degree_one(self, rots):
        assert moment_trace(1, rots, 1) == pytest.approx(8.8 / math.sqrt(3))
        assert moment_trace(1, rots, 2) == pytest.approx((2 * 3.2**2 + 2.4**2) / 3)

    def test_rejects_negative_order(self, rots):
        with pytest.raises(ValueError):
            moment_trace(1, rots, -1)


class TestSphereGap:
    """Tests for per-degree gaps and their running minimum."""

    def test_records(self, rots):
        records = sphere_gap([3, 1, 0, 2], rots)
        assert [r.s for r in records] == [1, 2, 3]
        assert records[0].beta == pytest.approx(math.log(3) / 2)
        running = [r.running_min for r in records]
        assert running == sorted(running, reverse=True)
        assert running[-1] == pytest.approx(min(r.beta for r in records))

    def test_band_gap(self, rots):
        assert band_gap(3, rots) == pytest.approx(min(r.beta for r in sphere_gap(range(1, 4), rots)))
        with pytest.raises(ValueError):
            band_gap(0, rots)


class TestTimeAverage:
    """Tests for the time-averaged matrix on H_s."""

    def test_eigenbasis_and_recurrence_agree_in_hs_norm(self, rots):
        s, T = 4, 3
        M = matrix_element_operator(s, SphereFunction.harmonic(2))
        jb = joint_basis(s, rots)
        in_basis = time_averaged_matrix_sphere(jb, M, T)
        direct = time_averaged_matrix_direct(tq_on_hs(s, rots), M, T)
        assert np.linalg.norm(in_basis) == pytest.approx(np.linalg.norm(direct), rel=1e-10)
        np.testing.assert_allclose(jb.coefficients @ in_basis @ jb.coefficients.conj().T, direct, atol=1e-10)


def test_arc_shadow_norms_decay(rots):
    eigenvalues = joint_basis(8, rots).eigenvalues
    norms = arc_shadow_norms(eigenvalues, rots.q, 15)
    assert norms[0] == 1.0
    assert norms[15] < norms[1]
