"""Tests for rotations, Euler angles and Wigner D-matrices."""

import math

import numpy as np
import pytest

from src.sphere.harmonics import HarmonicSpace
from src.sphere.rotations import (
    RotationSet,
    default_rotation_set,
    euler_zyz,
    random_rotation,
    rotation_problems,
    rotation_set_from_matrices,
    rx,
    ry,
    rz,
    wigner_D,
    wigner_d_explicit,
    wigner_small_d,
)


class TestRotationMatrices:
    """Tests for elementary rotations and rotation checks."""

    def test_elementary_rotations_are_proper(self):
        for m in (rx(0.3), ry(-1.2), rz(2.0)):
            assert rotation_problems(m) == []

    def test_reflection_rejected(self):
        problems = rotation_problems(np.diag([1.0, 1.0, -1.0]))
        assert any("det" in p for p in problems)

    def test_non_orthogonal_rejected(self):
        problems = rotation_problems(np.diag([1.0, 2.0, 0.5]))
        assert any("R^T R" in p for p in problems)

    def test_shape_rejected(self):
        assert rotation_problems(np.eye(2)) == ["shape (2, 2) is not (3, 3)"]

    def test_random_rotation(self, rng):
        assert rotation_problems(random_rotation(rng)) == []


class TestEulerAngles:
    """Tests for the zyz decomposition."""

    def test_recovers_generic_angles(self):
        alpha, beta, gamma = 0.4, 1.1, -2.0
        R = rz(alpha) @ ry(beta) @ rz(gamma)
        assert euler_zyz(R) == pytest.approx((alpha, beta, gamma))

    def test_reconstructs_random_rotations(self, rng):
        for _ in range(10):
            R = random_rotation(rng)
            a, b, c = euler_zyz(R)
            np.testing.assert_allclose(rz(a) @ ry(b) @ rz(c), R, atol=1e-12)

    def test_gimbal_lock(self):
        a, b, c = euler_zyz(rz(0.7))
        assert (a, b, c) == pytest.approx((0.7, 0.0, 0.0))
        R = rz(0.3) @ ry(math.pi)
        a, b, c = euler_zyz(R)
        np.testing.assert_allclose(rz(a) @ ry(b) @ rz(c), R, atol=1e-12)


class TestWignerD:
    """Tests for the representation matrices on H_s."""

    @pytest.mark.parametrize("s", [0, 1, 3, 6])
    def test_small_d_matches_explicit_sum(self, s):
        np.testing.assert_allclose(wigner_small_d(s, 0.7), wigner_d_explicit(s, 0.7), atol=1e-12)

    @pytest.mark.parametrize("beta", [0.3, 1.234, 3.0])
    def test_small_d_orthogonal_at_high_degree(self, beta):
        d = wigner_small_d(200, beta)
        assert np.max(np.abs(d @ d.T - np.eye(401))) <= 1e-10

    def test_small_d_degree_one(self):
        beta = 0.9
        d = wigner_small_d(1, beta)
        assert d[1, 1] == pytest.approx(math.cos(beta))
        assert d[2, 2] == pytest.approx((1 + math.cos(beta)) / 2)

    def test_identity(self):
        np.testing.assert_allclose(wigner_D(4, np.eye(3)), np.eye(9), atol=1e-12)

    def test_z_rotation_is_diagonal(self):
        alpha = 0.5
        m = np.arange(-3, 4)
        np.testing.assert_allclose(wigner_D(3, rz(alpha)), np.diag(np.exp(-1j * m * alpha)), atol=1e-12)

    @pytest.mark.parametrize("s", [1, 5, 20])
    def test_unitary_and_homomorphic(self, s, rng):
        for _ in range(5):
            R1, R2 = random_rotation(rng), random_rotation(rng)
            D1, D2 = wigner_D(s, R1), wigner_D(s, R2)
            np.testing.assert_allclose(D1.conj().T @ D1, np.eye(2 * s + 1), atol=1e-8)
            np.testing.assert_allclose(wigner_D(s, R1 @ R2), D1 @ D2, atol=1e-8)

    def test_pointwise_rotation(self, rng):
        """Coefficients D c describe x -> f(R^{-1} x)."""
        s = 6
        space = HarmonicSpace(s)
        c = rng.standard_normal(space.dim) + 1j * rng.standard_normal(space.dim)
        R = random_rotation(rng)
        x = rng.standard_normal((20, 3))
        x /= np.linalg.norm(x, axis=1, keepdims=True)
        rotated = space.evaluate(wigner_D(s, R) @ c, x)
        direct = space.evaluate(c, x @ R)
        np.testing.assert_allclose(rotated, direct, atol=1e-9)


class TestRotationSet:
    """Tests for generator sets."""

    def test_default_set(self):
        rots = default_rotation_set()
        assert rots.N == 2
        assert rots.q == 3
        assert rots.letters.shape == (4, 3, 3)
        np.testing.assert_allclose(rots.letters[1], rots.generators[0].T)

    def test_letter_names(self):
        rots = default_rotation_set()
        assert [rots.letter_name(i) for i in range(4)] == ["a", "A", "b", "B"]
        assert RotationSet.inverse_letter(2) == 3
        assert RotationSet.inverse_letter(3) == 2

    def test_needs_two_generators(self):
        with pytest.raises(ValueError, match="at least 2 generators"):
            rotation_set_from_matrices([rz(0.5)])

    def test_rejects_non_rotation(self):
        with pytest.raises(ValueError, match="generator 1"):
            rotation_set_from_matrices([rz(0.5), np.diag([1.0, 1.0, -1.0])])

    def test_generators_read_only(self):
        rots = default_rotation_set()
        with pytest.raises(ValueError):
            rots.generators[0][0, 0] = 1.0
