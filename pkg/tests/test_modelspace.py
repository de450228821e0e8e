import numpy as np
import pytest

from conjulab.blaschke import BlaschkeProduct, factor, monomial, sharp as bsharp, to_grid
from conjulab.corpus import random_analytic_symbol, random_blaschke, random_probe
from conjulab.errors import ParameterError
from conjulab.fourier import DEFAULT_GRID, LaurentFunction, conj_J, distance, multiply, sharp
from conjulab.modelspace import (
    kernel_k0,
    kernel_k0_tilde,
    membership_thetaH2,
    project,
    project_formula,
    restrict_antilinear,
    tm_basis,
    tto_matrix,
    truncated_shift,
)
from conjulab.theorems import c_theta

G = DEFAULT_GRID
THETA2 = BlaschkeProduct((0.5, -0.3 + 0.4j))

# mpmath quadrature (30 digits) of <phi e_j, e_i>; basis built from the zeros in order (-0.3+0.4i, 0.5)
AZ_ORACLE = np.array([[-0.3 + 0.4j, 0.0], [0.45 - 0.6j, 0.5]])
APHI_ORACLE = np.array([[-0.44 + 0.88j, 0.66 - 0.12j], [0.45 - 0.6j, 1.0]])  # phi = z + 2 conj(z)^2
# Taylor coefficients of 1 - conj(alpha(0)) alpha for alpha = THETA2
K0_ORACLE = [0.9375, 0.0375 - 0.075j, 0.118125 + 0.1575j, 0.10725 - 0.0195j]


def mono(k, c=1.0):
    return LaurentFunction.monomial(k, G, c)


class TestBasis:
    def test_monomial_space(self):
        B = tm_basis(monomial(3), G)
        for k, ek in enumerate(B.basis):
            assert distance(ek, mono(k)) < 1e-14

    def test_single_factor(self):
        (e0,) = tm_basis(factor(0.5), G).basis
        ref = LaurentFunction.from_callable(lambda z: np.sqrt(0.75) / (1 - 0.5 * z), G)
        assert distance(e0, ref) < 1e-14

    def test_constant_refused(self):
        with pytest.raises(ParameterError):
            tm_basis(BlaschkeProduct(), G)

    @pytest.mark.parametrize("zeros", [(0.5j, 0.3 + 0.2j), (0.4, 0.4, 0.4j, -0.6), (0j, 0j, 0.7 - 0.1j)])
    def test_orthonormal_and_orthogonal_to_thetaH2(self, zeros):
        theta = BlaschkeProduct(zeros)
        B = tm_basis(theta, G)
        assert np.max(np.abs(B.gram() - np.eye(B.dim))) < 1e-10
        th = to_grid(theta, G)
        for m in range(2 * B.dim + 1):
            assert np.max(np.abs(B.coordinates(multiply(th, mono(m))))) < 1e-10


class TestProjection:
    def test_example(self):
        B = tm_basis(monomial(2), G)
        assert distance(project(mono(0) + mono(1) + mono(2), B), mono(0) + mono(1)) < 1e-14

    def test_kills_thetaH2_and_antianalytic(self, rng):
        B = tm_basis(THETA2, G)
        g = random_analytic_symbol(rng, G)
        assert project(multiply(to_grid(THETA2, G), g), B).norm() < 1e-10
        assert project(mono(-3), B).norm() < 1e-10

    def test_fixes_basis(self):
        B = tm_basis(THETA2, G)
        for ek in B.basis:
            assert distance(project(ek, B), ek) < 1e-14

    def test_matches_formula(self, rng):
        for _ in range(5):
            theta = random_blaschke(rng, 4)
            f = random_probe(rng, G)
            assert distance(project(f, tm_basis(theta, G)), project_formula(f, theta)) < 1e-9


class TestKernels:
    def test_zero_at_origin(self):
        assert distance(kernel_k0(monomial(1) * factor(0.4), G), mono(0)) < 1e-14

    def test_tilde_monomial(self):
        assert distance(kernel_k0_tilde(monomial(2), G), mono(1)) < 1e-14

    def test_single_factor(self):
        ref = 1 - 0.5 * to_grid(factor(0.5), G)
        assert distance(kernel_k0(factor(0.5), G), ref) < 1e-14

    def test_oracle(self):
        k0 = kernel_k0(THETA2, G)
        assert np.allclose([k0.coeff(n) for n in range(4)], K0_ORACLE, atol=1e-14, rtol=0)

    def test_membership_and_conjugation(self, rng):
        for _ in range(5):
            alpha = random_blaschke(rng, 3)
            B = tm_basis(alpha, G)
            k0, kt = kernel_k0(alpha, G), kernel_k0_tilde(alpha, G)
            assert distance(project(k0, B), k0) < 1e-10
            assert distance(project(kt, B), kt) < 1e-10
            assert distance(c_theta(alpha, G)(k0), kt) < 1e-10


class TestTTO:
    def test_shift_on_monomial_space(self):
        assert np.allclose(truncated_shift(tm_basis(monomial(3), G)).matrix, np.eye(3, k=-1), atol=1e-14)

    def test_identity_symbol(self):
        B = tm_basis(THETA2, G)
        assert np.allclose(tto_matrix(mono(0), B).matrix, np.eye(2), atol=1e-14)

    def test_oracles(self):
        B = tm_basis(THETA2, G)
        assert np.allclose(B.theta.zeros, (-0.3 + 0.4j, 0.5))
        assert np.allclose(truncated_shift(B).matrix, AZ_ORACLE, atol=1e-12)
        phi = mono(1) + mono(-2, 2.0)
        assert np.allclose(tto_matrix(phi, B).matrix, APHI_ORACLE, atol=1e-12)

    def test_ctheta_symmetry_hand_case(self):
        B = tm_basis(monomial(2), G)
        Ct = restrict_antilinear(c_theta(monomial(2), G), B, B).matrix
        A = truncated_shift(B).matrix
        assert np.allclose(Ct @ np.conj(A) @ np.conj(Ct), [[0, 1], [0, 0]], atol=1e-14)

    def test_sarason_symmetry(self, rng):
        theta = random_blaschke(rng, 5)
        B = tm_basis(theta, G)
        Ct = restrict_antilinear(c_theta(theta, G), B, B).matrix
        for _ in range(5):
            A = tto_matrix(random_analytic_symbol(rng, G), B).matrix
            assert np.linalg.norm(Ct @ np.conj(A) @ np.conj(Ct) - A.conj().T) < 1e-9

    def test_jstar_intertwines_compressions(self, rng):
        theta = random_blaschke(rng, 4)
        Bt, Bs = tm_basis(theta, G), tm_basis(bsharp(theta), G)
        Js = restrict_antilinear(sharp, Bs, Bt).matrix  # K_theta# -> K_theta
        phi = random_probe(rng, G, band=3)
        lhs = Js @ np.conj(tto_matrix(sharp(phi), Bs).matrix)
        rhs = tto_matrix(phi, Bt).matrix @ Js
        assert np.linalg.norm(lhs - rhs) < 1e-9


class TestRestriction:
    def test_jstar_onto_sharp_space(self, rng):
        alpha = random_blaschke(rng, 4)
        _, leak = restrict_antilinear(sharp, tm_basis(alpha, G), tm_basis(bsharp(alpha), G))
        assert leak < 1e-10

    def test_ctheta_preserves(self):
        B = tm_basis(THETA2, G)
        assert restrict_antilinear(c_theta(THETA2, G), B, B).leakage < 1e-10

    def test_jstar_not_preserving_nonreal(self):
        B = tm_basis(factor(0.3 + 0.4j), G)
        assert restrict_antilinear(sharp, B, B).leakage > 0.1

    def test_accepts_band_map(self):
        from conjulab.operators import build_Jstar
        B = tm_basis(monomial(3), G)
        m, leak = restrict_antilinear(build_Jstar(8), B, B)
        assert leak < 1e-14 and np.allclose(m, np.eye(3))


class TestMembership:
    def test_examples(self):
        assert membership_thetaH2(mono(3) * to_grid(THETA2, G), THETA2) < 1e-12
        assert membership_thetaH2(mono(0), monomial(1)) == pytest.approx(1)

    def test_constant_theta_is_hardy(self):
        assert membership_thetaH2(mono(-1), BlaschkeProduct()) == pytest.approx(1)
        assert membership_thetaH2(mono(2), BlaschkeProduct()) < 1e-14
