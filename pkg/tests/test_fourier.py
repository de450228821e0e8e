import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conjulab.blaschke import factor, to_grid
from conjulab.errors import ParameterError
from conjulab.fourier import (
    Grid,
    LaurentFunction,
    conj_J,
    distance,
    inner_product,
    is_symmetric,
    is_unimodular,
    multiply,
    project_H2,
    sharp,
)

SMALL = Grid(64, 16)

coeff = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


@st.composite
def laurent(draw, band=6):
    cs = draw(st.lists(coeff, min_size=2 * band + 1, max_size=2 * band + 1))
    return LaurentFunction.from_coeffs({n: c for n, c in zip(range(-band, band + 1), cs)}, SMALL)


def mono(k, c=1.0, grid=SMALL):
    return LaurentFunction.monomial(k, grid, c)


def close(f, g, tol=1e-12):
    return np.max(np.abs(f.coeffs - g.coeffs)) < tol


class TestGrid:
    def test_defaults(self):
        g = Grid()
        assert (g.M, g.N) == (4096, 1024)

    @pytest.mark.parametrize("M,N", [(100, 10), (64, 32), (64, -1), (2, 0)])
    def test_invalid(self, M, N):
        with pytest.raises(ParameterError):
            Grid(M, N)

    def test_nodes_on_circle(self):
        assert np.allclose(np.abs(SMALL.nodes), 1)


class TestInnerProduct:
    def test_orthogonal_monomials(self):
        assert abs(inner_product(mono(1), mono(0))) == 0

    def test_parseval_small(self):
        f = mono(0) + mono(1)
        assert inner_product(f, f) == pytest.approx(2)

    def test_blaschke_factor_unit(self, grid):
        b = to_grid(factor(0.5), grid)
        assert inner_product(b, b) == pytest.approx(1, abs=1e-12)

    def test_grid_mismatch(self):
        with pytest.raises(ParameterError):
            inner_product(mono(0), LaurentFunction.monomial(0, Grid(128, 16)))

    @given(laurent(), laurent())
    def test_quadrature_agrees(self, f, g):
        quad = np.mean(f.samples * np.conj(g.samples))
        assert abs(inner_product(f, g) - quad) < 1e-9 * (1 + f.norm() * g.norm())


class TestMultiply:
    def test_difference_of_squares(self):
        f = multiply(mono(0) + mono(1), mono(0) - mono(1))
        assert close(f, mono(0) - mono(2))

    def test_identity(self):
        f = mono(3, 2j) + mono(-2)
        assert close(multiply(f, mono(0)), f)

    def test_z_times_zbar(self):
        assert close(multiply(mono(1), mono(-1)), mono(0))

    def test_truncation_flag(self):
        assert not multiply(mono(10), mono(5)).truncated
        assert multiply(mono(10), mono(10)).truncated

    @given(laurent(4), laurent(4))
    def test_convolution(self, f, g):
        n = SMALL.N
        ref = np.convolve(f.coeffs[n - 4:n + 5], g.coeffs[n - 4:n + 5])
        out = multiply(f, g).coeffs[n - 8:n + 9]
        assert np.allclose(out, ref, atol=1e-10 * (1 + np.abs(ref).max()))


class TestConjugations:
    def test_J_example(self):
        f = conj_J(mono(0, 1j) + mono(1, 2))
        assert close(f, mono(0, -1j) + mono(-1, 2))

    def test_J_monomial(self):
        assert close(conj_J(mono(3)), mono(-3))

    def test_sharp_example(self):
        assert close(sharp(mono(1, 1j)), mono(1, -1j))

    @given(laurent())
    def test_involutions_exact(self, f):
        assert np.array_equal(conj_J(conj_J(f)).coeffs, f.coeffs)
        assert np.array_equal(sharp(sharp(f)).coeffs, f.coeffs)

    @given(laurent(), laurent())
    def test_isometry_law(self, f, g):
        scale = 1 + f.norm() * g.norm()
        assert abs(inner_product(conj_J(f), conj_J(g)) - inner_product(g, f)) < 1e-12 * scale
        assert abs(inner_product(sharp(f), sharp(g)) - inner_product(g, f)) < 1e-12 * scale

    @given(laurent(), laurent())
    def test_sharp_multiplicative(self, f, g):
        assert distance(sharp(multiply(f, g)), multiply(sharp(f), sharp(g))) < 1e-9 * (1 + f.norm() * g.norm())

    @given(laurent())
    def test_shift_relations(self, f):
        z = mono(1)
        assert close(sharp(multiply(z, f)), multiply(z, sharp(f)), 1e-10 * (1 + f.norm()))
        assert close(conj_J(multiply(z, f)), multiply(mono(-1), conj_J(f)), 1e-10 * (1 + f.norm()))

    @given(laurent())
    def test_sharp_samples(self, f):
        # f#(z_j) = conj(f(conj z_j)) at the reflected node
        s = sharp(f).samples
        assert np.allclose(s[1:], np.conj(f.samples[1:][::-1]))


class TestProjection:
    def test_example(self):
        assert close(project_H2(mono(1) + mono(-1)), mono(1))

    @given(laurent())
    def test_idempotent(self, f):
        p = project_H2(f)
        assert close(project_H2(p), p)

    @given(laurent(), laurent())
    def test_self_adjoint(self, f, g):
        lhs = inner_product(project_H2(f), g)
        rhs = inner_product(f, project_H2(g))
        assert abs(lhs - rhs) < 1e-12 * (1 + f.norm() * g.norm())


class TestPredicates:
    def test_symmetric(self):
        assert is_symmetric(mono(1) + mono(-1)).ok
        assert not is_symmetric(mono(1) - mono(-1)).ok

    def test_unimodular(self, grid):
        assert is_unimodular(mono(5)).ok
        assert is_unimodular(to_grid(factor(0.3 - 0.6j), grid)).ok
        assert not is_unimodular(mono(0) + mono(1)).ok

    def test_nonconstant_inner_never_symmetric(self, rng, grid):
        from conjulab.corpus import random_blaschke
        for _ in range(20):
            B = random_blaschke(rng, int(rng.integers(1, 7)))
            assert is_symmetric(to_grid(B, grid)).residual > 1e-3


class TestRoundTrip:
    @given(laurent(16))
    def test_samples_coeffs(self, f):
        back = LaurentFunction.from_samples(f.samples, SMALL)
        assert close(back, f, 1e-12 * (1 + f.norm()))

    def test_from_callable(self):
        f = LaurentFunction.from_callable(lambda z: z ** 2 + 3 / z, SMALL)
        assert close(f, mono(2) + mono(-1, 3))
