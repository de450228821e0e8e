"""
Model spaces ``K_theta = H^2 (-) theta H^2`` for finite Blaschke products.

``K_theta`` is spanned by the Takenaka-Malmquist system

    e_k(z) = sqrt(1 - |a_k|^2) / (1 - conj(a_k) z) * prod_{j<k} b_{a_j}(z),

which is orthonormal for any zero list, repeated zeros included.  Operators
restricted to model spaces are plain ``d x d`` matrices in these bases;
antilinear ones act by ``v -> matrix @ conj(v)`` as in :mod:`.operators`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence, Union

import numpy as np

from .blaschke import BlaschkeProduct, evaluate, to_grid
from .errors import ParameterError
from .fourier import (
    DEFAULT_GRID,
    Grid,
    LaurentFunction,
    conj_J,
    multiply,
    negative_part_norm,
    project_H2,
)
from .operators import BandMap

__all__ = [
    "ModelSpaceBasis",
    "TTOMatrix",
    "RestrictedMap",
    "tm_basis",
    "project",
    "project_formula",
    "kernel_k0",
    "kernel_k0_tilde",
    "tto_matrix",
    "truncated_shift",
    "restrict_antilinear",
    "membership_thetaH2",
]


@dataclass(frozen=True, eq=False)
class ModelSpaceBasis:
    """Orthonormal Takenaka-Malmquist basis of ``K_theta``."""

    theta: BlaschkeProduct
    basis: tuple
    grid: Grid

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def coeff_matrix(self) -> np.ndarray:
        """Row ``k`` holds the coefficients of ``e_k``."""
        return np.stack([e.coeffs for e in self.basis])

    def gram(self) -> np.ndarray:
        """``G[i, j] = <e_j, e_i>``."""
        E = self.coeff_matrix
        return np.conj(E) @ E.T

    def coordinates(self, f: LaurentFunction) -> np.ndarray:
        """``<f, e_k>`` for every basis vector."""
        return np.conj(self.coeff_matrix) @ f.coeffs

    def synthesize(self, c) -> LaurentFunction:
        return LaurentFunction.from_coeffs(np.asarray(c) @ self.coeff_matrix, self.grid)


class TTOMatrix(NamedTuple):
    """Truncated Toeplitz operator ``A_phi^theta`` in a model-space basis."""

    theta: BlaschkeProduct
    symbol: LaurentFunction
    matrix: np.ndarray


class RestrictedMap(NamedTuple):
    matrix: np.ndarray
    leakage: float


def tm_basis(theta: BlaschkeProduct, grid: Grid = DEFAULT_GRID) -> ModelSpaceBasis:
    """Takenaka-Malmquist basis of ``K_theta`` sampled on ``grid``."""
    if theta.is_constant():
        raise ParameterError("K_theta is trivial for constant theta")
    to_grid(theta, grid)  # admissibility of the zeros
    z = grid.nodes
    partial = np.ones(grid.M, dtype=complex)
    basis = []
    for a in theta.zeros:
        e = np.sqrt(1 - abs(a) ** 2) / (1 - np.conj(a) * z) * partial
        basis.append(LaurentFunction.from_samples(e, grid))
        partial = partial * evaluate(BlaschkeProduct((a,)), z)
    return ModelSpaceBasis(theta, tuple(basis), grid)


def project(f: LaurentFunction, B: ModelSpaceBasis) -> LaurentFunction:
    """Orthogonal projection ``P_theta f = sum_k <f, e_k> e_k``."""
    return B.synthesize(B.coordinates(f))


def project_formula(f: LaurentFunction, theta: BlaschkeProduct) -> LaurentFunction:
    """``P_theta = P_+ - M_theta P_+ M_conj(theta) P_+``, kept as an independent cross-check."""
    th = to_grid(theta, f.grid)
    pf = project_H2(f)
    return pf - multiply(th, project_H2(multiply(conj_J(th), pf)))


def kernel_k0(alpha: BlaschkeProduct, grid: Grid = DEFAULT_GRID) -> LaurentFunction:
    """Reproducing kernel of ``K_alpha`` at the origin, ``1 - conj(alpha(0)) alpha``."""
    if alpha.is_constant():
        raise ParameterError("kernel needs a nonconstant inner function")
    a0 = complex(evaluate(alpha, 0.0))
    return 1 - np.conj(a0) * to_grid(alpha, grid)


def kernel_k0_tilde(alpha: BlaschkeProduct, grid: Grid = DEFAULT_GRID) -> LaurentFunction:
    """Conjugate kernel ``conj(z) (alpha - alpha(0))``."""
    if alpha.is_constant():
        raise ParameterError("kernel needs a nonconstant inner function")
    a0 = complex(evaluate(alpha, 0.0))
    return LaurentFunction.monomial(-1, grid) * (to_grid(alpha, grid) - a0)


def tto_matrix(phi: LaurentFunction, B: ModelSpaceBasis) -> TTOMatrix:
    """
    Matrix of ``A_phi^theta f = P_theta(phi f)``.

    Entries are ``<P_theta(phi e_j), e_i> = <phi e_j, e_i>`` since ``P_theta``
    is self-adjoint and fixes ``e_i``.
    """
    products = np.stack([multiply(phi, e).coeffs for e in B.basis])
    return TTOMatrix(B.theta, phi, np.conj(B.coeff_matrix) @ products.T)


def truncated_shift(B: ModelSpaceBasis) -> TTOMatrix:
    """``A_z^theta``."""
    return tto_matrix(LaurentFunction.monomial(1, B.grid), B)


AntilinearLike = Union[BandMap, Callable[[LaurentFunction], LaurentFunction]]


def _apply(A: AntilinearLike, f: LaurentFunction) -> LaurentFunction:
    if isinstance(A, BandMap):
        return A.apply(f)
    return A(f)


def restrict_antilinear(A: AntilinearLike, src: Union[ModelSpaceBasis, Sequence[LaurentFunction]],
                        dst: ModelSpaceBasis) -> RestrictedMap:
    """
    Matrix of ``P_dst A`` on the vectors of ``src`` and how far ``A`` leaks out of ``dst``.

    ``A`` is an :class:`~conjulab.operators.AntilinearMap` or any antilinear
    callable on grid functions.  ``src`` may be a model-space basis or any
    orthonormal list (e.g. ``gamma * e_k`` spanning ``gamma K_alpha``).
    Entry ``[i, k] = <A src_k, dst_i>``; leakage is
    ``max_k ||A src_k - P_dst A src_k||``.
    """
    vectors = src.basis if isinstance(src, ModelSpaceBasis) else tuple(src)
    images = [_apply(A, v) for v in vectors]
    D = np.conj(dst.coeff_matrix)
    matrix = np.stack([D @ img.coeffs for img in images], axis=1)
    leak = 0.0
    for k, img in enumerate(images):
        resid = img.coeffs - matrix[:, k] @ dst.coeff_matrix
        leak = max(leak, float(np.linalg.norm(resid)))
    return RestrictedMap(matrix, leak)


def membership_thetaH2(f: LaurentFunction, theta: BlaschkeProduct) -> float:
    """Distance from ``f`` to ``theta H^2``: norm of the negative part of ``conj(theta) f``."""
    return negative_part_norm(multiply(conj_J(to_grid(theta, f.grid)), f))
