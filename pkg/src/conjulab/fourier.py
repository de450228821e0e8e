"""
Truncated Laurent representation of functions in L^2 of the unit circle.

A function is held twice: as samples on the uniform grid
``z_j = exp(2 pi i j / M)`` and as its Fourier coefficients ``a_n`` for
``-N <= n <= N``.  The normalized arc-length measure becomes the uniform
quadrature weight ``1/M``.  Pointwise operations (products, ``J``, ``#``)
act on the samples exactly; the coefficients are always the DFT of the
samples restricted to the band.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from numbers import Number
from typing import Callable, NamedTuple

import numpy as np

from .errors import ParameterError

__all__ = [
    "Grid",
    "DEFAULT_GRID",
    "LaurentFunction",
    "Verdict",
    "inner_product",
    "multiply",
    "conj_J",
    "sharp",
    "project_H2",
    "is_symmetric",
    "is_unimodular",
    "negative_part_norm",
    "distance",
]

# out-of-band coefficient magnitude above which a product is flagged as truncated
TRUNCATION_TOL = 1e-13


@dataclass(frozen=True)
class Grid:
    """Sampling grid of size ``M`` (power of two) with band limit ``N``."""

    M: int = 4096
    N: int = 1024

    def __post_init__(self):
        if self.M < 4 or self.M & (self.M - 1):
            raise ParameterError(f"grid size M={self.M} must be a power of two >= 4")
        if not 0 <= self.N <= self.M // 2 - 1:
            raise ParameterError(f"band N={self.N} must satisfy 0 <= N <= M/2 - 1 = {self.M // 2 - 1}")

    @classmethod
    def for_band(cls, N: int) -> "Grid":
        """Smallest grid able to hold band ``N``."""
        M = 4
        while M // 2 - 1 < N:
            M *= 2
        return cls(M, N)

    @property
    def nodes(self) -> np.ndarray:
        return _nodes(self.M)

    @property
    def indices(self) -> np.ndarray:
        """Frequencies ``-N..N`` in storage order."""
        return np.arange(-self.N, self.N + 1)


@lru_cache(maxsize=16)
def _nodes(M: int) -> np.ndarray:
    z = np.exp(2j * np.pi * np.arange(M) / M)
    z.setflags(write=False)
    return z


DEFAULT_GRID = Grid()


class Verdict(NamedTuple):
    ok: bool
    residual: float


@dataclass(frozen=True, eq=False)
class LaurentFunction:
    """
    A function on the unit circle held as grid samples and banded coefficients.

    Build instances with :meth:`from_samples`, :meth:`from_coeffs` or
    :meth:`from_callable`; the raw constructor does not check consistency.

    Attributes
    ----------
    samples : ndarray, shape (M,)
        Values at ``z_j = exp(2 pi i j / M)``.
    coeffs : ndarray, shape (2N+1,)
        ``coeffs[n + N]`` is the Fourier coefficient ``a_n``.
    grid : Grid
    truncated : bool
        Set when a product produced coefficients outside ``[-N, N]`` that
        the coefficient view drops.
    """

    samples: np.ndarray
    coeffs: np.ndarray
    grid: Grid
    truncated: bool = False

    def __post_init__(self):
        self.samples.setflags(write=False)
        self.coeffs.setflags(write=False)

    # -- construction ---------------------------------------------------

    @classmethod
    def from_samples(cls, samples, grid: Grid = DEFAULT_GRID, truncated: bool = False) -> "LaurentFunction":
        samples = np.array(samples, dtype=complex)
        if samples.shape != (grid.M,):
            raise ParameterError(f"expected {grid.M} samples, got shape {samples.shape}")
        spectrum = np.fft.fft(samples) / grid.M
        coeffs = spectrum[grid.indices % grid.M]
        return cls(samples, coeffs, grid, truncated)

    @classmethod
    def from_coeffs(cls, coeffs, grid: Grid = DEFAULT_GRID) -> "LaurentFunction":
        """
        Build from coefficients.

        ``coeffs`` is either an array of length ``2N+1`` in storage order or a
        mapping ``{n: a_n}``.
        """
        if isinstance(coeffs, dict):
            arr = np.zeros(2 * grid.N + 1, dtype=complex)
            for n, a in coeffs.items():
                if abs(n) > grid.N:
                    raise ParameterError(f"frequency {n} outside band {grid.N}")
                arr[n + grid.N] = a
        else:
            arr = np.array(coeffs, dtype=complex)
            if arr.shape != (2 * grid.N + 1,):
                raise ParameterError(f"expected {2 * grid.N + 1} coefficients, got shape {arr.shape}")
        spectrum = np.zeros(grid.M, dtype=complex)
        spectrum[grid.indices % grid.M] = arr
        samples = np.fft.ifft(spectrum) * grid.M
        return cls(samples, arr, grid)

    @classmethod
    def from_callable(cls, fn: Callable[[np.ndarray], np.ndarray], grid: Grid = DEFAULT_GRID) -> "LaurentFunction":
        return cls.from_samples(fn(grid.nodes), grid)

    @classmethod
    def constant(cls, c: complex, grid: Grid = DEFAULT_GRID) -> "LaurentFunction":
        return cls.from_coeffs({0: c}, grid)

    @classmethod
    def monomial(cls, k: int, grid: Grid = DEFAULT_GRID, c: complex = 1.0) -> "LaurentFunction":
        return cls.from_coeffs({k: c}, grid)

    # -- accessors --------------------------------------------------------

    @property
    def M(self) -> int:
        return self.grid.M

    @property
    def N(self) -> int:
        return self.grid.N

    def coeff(self, n: int) -> complex:
        if abs(n) > self.N:
            return 0j
        return complex(self.coeffs[n + self.N])

    def norm(self) -> float:
        """L^2 norm from the coefficients (Parseval)."""
        return float(np.linalg.norm(self.coeffs))

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.samples)))

    # -- arithmetic -------------------------------------------------------

    def _combine(self, other, op) -> "LaurentFunction":
        if isinstance(other, LaurentFunction):
            _check_same_grid(self, other)
            return LaurentFunction(op(self.samples, other.samples), op(self.coeffs, other.coeffs),
                                   self.grid, self.truncated or other.truncated)
        if isinstance(other, Number):
            c = LaurentFunction.constant(complex(other), self.grid)
            return self._combine(c, op)
        return NotImplemented

    def __add__(self, other):
        return self._combine(other, np.add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, np.subtract)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return LaurentFunction(-self.samples, -self.coeffs, self.grid, self.truncated)

    def __mul__(self, other):
        if isinstance(other, LaurentFunction):
            return multiply(self, other)
        if isinstance(other, Number):
            c = complex(other)
            return LaurentFunction(c * self.samples, c * self.coeffs, self.grid, self.truncated)
        return NotImplemented

    __rmul__ = __mul__

    def __repr__(self):
        head = {n: np.round(self.coeff(n), 6) for n in range(-2, 3) if abs(self.coeff(n)) > 1e-12}
        return f"LaurentFunction(M={self.M}, N={self.N}, coeffs~{head})"


def _check_same_grid(f: LaurentFunction, g: LaurentFunction):
    if f.grid != g.grid:
        raise ParameterError(f"grid mismatch: {f.grid} vs {g.grid}")


def inner_product(f: LaurentFunction, g: LaurentFunction) -> complex:
    """``<f, g> = sum_n a_n conj(b_n)``, linear in ``f``."""
    _check_same_grid(f, g)
    return complex(np.vdot(g.coeffs, f.coeffs))


def multiply(f: LaurentFunction, g: LaurentFunction) -> LaurentFunction:
    """
    Pointwise product (the multiplication operator ``M_f`` applied to ``g``).

    The samples are exact. If the product carries coefficient mass outside
    ``[-N, N]`` the result is flagged ``truncated``; callers that need the
    coefficient view should then widen ``N``.
    """
    _check_same_grid(f, g)
    grid = f.grid
    samples = f.samples * g.samples
    spectrum = np.fft.fft(samples) / grid.M
    coeffs = spectrum[grid.indices % grid.M]
    outside = np.delete(np.abs(spectrum), grid.indices % grid.M)
    overflow = outside.size > 0 and outside.max() > TRUNCATION_TOL * max(1.0, np.abs(coeffs).max())
    return LaurentFunction(samples, coeffs, grid, bool(f.truncated or g.truncated or overflow))


def conj_J(f: LaurentFunction) -> LaurentFunction:
    """``Jf = conj(f)``; on coefficients ``c_n = conj(a_{-n})``."""
    return LaurentFunction(np.conj(f.samples), np.conj(f.coeffs[::-1]), f.grid, f.truncated)


def sharp(f: LaurentFunction) -> LaurentFunction:
    """``f#(z) = conj(f(conj z))``; on coefficients ``c_n = conj(a_n)``."""
    reflected = np.roll(f.samples[::-1], 1)  # index j -> -j mod M
    return LaurentFunction(np.conj(reflected), np.conj(f.coeffs), f.grid, f.truncated)


def project_H2(f: LaurentFunction) -> LaurentFunction:
    """Orthogonal projection onto H^2: drop every coefficient with ``n < 0``."""
    coeffs = np.array(f.coeffs)
    coeffs[: f.N] = 0
    return LaurentFunction.from_coeffs(coeffs, f.grid)


def negative_part_norm(f: LaurentFunction) -> float:
    """Norm of the component orthogonal to H^2."""
    return float(np.linalg.norm(f.coeffs[: f.N]))


def is_symmetric(f: LaurentFunction, tol: float = 1e-10) -> Verdict:
    """``f(z) = f(conj z)``, i.e. ``a_n = a_{-n}``; residual is the max coefficient gap."""
    residual = float(np.max(np.abs(f.coeffs - f.coeffs[::-1])))
    return Verdict(residual < tol, residual)


def is_unimodular(f: LaurentFunction, tol: float = 1e-10) -> Verdict:
    residual = float(np.max(np.abs(np.abs(f.samples) - 1.0)))
    return Verdict(residual < tol, residual)


def distance(f: LaurentFunction, g: LaurentFunction) -> float:
    """L^2 distance by grid quadrature (sees content outside the band too)."""
    _check_same_grid(f, g)
    return float(np.sqrt(np.mean(np.abs(f.samples - g.samples) ** 2)))
