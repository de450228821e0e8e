"""
Linear and antilinear operators on the truncated monomial basis ``{z^n : |n| <= N}``.

An antilinear map is stored as a matrix ``A`` acting by ``v -> A @ conj(v)``,
so composition reduces to matrix algebra::

    linear     @ linear      -> linear      A @ B
    linear     @ antilinear  -> antilinear  A @ B
    antilinear @ linear      -> antilinear  A @ conj(B)
    antilinear @ antilinear  -> linear      A @ conj(B)

Multiplication matrices are truncated Toeplitz matrices and are exact only
away from the band edges.  Every map therefore carries a ``reach``: the
number of frequencies by which it can push ``|n|`` outward.  Residuals are
measured on the columns ``|n| <= N - reach`` of the expression being
tested, which keeps truncation artifacts out of the verdicts.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.linalg

from .blaschke import BlaschkeProduct, to_grid
from .errors import ParameterError
from .fourier import (
    DEFAULT_GRID,
    Grid,
    LaurentFunction,
    is_symmetric,
    is_unimodular,
)

log = logging.getLogger(__name__)

DEFAULT_BAND = 448
PROBE_WINDOW = 24
REACH_TOL = 1e-14


# ---------------------------------------------------------------------------
# coefficient vectors
# ---------------------------------------------------------------------------

def to_vector(f: LaurentFunction, band: int) -> np.ndarray:
    """Coefficients of ``f`` on ``[-band, band]`` (zero padded or cut)."""
    out = np.zeros(2 * band + 1, dtype=complex)
    k = min(band, f.N)
    out[band - k: band + k + 1] = f.coeffs[f.N - k: f.N + k + 1]
    return out


def from_vector(v: np.ndarray, grid: Optional[Grid] = None) -> LaurentFunction:
    band = (len(v) - 1) // 2
    grid = grid or Grid.for_band(band)
    coeffs = np.zeros(2 * grid.N + 1, dtype=complex)
    k = min(band, grid.N)
    coeffs[grid.N - k: grid.N + k + 1] = v[band - k: band + k + 1]
    return LaurentFunction.from_coeffs(coeffs, grid)


def reach(f: LaurentFunction, tol: float = REACH_TOL) -> int:
    """Largest ``|n|`` whose coefficient exceeds ``tol`` (relative to the peak)."""
    mags = np.abs(f.coeffs)
    scale = max(1.0, float(mags.max(initial=0.0)))
    big = np.nonzero(mags > tol * scale)[0]
    if big.size == 0:
        return 0
    return int(np.max(np.abs(big - f.N)))


def band_for(*reaches: int, window: int = PROBE_WINDOW) -> int:
    """Band leaving a probe window of ``window`` after two applications of the composed reach."""
    need = window + 2 * sum(reaches)
    return int(32 * math.ceil(need / 32))


# ---------------------------------------------------------------------------
# map types
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BandMap:
    matrix: np.ndarray
    reach: int = 0
    label: str = field(default="", compare=False)

    antilinear = False

    @property
    def band(self) -> int:
        return (self.matrix.shape[0] - 1) // 2

    def __matmul__(self, other):
        if not isinstance(other, BandMap):
            return NotImplemented
        if other.band != self.band:
            raise ParameterError(f"band mismatch: {self.band} vs {other.band}")
        rhs = np.conj(other.matrix) if self.antilinear else other.matrix
        cls = AntilinearMap if self.antilinear != other.antilinear else LinearMap
        label = f"{self.label}*{other.label}" if self.label and other.label else ""
        return cls(self.matrix @ rhs, self.reach + other.reach, label)

    def __call__(self, v: np.ndarray) -> np.ndarray:
        """Act on a coefficient vector, or on the columns of a block."""
        v = np.asarray(v, dtype=complex)
        x = np.conj(v) if self.antilinear else v
        # only the columns meeting the support of v contribute
        rows = np.flatnonzero(np.any(v != 0, axis=1) if v.ndim == 2 else v)
        if rows.size == 0:
            return np.zeros((self.matrix.shape[0],) + v.shape[1:], dtype=complex)
        lo, hi = rows[0], rows[-1] + 1
        return self.matrix[:, lo:hi] @ x[lo:hi]

    def apply(self, f: LaurentFunction) -> LaurentFunction:
        """Act on a grid function (cut to this band, result returned on ``f``'s grid)."""
        return from_vector(self(to_vector(f, self.band)), f.grid)


class LinearMap(BandMap):
    """Linear operator ``v -> matrix @ v``."""

    antilinear = False

    @property
    def H(self) -> "LinearMap":
        return LinearMap(self.matrix.conj().T, self.reach, f"({self.label})*")


class AntilinearMap(BandMap):
    """Antilinear operator ``v -> matrix @ conj(v)``."""

    antilinear = True


def _trim(v: np.ndarray, tol: float = REACH_TOL) -> np.ndarray:
    """Zero the rows below the reach threshold so the next factor only sees the live support."""
    mags = np.abs(v) if v.ndim == 1 else np.max(np.abs(v), axis=1)
    peak = mags.max(initial=0.0)
    live = np.flatnonzero(mags > tol * peak)
    if live.size == 0:
        return np.zeros_like(v)
    out = np.zeros_like(v)
    out[live[0]:live[-1] + 1] = v[live[0]:live[-1] + 1]
    return out


@dataclass(frozen=True, eq=False)
class ComposedMap:
    """
    Lazy product ``factors[0] @ factors[1] @ ...`` applied right to left.

    Same action as the eager ``@`` product but costs matrix-vector work only,
    which is what probe-based residuals need.
    """

    factors: tuple

    def __post_init__(self):
        if not self.factors:
            raise ParameterError("empty composition")
        bands = {f.band for f in self.factors}
        if len(bands) != 1:
            raise ParameterError(f"band mismatch: {sorted(bands)}")

    @property
    def band(self) -> int:
        return self.factors[0].band

    @property
    def reach(self) -> int:
        return sum(f.reach for f in self.factors)

    @property
    def antilinear(self) -> bool:
        return sum(f.antilinear for f in self.factors) % 2 == 1

    def __call__(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=complex)
        for i, f in enumerate(reversed(self.factors)):
            v = f(v)
            if i < len(self.factors) - 1:
                v = _trim(v)
        return v

    def apply(self, f: LaurentFunction) -> LaurentFunction:
        return from_vector(self(to_vector(f, self.band)), f.grid)

    def dense(self) -> BandMap:
        out = self.factors[0]
        for f in self.factors[1:]:
            out = out @ f
        return out


def compose(*maps: BandMap) -> ComposedMap:
    return ComposedMap(tuple(maps))


def _window_cols(band: int, reach: int) -> slice:
    w = band - reach
    if w < 0:
        raise ParameterError(f"band {band} too small for reach {reach}")
    return slice(band - w, band + w + 1)


def window_residual(X: np.ndarray, reach: int) -> float:
    """
    Frobenius norm of ``X`` on the exact columns ``|n| <= N - reach``.

    The Frobenius norm bounds the operator norm from above, so a small value
    certifies a small operator-norm residual.
    """
    band = (X.shape[0] - 1) // 2
    return float(np.linalg.norm(X[:, _window_cols(band, reach)]))


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def _toeplitz(phi: LaurentFunction, band: int) -> np.ndarray:
    c = to_vector(phi, 2 * band)
    return scipy.linalg.toeplitz(c[2 * band:], c[2 * band::-1])


def _reversal(band: int) -> np.ndarray:
    return np.eye(2 * band + 1)[::-1].astype(complex)


def _shift_rows(X: np.ndarray) -> np.ndarray:
    """``S @ X`` for the truncated shift ``S: z^n -> z^{n+1}``."""
    out = np.zeros_like(X)
    out[1:] = X[:-1]
    return out


def _shift_cols(X: np.ndarray, step: int) -> np.ndarray:
    """``X @ S`` (``step=+1``) or ``X @ S.T`` (``step=-1``)."""
    out = np.zeros_like(X)
    if step == 1:
        out[:, :-1] = X[:, 1:]
    else:
        out[:, 1:] = X[:, :-1]
    return out


def build_M(phi: LaurentFunction, band: int = DEFAULT_BAND) -> LinearMap:
    """Multiplication operator ``M_phi`` as a truncated Toeplitz matrix."""
    return LinearMap(_toeplitz(phi, band), reach(phi), "M")


def build_J(band: int = DEFAULT_BAND) -> AntilinearMap:
    """``Jf = conj(f)``: coefficient reversal plus conjugation."""
    return AntilinearMap(_reversal(band), 0, "J")


def build_Jstar(band: int = DEFAULT_BAND) -> AntilinearMap:
    """``J* f = f#``: coefficientwise conjugation."""
    return AntilinearMap(np.eye(2 * band + 1, dtype=complex), 0, "J*")


def ctheta_symbol(theta: BlaschkeProduct, grid: Grid = DEFAULT_GRID) -> LaurentFunction:
    """``theta * conj(z)`` on the grid."""
    return to_grid(theta, grid) * LaurentFunction.monomial(-1, grid)


def build_Ctheta(theta: BlaschkeProduct, band: int = DEFAULT_BAND,
                 grid: Grid = DEFAULT_GRID) -> AntilinearMap:
    """``C_theta f = theta * conj(z) * conj(f)``."""
    sym = ctheta_symbol(theta, grid)
    return AntilinearMap(_toeplitz(sym, band)[:, ::-1].copy(), reach(sym), "C_theta")


def _require_unimodular(psi: LaurentFunction, tol: float):
    v = is_unimodular(psi, tol)
    if not v.ok:
        raise ParameterError(f"symbol is not unimodular (residual {v.residual:.3g})")


def build_MpsiJ(psi: LaurentFunction, band: int = DEFAULT_BAND, tol: float = 1e-9) -> AntilinearMap:
    """``M_psi J`` for unimodular ``psi``."""
    _require_unimodular(psi, tol)
    return AntilinearMap(_toeplitz(psi, band)[:, ::-1].copy(), reach(psi), "M_psi J")


def build_MpsiJstar(psi: LaurentFunction, band: int = DEFAULT_BAND, tol: float = 1e-9) -> AntilinearMap:
    """
    ``M_psi J*`` for unimodular ``psi``.

    A non-symmetric ``psi`` still gives an antilinear isometry; it just is
    not an involution, which :func:`conjugation_residuals` will show.
    """
    _require_unimodular(psi, tol)
    sym = is_symmetric(psi, tol)
    if not sym.ok:
        log.info("M_psi J* with non-symmetric psi (residual %.3g) is not an involution", sym.residual)
    return AntilinearMap(_toeplitz(psi, band), reach(psi), "M_psi J*")


def build_Ckl(k: int, l: int, band: int = DEFAULT_BAND) -> AntilinearMap:
    """Conjugation swapping the coefficients of ``z^k`` and ``z^l`` (and conjugating all)."""
    if not (-band <= k < l <= band):
        raise ParameterError(f"need -{band} <= k < l <= {band}, got k={k}, l={l}")
    m = np.eye(2 * band + 1, dtype=complex)
    i, j = k + band, l + band
    m[[i, j]] = m[[j, i]]
    return AntilinearMap(m, max(abs(k), abs(l)), f"C_{k},{l}")


# ---------------------------------------------------------------------------
# predicates and residuals
# ---------------------------------------------------------------------------

def commutes_with_Mz(A: BandMap) -> float:
    """Window residual of ``M_z A - A M_z``."""
    return window_residual(_shift_rows(A.matrix) - _shift_cols(A.matrix, 1), A.reach + 1)


def intertwines_Mz_Mzbar(A: BandMap) -> float:
    """Window residual of ``M_z A - A M_{conj z}`` (real shift matrices, so the same formula serves both map types)."""
    return window_residual(_shift_rows(A.matrix) - _shift_cols(A.matrix, -1), A.reach + 1)


def _probe_vectors(band: int, support: int, count: int, rng) -> np.ndarray:
    v = np.zeros((count, 2 * band + 1), dtype=complex)
    w = 2 * support + 1
    v[:, band - support: band + support + 1] = rng.standard_normal((count, w)) + 1j * rng.standard_normal((count, w))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def conjugation_residuals(A, n_probes: int = 100, seed: int = 0,
                          max_support: int = 64) -> dict:
    """
    Involution and isometry residuals of an antilinear map on random probe pairs.

    ``involution = max ||A(A g) - g||`` and
    ``isometry = max |<A g, A h> - <h, g>|`` over unit probes supported where
    two applications of ``A`` stay exact.  ``A`` may be an
    :class:`AntilinearMap` or an antilinear :class:`ComposedMap`.
    """
    support = min(A.band - 2 * A.reach, max_support)
    if support < 0:
        raise ParameterError(f"band {A.band} too small for reach {A.reach}")
    rng = np.random.default_rng(seed)
    g = _probe_vectors(A.band, support, n_probes, rng)
    h = _probe_vectors(A.band, support, n_probes, rng)
    Ag = A(g.T).T
    Ah = A(h.T).T
    AAg = A(Ag.T).T
    involution = np.max(np.linalg.norm(AAg - g, axis=1))
    lhs = np.einsum("ij,ij->i", Ag, np.conj(Ah))
    rhs = np.einsum("ij,ij->i", h, np.conj(g))
    return {"involution": float(involution), "isometry": float(np.max(np.abs(lhs - rhs)))}


def is_conjugation(A: AntilinearMap, tol: float = 1e-10, **kwargs) -> bool:
    r = conjugation_residuals(A, **kwargs)
    return max(r.values()) < tol


def is_C_symmetric(A, C) -> float:
    """
    Residual of ``C A C = A*``.

    Accepts band maps (residual on the exact window) or plain square matrices
    in an orthonormal basis, ``C`` acting by ``v -> C @ conj(v)``.
    """
    if isinstance(A, BandMap):
        CAC = C @ A @ C
        return window_residual(CAC.matrix - A.H.matrix, CAC.reach)
    A = np.asarray(A)
    C = np.asarray(C)
    return float(np.linalg.norm(C @ np.conj(A) @ np.conj(C) - A.conj().T))


@dataclass
class SymbolRecovery:
    """Outcome of :func:`recover_symbol`."""

    kind: str  # "mz_conjugation" | "mz_commuting" | "neither"
    psi: LaurentFunction
    residuals: dict


def recover_symbol(A: AntilinearMap, tol: float = 1e-9) -> SymbolRecovery:
    """
    Classify a conjugation and recover its multiplier.

    Since ``J(1) = J*(1) = 1``, the multiplier is ``psi = A(1)``.  The class
    is read off from which of the two shift relations holds; the recovered
    ``psi`` is then checked by rebuilding ``M_psi J`` (resp. ``M_psi J*``)
    and by its unimodularity (plus symmetry for the commuting class).
    """
    residuals = {
        "commuting": commutes_with_Mz(A),
        "intertwining": intertwines_Mz_Mzbar(A),
    }
    col = A.matrix[:, A.band]  # A(1) = A @ conj(e_0)
    psi = from_vector(col)
    if residuals["intertwining"] < tol:
        kind = "mz_conjugation"
        rebuilt = _toeplitz(psi, A.band)[:, ::-1]
    elif residuals["commuting"] < tol:
        kind = "mz_commuting"
        rebuilt = _toeplitz(psi, A.band)
    else:
        return SymbolRecovery("neither", psi, residuals)
    residuals["reconstruction"] = window_residual(A.matrix - rebuilt, A.reach)
    residuals["unimodular"] = is_unimodular(psi).residual
    if kind == "mz_commuting":
        residuals["symmetric"] = is_symmetric(psi).residual
    return SymbolRecovery(kind, psi, residuals)

