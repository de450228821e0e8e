"""
Finite Blaschke products as exact zero-multiset algebra.

A product is ``lam * prod_k b_{a_k}(z)`` with the normalized factor

    b_a(z) = z                                  if a == 0
    b_a(z) = (|a|/a) (a - z) / (1 - conj(a) z)  otherwise

so that ``b_a(0) = |a| >= 0`` and ``b_a# = b_{conj(a)}``.  Divisibility,
greatest common divisors and the ``#`` involution then act on the zero
multiset and the unimodular constant alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import DomainError, ParameterError, PrecisionError
from .fourier import DEFAULT_GRID, Grid, LaurentFunction

__all__ = [
    "PAIRING_TOL",
    "MAX_ZERO_MODULUS",
    "BlaschkeProduct",
    "factor",
    "monomial",
    "evaluate",
    "multiply",
    "divide",
    "gcd",
    "sharp",
    "divides",
    "equal_up_to_unimodular",
    "to_grid",
]

PAIRING_TOL = 1e-9
MAX_ZERO_MODULUS = 0.8
# coefficient magnitude treated as negligible when sizing the band
_TAIL_EPS = 1e-16


def _canonical_key(a: complex):
    return (a.real, a.imag)


@dataclass(frozen=True)
class BlaschkeProduct:
    """
    Unimodular constant times a finite product of normalized Blaschke factors.

    Zeros are stored sorted by ``(re, im)``; repeated entries encode
    multiplicity.
    """

    zeros: tuple = ()
    lam: complex = 1.0

    def __post_init__(self):
        # + 0.0 folds signed zeros so conj(0) serializes as 0
        zeros = tuple(sorted((complex(a.real + 0.0, a.imag + 0.0) for a in map(complex, self.zeros)),
                             key=_canonical_key))
        for a in zeros:
            if not abs(a) < 1:
                raise ParameterError(f"zero {a} is not in the open unit disk")
        lam = complex(self.lam)
        if abs(abs(lam) - 1) > 1e-12:
            raise ParameterError(f"lambda={lam} is not unimodular")
        object.__setattr__(self, "zeros", zeros)
        lam = lam / abs(lam)
        object.__setattr__(self, "lam", complex(lam.real + 0.0, lam.imag + 0.0))

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def is_constant(self) -> bool:
        return not self.zeros

    def __call__(self, z):
        return evaluate(self, z)

    def __mul__(self, other: "BlaschkeProduct") -> "BlaschkeProduct":
        if not isinstance(other, BlaschkeProduct):
            return NotImplemented
        return multiply(self, other)

    def scaled(self, lam: complex) -> "BlaschkeProduct":
        return BlaschkeProduct(self.zeros, self.lam * lam)

    def multiplicities(self) -> list:
        """``[(zero, multiplicity), ...]`` grouping zeros within the pairing tolerance."""
        groups = []
        for a in self.zeros:
            for g in groups:
                if abs(g[0] - a) <= PAIRING_TOL:
                    g[1] += 1
                    break
            else:
                groups.append([a, 1])
        return [(a, m) for a, m in groups]

    def to_json(self) -> dict:
        return {
            "lambda": [self.lam.real, self.lam.imag],
            "zeros": [[a.real, a.imag, m] for a, m in self.multiplicities()],
        }

    @classmethod
    def from_json(cls, obj) -> "BlaschkeProduct":
        """Inverse of :meth:`to_json`; raises ParameterError naming the offending field."""
        if not isinstance(obj, dict):
            raise ParameterError("BlaschkeProduct JSON must be an object")
        lam = obj.get("lambda", [1.0, 0.0])
        if not (isinstance(lam, (list, tuple)) and len(lam) == 2 and all(_is_real(x) for x in lam)):
            raise ParameterError("field 'lambda' must be [re, im]")
        zeros = []
        raw = obj.get("zeros", [])
        if not isinstance(raw, list):
            raise ParameterError("field 'zeros' must be a list of [re, im, multiplicity]")
        for i, entry in enumerate(raw):
            if not (isinstance(entry, (list, tuple)) and len(entry) in (2, 3)
                    and all(_is_real(x) for x in entry[:2])):
                raise ParameterError(f"field 'zeros[{i}]' must be [re, im, multiplicity]")
            mult = entry[2] if len(entry) == 3 else 1
            if not (isinstance(mult, int) and not isinstance(mult, bool) and mult >= 1):
                raise ParameterError(f"field 'zeros[{i}]' multiplicity must be a positive integer")
            zeros.extend([complex(entry[0], entry[1])] * mult)
        try:
            return cls(tuple(zeros), complex(lam[0], lam[1]))
        except ParameterError as exc:
            raise ParameterError(f"invalid BlaschkeProduct: {exc}") from None

    def __repr__(self):
        zs = ", ".join(f"{a:.4g}" for a in self.zeros)
        return f"BlaschkeProduct(zeros=[{zs}], lam={self.lam:.4g})"


def _is_real(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def factor(a: complex) -> BlaschkeProduct:
    """Single normalized factor ``b_a``."""
    return BlaschkeProduct((a,))


def monomial(k: int, lam: complex = 1.0) -> BlaschkeProduct:
    """``lam * z^k``."""
    return BlaschkeProduct((0j,) * k, lam)


def evaluate(B: BlaschkeProduct, z):
    """Evaluate ``B`` at a point or an array of points off the poles."""
    z = np.asarray(z, dtype=complex)
    out = np.full(z.shape, B.lam, dtype=complex)
    for a in B.zeros:
        if a == 0:
            out = out * z
            continue
        den = 1 - np.conj(a) * z
        if np.any(np.abs(den) < 1e-14):
            raise DomainError(f"evaluation at the pole 1/conj({a})")
        out = out * (abs(a) / a) * (a - z) / den
    return out[()] if out.ndim == 0 else out


def _match(pool: Sequence[complex], wanted: Sequence[complex], tol: float):
    """
    Greedy nearest-neighbour pairing of ``wanted`` into ``pool``.

    Returns ``(unmatched_pool, unmatched_wanted)``.
    """
    remaining = list(pool)
    missing = []
    for w in wanted:
        if remaining:
            dists = [abs(p - w) for p in remaining]
            i = int(np.argmin(dists))
            if dists[i] <= tol:
                remaining.pop(i)
                continue
        missing.append(w)
    return remaining, missing


def multiply(B1: BlaschkeProduct, B2: BlaschkeProduct) -> BlaschkeProduct:
    return BlaschkeProduct(B1.zeros + B2.zeros, B1.lam * B2.lam)


def divide(B1: BlaschkeProduct, B2: BlaschkeProduct, tol: float = PAIRING_TOL) -> Optional[BlaschkeProduct]:
    """``B1 / B2`` when it is inner, else ``None``."""
    rest, missing = _match(B1.zeros, B2.zeros, tol)
    if missing:
        return None
    return BlaschkeProduct(tuple(rest), B1.lam / B2.lam)


def divides(B1: BlaschkeProduct, B2: BlaschkeProduct, tol: float = PAIRING_TOL) -> bool:
    """``B1 <= B2``: ``B2 / B1`` is inner."""
    return divide(B2, B1, tol) is not None


def gcd(B1: BlaschkeProduct, B2: BlaschkeProduct, tol: float = PAIRING_TOL) -> BlaschkeProduct:
    """Greatest common inner divisor, normalized to ``lam = 1``."""
    common = []
    remaining = list(B2.zeros)
    for a in B1.zeros:
        if remaining:
            dists = [abs(p - a) for p in remaining]
            i = int(np.argmin(dists))
            if dists[i] <= tol:
                remaining.pop(i)
                common.append(a)
    return BlaschkeProduct(tuple(common))


def sharp(B: BlaschkeProduct) -> BlaschkeProduct:
    """``B#(z) = conj(B(conj z))``: conjugate every zero and the constant."""
    return BlaschkeProduct(tuple(np.conj(a) for a in B.zeros), np.conj(B.lam))


class UnimodularEquality(NamedTuple):
    equal: bool
    lam: Optional[complex]


def equal_up_to_unimodular(B1: BlaschkeProduct, B2: BlaschkeProduct,
                           tol: float = PAIRING_TOL) -> UnimodularEquality:
    """Whether ``B1 = lam * B2`` for some ``|lam| = 1``; returns the witness."""
    rest, missing = _match(B1.zeros, B2.zeros, tol)
    if rest or missing:
        return UnimodularEquality(False, None)
    return UnimodularEquality(True, B1.lam / B2.lam)


def is_close(B1: BlaschkeProduct, B2: BlaschkeProduct, tol: float = PAIRING_TOL) -> bool:
    """Strict equality: same zeros and same constant."""
    eq = equal_up_to_unimodular(B1, B2, tol)
    return eq.equal and abs(eq.lam - 1) <= tol


def required_band(modulus: float, eps: float = _TAIL_EPS) -> int:
    """Band at which ``modulus**n`` falls below ``eps``."""
    if modulus <= 0:
        return 0
    return int(math.ceil(math.log(eps) / math.log(modulus)))


def to_grid(B: BlaschkeProduct, grid: Grid = DEFAULT_GRID,
            max_modulus: float = MAX_ZERO_MODULUS) -> LaurentFunction:
    """
    Sample ``B`` on the grid.

    Coefficient tails decay like ``max|a|**n``; zeros beyond ``max_modulus``
    are refused so that the band cut stays far below every tolerance.
    """
    rho = max((abs(a) for a in B.zeros), default=0.0)
    if rho > max_modulus + 1e-12:
        raise PrecisionError(
            f"zero modulus {rho:.6g} exceeds {max_modulus}; coefficient tail needs band "
            f">= {required_band(rho)} (grid band is {grid.N})"
        )
    return LaurentFunction.from_samples(evaluate(B, grid.nodes), grid)
