"""Seeded random families: zeros, Blaschke products, probe functions and unimodular symbols."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .blaschke import MAX_ZERO_MODULUS, BlaschkeProduct, sharp, to_grid
from .fourier import DEFAULT_GRID, Grid, LaurentFunction, conj_J

MIN_SEPARATION = 0.08


def random_unit(rng) -> complex:
    return complex(np.exp(2j * np.pi * rng.uniform()))


def random_zeros(rng, k: int, avoid: Sequence[complex] = (), *, max_modulus: float = MAX_ZERO_MODULUS,
                 min_modulus: float = 0.1, separation: float = MIN_SEPARATION,
                 nonreal: bool = False) -> list:
    """
    ``k`` zeros in the annulus ``min_modulus <= |a| <= max_modulus``.

    Zeros are pairwise (and from ``avoid``, and from the conjugates of both)
    at least ``separation`` apart, so that a tolerance-level pairing never
    confuses two of them and every non-divisibility is numerically visible.
    """
    out: list = []
    taken = [complex(a) for a in avoid]
    while len(out) < k:
        r = np.sqrt(rng.uniform(min_modulus ** 2, max_modulus ** 2))
        a = complex(r * np.exp(2j * np.pi * rng.uniform()))
        if nonreal and abs(a.imag) < separation / 2:
            continue
        near = taken + [np.conj(t) for t in taken]
        if any(abs(a - t) < separation for t in near):
            continue
        out.append(a)
        taken.append(a)
    return out


def random_blaschke(rng, degree: int, avoid: Sequence[complex] = (), *, unit_lambda: bool = True,
                    **kw) -> BlaschkeProduct:
    lam = random_unit(rng) if unit_lambda else 1.0
    return BlaschkeProduct(tuple(random_zeros(rng, degree, avoid, **kw)), lam)


def special_blaschke(rng, degree: int) -> BlaschkeProduct:
    """Product mixing the awkward cases: zeros at 0, real zeros, conjugate pairs, repeats."""
    zeros: list = []
    while len(zeros) < degree:
        kind = rng.integers(5)
        if kind == 0:
            zeros.append(0j)
        elif kind == 1:
            zeros.append(complex(rng.uniform(-0.7, 0.7)))
        elif kind == 2 and len(zeros) + 2 <= degree:
            a = random_zeros(rng, 1, zeros, nonreal=True)[0]
            zeros += [a, np.conj(a)]
        elif kind == 3 and zeros:
            zeros.append(zeros[rng.integers(len(zeros))])
        else:
            zeros += random_zeros(rng, 1, zeros)
    return BlaschkeProduct(tuple(zeros[:degree]))


def random_split_beta(rng, alpha: BlaschkeProduct) -> BlaschkeProduct:
    """``lam * u * v#`` for a random multiset split ``alpha = u v``."""
    mask = rng.integers(0, 2, alpha.degree).astype(bool)
    u = [a for a, m in zip(alpha.zeros, mask) if m]
    v = BlaschkeProduct(tuple(a for a, m in zip(alpha.zeros, mask) if not m))
    return BlaschkeProduct(tuple(u) + sharp(v).zeros, random_unit(rng))


def random_probe(rng, grid: Grid = DEFAULT_GRID, band: int = 16, analytic: bool = False) -> LaurentFunction:
    """Unit-norm random trigonometric polynomial (analytic when asked)."""
    lo = 0 if analytic else -band
    coeffs = {n: complex(rng.standard_normal(), rng.standard_normal()) for n in range(lo, band + 1)}
    f = LaurentFunction.from_coeffs(coeffs, grid)
    return f * (1 / f.norm())


def random_analytic_symbol(rng, grid: Grid = DEFAULT_GRID, degree: int = 6) -> LaurentFunction:
    """Polynomial with decaying random coefficients (an H-infinity probe symbol)."""
    coeffs = {n: complex(rng.standard_normal(), rng.standard_normal()) / (1 + n) for n in range(degree + 1)}
    return LaurentFunction.from_coeffs(coeffs, grid)


def _phase(rng, grid: Grid, band: int, symmetric: bool) -> LaurentFunction:
    """``exp(i h)`` for a random real trigonometric polynomial ``h`` (even when ``symmetric``)."""
    n = np.arange(1, band + 1)
    c = (rng.standard_normal(band) + 1j * rng.standard_normal(band)) / n ** 2
    if symmetric:
        c = c.real.astype(complex)
    coeffs = {0: rng.standard_normal()}
    for k, ck in zip(n, c):
        coeffs[int(k)] = ck
        coeffs[-int(k)] = np.conj(ck)
    h = LaurentFunction.from_coeffs(coeffs, grid)
    return LaurentFunction.from_samples(np.exp(1j * h.samples.real), grid)


def random_unimodular(rng, grid: Grid = DEFAULT_GRID, max_degree: int = 3, phase_band: int = 4) -> LaurentFunction:
    """``lam * B1 * conj(B2) * exp(i h)``: a generic unimodular symbol."""
    b1 = random_blaschke(rng, int(rng.integers(0, max_degree + 1)))
    b2 = random_blaschke(rng, int(rng.integers(0, max_degree + 1)))
    psi = to_grid(b1, grid) * conj_J(to_grid(b2, grid))
    return psi * _phase(rng, grid, phase_band, symmetric=False)


def random_symmetric_unimodular(rng, grid: Grid = DEFAULT_GRID, max_degree: int = 3,
                                phase_band: int = 4) -> LaurentFunction:
    """
    Symmetric unimodular symbol ``beta * conj(alpha#) * exp(i h)``.

    ``beta`` is a split of ``alpha`` so that ``beta beta# = alpha alpha#``.
    """
    alpha = random_blaschke(rng, int(rng.integers(0, max_degree + 1)), unit_lambda=False)
    beta = random_split_beta(rng, alpha)
    psi = to_grid(beta, grid) * conj_J(to_grid(sharp(alpha), grid))
    return psi * _phase(rng, grid, phase_band, symmetric=True)
