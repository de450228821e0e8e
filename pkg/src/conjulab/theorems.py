"""
Executable checks for the conjugation results on model spaces and shift-invariant subspaces.

Every routine returns a :class:`CheckReport` whose verdict is
``all(residual < tolerance)``.  Where a statement is an equivalence, both
sides are evaluated by independent means (operator leakage on one side,
zero-multiset divisibility on the other) and the report carries a 0/1
``*_mismatch`` residual that is nonzero exactly when they disagree.

Conjugations are applied to grid functions pointwise (``C_theta f =
theta conj(z) conj(f)``, ``J* f = f#``), which is exact on the samples; the
banded matrices of :mod:`.operators` are exercised by the suite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .blaschke import (
    PAIRING_TOL,
    BlaschkeProduct,
    divide,
    divides,
    equal_up_to_unimodular,
    gcd,
    sharp as bsharp,
    to_grid,
)
from .corpus import (
    random_analytic_symbol,
    random_blaschke,
    random_probe,
    random_split_beta,
    random_symmetric_unimodular,
    random_unimodular,
    random_unit,
)
from .errors import InvariantViolation, NotConstructibleError, ParameterError
from .fourier import (
    DEFAULT_GRID,
    Grid,
    LaurentFunction,
    conj_J,
    distance,
    inner_product,
    is_symmetric,
    multiply,
    sharp,
)
from .modelspace import (
    ModelSpaceBasis,
    membership_thetaH2,
    project,
    restrict_antilinear,
    tm_basis,
    tto_matrix,
    truncated_shift,
)
from .operators import build_Ckl

TOL_CONSTRUCT = 1e-10
TOL_COMPOSED = 1e-9
DEMO_FLOOR = 1e-3

GridMap = Callable[[LaurentFunction], LaurentFunction]


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def _jsonable(obj):
    if isinstance(obj, BlaschkeProduct):
        return obj.to_json()
    if isinstance(obj, LaurentFunction):
        return {str(n): [obj.coeff(n).real, obj.coeff(n).imag]
                for n in range(-8, 9) if abs(obj.coeff(n)) > 1e-12}
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if obj is None or isinstance(obj, str):
        return obj
    return repr(obj)


@dataclass
class CheckReport:
    """
    Outcome of one check.

    ``residuals`` hold only quantities that must be small; the report passes
    iff every one is below ``tolerance``.  Informational values (large
    residuals that are *supposed* to be large, verdict booleans) go to
    ``diagnostics``.
    """

    check_id: str
    params: dict
    residuals: dict
    tolerance: float
    diagnostics: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(float(v) < self.tolerance for v in self.residuals.values())

    def to_json(self) -> dict:
        return {
            "check_id": self.check_id,
            "params": _jsonable(self.params),
            "residuals": {k: float(v) for k, v in self.residuals.items()},
            "tolerance": self.tolerance,
            "pass": self.passed,
            "diagnostics": _jsonable(self.diagnostics),
        }

    def __str__(self):
        worst = max(self.residuals.items(), key=lambda kv: kv[1], default=("-", 0.0))
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.check_id} (worst {worst[0]}={worst[1]:.3g}, tol {self.tolerance:g})"


# ---------------------------------------------------------------------------
# grid-level conjugations
# ---------------------------------------------------------------------------

def c_theta(theta: BlaschkeProduct, grid: Grid = DEFAULT_GRID) -> GridMap:
    """``f -> theta conj(z) conj(f)``."""
    sym = to_grid(theta, grid) * LaurentFunction.monomial(-1, grid)
    return lambda f: multiply(sym, conj_J(f))


def sandwich(theta: BlaschkeProduct, alpha: BlaschkeProduct, grid: Grid = DEFAULT_GRID) -> GridMap:
    """``C_theta J* C_alpha`` (an antilinear isometry commuting with ``M_z``)."""
    ct, ca = c_theta(theta, grid), c_theta(alpha, grid)
    return lambda f: ct(sharp(ca(f)))


def conjugation_residuals(C: GridMap, grid: Grid = DEFAULT_GRID, n_probes: int = 20,
                          seed: int = 0) -> dict:
    """Involution and isometry residuals of an antilinear grid map over random probe pairs."""
    rng = np.random.default_rng(seed)
    inv = iso = 0.0
    for _ in range(n_probes):
        g, h = random_probe(rng, grid), random_probe(rng, grid)
        Cg, Ch = C(g), C(h)
        inv = max(inv, distance(C(Cg), g))
        iso = max(iso, abs(inner_product(Cg, Ch) - inner_product(h, g)))
    return {"involution": inv, "isometry": iso}


def mz_commuting_residual(C: GridMap, grid: Grid = DEFAULT_GRID, n_probes: int = 5, seed: int = 1) -> float:
    rng = np.random.default_rng(seed)
    z = LaurentFunction.monomial(1, grid)
    return max(distance(C(z * f), z * C(f)) for f in (random_probe(rng, grid) for _ in range(n_probes)))


def _sharp_product(B: BlaschkeProduct, grid: Grid) -> np.ndarray:
    return (to_grid(B, grid) * to_grid(bsharp(B), grid)).samples


def sharp_product_gap(alpha: BlaschkeProduct, theta: BlaschkeProduct, grid: Grid = DEFAULT_GRID) -> float:
    """``max_j |alpha alpha# - theta theta#|`` on the grid."""
    return float(np.max(np.abs(_sharp_product(alpha, grid) - _sharp_product(theta, grid))))


# ---------------------------------------------------------------------------
# M_z-conjugations and model spaces
# ---------------------------------------------------------------------------

def verify_mz_conjugation_containment(beta: BlaschkeProduct, gamma: BlaschkeProduct,
                                      alpha: BlaschkeProduct, theta: BlaschkeProduct,
                                      grid: Grid = DEFAULT_GRID, tol: float = TOL_COMPOSED,
                                      margin: float = DEMO_FLOOR) -> CheckReport:
    """
    ``C_beta(gamma K_alpha) in K_theta``  iff  ``gamma alpha <= beta <= gamma theta`` (and ``alpha <= theta``).

    The left side is read from the leakage of ``C_beta`` applied to the
    orthonormal system ``gamma e_k``; the right side from zero multisets.
    A leakage between ``tol`` and ``margin`` counts as ambiguous and fails.
    """
    if alpha.is_constant() or theta.is_constant():
        raise ParameterError("alpha and theta must be nonconstant")
    g = to_grid(gamma, grid)
    src = [g * e for e in tm_basis(alpha, grid).basis]
    leak = restrict_antilinear(c_theta(beta, grid), src, tm_basis(theta, grid)).leakage
    contained = leak < tol
    divisible = divides(gamma * alpha, beta) and divides(beta, gamma * theta) and divides(alpha, theta)
    residuals = {
        "verdict_mismatch": float(contained != divisible),
        "ambiguous_leakage": float(tol <= leak < margin),
    }
    if divisible:
        residuals["leakage"] = leak
    return CheckReport(
        "mz_conjugation_model_containment",
        {"beta": beta, "gamma": gamma, "alpha": alpha, "theta": theta},
        residuals, tol, {"leakage": leak, "contained": contained, "divisible": divisible},
    )


def verify_commuting_containment_rigidity(alpha: BlaschkeProduct, theta: BlaschkeProduct,
                                          beta: BlaschkeProduct, gamma: Optional[BlaschkeProduct] = None,
                                          grid: Grid = DEFAULT_GRID, tol: float = TOL_COMPOSED,
                                          seed: int = 0) -> CheckReport:
    """
    ``C = J* M_{q conj(gamma)}`` with ``q = beta / (gamma alpha)``.

    Under ``gamma alpha <= beta <= gamma theta#`` the map sends ``gamma K_alpha``
    into ``K_theta``.  It is an involution exactly when ``q conj(gamma)`` is
    symmetric; for ``gamma = 1`` that forces ``q`` constant, i.e. ``C = lam J*``.
    """
    gamma = gamma if gamma is not None else BlaschkeProduct()
    if not (divides(gamma * alpha, beta) and divides(beta, gamma * bsharp(theta))):
        raise ParameterError("need gamma*alpha <= beta <= gamma*theta#")
    q = divide(beta, gamma * alpha)
    s = to_grid(q, grid) * conj_J(to_grid(gamma, grid))

    def C(f):
        return sharp(multiply(s, f))

    conj = conjugation_residuals(C, grid, seed=seed)
    is_conj = conj["involution"] < tol
    sym = is_symmetric(s, tol)
    g = to_grid(gamma, grid)
    leak = restrict_antilinear(C, [g * e for e in tm_basis(alpha, grid).basis], tm_basis(theta, grid)).leakage
    residuals = {
        "isometry": conj["isometry"],
        "leakage": leak,
        "conjugation_symmetry_mismatch": float(is_conj != sym.ok),
    }
    if gamma.is_constant():
        residuals["rigidity_violation"] = float(is_conj != q.is_constant())
    return CheckReport(
        "commuting_model_containment_rigidity",
        {"alpha": alpha, "theta": theta, "beta": beta, "gamma": gamma},
        residuals, tol,
        {"involution": conj["involution"], "symmetry": sym.residual, "quotient_degree": q.degree,
         "is_conjugation": is_conj},
    )


# ---------------------------------------------------------------------------
# shift-invariant subspaces
# ---------------------------------------------------------------------------

def check_sandwich_involution(alpha: BlaschkeProduct, theta: BlaschkeProduct, grid: Grid = DEFAULT_GRID,
                              tol: float = TOL_COMPOSED, seed: int = 0, n_probes: int = 20) -> CheckReport:
    """
    Three independent readings of whether ``C_theta J* C_alpha`` is a conjugation.

    (i) involution residual on probes, (ii) grid gap of ``alpha alpha# - theta theta#``,
    (iii) symmetry of ``theta conj(alpha#)``.  Passes iff all three agree.
    """
    conj = conjugation_residuals(sandwich(theta, alpha, grid), grid, n_probes, seed)
    gap = sharp_product_gap(alpha, theta, grid)
    sym = is_symmetric(to_grid(theta, grid) * conj_J(to_grid(bsharp(alpha), grid))).residual
    verdicts = (conj["involution"] < tol, gap < tol, sym < tol)
    residuals = {"disagreement": float(len(set(verdicts)) > 1), "isometry": conj["isometry"]}
    if all(verdicts):
        residuals.update(involution=conj["involution"], sharp_product_gap=gap, symmetry=sym)
    return CheckReport(
        "sandwich_involution_criterion", {"alpha": alpha, "theta": theta}, residuals, tol,
        {"involution": conj["involution"], "sharp_product_gap": gap, "symmetry": sym, "verdicts": verdicts},
    )


def construct_beta(alpha: BlaschkeProduct, theta: BlaschkeProduct, tol: float = PAIRING_TOL) -> BlaschkeProduct:
    """
    Inner ``beta`` with ``theta <= beta`` and ``beta beta# = alpha alpha#``.

    With ``delta = alpha ^ theta``, ``alpha_1 = alpha / delta`` and
    ``theta_1 = theta / delta``, the quotient ``u = alpha_1# / theta_1`` is
    inner and ``beta = theta u``.

    Raises
    ------
    NotConstructibleError
        If ``theta theta#`` does not divide ``alpha alpha#``.
    InvariantViolation
        If ``theta_1`` fails to divide ``alpha_1#`` despite the precondition.
    """
    if not divides(theta * bsharp(theta), alpha * bsharp(alpha), tol):
        raise NotConstructibleError("theta theta# does not divide alpha alpha#")
    delta = gcd(alpha, theta, tol)
    alpha1 = divide(alpha, delta, tol)
    theta1 = divide(theta, delta, tol)
    u = divide(bsharp(alpha1), theta1, tol)
    if u is None:
        raise InvariantViolation("theta_1 does not divide alpha_1#; zero pairing misfired")
    return theta * u


def _canonical_sort(items: Sequence[BlaschkeProduct]) -> list:
    return sorted(items, key=lambda B: [(a.real, a.imag) for a in B.zeros])


def enumerate_betas(alpha: BlaschkeProduct) -> list:
    """
    All ``beta`` (up to unimodular constants) with ``beta beta# = alpha alpha#``.

    Runs over every multiset split ``alpha = u v`` and emits ``u v#`` with
    constant 1, deduplicated.
    """
    if alpha.is_constant():
        raise ParameterError("alpha must be nonconstant")
    groups = alpha.multiplicities()
    found: list = []
    for counts in itertools.product(*(range(m + 1) for _, m in groups)):
        zeros = []
        for (a, m), c in zip(groups, counts):
            zeros += [a] * c + [np.conj(a)] * (m - c)
        beta = BlaschkeProduct(tuple(zeros))
        if not any(equal_up_to_unimodular(beta, other).equal for other in found):
            found.append(beta)
    return _canonical_sort(found)


def enumerate_betas_bruteforce(alpha: BlaschkeProduct, grid: Grid = Grid(512, 255),
                               tol: float = TOL_COMPOSED) -> list:
    """
    Independent oracle for :func:`enumerate_betas`.

    Tries every degree-matched multiset drawn from the pool of zeros of
    ``alpha`` and their conjugates, keeping those whose ``beta beta#``
    matches ``alpha alpha#`` on the grid.
    """
    pool: list = []
    for a in list(alpha.zeros) + [np.conj(a) for a in alpha.zeros]:
        if not any(abs(a - p) <= PAIRING_TOL for p in pool):
            pool.append(complex(a))
    target = _sharp_product(alpha, grid)
    keep = []
    for combo in itertools.combinations_with_replacement(pool, alpha.degree):
        beta = BlaschkeProduct(combo)
        if np.max(np.abs(_sharp_product(beta, grid) - target)) < tol:
            keep.append(beta)
    return _canonical_sort(keep)


def _max_membership(C: GridMap, alpha: BlaschkeProduct, target: BlaschkeProduct, grid: Grid, n_shifts: int) -> float:
    a = to_grid(alpha, grid)
    return max(membership_thetaH2(C(a * LaurentFunction.monomial(k, grid)), target) for k in range(n_shifts))


def verify_shift_invariant_conjugation(alpha: BlaschkeProduct, theta: BlaschkeProduct,
                                       grid: Grid = DEFAULT_GRID, tol: float = TOL_COMPOSED,
                                       floor: float = DEMO_FLOOR, seed: int = 0,
                                       n_family: int = 12, n_shifts: int = 4) -> CheckReport:
    """
    M_z-commuting conjugations from ``alpha H^2`` into ``theta H^2``.

    When ``theta theta# <= alpha alpha#`` the constructed ``C = C_beta J* C_alpha``
    must be an M_z-commuting conjugation with ``C(alpha H^2) = beta H^2``
    inside ``theta H^2``.  Otherwise a seeded family of M_z-commuting
    conjugations is tried and none may map ``alpha z^k`` into ``theta H^2``.
    """
    divisible = divides(theta * bsharp(theta), alpha * bsharp(alpha))
    params = {"alpha": alpha, "theta": theta}
    diagnostics: dict = {"divisible": divisible}
    if divisible:
        beta = construct_beta(alpha, theta)
        C = sandwich(beta, alpha, grid)
        residuals = conjugation_residuals(C, grid, seed=seed)
        residuals["mz_commuting"] = mz_commuting_residual(C, grid)
        residuals["image_in_betaH2"] = _max_membership(C, alpha, beta, grid, n_shifts)
        residuals["image_in_thetaH2"] = _max_membership(C, alpha, theta, grid, n_shifts)
        residuals["betaH2_covered"] = _max_membership(C, beta, alpha, grid, n_shifts)
        residuals["theta_not_dividing_beta"] = float(not divides(theta, beta))
        residuals["sharp_product_gap"] = sharp_product_gap(beta, alpha, grid)
        diagnostics["beta"] = beta
    else:
        rng = np.random.default_rng(seed)
        scores = []
        for i in range(n_family):
            if i % 2 == 0:
                a2 = random_blaschke(rng, int(rng.integers(1, 4)))
                C = sandwich(random_split_beta(rng, a2), a2, grid)
            else:
                psi = random_symmetric_unimodular(rng, grid)
                C = (lambda p: (lambda f: multiply(p, sharp(f))))(psi)
            scores.append(_max_membership(C, alpha, theta, grid, n_shifts))
        residuals = {"containment_found": float(min(scores) < floor)}
        diagnostics["min_family_residual"] = min(scores)
    return CheckReport("shift_invariant_conjugation", params, residuals, tol, diagnostics)


def check_obstruction_example(a: complex, b: complex, grid: Grid = DEFAULT_GRID,
                              tol: float = TOL_CONSTRUCT, floor: float = DEMO_FLOOR) -> CheckReport:
    """
    ``alpha = b_a b_b`` and ``theta = b_a b_conj(b)``.

    ``alpha alpha# = theta theta#``, so an M_z-commuting conjugation maps
    ``alpha H^2`` onto ``theta H^2``; yet none of ``alpha <= theta#``,
    ``theta <= alpha#``, ``alpha <= theta``, ``theta <= alpha`` holds, which
    rules out any such conjugation between ``K_alpha`` and ``K_theta``.
    """
    a, b = complex(a), complex(b)
    if abs(a - b) <= PAIRING_TOL:
        raise ParameterError("need a != b")
    if abs(a.imag) <= PAIRING_TOL or abs(b.imag) <= PAIRING_TOL:
        raise ParameterError("need a and b off the real axis")
    alpha = BlaschkeProduct((a, b))
    theta = BlaschkeProduct((a, np.conj(b)))
    sub = verify_shift_invariant_conjugation(alpha, theta, grid)
    leak = restrict_antilinear(sharp, tm_basis(alpha, grid), tm_basis(theta, grid)).leakage
    residuals = {
        "sharp_product_gap": sharp_product_gap(alpha, theta, grid),
        "alpha_divides_theta_sharp": float(divides(alpha, bsharp(theta))),
        "theta_divides_alpha_sharp": float(divides(theta, bsharp(alpha))),
        "alpha_divides_theta": float(divides(alpha, theta)),
        "theta_divides_alpha": float(divides(theta, alpha)),
        "subspace_conjugation_failed": float(not sub.passed),
        "jstar_model_leak_small": float(leak < floor),
    }
    return CheckReport("obstruction_example", {"a": a, "b": b}, residuals, tol,
                       {"jstar_leakage": leak, "subspace_report": sub.to_json()})


def demo_mz_conjugation_invariant_subspace(alpha: BlaschkeProduct, theta: BlaschkeProduct, trials: int,
                                           seed: int, floor: float = DEMO_FLOOR, family: str = "generic",
                                           grid: Grid = DEFAULT_GRID, n_shifts: int = 4) -> CheckReport:
    """
    Falsification demo: random M_z-conjugations ``M_psi J`` never map ``alpha H^2`` into ``theta H^2``.

    ``family="generic"`` draws random unimodular ``psi``; ``family="inner"``
    draws ``psi = alpha theta g`` with ``g`` inner, which sends ``alpha`` itself
    into ``theta H^2`` but fails on ``alpha z^k``.  This is a demonstration
    over a seeded family, not a proof.
    """
    if trials < 1:
        raise ParameterError("trials must be >= 1; a vacuous demonstration is refused")
    if family not in ("generic", "inner"):
        raise ParameterError(f"unknown family {family!r}")
    rng = np.random.default_rng(seed)
    at = to_grid(alpha, grid) * to_grid(theta, grid)
    # conj(theta) * conj(alpha z^k) for every shift; C(alpha z^k) = psi conj(alpha z^k)
    zk = grid.nodes[None, :] ** np.arange(n_shifts)[:, None]
    weights = np.conj(at.samples[None, :] * zk)
    neg = (np.arange(grid.M) >= grid.M - grid.N)
    best = np.inf
    for _ in range(trials):
        if family == "generic":
            psi = random_unimodular(rng, grid)
        else:
            psi = at * to_grid(random_blaschke(rng, int(rng.integers(0, 4))), grid)
        coeffs = np.fft.fft(psi.samples[None, :] * weights, axis=1) / grid.M
        score = float(np.max(np.linalg.norm(coeffs[:, neg], axis=1)))
        best = min(best, score)
    return CheckReport(
        "mz_conjugation_invariant_subspace_demo",
        {"alpha": alpha, "theta": theta, "trials": trials, "seed": seed, "family": family, "floor": floor},
        {"floor_violation": float(best <= floor)}, TOL_COMPOSED,
        {"min_residual": float(best), "kind": "falsification demonstration"},
    )


# ---------------------------------------------------------------------------
# truncated Toeplitz operators
# ---------------------------------------------------------------------------

def extract_tto_symbol(L: np.ndarray, B: ModelSpaceBasis):
    """
    Solve ``A_psi^theta = L`` for ``psi`` in ``K_theta``.

    ``psi = sum_k c_k e_k``; the map ``psi -> A_psi`` is injective on
    ``K_theta`` so the least-squares solution is unique.  Returns
    ``(psi, solve_residual)``.
    """
    mats = np.stack([tto_matrix(e, B).matrix.ravel() for e in B.basis], axis=1)
    c, *_ = np.linalg.lstsq(mats, L.ravel(), rcond=None)
    return B.synthesize(c), float(np.linalg.norm(mats @ c - L.ravel()))


def verify_sharp_intertwining_conjugation(theta: BlaschkeProduct, lam: complex, grid: Grid = DEFAULT_GRID,
                                          tol: float = TOL_COMPOSED) -> CheckReport:
    """
    ``C = lam J*`` sends ``K_theta`` onto ``K_theta#`` and intertwines the truncated shifts.

    Checks ``A_z^{theta#} C = C A_z^theta``, that ``A = J* C`` restricted to
    ``K_theta`` is an isometric truncated Toeplitz operator, and that its
    symbol is ``conj(lam)``.
    """
    lam = complex(lam)
    if abs(abs(lam) - 1) > TOL_CONSTRUCT:
        raise ParameterError("lam must be unimodular")
    Bt, Bs = tm_basis(theta, grid), tm_basis(bsharp(theta), grid)

    def C(f):
        return lam * sharp(f)

    Cm, leak = restrict_antilinear(C, Bt, Bs)
    Az, Azs = truncated_shift(Bt).matrix, truncated_shift(Bs).matrix
    Jm = restrict_antilinear(sharp, Bs, Bt).matrix
    A = Jm @ np.conj(Cm)
    d = Bt.dim
    psi_expected = LaurentFunction.constant(np.conj(lam), grid)
    recovered = np.trace(A) / d
    self_leak = restrict_antilinear(C, Bt, Bt).leakage
    sharp_fixed = equal_up_to_unimodular(bsharp(theta), theta).equal
    residuals = {
        "leakage": leak,
        "intertwining": float(np.linalg.norm(Azs @ Cm - Cm @ np.conj(Az))),
        "isometry": float(np.linalg.norm(A.conj().T @ A - np.eye(d))),
        "tto_symbol": float(np.linalg.norm(A - tto_matrix(psi_expected, Bt).matrix)),
        "recovered_symbol": abs(recovered - np.conj(lam)),
        "self_containment_mismatch": float((self_leak < tol) != sharp_fixed),
    }
    return CheckReport("sharp_intertwining_conjugation", {"theta": theta, "lam": lam}, residuals, tol,
                       {"recovered_psi": recovered, "self_leakage": self_leak})


def verify_symmetric_theta_commuting(theta: BlaschkeProduct, grid: Grid = DEFAULT_GRID,
                                     tol: float = TOL_COMPOSED, seed: int = 0) -> CheckReport:
    """
    For ``theta# = theta``: the conjugations of ``K_theta`` commuting with ``A_z^theta`` are ``lam J*``.

    A seeded candidate family (``lam J*``, ``C_theta``, ``J* A_psi`` with
    nonconstant ``psi``, small perturbations of ``lam J*``, and for
    ``theta = z^n`` the coefficient swap ``C_{k,l}`` with ``n <= k``) is
    screened: a candidate must pass the conjugation and commutation tests
    exactly when the extracted ``lam`` reproduces it.
    """
    th = to_grid(theta, grid)
    gap = float(np.max(np.abs(sharp(th).samples - th.samples)))
    if gap > TOL_CONSTRUCT:
        raise ParameterError(f"theta# != theta on the grid (gap {gap:.3g})")
    rng = np.random.default_rng(seed)
    B = tm_basis(theta, grid)
    d = B.dim
    Jm = restrict_antilinear(sharp, B, B).matrix
    Az = truncated_shift(B).matrix

    candidates = []
    for _ in range(3):
        lam = random_unit(rng)
        candidates.append(("lam_jstar", lam * Jm, True, lam))
    candidates.append(("c_theta", restrict_antilinear(c_theta(theta, grid), B, B).matrix, False, None))
    for _ in range(2):
        T = tto_matrix(random_analytic_symbol(rng, grid, 3), B).matrix
        candidates.append(("jstar_tto", Jm @ np.conj(T), False, None))
    noise = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    candidates.append(("perturbed", random_unit(rng) * Jm + 1e-3 * noise, False, None))
    if all(a == 0 for a in theta.zeros):
        n = theta.degree
        Ckl = build_Ckl(n + 1, n + 3, band=n + 4)
        candidates.append(("c_kl", restrict_antilinear(Ckl, B, B).matrix, True, 1.0))

    i0 = int(np.argmax(np.abs(Jm[:, 0])))
    mismatches = 0
    residuals: dict = {}
    rows = []
    for label, U, expected, lam_true in candidates:
        conj_ok = max(np.linalg.norm(U @ np.conj(U) - np.eye(d)),
                      np.linalg.norm(U.conj().T @ U - np.eye(d))) < tol
        comm_ok = np.linalg.norm(Az @ U - U @ np.conj(Az)) < tol
        lam = U[i0, 0] / Jm[i0, 0]
        dist = float(np.linalg.norm(U - lam * Jm))
        is_lam_jstar = dist < tol and abs(abs(lam) - 1) < tol
        mismatches += int(not ((conj_ok and comm_ok) == is_lam_jstar == expected))
        if expected:
            residuals[f"{label}_{len(rows)}_distance"] = dist
            residuals[f"{label}_{len(rows)}_lambda_error"] = abs(lam - lam_true)
        rows.append({"label": label, "conjugation": conj_ok, "commutes": comm_ok, "lambda": lam,
                     "distance_to_lam_jstar": dist})
    residuals["mismatches"] = float(mismatches)
    return CheckReport("symmetric_theta_commuting_conjugations", {"theta": theta}, residuals, tol,
                       {"candidates": rows})


def verify_truncated_shift_symmetric_conjugation(theta: BlaschkeProduct, psi: LaurentFunction,
                                                 grid: Grid = DEFAULT_GRID, tol: float = TOL_COMPOSED,
                                                 seed: int = 0, extraction_tol: float = 1e-8) -> CheckReport:
    """
    ``C = A_psi^theta C_theta`` with ``A_psi^theta`` unitary.

    Forward: ``C`` is a conjugation of ``K_theta`` with
    ``A_phi C = C A_{conj phi}`` for ``phi = z`` and random analytic ``phi``,
    and agrees with ``C_theta A_{conj psi}``.  Reverse: ``L = C C_theta``
    commutes with ``A_z^theta`` and solving ``A_{psi'} = L`` recovers
    ``psi' = psi`` modulo ``theta H^2``.
    """
    B = tm_basis(theta, grid)
    d = B.dim
    I = np.eye(d)
    T = tto_matrix(psi, B).matrix
    unitarity = float(np.linalg.norm(T.conj().T @ T - I))
    if unitarity > tol:
        raise ParameterError(f"A_psi is not unitary (residual {unitarity:.3g})")
    Ct = restrict_antilinear(c_theta(theta, grid), B, B).matrix
    U = T @ Ct
    zbar = LaurentFunction.monomial(-1, grid)
    Az = truncated_shift(B).matrix
    Azbar = tto_matrix(zbar, B).matrix
    rng = np.random.default_rng(seed)
    phi_res = 0.0
    for _ in range(3):
        phi = random_analytic_symbol(rng, grid, 4)
        Tp, Tpbar = tto_matrix(phi, B).matrix, tto_matrix(conj_J(phi), B).matrix
        phi_res = max(phi_res, float(np.linalg.norm(Tp @ U - U @ np.conj(Tpbar))))
    L = U @ np.conj(Ct)
    psi_prime, solve_res = extract_tto_symbol(L, B)
    residuals = {
        "unitarity": unitarity,
        "involution": float(np.linalg.norm(U @ np.conj(U) - I)),
        "isometry": float(np.linalg.norm(U.conj().T @ U - I)),
        "shift_symmetry": float(np.linalg.norm(Az @ U - U @ np.conj(Azbar))),
        "analytic_symbol_symmetry": phi_res,
        "alternate_form": float(np.linalg.norm(Ct @ np.conj(tto_matrix(conj_J(psi), B).matrix) - U)),
        "commutant": float(np.linalg.norm(Az @ L - L @ Az)),
        "symbol_solve": solve_res,
    }
    roundtrip = membership_thetaH2(psi - psi_prime, theta)
    residuals["symbol_roundtrip"] = roundtrip * (tol / extraction_tol)
    return CheckReport("truncated_shift_symmetric_conjugation", {"theta": theta, "psi": psi}, residuals, tol,
                       {"symbol_roundtrip_raw": roundtrip, "extraction_tol": extraction_tol,
                        "projected_symbol_gap": float((psi_prime - project(psi, B)).norm())})


def check_ctheta_symmetry(theta: BlaschkeProduct, symbols: Sequence[LaurentFunction],
                          grid: Grid = DEFAULT_GRID, tol: float = TOL_COMPOSED) -> CheckReport:
    """Every truncated Toeplitz operator is ``C_theta``-symmetric: ``C_theta A C_theta = A*``."""
    B = tm_basis(theta, grid)
    Ct = restrict_antilinear(c_theta(theta, grid), B, B).matrix
    worst = 0.0
    for phi in symbols:
        A = tto_matrix(phi, B).matrix
        worst = max(worst, float(np.linalg.norm(Ct @ np.conj(A) @ np.conj(Ct) - A.conj().T)))
    return CheckReport("ctheta_symmetry_of_tto", {"theta": theta, "n_symbols": len(symbols)},
                       {"symmetry": worst}, tol)


def verify_hardy_preserving_commuting(symbols: Sequence[LaurentFunction], tol: float = TOL_COMPOSED,
                                      const_tol: float = 1e-8, n_shifts: int = 3) -> CheckReport:
    """
    An M_z-commuting conjugation ``M_psi J*`` that preserves ``H^2`` has constant ``psi``.

    Symbols that are not symmetric and unimodular do not define a
    conjugation and are skipped.  For the others, preservation is read from
    the negative parts of ``psi (z^k)#`` and constancy from
    ``sup |psi - psi(0)|``; the two verdicts must agree.
    """
    mismatches = skipped = 0
    rows = []
    for psi in symbols:
        if not (is_symmetric(psi, tol).ok and abs(psi.samples).min() > 1 - tol and abs(psi.samples).max() < 1 + tol):
            skipped += 1
            continue
        grid = psi.grid
        leak = max(membership_thetaH2(multiply(psi, sharp(LaurentFunction.monomial(k, grid))), BlaschkeProduct())
                   for k in range(n_shifts))
        spread = float(np.max(np.abs(psi.samples - psi.coeff(0))))
        preserves, constant = leak < tol, spread < const_tol
        mismatches += int(preserves != constant)
        rows.append({"negative_part": leak, "spread": spread})
    return CheckReport("hardy_preserving_commuting_constant",
                       {"n_symbols": len(symbols), "const_tol": const_tol},
                       {"mismatches": float(mismatches)}, tol,
                       {"skipped_non_conjugations": skipped, "cases": rows})
