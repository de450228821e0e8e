import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conjulab.blaschke import (
    BlaschkeProduct,
    divides,
    equal_up_to_unimodular,
    factor,
    monomial,
    sharp as bsharp,
    to_grid,
)
from conjulab.corpus import random_analytic_symbol, random_blaschke, random_probe, random_symmetric_unimodular
from conjulab.errors import NotConstructibleError, ParameterError
from conjulab.fourier import DEFAULT_GRID, LaurentFunction, distance, sharp
from conjulab.theorems import (
    CheckReport,
    c_theta,
    check_ctheta_symmetry,
    check_obstruction_example,
    check_sandwich_involution,
    conjugation_residuals,
    construct_beta,
    demo_mz_conjugation_invariant_subspace,
    enumerate_betas,
    enumerate_betas_bruteforce,
    sandwich,
    sharp_product_gap,
    verify_commuting_containment_rigidity,
    verify_hardy_preserving_commuting,
    verify_mz_conjugation_containment,
    verify_sharp_intertwining_conjugation,
    verify_shift_invariant_conjugation,
    verify_symmetric_theta_commuting,
    verify_truncated_shift_symmetric_conjugation,
)

G = DEFAULT_GRID
ONE = BlaschkeProduct()
A, B_ = 0.5j, 0.3 + 0.2j
ALPHA55 = BlaschkeProduct((A, B_))
THETA55 = BlaschkeProduct((A, np.conj(B_)))


def same(x, y):
    return equal_up_to_unimodular(x, y).equal


class TestCheckReport:
    def test_pass_iff_all_below(self):
        assert CheckReport("x", {}, {"a": 1e-12, "b": 0.0}, 1e-9).passed
        assert not CheckReport("x", {}, {"a": 1e-12, "b": 1e-9}, 1e-9).passed
        assert CheckReport("x", {}, {}, 1e-9).passed

    def test_json_schema(self):
        r = check_sandwich_involution(ALPHA55, THETA55)
        out = json.loads(json.dumps(r.to_json()))
        assert {"check_id", "params", "residuals", "tolerance", "pass"} <= set(out)
        assert out["pass"] is True and out["check_id"] == "sandwich_involution_criterion"
        assert out["params"]["alpha"] == ALPHA55.to_json()

    def test_str(self):
        assert str(CheckReport("x", {}, {"a": 2.0}, 1.0)).startswith("[FAIL] x")

    def test_deterministic(self):
        r1 = verify_shift_invariant_conjugation(factor(0.5), monomial(2), seed=3).to_json()
        r2 = verify_shift_invariant_conjugation(factor(0.5), monomial(2), seed=3).to_json()
        assert json.dumps(r1) == json.dumps(r2)


class TestGridConjugations:
    @pytest.mark.parametrize("theta", [monomial(1), ALPHA55, BlaschkeProduct((0.4, -0.2j, 0.7), 1j)])
    def test_ctheta_is_conjugation(self, theta):
        res = conjugation_residuals(c_theta(theta, G))
        assert max(res.values()) < 1e-12

    def test_sandwich_self_is_conjugation(self):
        res = conjugation_residuals(sandwich(ALPHA55, ALPHA55, G))
        assert max(res.values()) < 1e-12

    def test_sandwich_alpha_sharp_is_jstar(self, rng):
        alpha = random_blaschke(rng, 3)
        C = sandwich(bsharp(alpha), alpha, G)
        f = random_probe(rng, G)
        assert distance(C(f), sharp(f)) < 1e-12


class TestMzConjugationContainment:
    def test_contained_example(self):
        r = verify_mz_conjugation_containment(monomial(2), ONE, monomial(1), monomial(3))
        assert r.passed and r.diagnostics["contained"] and r.diagnostics["divisible"]
        assert r.residuals["leakage"] < 1e-12

    def test_violation_example(self):
        r = verify_mz_conjugation_containment(factor(0.5), ONE, monomial(1), monomial(2))
        assert r.passed and not r.diagnostics["divisible"]
        assert r.diagnostics["leakage"] > 0.1

    def test_with_gamma(self):
        gamma, alpha = factor(0.3j), factor(-0.4)
        beta = gamma * alpha * factor(0.6)
        theta = alpha * factor(0.6) * factor(0.2 + 0.1j)
        r = verify_mz_conjugation_containment(beta, gamma, alpha, theta)
        assert r.passed and r.diagnostics["contained"]

    def test_constant_refused(self):
        with pytest.raises(ParameterError):
            verify_mz_conjugation_containment(monomial(1), ONE, ONE, monomial(2))

    @pytest.mark.parametrize("seed", range(6))
    def test_random_chain(self, seed):
        rng = np.random.default_rng(seed)
        gamma = random_blaschke(rng, int(rng.integers(0, 2)))
        alpha = random_blaschke(rng, 2)
        extra = random_blaschke(rng, 1, alpha.zeros + gamma.zeros)
        beta = gamma * alpha * extra
        theta = alpha * extra * random_blaschke(rng, 1, beta.zeros)
        good = verify_mz_conjugation_containment(beta, gamma, alpha, theta)
        assert good.passed and good.diagnostics["contained"]
        bad_beta = gamma * alpha * random_blaschke(rng, 1, theta.zeros + gamma.zeros)
        bad = verify_mz_conjugation_containment(bad_beta, gamma, alpha, theta)
        assert bad.passed and not bad.diagnostics["contained"] and bad.diagnostics["leakage"] > 1e-3


class TestCommutingRigidity:
    def test_jstar_case(self, rng):
        alpha = random_blaschke(rng, 3)
        r = verify_commuting_containment_rigidity(alpha, bsharp(alpha), alpha)
        assert r.passed and r.diagnostics["is_conjugation"]
        assert r.residuals["leakage"] < 1e-10

    def test_nonsymmetric_quotient_is_not_conjugation(self):
        alpha = factor(0.4)
        beta = alpha * factor(0.5j)
        r = verify_commuting_containment_rigidity(alpha, bsharp(beta), beta)
        assert r.passed and not r.diagnostics["is_conjugation"]
        assert r.diagnostics["involution"] > 0.1

    def test_symmetric_nonconstant_quotient_rejected(self):
        alpha = factor(0.4)
        beta = alpha * factor(0.3 + 0.3j) * factor(0.3 - 0.3j)
        r = verify_commuting_containment_rigidity(alpha, bsharp(beta), beta)
        assert r.passed and not r.diagnostics["is_conjugation"]

    def test_reverse_direction(self):
        r = verify_commuting_containment_rigidity(monomial(1), monomial(2), monomial(2), gamma=monomial(1))
        assert r.passed and r.residuals["leakage"] < 1e-10

    def test_precondition(self):
        with pytest.raises(ParameterError):
            verify_commuting_containment_rigidity(factor(0.5), monomial(2), factor(0.5j))


class TestSandwichInvolution:
    def test_self(self, rng):
        alpha = random_blaschke(rng, 4)
        r = check_sandwich_involution(alpha, alpha)
        assert r.passed and r.residuals["involution"] < 1e-10

    def test_obstruction_pair(self):
        r = check_sandwich_involution(ALPHA55, THETA55)
        assert r.passed and all(r.diagnostics["verdicts"])

    def test_all_large(self):
        r = check_sandwich_involution(monomial(1), factor(0.5))
        assert r.passed and not any(r.diagnostics["verdicts"])
        assert min(r.diagnostics[k] for k in ("involution", "sharp_product_gap", "symmetry")) > 0.1


class TestConstructBeta:
    def test_monomials(self):
        assert same(construct_beta(monomial(2), monomial(1)), monomial(2))

    def test_obstruction_pair(self):
        assert same(construct_beta(ALPHA55, THETA55), THETA55)

    def test_self(self, rng):
        alpha = random_blaschke(rng, 4)
        assert same(construct_beta(alpha, alpha), alpha)

    def test_not_constructible(self):
        with pytest.raises(NotConstructibleError):
            construct_beta(monomial(1), factor(0.5))

    @settings(max_examples=25)
    @given(st.integers(0, 2 ** 32 - 1))
    def test_postconditions_and_enumeration(self, seed):
        rng = np.random.default_rng(seed)
        alpha = random_blaschke(rng, int(rng.integers(1, 5)))
        # theta built from a sub-multiset of alpha's zeros and their conjugates
        pick = [a if rng.uniform() < 0.5 else np.conj(a) for a in alpha.zeros if rng.uniform() < 0.6]
        theta = BlaschkeProduct(tuple(pick) or alpha.zeros[:1])
        beta = construct_beta(alpha, theta)
        assert divides(theta, beta) and beta.degree == alpha.degree
        assert sharp_product_gap(beta, alpha) < 1e-9
        assert any(same(beta, b) for b in enumerate_betas(alpha))


class TestEnumerateBetas:
    def test_monomial(self):
        out = enumerate_betas(monomial(2))
        assert len(out) == 1 and same(out[0], monomial(2))

    def test_four_classes(self):
        out = enumerate_betas(ALPHA55)
        expect = [BlaschkeProduct((x, y)) for x in (A, np.conj(A)) for y in (B_, np.conj(B_))]
        assert len(out) == 4
        for e in expect:
            assert sum(same(e, b) for b in out) == 1

    def test_constant_refused(self):
        with pytest.raises(ParameterError):
            enumerate_betas(ONE)

    @pytest.mark.parametrize("zeros", [(0.5,), (0j, 0.3j), (0.2 + 0.4j, 0.2 + 0.4j), (0.3, 0.4j, -0.5 + 0.1j)])
    def test_matches_bruteforce(self, zeros):
        alpha = BlaschkeProduct(zeros)
        fast, slow = enumerate_betas(alpha), enumerate_betas_bruteforce(alpha)
        assert [b.zeros for b in fast] == [b.zeros for b in slow]

    def test_outputs_satisfy_identity(self, rng):
        alpha = random_blaschke(rng, 4)
        for b in enumerate_betas(alpha):
            assert sharp_product_gap(b, alpha) < 1e-9


class TestShiftInvariantConjugation:
    @pytest.mark.parametrize("alpha,theta", [(monomial(2), monomial(1)), (ALPHA55, THETA55),
                                             (factor(0.3 - 0.5j) * factor(0.6), factor(0.3 - 0.5j) * factor(0.6))])
    def test_constructible(self, alpha, theta):
        r = verify_shift_invariant_conjugation(alpha, theta)
        assert r.passed and r.diagnostics["divisible"]

    def test_sharp_target(self, rng):
        alpha = random_blaschke(rng, 3)
        r = verify_shift_invariant_conjugation(alpha, bsharp(alpha))
        assert r.passed and same(r.diagnostics["beta"], bsharp(alpha))

    def test_not_constructible(self):
        r = verify_shift_invariant_conjugation(monomial(1), factor(0.5))
        assert r.passed and not r.diagnostics["divisible"]
        assert r.diagnostics["min_family_residual"] > 1e-3


class TestObstructionExample:
    def test_instance(self):
        r = check_obstruction_example(A, B_)
        assert r.passed
        assert r.residuals["sharp_product_gap"] < 1e-10
        assert r.diagnostics["jstar_leakage"] > 1e-3

    @pytest.mark.parametrize("a,b", [(0.5j, 0.5j), (0.5, 0.3 + 0.2j), (0.5j, -0.2)])
    def test_refused(self, a, b):
        with pytest.raises(ParameterError):
            check_obstruction_example(a, b)


class TestInvariantSubspaceDemo:
    def test_generic(self):
        r = demo_mz_conjugation_invariant_subspace(monomial(1), monomial(1), 1000, 7)
        assert r.passed and r.diagnostics["min_residual"] > 1e-3

    def test_inner_family(self):
        r = demo_mz_conjugation_invariant_subspace(monomial(1), monomial(1), 200, 7, family="inner")
        assert r.passed and r.diagnostics["min_residual"] > 1e-3

    def test_unreachable_floor_fails(self):
        assert not demo_mz_conjugation_invariant_subspace(factor(0.5), monomial(1), 20, 0, floor=10).passed

    @pytest.mark.parametrize("kw", [{"trials": 0}, {"trials": 5, "family": "bogus"}])
    def test_refused(self, kw):
        with pytest.raises(ParameterError):
            demo_mz_conjugation_invariant_subspace(monomial(1), monomial(1), seed=0, **kw)


class TestSharpIntertwining:
    def test_monomial(self):
        r = verify_sharp_intertwining_conjugation(monomial(2), 1.0)
        assert r.passed and abs(r.diagnostics["recovered_psi"] - 1) < 1e-12

    def test_recovers_conj_lambda(self):
        r = verify_sharp_intertwining_conjugation(factor(0.5) * factor(-0.3), 1j)
        assert r.passed and abs(r.diagnostics["recovered_psi"] + 1j) < 1e-10

    def test_nonsymmetric_theta(self):
        r = verify_sharp_intertwining_conjugation(factor(0.3 + 0.4j) * factor(0.5), np.exp(0.3j))
        assert r.passed and r.diagnostics["self_leakage"] > 0.1

    def test_lambda_must_be_unimodular(self):
        with pytest.raises(ParameterError):
            verify_sharp_intertwining_conjugation(monomial(2), 0.9)


class TestSymmetricThetaCommuting:
    @pytest.mark.parametrize("theta", [monomial(3), factor(0.5) * factor(-0.5),
                                       factor(0.2 + 0.5j) * factor(0.2 - 0.5j) * factor(0.1)])
    def test_pass(self, theta):
        r = verify_symmetric_theta_commuting(theta, seed=2)
        assert r.passed

    def test_ctheta_rejected_for_commutation(self):
        r = verify_symmetric_theta_commuting(factor(0.5) * factor(-0.5))
        (row,) = [c for c in r.diagnostics["candidates"] if c["label"] == "c_theta"]
        assert row["conjugation"] and not row["commutes"]

    def test_lambda_extraction_monomial(self):
        r = verify_symmetric_theta_commuting(monomial(3))
        lam_keys = [k for k in r.residuals if k.endswith("lambda_error")]
        assert len(lam_keys) == 4 and max(r.residuals[k] for k in lam_keys) < 1e-12

    def test_nonsymmetric_refused(self):
        with pytest.raises(ParameterError):
            verify_symmetric_theta_commuting(factor(0.3j))
        with pytest.raises(ParameterError):
            verify_symmetric_theta_commuting(BlaschkeProduct((0.5,), 1j))


class TestTruncatedShiftSymmetric:
    def test_constant_psi(self, rng):
        theta = random_blaschke(rng, 4)
        r = verify_truncated_shift_symmetric_conjugation(theta, LaurentFunction.constant(np.exp(0.7j), G))
        assert r.passed

    def test_monomial_extraction(self):
        lam = np.exp(1.1j)
        r = verify_truncated_shift_symmetric_conjugation(monomial(3), LaurentFunction.constant(lam, G))
        assert r.passed and r.diagnostics["symbol_roundtrip_raw"] < 1e-12

    def test_roundtrip_mod_thetaH2(self, rng):
        theta = random_blaschke(rng, 3)
        psi = np.exp(0.4j) + to_grid(theta, G) * random_analytic_symbol(rng, G, 3)
        r = verify_truncated_shift_symmetric_conjugation(theta, psi)
        assert r.passed and r.diagnostics["symbol_roundtrip_raw"] < 1e-8

    def test_nonunitary_refused(self):
        with pytest.raises(ParameterError):
            verify_truncated_shift_symmetric_conjugation(monomial(3), LaurentFunction.monomial(1, G))


class TestTTOAndHardy:
    def test_ctheta_symmetry(self, rng):
        theta = random_blaschke(rng, 5)
        syms = [random_probe(rng, G, band=4) for _ in range(5)]
        assert check_ctheta_symmetry(theta, syms).passed

    def test_hardy_preserving(self, rng):
        syms = [LaurentFunction.constant(np.exp(0.2j), G)] + [random_symmetric_unimodular(rng, G) for _ in range(6)]
        r = verify_hardy_preserving_commuting(syms)
        assert r.passed and r.diagnostics["skipped_non_conjugations"] == 0
        assert sum(c["spread"] < 1e-8 for c in r.diagnostics["cases"]) >= 1
