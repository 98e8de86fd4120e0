"""The top layer: verdicts, normalization, family, cascade, coverage,
searches, the quadrinomial family, and M."""

import json
import math
import os

import pytest

from casasalvero.arith import ExtField, FieldDescriptor, PrimeField, Rationals
from casasalvero.casas import (CAInstance, M_FACTORIZATION, GIANT_PRIME,
                               GIANT_QUAD_A, GIANT_QUAD_B, SearchOptions,
                               SearchReport, check_ca, elimination_cascade,
                               exhaustive_search, family_counterexample,
                               field_roots, identically_zero_resultants,
                               irreducible_factors, normalize, quad_closure_scan,
                               quad_poly, quad_scan, theorem_coverage,
                               vector_to_poly, verify_m, verify_quad_point)
from casasalvero.errors import (BudgetExceededError, DomainError,
                                NormalizationError)
from casasalvero.unipoly import UniPoly, format_poly, gcd, parse_poly

F2 = PrimeField(2)
F3 = PrimeField(3)


def poly(text, ring):
    return parse_poly(text, ring)


class TestCheckCA:
    def test_family_p2(self):
        v = check_ca(CAInstance(F2, poly("X^3+X^2", F2)))
        assert v.gcd_profile.degrees == (2, 1)
        assert v.linear_power_root is None
        assert v.is_counterexample

    def test_pure_power_not_counterexample(self):
        for ring in (F2, F3, Rationals()):
            v = check_ca(CAInstance(ring, poly("X^4", ring)))
            assert v.linear_power_root == ring.zero
            assert not v.is_counterexample

    def test_coprime_derivative(self):
        v = check_ca(CAInstance(F3, poly("X^2+X", F3)))
        assert v.gcd_profile.degrees == (0,)
        assert not v.is_counterexample

    def test_giant_prime(self):
        assert verify_quad_point(GIANT_PRIME, GIANT_QUAD_A,
                                 GIANT_QUAD_B).is_counterexample

    def test_degree_one_never_counterexample(self):
        v = check_ca(CAInstance(F2, poly("X+1", F2)))
        assert not v.is_counterexample
        assert v.linear_power_root == F2.one

    def test_rejects_non_monic(self):
        with pytest.raises(DomainError):
            check_ca(CAInstance(F3, poly("2*X^2+X", F3)))

    def test_json_round_trip(self):
        from casasalvero.casas import CAVerdict
        v = check_ca(CAInstance(F2, poly("X^3+X^2", F2)))
        assert CAVerdict.from_json(v.to_json(F2), F2) == v


class TestNormalize:
    def test_char0_double_root(self):
        Q = Rationals()
        nf = normalize(poly("X^2+2*X+1", Q))
        assert nf.normalized == poly("X^2", Q)
        assert nf.shift == Q.from_int(-1)

    def test_already_normalized(self):
        nf = normalize(poly("X^3+X", F2))
        assert nf.normalized == poly("X^3+X", F2)
        assert nf.shift == F2.zero

    def test_scaling(self):
        Q = Rationals()
        nf = normalize(poly("2*X^2+4*X", Q))
        assert nf.normalized == poly("X^2+2*X", Q)
        assert nf.scale == Q.from_int(2)

    def test_no_root_fails_explicitly(self):
        with pytest.raises(NormalizationError):
            normalize(poly("X^2+X+1", F2))  # irreducible over F_2

    def test_verdict_invariance(self):
        # shifting a counterexample keeps it a counterexample
        from casasalvero.unipoly import taylor_shift
        P = poly("X^3+X^2", F2)
        shifted = taylor_shift(P, F2.one)
        v0 = check_ca(CAInstance(F2, P))
        v1 = check_ca(CAInstance(F2, shifted))
        assert v0.is_counterexample == v1.is_counterexample


class TestFamily:
    def test_p2_shape(self):
        inst = family_counterexample(2)
        assert inst.poly == poly("X^3+X^2", F2)

    def test_p5_top_derivative(self):
        from casasalvero.unipoly import hasse_derivative
        inst = family_counterexample(5)
        assert format_poly(inst.poly) == "X^6+4*X^5"
        assert format_poly(hasse_derivative(inst.poly, 5)) == "X+4"

    def test_all_primes_to_199(self):
        from casasalvero.arith import is_prime
        for p in (p for p in range(2, 200) if is_prime(p)):
            v = check_ca(family_counterexample(p))
            assert v.is_counterexample
            assert v.linear_power_root is None


class TestCascade:
    def test_d4_p2_complete(self):
        t = elimination_cascade(4, 2)
        assert t.forced_indices == (1, 2, 3)
        assert t.n == 1 and t.complete_certificate

    def test_d6_p3_quadratic(self):
        t = elimination_cascade(6, 3)
        assert t.forced_indices == (1, 2, 4, 5)
        assert t.residual_indices == (3,)
        assert t.n == 2 and t.reduces_to_quadratic

    def test_d6_p2_inconclusive(self):
        t = elimination_cascade(6, 2)
        assert t.forced_indices == (1, 3, 5)
        assert t.residual_indices == (2, 4)
        assert t.n == 3
        assert not t.complete_certificate and not t.reduces_to_quadratic

    def test_witness_binomials_vanish(self):
        from casasalvero.arith import binom_mod_p
        t = elimination_cascade(27, 3)
        for step in t.steps:
            for (n, k) in step.vanishing_binomials:
                assert binom_mod_p(n, k, 3) == 0

    def test_rejects_non_divisor(self):
        with pytest.raises(DomainError):
            elimination_cascade(5, 2)


class TestCoverage:
    def test_examples(self):
        assert theorem_coverage(9).covered     # 3^2
        assert theorem_coverage(27).covered    # 3^3
        assert theorem_coverage(14).covered    # 2*7
        assert theorem_coverage(15).covered    # 3*5, p odd
        assert not theorem_coverage(12).covered

    def test_open_set_below_30(self):
        open_set = {d for d in range(1, 30)
                    if not theorem_coverage(d).covered}
        assert open_set == {12, 20, 24, 28}

    def test_witness_consistency(self):
        for d in range(1, 60):
            v = theorem_coverage(d)
            if v.covered and v.p is not None:
                assert d == v.n * v.p**v.k
                assert v.n in (1, 2, 3)
                if v.n == 3:
                    assert v.p != 2


class TestExhaustiveSearch:
    def test_d3_f2_two_hits(self):
        rep = exhaustive_search(3, F2)
        got = {format_poly(vector_to_poly(h.coeffs, 3, F2)) for h in rep.hits}
        assert got == {"X^3+X^2", "X^3+X"}

    def test_d4_f2_empty(self):
        rep = exhaustive_search(4, F2)
        # 2^3 - 1 nonzero coefficient vectors (a_1, a_2, a_3)
        assert rep.is_empty and rep.candidates_tested == 7

    def test_d6_f3_empty(self):
        rep = exhaustive_search(6, F3)
        assert rep.is_empty and rep.candidates_tested == 242

    def test_extension_field(self):
        K = ExtField(2, 2, (1, 1, 1))
        rep = exhaustive_search(2, K)
        assert rep.is_empty and rep.candidates_tested == 3

    def test_budget_refusal(self):
        with pytest.raises(BudgetExceededError):
            exhaustive_search(12, PrimeField(7),
                              SearchOptions(budget=10**6))

    def test_kernel_and_python_agree(self):
        a = exhaustive_search(5, F3, SearchOptions(use_kernel=True))
        b = exhaustive_search(5, F3, SearchOptions(use_kernel=False))
        assert [h.coeffs for h in a.hits] == [h.coeffs for h in b.hits]
        assert a.candidates_tested == b.candidates_tested == 80

    def test_checkpoint_resume(self, tmp_path):
        path = str(tmp_path / "ckpt")
        opts = SearchOptions(block_size=64, checkpoint_path=path,
                             checkpoint_every=1)
        full = exhaustive_search(6, F2, opts)
        assert os.path.exists(path)
        # a fresh run against the finished checkpoint does no new scanning
        # and reproduces the report
        again = exhaustive_search(6, F2, SearchOptions(
            block_size=64, checkpoint_path=path))
        assert [h.coeffs for h in again.hits] == [h.coeffs for h in full.hits]

    def test_json_round_trip(self):
        rep = exhaustive_search(3, F2)
        doc = json.loads(json.dumps(rep.to_json()))
        back = SearchReport.from_json(doc)
        assert back.to_json() == rep.to_json()


class TestQuadFamily:
    def test_zero_resultant_split(self):
        qr = identically_zero_resultants()
        assert len(qr.zero_indices) == 2
        assert len(qr.nonzero_indices) == 3

    def test_quad_scan_13(self):
        rep = quad_scan(13)
        assert len(rep.hits) >= 1
        for h in rep.hits:
            assert h.verdict.is_counterexample

    def test_quad_scan_17_empty(self):
        assert not quad_scan(17).hits

    def test_quad_scan_matches_brute_force_13(self):
        brute = {(a, b) for a in range(13) for b in range(13)
                 if verify_quad_point(13, a, b).is_counterexample}
        swept = {(h.coeffs[1], h.coeffs[3]) for h in quad_scan(13).hits}
        assert brute == swept

    def test_budget_refusal(self):
        with pytest.raises(BudgetExceededError):
            quad_scan(40362599, budget=10**6)

    def test_verify_point_computes_not_asserts(self):
        v = verify_quad_point(13, 0, 0)  # X^6 + X^3
        assert not v.is_counterexample

    def test_closure_scan_iff_m(self):
        m_primes = [p for p, _ in M_FACTORIZATION if p < 10**5]
        for p in m_primes:
            r = quad_closure_scan(p)
            assert r.hits, f"closure scan found nothing for {p} | M"
            assert all(h.verdict.is_counterexample for h in r.hits)
            assert not r.unresolved
        for p in (17, 23, 29, 31, 37):
            assert not quad_closure_scan(p).hits

    def test_closure_scan_67_is_cubic_extension(self):
        r = quad_closure_scan(67)
        assert not r.rational_hits
        assert {(h.field.p, h.field.m) for h in r.hits} == {(67, 3)}

    def test_closure_json(self):
        doc = json.loads(json.dumps(quad_closure_scan(19).to_json()))
        assert doc["p"] == 19 and doc["hits"]


class TestFactorHelpers:
    def test_irreducible_factors(self):
        F = PrimeField(5)
        f = poly("X^2+4", F) * poly("X+1", F)**2 * poly("X^2+2", F)
        got = irreducible_factors(f)
        # X^2+4 = (X+1)(X+4) (roots +/-1); X^2+2 is irreducible over F_5;
        # the repeated X+1 appears once
        assert [format_poly(g) for g in got] == ["X+1", "X+4", "X^2+2"]

    def test_field_roots_extension(self):
        K = ExtField(3, 2)
        f = UniPoly.x(K)**9 - UniPoly.x(K)  # splits: all of F_9
        assert len(field_roots(f)) == 9

    def test_field_roots_large_extension(self):
        K = ExtField(23993, 2, None)
        # (X - c)(X - c') for two distinct elements
        c1 = K.element_from_index(23993 + 5)
        c2 = K.element_from_index(2 * 23993 + 7)
        f = (UniPoly.x(K) - UniPoly.constant(K, c1)) * \
            (UniPoly.x(K) - UniPoly.constant(K, c2))
        assert field_roots(f) == sorted([c1, c2], key=K.element_index)


class TestM:
    def test_reconstruction(self):
        rep = verify_m()
        assert rep.value == math.prod(p**e for p, e in M_FACTORIZATION)
        assert rep.all_factors_prime

    def test_valuations(self):
        rep = verify_m()
        assert rep.valuation(13) == 3
        assert rep.valuation(19) == 7
        assert rep.valuation(17) == 0

    def test_giant_prime_divides(self):
        assert verify_m().value % GIANT_PRIME == 0


@pytest.mark.long_run
class TestLongRunQuad:
    def test_7783207(self):
        assert len(quad_scan(7783207).hits) >= 1

    def test_40362599(self):
        assert len(quad_scan(40362599).hits) >= 1
