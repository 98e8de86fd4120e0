"""Univariate polynomial algebra: Hasse derivatives, gcd, resultants,
shifts, descent, linear-power detection, parsing."""

import math

import pytest

from casasalvero.arith import (ExtField, IntegerRing, PrimeField, Rationals)
from casasalvero.errors import DomainError, PolyParseError, UnsupportedFieldError
from casasalvero.unipoly import (UniPoly, classical_derivative, descend,
                                 format_poly, gcd, gcd_profile,
                                 hasse_derivative, is_linear_power, parse_poly,
                                 resultant, resultant_prs, sylvester_matrix,
                                 taylor_shift)

F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)
Q = Rationals()
Z = IntegerRing()


def P_of(ring, *desc):
    return UniPoly.from_int_desc(ring, desc)


class TestBasics:
    def test_canonical_trailing_zeros(self):
        assert P_of(Q, 0, 0, 1).degree == 0
        assert UniPoly(Q, [Q.zero, Q.zero]).is_zero
        assert UniPoly.zero(Q).degree == -1

    def test_divmod(self):
        P = P_of(F5, 1, 0, 0, 4)   # X^3 + 4
        D = P_of(F5, 1, 1)         # X + 1
        q, r = P.divmod(D)
        assert q * D + r == P
        assert r.degree < D.degree

    def test_pow(self):
        P = P_of(F2, 1, 1)  # X + 1
        assert P**2 == P_of(F2, 1, 0, 1)  # freshman's dream

    def test_evaluate_horner(self):
        P = P_of(Q, 1, -3, 2)  # X^2 - 3X + 2 = (X-1)(X-2)
        assert P.evaluate(Q.from_int(1)) == 0
        assert P.evaluate(Q.from_int(2)) == 0
        assert P.evaluate(Q.from_int(3)) == 2


class TestHasseDerivative:
    def test_order_zero(self):
        P = P_of(F3, 1, 2, 1)
        assert hasse_derivative(P, 0) == P

    def test_family_top_derivative(self):
        # X^6 - X^5 over F_5: 5th Hasse derivative is X + 4
        P = P_of(F5, 1, -1, 0, 0, 0, 0, 0)
        assert hasse_derivative(P, 5) == P_of(F5, 1, 4)

    def test_char2_vanishing(self):
        # X^12 + X^8, i = 1: binom(12,1) and binom(8,1) both even
        P = UniPoly(F2, [0] * 8 + [1, 0, 0, 0, 1])
        assert hasse_derivative(P, 1).is_zero

    def test_matches_binomial_rule(self):
        P = P_of(Z, 3, 0, -2, 1, 7)
        for i in range(6):
            Pi = hasse_derivative(P, i)
            for e in range(P.degree + 1):
                expected = math.comb(e + i, i) * P.coeff(e + i)
                assert Pi.coeff(e) == expected


class TestClassicalDerivative:
    def test_power_rule(self):
        assert classical_derivative(P_of(Q, 1, 0, 0, 0, 0), 2) == \
            P_of(Q, 12, 0, 0)

    def test_pth_derivative_vanishes(self):
        P = P_of(F3, 1, 1, 1, 1, 1, 1, 1)
        assert classical_derivative(P, 3).is_zero

    def test_char3_example(self):
        assert classical_derivative(P_of(F3, 1, 1, 1, 0), 1) == P_of(F3, 2, 1)

    def test_factorial_relation_char0(self):
        P = P_of(Q, 2, -1, 5, 0, 3)
        for i in range(6):
            assert hasse_derivative(P, i).scale(
                Q.from_int(math.factorial(i))) == classical_derivative(P, i)


class TestGcd:
    def test_family_p2(self):
        assert gcd(P_of(F2, 1, 1, 0, 0), P_of(F2, 1, 0, 0)) == \
            P_of(F2, 1, 0, 0)

    def test_gcd_with_zero(self):
        P = P_of(F5, 2, 0, 4)
        assert gcd(P, UniPoly.zero(F5)) == P.monic()
        assert gcd(UniPoly.zero(F5), UniPoly.zero(F5)).is_zero

    def test_coprime_over_f3(self):
        assert gcd(P_of(F3, 1, 1, 0), P_of(F3, 2, 1)) == UniPoly.one(F3)

    def test_rejects_integer_ring(self):
        with pytest.raises(UnsupportedFieldError):
            gcd(P_of(Z, 1, 0), P_of(Z, 2, 0))


class TestResultant:
    def test_generic_d2(self):
        # Res(X^2 + a X, 2X + a) over Z[a] at true degrees; oracle: the
        # 3x3 Sylvester determinant expands to -a^2 (up to the pinned sign)
        ring = __import__("casasalvero.multipoly", fromlist=["PolyRing"]) \
            .PolyRing(1, 0)
        a = ring.variable(0)
        P = UniPoly(ring, [ring.zero, a, ring.one])
        D = UniPoly(ring, [a, ring.from_int(2)])
        r = resultant(P, D)
        assert str(r) in ("-a1^2", "a1^2")  # sign-insensitive, see docstring
        assert str(r) == "-a1^2"  # pinned convention

    def test_self_resultant_zero(self):
        P = P_of(F5, 1, 2, 3)
        assert F5.is_zero(resultant(P, P))

    def test_generic_d3(self):
        # Res(X^3 + aX^2 + bX, 3X + a) = +/- (2a^3 - 9ab)
        from casasalvero.multipoly import PolyRing
        ring = PolyRing(2, 0)
        a, b = ring.variable(0), ring.variable(1)
        P = UniPoly(ring, [ring.zero, b, a, ring.one])
        D = UniPoly(ring, [a, ring.from_int(3)])
        r = resultant(P, D)
        # terms print in descending weighted-degrevlex order, where
        # a1*a2 precedes a1^3 (equal weight, smaller a1 exponent wins)
        assert str(r) in ("-9*a1*a2+2*a1^3", "9*a1*a2-2*a1^3")

    def test_empty_matrix_is_one(self):
        assert resultant(P_of(Q, 5), P_of(Q, 7), nominal=(0, 0)) == Q.one

    def test_vanishes_iff_common_root(self):
        # exhaustive over F_3, small degrees
        for pa in range(1, 27):
            A = UniPoly(F3, [pa % 3, (pa // 3) % 3, pa // 9]).monic() \
                if pa // 9 else None
            if A is None or A.degree < 1:
                continue
            for pb in range(27):
                B = UniPoly(F3, [pb % 3, (pb // 3) % 3, pb // 9])
                if B.is_zero:
                    continue
                r = resultant(A, B)
                assert F3.is_zero(r) == (gcd(A, B).degree >= 1)

    def test_sylvester_shape(self):
        M = sylvester_matrix(P_of(Q, 1, 0, 0), P_of(Q, 1, 0), 2, 1)
        assert len(M) == 3 and all(len(row) == 3 for row in M)

    def test_prs_agreement(self):
        import random
        rng = random.Random(11)
        for _ in range(120):
            F = PrimeField(rng.choice([3, 5, 7, 13]))
            A = UniPoly(F, [rng.randrange(F.p)
                            for _ in range(rng.randrange(2, 7))] + [1])
            B = UniPoly(F, [rng.randrange(F.p)
                            for _ in range(rng.randrange(1, 6))] + [1])
            assert resultant(A, B) == resultant_prs(A, B)


class TestTaylorShift:
    def test_square(self):
        assert taylor_shift(P_of(Q, 1, 0, 0), Q.from_int(1)) == P_of(Q, 1, 2, 1)

    def test_round_trip(self):
        P = P_of(F5, 1, 3, 0, 2)
        c = F5.from_int(4)
        assert taylor_shift(taylor_shift(P, c), F5.neg(c)) == P

    def test_char2_root_swap(self):
        # (X-1)X^2 = X^3 + X^2 over F_2, shifted by 1 -> X^3 + X
        assert taylor_shift(P_of(F2, 1, 1, 0, 0), F2.one) == P_of(F2, 1, 0, 1, 0)


class TestDescend:
    def test_pure_power(self):
        for p, k in ((2, 2), (3, 1), (5, 1)):
            F = PrimeField(p)
            P = UniPoly.monomial(F, p**k)
            assert descend(P, p, k) == UniPoly.x(F)

    def test_char2_square(self):
        assert descend(P_of(F2, 1, 0, 1, 0, 0, 0, 0), 2, 1) == \
            P_of(F2, 1, 1, 0, 0)

    def test_f4_with_frobenius(self):
        K = ExtField(2, 2, (1, 1, 1))
        w = (0, 1)
        w1 = K.add(w, K.one)
        # X^4 + w X^2 = (X^2 + (w+1) X)^2 since (w+1)^2 = w
        P = UniPoly(K, [K.zero, K.zero, w, K.zero, K.one])
        assert descend(P, 2, 1) == UniPoly(K, [K.zero, w1, K.one])

    def test_rejects_bad_support(self):
        with pytest.raises(DomainError):
            descend(P_of(F2, 1, 1), 2, 1)


class TestIsLinearPower:
    def test_pure_monomial(self):
        for ring in (Q, F2, F3):
            assert is_linear_power(P_of(ring, 1, 0, 0, 0)) == ring.zero

    def test_family_rejected(self):
        assert is_linear_power(P_of(F2, 1, 1, 0, 0)) is None

    def test_char3_square(self):
        # (X+2)^2 = X^2 + X + 1 over F_3
        assert is_linear_power(P_of(F3, 1, 1, 1)) == F3.from_int(1)

    def test_char_p_binomial_power(self):
        # (X - 2)^9 over F_3: exponent is a pure p-power times 1
        F = F3
        P = (UniPoly.x(F) - UniPoly.constant(F, F.from_int(2)))**9
        assert is_linear_power(P) == F.from_int(2)

    def test_char0_dense(self):
        P = (UniPoly.x(Q) + UniPoly.constant(Q, Q.from_int(3)))**5
        assert is_linear_power(P) == Q.from_int(-3)


class TestGcdProfile:
    def test_family_profile(self):
        prof = gcd_profile(P_of(F2, 1, 1, 0, 0))
        assert prof.degrees == (2, 1)
        assert prof.all_nontrivial
        assert prof.zero_derivative == (False, False)

    def test_zero_derivative_flag(self):
        prof = gcd_profile(UniPoly(F2, [0] * 8 + [1, 0, 0, 0, 1]))
        assert prof.zero_derivative[0]  # P_1 identically zero
        assert prof.degrees[0] == 12  # gcd(P, 0) = P

    def test_json_round_trip(self):
        prof = gcd_profile(P_of(F3, 1, 0, 2, 0))
        from casasalvero.unipoly import GcdProfile
        assert GcdProfile.from_json(prof.to_json()) == prof


class TestParseFormat:
    def test_list_format(self):
        assert parse_poly("1,0,-1,0", Q) == P_of(Q, 1, 0, -1, 0)

    def test_expression_format(self):
        F = PrimeField(7390044713023799)
        P = parse_poly("X^6+3144481702696843*X^4+X^3+2707944513497181*X^2", F)
        assert P.degree == 6
        assert P.coeff(4) == 3144481702696843

    def test_syntax_error_offset(self):
        with pytest.raises(PolyParseError) as e:
            parse_poly("X^2++1", F2)
        assert e.value.offset == 4

    def test_format_round_trip(self):
        for text in ("X^3+2*X+1", "X", "1", "X^2+X"):
            assert format_poly(parse_poly(text, F3)) == text
