from __future__ import annotations

import math
from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st

from sqwe.roots import (
    INV_SQRT3,
    QSqrt3,
    count_roots,
    divmod_poly,
    evaluate,
    gcd_poly,
    refine,
    roots_in_open_unit_t,
    squarefree,
    sturm_sequence,
)

r = sympy.Symbol("r")


def sympy_roots_in_interval(coeffs):
    """Distinct real roots in the open interval (0, 1/sqrt 3), from sympy's exact isolation."""
    poly = sympy.Poly(list(reversed(coeffs)), r)
    if poly.is_zero:
        return []
    hi = 1 / sympy.sqrt(3)
    out = set()
    for root in sympy.real_roots(poly):
        if root > 0 and root < hi:
            out.add(root)
    return sorted(float(x) for x in out)


class TestQSqrt3:
    def test_arithmetic(self):
        s = QSqrt3(0, 1)
        assert s * s == 3
        assert INV_SQRT3 * s == 1
        assert (1 + s) / (1 - s) == QSqrt3(-2, -1)

    def test_sign_cases(self):
        assert QSqrt3(2, -1).sign() == 1   # 2 > sqrt 3
        assert QSqrt3(1, -1).sign() == -1
        assert QSqrt3(-2, 1).sign() == -1
        assert QSqrt3(0, 0).sign() == 0
        assert QSqrt3(-7, 4).sign() == -1  # 4 sqrt 3 = 6.93
        assert QSqrt3(-6, 4).sign() == 1
        assert QSqrt3(Fraction(-1, 2), Fraction(1, 3)).sign() == 1

    @given(st.fractions(max_denominator=50), st.fractions(max_denominator=50))
    def test_sign_matches_float(self, a, b):
        v = QSqrt3(a, b)
        f = float(a) + float(b) * math.sqrt(3)
        if abs(f) > 1e-9:
            assert v.sign() == (1 if f > 0 else -1)

    def test_fixed_point_of_sample_polynomial(self):
        # -21 r^5 + 10 r^3 - r vanishes exactly at 1/sqrt 3
        assert evaluate([0, -1, 0, 10, 0, -21], INV_SQRT3) == 0


class TestPolynomialAlgebra:
    def test_divmod(self):
        q, rem = divmod_poly([-1, 0, 1], [-1, 1])
        assert q == [1, 1] and rem == []

    def test_gcd(self):
        # (r-1)^2 (r+2) and (r-1)(r+3)
        assert gcd_poly([2, -3, 0, 1], [-3, 2, 1]) == [-1, 1]

    def test_squarefree(self):
        assert squarefree([1, -2, 1]) == [-1, 1]

    def test_sturm_counts(self):
        seq = sturm_sequence([-1, 0, 7])  # roots +-1/sqrt 7
        assert count_roots(seq, QSqrt3(0), INV_SQRT3) == 1
        assert count_roots(seq, QSqrt3(-1), QSqrt3(1)) == 2


class TestIsolation:
    def test_five_qubit_distillation_polynomial(self):
        brackets = roots_in_open_unit_t([0, -1, 0, 10, 0, -21])
        assert len(brackets) == 1
        a, b = brackets[0]
        assert float(b - a) <= 1e-12
        assert abs(float(a) - 1 / math.sqrt(7)) < 1e-12

    def test_refine_width(self):
        a, b = refine([-1, 0, 7], QSqrt3(0), INV_SQRT3, 1e-12)
        assert 0 <= float(b - a) <= 1e-12
        assert float(a) <= 1 / math.sqrt(7) <= float(b)

    def test_endpoint_roots_excluded(self):
        # r (3r^2 - 1)^2 has no interior roots
        assert roots_in_open_unit_t([0, 1, 0, -6, 0, 9]) == []

    def test_repeated_interior_root(self):
        # (5r^2 - 1)^2 (r - 1/2)
        p = sympy.Poly(sympy.expand(2 * (5 * r**2 - 1) ** 2 * (r - sympy.Rational(1, 2))), r)
        coeffs = [int(c) for c in reversed(p.all_coeffs())]
        got = [float(a) for a, _ in roots_in_open_unit_t(coeffs)]
        assert len(got) == 2
        assert abs(got[0] - 1 / math.sqrt(5)) < 1e-11 and abs(got[1] - 0.5) < 1e-11

    @settings(max_examples=150, deadline=None)
    @given(st.lists(st.integers(-30, 30), min_size=1, max_size=9))
    def test_matches_sympy(self, coeffs):
        if not any(coeffs):
            return
        got = [float((a + b) * Fraction(1, 2)) for a, b in roots_in_open_unit_t(coeffs)]
        want = sympy_roots_in_interval(coeffs)
        assert len(got) == len(want)
        for g, w in zip(got, want):
            assert abs(g - w) <= 1e-11
