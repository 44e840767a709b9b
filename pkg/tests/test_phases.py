import math
from fractions import Fraction

import numpy as np
import pytest

from vmvt.phases import (PhaseVector, eval_f, eval_f_many, eval_K,
                         shift_coeffs, shift_jacobian_determinant,
                         verify_shift_identity)

# 256-bit direct summation of the float-rounded coefficients
#   (a_3, a_2, a_1) = (0.137, 0.421, 0.905), N = 1000
REF_F_1000 = complex(-1.281660052283470590e-6, -3.476620300218601229e-7)


def _direct(coeffs, N, gamma=None):
    n = np.arange(1, N + 1, dtype=np.float64)
    d = len(coeffs)
    ph = sum(c * n ** (d - i) for i, c in enumerate(coeffs))
    if gamma is not None:
        ph = ph + gamma * n
    return complex(np.sum(np.exp(2j * np.pi * ph)))


class TestEvalF:
    def test_zero_phase(self):
        assert eval_f((0.0, 0.0), 7) == pytest.approx(7 + 0j)

    def test_alternating_cancellation(self):
        # a_2 = 0, a_1 = 1/2, N = 2: e(1/2) + e(1) = 0
        assert abs(eval_f((0.0, 0.5), 2)) < 1e-14

    def test_high_precision_reference(self):
        v = eval_f((0.137, 0.421, 0.905), 1000)
        assert abs(v - REF_F_1000) < 1e-9

    def test_matches_direct_summation_small_n(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            coeffs = tuple(rng.random(3))
            assert abs(eval_f(coeffs, 40) - _direct(coeffs, 40)) < 1e-9

    def test_gamma_term(self):
        coeffs = (0.31, 0.77, 0.205)
        v = eval_f(coeffs, 30, gamma=0.125)
        assert abs(v - _direct(coeffs, 30, gamma=0.125)) < 1e-9

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            eval_f((0.1, 0.2), 0)
        with pytest.raises(ValueError):
            eval_f((float("nan"), 0.2), 5)
        with pytest.raises(ValueError):
            PhaseVector((0.5,))

    def test_periodicity_dyadic(self):
        # +1 must be exactly representable, hence dyadic coefficients
        base = tuple(k / 2**26 for k in (41294321, 9041411, 60712225))
        ref = eval_f(base, 200)
        for i in range(3):
            shifted = tuple(c + (1.0 if j == i else 0.0)
                            for j, c in enumerate(base))
            assert abs(eval_f(shifted, 200) - ref) < 1e-12

    def test_magnitude_bound_and_conjugation(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            coeffs = tuple(rng.random(4))
            v = eval_f(coeffs, 64)
            assert abs(v) <= 64 + 1e-9
            w = eval_f(tuple(-c for c in coeffs), 64)
            assert abs(w - v.conjugate()) < 1e-12

    def test_eval_f_many_matches_scalar(self):
        rng = np.random.default_rng(5)
        rows = rng.random((8, 3))
        vals = eval_f_many(rows, 100)
        for row, v in zip(rows, vals):
            assert abs(v - eval_f(tuple(row), 100)) < 1e-8


class TestEvalK:
    def test_integer_gamma(self):
        assert eval_K(0.0, 10) == pytest.approx(10 + 0j)
        assert eval_K(3.0, 7) == pytest.approx(7 + 0j)

    def test_half_cancellation(self):
        assert abs(eval_K(0.5, 4)) < 1e-12

    def test_against_direct(self):
        n = np.arange(1, 51)
        ref = np.sum(np.exp(2j * np.pi * 0.3 * n))
        assert abs(eval_K(0.3, 50) - ref) < 1e-10

    def test_random_cases(self):
        rng = np.random.default_rng(7)
        for _ in range(300):
            g = float(rng.random())
            N = int(rng.integers(1, 2000))
            n = np.arange(1, N + 1)
            ref = np.sum(np.exp(2j * np.pi * ((g * n) % 1.0)))
            assert abs(eval_K(g, N) - ref) < 1e-10

    def test_near_integer_fallback(self):
        g = 1e-10
        N = 500
        n = np.arange(1, N + 1)
        ref = np.sum(np.exp(2j * np.pi * g * n))
        assert abs(eval_K(g, N) - ref) < 1e-10


class TestShift:
    def test_zero_alpha(self):
        sc = shift_coeffs((0, 0, 0), 5)
        assert all(c == 0 for c in sc.c)

    def test_degree_two_closed_form(self):
        a2, a1 = Fraction(3, 7), Fraction(2, 5)
        sc = shift_coeffs((a2, a1), 1)
        assert sc.c == (a2, a1 - 2 * a2, a2 - a1)

    def test_exact_polynomial_identity(self):
        # Omega(n - y) = sum_i c_i n^i as exact rationals
        alpha = (Fraction(5, 11), Fraction(3, 13), Fraction(7, 17))
        y = 7
        sc = shift_coeffs(alpha, y)
        a3, a2, a1 = alpha
        for n in range(1, 21):
            m = n - y
            lhs = a3 * m**3 + a2 * m**2 + a1 * m
            rhs = sum(c * n**i for c, i in zip(sc.c, range(3, -1, -1)))
            assert lhs == rhs

    def test_jacobian_determinant(self):
        for d in range(2, 7):
            for y in (1, 3, 12):
                assert shift_jacobian_determinant(d, y) == 1

    def test_rejects_bad_shift(self):
        with pytest.raises(ValueError):
            shift_coeffs((0.1, 0.2), 0)


class TestShiftIdentity:
    def test_zero(self):
        assert verify_shift_identity((0, 0), 2, 10) == 0.0

    def test_rational(self):
        dev = verify_shift_identity((Fraction(1, 3), Fraction(1, 5)), 2, 10)
        assert dev <= 1e-12

    def test_random(self):
        rng = np.random.default_rng(19)
        for _ in range(5):
            alpha = tuple(rng.random(3))
            assert verify_shift_identity(alpha, 5, 64) <= 1e-9

    def test_rejects_bad_y(self):
        with pytest.raises(ValueError):
            verify_shift_identity((0.1, 0.2), 0, 10)
        with pytest.raises(ValueError):
            verify_shift_identity((0.1, 0.2), 11, 10)
