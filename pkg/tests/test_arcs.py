import math
from fractions import Fraction

import numpy as np
import pytest

from vmvt.arcs import (build_dissection, classify, disjointness_guaranteed,
                       f_exponent, rational_approx)
from vmvt.errors import BudgetError


class TestFExponent:
    def test_piecewise(self):
        assert f_exponent(0.25) == 0.25
        assert f_exponent(1.0) == 1.0
        assert f_exponent(1.5, d=3) == 1.0
        assert f_exponent(2.0, d=3) == 1.0

    def test_domain(self):
        with pytest.raises(ValueError):
            f_exponent(0.0)
        with pytest.raises(ValueError):
            f_exponent(2.5, d=3)


class TestRationalApprox:
    def test_exact_rational(self):
        r = rational_approx(0.5, 10)
        assert (r.a, r.q) == (1, 2)

    def test_golden_ratio(self):
        # convergents 1/2, 2/3, 3/5, 5/8, 8/13; q <= 12 stops at 5/8
        r = rational_approx(0.6180339887498949, 12)
        assert (r.a, r.q) == (5, 8)

    def test_quality_bound(self):
        rng = np.random.default_rng(6)
        Q = 1000
        for _ in range(50):
            alpha = float(rng.random())
            r = rational_approx(alpha, Q)
            assert r.q <= Q
            assert abs(alpha - r.a / r.q) <= 1.0 / (r.q * (Q + 1))

    def test_optimality_brute(self):
        # best approximation of the second kind: minimal |q alpha - a|
        rng = np.random.default_rng(9)
        Q = 40
        for _ in range(20):
            alpha = float(rng.random())
            r = rational_approx(alpha, Q)
            best = min(abs(q * alpha - round(q * alpha))
                       for q in range(1, Q + 1))
            assert abs(r.q * alpha - r.a) <= best + 1e-13


class TestClassify:
    def test_zero_is_major(self):
        c = classify(0.0, 64, 0.5)
        assert c.major and (c.witness.a, c.witness.q) == (0, 1)

    def test_inside_half_width(self):
        N, u = 64, 0.5
        alpha = 0.5 + N ** (-1 - u) * N ** f_exponent(u) / 4
        c = classify(alpha, N, u)
        assert c.major and (c.witness.a, c.witness.q) == (1, 2)

    def test_witness_is_smallest_q(self):
        c = classify(0.125, 64, 0.5)
        assert c.major and c.witness.q == 8


class TestDissection:
    def test_overlapping_regime(self):
        dis = build_dissection(16, 1.0)
        assert dis.Q == 16
        assert dis.width == pytest.approx(16 / 16**2)
        assert dis.overlap_measure > 0

    def test_disjoint_regime(self):
        dis = build_dissection(64, 0.5)
        assert disjointness_guaranteed(64, 0.5)
        assert dis.overlap_measure == 0.0
        assert dis.total_measure <= 2 * 64 ** -0.5

    def test_union_bound(self):
        for N, u in ((16, 1.0), (64, 0.5), (100, 0.7)):
            dis = build_dissection(N, u)
            assert dis.total_measure <= 2 * dis.Q * dis.width + 1e-12

    def test_measure_grows_with_u_below_one(self):
        # for u <= 1 the arc half-width W = N^{f(u)-1-u} = 1/N is constant
        # while Q = N^u grows, so the union measure increases with u
        vals = [build_dissection(64, u).total_measure
                for u in (0.3, 0.5, 0.7, 0.9, 1.0)]
        assert all(a <= b + 1e-12 for a, b in zip(vals, vals[1:]))

    def test_classify_consistency(self):
        dis = build_dissection(64, 0.5)
        rng = np.random.default_rng(12)
        xs = rng.random(10000)
        member = dis.contains(xs)
        for x, m in zip(xs, member):
            assert classify(float(x), 64, 0.5).major == bool(m)

    def test_budget_refusal(self):
        with pytest.raises(BudgetError):
            build_dissection(10**6, 1.0)
