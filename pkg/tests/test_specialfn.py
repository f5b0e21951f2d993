import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperbolic_gnbd._tolerances import TOL
from hyperbolic_gnbd.errors import DomainError
from hyperbolic_gnbd.specialfn import (
    JacobiSpec,
    duplication_check,
    gen_binomial,
    hyp_poly,
    hyp_poly_3f2,
    jacobi_eval,
    jacobi_leading_coefficient,
    jacobi_zeros,
    laguerre_eval,
    log_gamma,
    pochhammer,
)


def mp_jacobi(n, a, b, x):
    """Explicit binomial sum at 60 digits (oracle)."""
    with mp.workdps(60):
        a, b, x = mp.mpf(a), mp.mpf(b), mp.mpf(x)
        s = mp.fsum(mp.binomial(n + a, n - k) * mp.binomial(n + b, k) * ((x - 1) / 2) ** k * ((x + 1) / 2) ** (n - k) for k in range(n + 1))
        return float(s)


class TestLogGamma:
    @pytest.mark.parametrize("x, expected", [(1.0, 0.0), (5.0, 3.1780538303479458), (0.5, 0.5723649429247001)])
    def test_examples(self, x, expected):
        assert log_gamma(x) == pytest.approx(expected, rel=TOL.log_gamma_rel, abs=1e-15)

    @pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
    def test_domain(self, x):
        with pytest.raises(DomainError):
            log_gamma(x)

    @given(st.floats(0.5, 1e6))
    def test_against_mpmath(self, x):
        ref = float(mp.loggamma(x))
        assert abs(log_gamma(x) - ref) <= TOL.log_gamma_rel * max(abs(ref), 1.0)


class TestPochhammerBinomial:
    @pytest.mark.parametrize("x, k, expected", [(3.0, 0, 1.0), (-3, 2, 6.0), (-3, 5, 0.0), (0.5, 3, 0.5 * 1.5 * 2.5)])
    def test_pochhammer(self, x, k, expected):
        assert pochhammer(x, k) == pytest.approx(expected)

    @pytest.mark.parametrize("x, k, expected", [(4.0, 2, 6.0), (7.3, 0, 1.0), (2.5, 2, 1.875), (-1.5, 3, -1.5 * -2.5 * -3.5 / 6)])
    def test_gen_binomial(self, x, k, expected):
        assert gen_binomial(x, k) == pytest.approx(expected)

    @given(st.floats(-20, 20), st.integers(0, 12))
    def test_binomial_pochhammer_relation(self, x, k):
        lhs = gen_binomial(x, k)
        rhs = (-1) ** k * pochhammer(-x, k) / math.factorial(k)
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)


class TestHypergeometric:
    def test_first_parameter_zero(self):
        assert hyp_poly_3f2(0, 1.3, 2.2, 0.7, 4.1, 0.9) == 1.0

    def test_x_zero(self):
        assert hyp_poly_3f2(-4, 1.3, 2.2, 0.7, 4.1, 0.0) == 1.0

    def test_two_terms(self):
        p2, p3, q1, q2, x = 1.3, 2.2, 0.7, 4.1, -0.35
        assert hyp_poly_3f2(-1, p2, p3, q1, q2, x) == pytest.approx(1 + (-1) * p2 * p3 * x / (q1 * q2))

    def test_agrees_with_mpmath(self):
        got = hyp_poly_3f2(-5, 2.5, 0.5, 1.5, 3.0, -0.4)
        ref = float(mp.hyp3f2(-5, 2.5, 0.5, 1.5, 3.0, -0.4))
        assert got == pytest.approx(ref, rel=1e-13)

    def test_bad_denominator(self):
        with pytest.raises(DomainError):
            hyp_poly_3f2(-4, 1.0, 1.0, -2, 1.0, 0.5)

    def test_non_terminating_rejected(self):
        with pytest.raises(DomainError):
            hyp_poly([0.5, 1.0], [2.0], 0.1)


class TestJacobiEval:
    def test_degree_zero(self):
        assert jacobi_eval(0, 3.2, 1.1, 0.4) == 1.0

    @pytest.mark.parametrize("method", ["recurrence", "sum", "hyp"])
    def test_degree_one(self, method):
        a, b, x = 2.5, 0.7, 0.3
        assert jacobi_eval(1, a, b, x, method=method) == pytest.approx((a + 1) + (a + b + 2) * (x - 1) / 2)

    def test_legendre_at_one(self):
        assert jacobi_eval(2, 0, 0, 1.0) == pytest.approx(1.0)

    @pytest.mark.parametrize("n, a, b, x", [(7, 0.5, 3.0, 0.21), (12, 7.5, 0.0, -0.63), (20, 49.0, 3.0, 1.7), (30, 0.0, -0.5, 0.05)])
    def test_against_oracle(self, n, a, b, x):
        assert jacobi_eval(n, a, b, x) == pytest.approx(mp_jacobi(n, a, b, x), rel=1e-11)

    def test_array_first_parameter(self):
        a = np.array([0.5, 2.0, 9.0])
        got = jacobi_eval(4, a, 1.0, 0.3)
        assert np.allclose(got, [jacobi_eval(4, ai, 1.0, 0.3) for ai in a], rtol=1e-14)

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            jacobi_eval(3, 0.0, 0.0, 0.1, method="nope")

    def test_callable_spec(self):
        spec = JacobiSpec(3, 1.0, 2.0)
        assert spec(0.4) == pytest.approx(jacobi_eval(3, 1.0, 2.0, 0.4))


class TestJacobiZeros:
    def test_linear(self):
        zs = jacobi_zeros(1, 1.0, 0.0)
        assert zs.zeros == pytest.approx([-1 / 3])
        assert zs.degree == 1

    def test_linear_nu2(self):
        nu = 2.0
        assert jacobi_zeros(1, 2 * nu - 3, 0.0).zeros == pytest.approx([-1 / 3])

    def test_legendre(self):
        assert jacobi_zeros(2, 0.0, 0.0).zeros == pytest.approx([-1 / math.sqrt(3), 1 / math.sqrt(3)], rel=1e-14)

    @pytest.mark.parametrize("a, b", [(-1.0, 0.0), (0.0, -1.5)])
    def test_domain(self, a, b):
        with pytest.raises(DomainError):
            jacobi_zeros(3, a, b)

    def test_degree_zero_rejected(self):
        with pytest.raises(DomainError):
            jacobi_zeros(0, 0.0, 0.0)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 30), st.floats(-0.9, 40), st.floats(-0.9, 10))
    def test_reconstruction(self, n, a, b):
        zs = jacobi_zeros(n, a, b)
        assert len(zs.zeros) == n
        assert np.all(np.diff(zs.zeros) > 0)
        assert np.all((zs.zeros > -1) & (zs.zeros < 1))
        lead = jacobi_leading_coefficient(n, a, b)
        probes = np.linspace(-1.3, 1.3, 10) + 0.0123
        rebuilt = lead * np.prod(probes[:, None] - zs.zeros, axis=1)
        direct = np.array([jacobi_eval(n, a, b, x) for x in probes])
        scale = np.max(np.abs(direct))
        assert np.max(np.abs(rebuilt - direct)) <= TOL.zero_reconstruction_rel * scale


class TestLaguerre:
    def test_examples(self):
        assert laguerre_eval(0, 1.5, 3.0) == 1.0
        assert laguerre_eval(1, 0.0, 0.7) == pytest.approx(0.3)
        assert laguerre_eval(6, 0.0, 0.0) == pytest.approx(1.0)

    def test_against_mpmath(self):
        assert laguerre_eval(5, 0.0, -2.3) == pytest.approx(float(mp.laguerre(5, 0, -2.3)), rel=1e-13)


class TestDuplication:
    @pytest.mark.parametrize("x, tol", [(1.0, 1e-13), (0.5, 1e-13), (10.0, 1e-12)])
    def test_examples(self, x, tol):
        assert duplication_check(x) <= tol


class TestInvariants:
    @pytest.mark.parametrize("a", [0, 0.5, 3, 7.5])
    @pytest.mark.parametrize("b", [0, 0.5, 3, 7.5])
    def test_symmetry(self, a, b):
        xs = np.linspace(-1, 1, 23)
        for n in range(21):
            for x in xs:
                lhs = jacobi_eval(n, a, b, x)
                rhs = (-1) ** n * jacobi_eval(n, b, a, -x)
                scale = max(abs(lhs), 1e-300)
                if abs(lhs) < 1e-8 * max(abs(jacobi_eval(n, a, b, 1.0)), 1.0):
                    continue  # near a zero; relative error is meaningless
                assert abs(lhs - rhs) <= TOL.jacobi_symmetry_rel * scale

    @pytest.mark.parametrize("method", ["sum", "hyp"])
    def test_routes_agree_extended_precision(self, method):
        rng = np.random.default_rng(7)
        for _ in range(25):
            n = int(rng.integers(0, 31))
            a, b = rng.uniform(-0.99, 50, 2)
            x = float(rng.uniform(-2, 2)) + 0.0123
            ref = jacobi_eval(n, a, b, x, method="recurrence", dps=50)
            got = jacobi_eval(n, a, b, x, method=method, dps=50)
            assert abs(got - ref) <= TOL.jacobi_routes_rel * abs(ref)

    def test_recurrence_double_precision(self):
        # the explicit sums cancel for x < 0 in double; the recurrence does not
        for n in range(0, 31):
            for a, b in [(0.0, 0.0), (0.5, 3.0), (2.0, 1.0), (40.0, 7.5)]:
                for x in (-0.77, 0.31, 1.4):
                    ref = mp_jacobi(n, a, b, x)
                    assert jacobi_eval(n, a, b, x) == pytest.approx(ref, rel=1e-11)

    def test_index_swap(self):
        from hyperbolic_gnbd.specialfn import log_gamma as lg

        for nu_r2 in (6.5, 11.0, 20.3):
            for m in range(0, 6):
                c = nu_r2 * 2 - 2 * m - 1
                for j in range(0, m + 1):
                    for x in (-0.61, 0.27, 1.9, 3.3):
                        lhs = jacobi_eval(m, j - m, c, x, method="sum")
                        pre = math.exp(lg(j + 1) + lg(2 * nu_r2 - m) - lg(m + 1) - lg(2 * nu_r2 - 2 * m + j))
                        rhs = pre * ((x - 1) / 2) ** (m - j) * jacobi_eval(j, m - j, c, x)
                        assert lhs == pytest.approx(rhs, rel=TOL.index_swap_rel)
