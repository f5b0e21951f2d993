import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperbolic_gnbd._tolerances import TOL
from hyperbolic_gnbd.decomposition import (
    SignedAtomicMeasure,
    convolve,
    decomposed_pmf,
    decomposition_measure,
    linearized_fourier,
    nbd_part,
    unit_centre_decomposition_measure,
    q_poly,
    q_poly_hypergeometric,
)
from hyperbolic_gnbd.errors import DomainError
from hyperbolic_gnbd.gnbd import GnbdParams, mgf, pmf
from hyperbolic_gnbd.specialfn import gen_binomial

from .grids import decomposition_grid

atoms = st.dictionaries(st.integers(-20, 20), st.floats(-5, 5, allow_nan=False), max_size=8)


class TestQPoly:
    def test_level_one(self):
        for x in (0.0, 0.2, 0.6122448979591837):
            assert q_poly(2.0, 1, 1, x) == pytest.approx(2 * x, abs=1e-15)

    @pytest.mark.parametrize("nu, m", [(2.0, 1), (3.5, 3), (9.2, 6)])
    def test_top_coefficient(self, nu, m):
        x = 0.37
        assert q_poly(nu, m, m, x) == pytest.approx((-1) ** m * gen_binomial(2 * nu - m - 1, m) * (-x) ** m, rel=1e-14)

    def test_central_weight(self):
        # the central weight is one only at x = 0
        assert q_poly(3.5, 2, 0, 0.0) == 1.0
        x = 0.3 / 0.49
        assert q_poly(2.0, 1, 0, x) == pytest.approx(1 - 4 * x, rel=1e-14)

    def test_domain(self):
        with pytest.raises(DomainError):
            q_poly(2.0, 1, 2, 0.1)
        with pytest.raises(DomainError):
            q_poly(1.0, 1, 0, 0.1)

    @pytest.mark.parametrize("m", range(0, 9))
    def test_hypergeometric_form(self, m):
        for nu in (m + 0.7, m + 2.5, 2 * m + 1.0):
            for x in (0.01, 0.2, 0.6122448979591837, 3.75):
                for k in range(m + 1):
                    direct = q_poly(nu, m, k, x)
                    via = q_poly_hypergeometric(nu, m, k, x)
                    # relative to the size of the alternating terms: some Q_k vanish exactly
                    scale = sum(
                        abs(gen_binomial(2 * nu - m - 1, j) * math.comb(m, j) * math.comb(2 * j, j - k) * x**j) for j in range(k, m + 1)
                    )
                    assert abs(via - direct) <= TOL.q_poly_rel * scale

    def test_hypergeometric_against_mpmath(self):
        nu, m, k, x = 4.25, 3, 1, 0.2
        ref = math.comb(m, k) * float(mp.binomial(2 * nu - m - 1, k)) * x**k * float(mp.hyp3f2(k - m, k + m + 1 - 2 * nu, k + 0.5, k + 1, 2 * k + 1, -4 * x))
        assert q_poly(nu, m, k, x) == pytest.approx(ref, rel=1e-13)


class TestMeasure:
    def test_level_zero(self):
        assert decomposition_measure(2.0, 0, 0.3).atoms == {0: 1.0}

    def test_example(self):
        meas = decomposition_measure(2.0, 1, 0.3)
        assert sorted(meas.atoms) == [0, 1, 2]
        assert meas[0] == pytest.approx(1.2244897959183674, rel=1e-14)
        assert meas[2] == pytest.approx(1.2244897959183674, rel=1e-14)
        assert meas[1] == pytest.approx(-1.4489795918367347, rel=1e-14)

    @pytest.mark.parametrize("nu, m, tau", decomposition_grid())
    def test_symmetry_and_mass(self, nu, m, tau):
        meas = decomposition_measure(nu, m, tau)
        for k in range(m + 1):
            assert meas[m + k] == meas[m - k]
        assert meas.total_mass() == pytest.approx(1.0, abs=1e-10 * meas.total_variation())

    def test_mass_matches_generating_function(self):
        nu, m, tau = 3.5, 2, 0.3
        ratio = mgf(GnbdParams(nu=nu, tau=tau, m=m), 1.0) / mgf(GnbdParams(nu=nu, tau=tau, m=0), 1.0)
        assert decomposition_measure(nu, m, tau).total_mass() == pytest.approx(ratio.real, abs=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            decomposition_measure(2.0, 1, 1.0)
        with pytest.raises(DomainError):
            decomposition_measure(1.5, 2, 0.3)


class TestConvolve:
    def test_identity(self):
        a = pmf(GnbdParams(nu=2.0, tau=0.3, m=1))
        out = convolve(a, SignedAtomicMeasure.dirac(0))
        assert np.allclose(out.dense()[1], a.weights, rtol=0, atol=0)
        assert out.tail_bound == a.tail_bound

    def test_diracs(self):
        out = convolve(SignedAtomicMeasure.dirac(3, 2.0), SignedAtomicMeasure.dirac(-5, 0.5))
        assert out.atoms == {-2: 1.0}

    def test_first_weight_example(self):
        conv = decomposed_pmf(2.0, 1, 0.3)
        # (1 - tau)^(2 nu) times the atom at 0 equals the GNBD's first weight
        assert conv[0] == pytest.approx(0.7**4 * 1.2244897959183674, rel=1e-14)
        assert conv[0] == pytest.approx(0.294, rel=1e-13)

    def test_tail_propagation(self):
        a = nbd_part(2.0, 0.3, 20)
        b = decomposition_measure(2.0, 1, 0.3)
        out = convolve(a, b)
        assert out.tail_bound == pytest.approx(b.total_variation() * a.tail_bound)

    @settings(max_examples=50, deadline=None)
    @given(atoms, atoms, st.floats(-3, 3))
    def test_fourier_of_convolution(self, a, b, u):
        ma, mb = SignedAtomicMeasure(a), SignedAtomicMeasure(b)
        lhs = convolve(ma, mb).fourier(u)
        rhs = ma.fourier(u) * mb.fourier(u)
        assert abs(lhs - rhs) <= 1e-12 * (1 + ma.total_variation() * mb.total_variation())


class TestSignedMeasure:
    @given(atoms)
    def test_invariants(self, a):
        meas = SignedAtomicMeasure(a)
        assert all(abs(w) >= 1e-300 for w in meas.atoms.values())
        assert meas.total_variation() >= abs(meas.total_mass()) - 1e-15
        assert list(meas.atoms) == sorted(meas.atoms)

    def test_zero_atoms_dropped(self):
        assert SignedAtomicMeasure({1: 1e-301, 2: 0.0, 3: 1.0}).atoms == {3: 1.0}

    def test_algebra(self):
        a = SignedAtomicMeasure({1: 1.0, 2: -0.5}, tail_bound=1e-3)
        b = SignedAtomicMeasure({2: 0.5, 4: 2.0}, tail_bound=2e-3)
        s = a + b
        assert s.atoms == {1: 1.0, 4: 2.0}
        assert s.tail_bound == pytest.approx(3e-3)
        assert a.abs().atoms == {1: 1.0, 2: 0.5}
        assert a.scaled(-2).atoms == {1: -2.0, 2: 1.0}
        assert a.min_weight() == -0.5
        assert a.levy_exponent(0.0) == 0


class TestDecompositionIdentity:
    @pytest.mark.parametrize("nu, m, tau", decomposition_grid())
    def test_reproduces_pmf(self, nu, m, tau):
        target = pmf(GnbdParams(nu=nu, tau=tau, m=m))
        rebuilt = decomposed_pmf(nu, m, tau, target.j_max)
        err = max(abs(rebuilt[j] - w) for j, w in enumerate(target.weights))
        assert err <= TOL.decomposition_abs
        assert all(abs(rebuilt[j]) <= 1e-12 for j in range(-2 * m, 0))

    @pytest.mark.parametrize("nu, m, tau", [(2.0, 1, 0.3), (3.5, 2, 0.05), (5.5, 3, 0.6)])
    def test_unit_centre_atom_does_not_reproduce(self, nu, m, tau):
        target = pmf(GnbdParams(nu=nu, tau=tau, m=m))
        wrong = convolve(nbd_part(nu, tau, target.j_max), unit_centre_decomposition_measure(nu, m, tau))
        err = max(abs(wrong[j] - w) for j, w in enumerate(target.weights))
        assert err > 1e-3

    @pytest.mark.parametrize("nu, m, tau", decomposition_grid())
    def test_linearization(self, nu, m, tau):
        u = np.linspace(-math.pi, math.pi, 32)
        meas = decomposition_measure(nu, m, tau)
        err = np.max(np.abs(meas.fourier(u) - linearized_fourier(nu, m, tau, u)))
        # absolute when the measure is O(1); scaled by its size otherwise
        assert err <= TOL.linearization_abs * max(1.0, meas.total_variation())

    @pytest.mark.parametrize("nu, m, tau", [c for c in decomposition_grid() if c != (5.5, 3, 0.6)])
    def test_linearization_absolute(self, nu, m, tau):
        u = np.linspace(-math.pi, math.pi, 32)
        err = np.max(np.abs(decomposition_measure(nu, m, tau).fourier(u) - linearized_fourier(nu, m, tau, u)))
        assert err <= TOL.linearization_abs
