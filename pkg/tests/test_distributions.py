import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from oimac.distributions import (
    ErlangLaw,
    density_convolve,
    discrete,
    erlang,
    erlang_entropy,
    exponential,
    make_aen_mix,
    make_basic,
    make_geometric_spaced,
    make_maxmass_discrete,
    maxmass_weights,
    uniform,
)
from oimac.errors import DomainError
from oimac.numerics import EULER_GAMMA, entropy_quadrature


class TestBasic:
    def test_exponential(self):
        d = make_basic("exponential", mean=5)
        assert d.kind == "continuous"
        np.testing.assert_allclose(d.mean, 5)
        h = entropy_quadrature(d.density, [(0.0, d.effective_support[1])])
        np.testing.assert_allclose(h, 1 + math.log(5), atol=1e-6)

    def test_uniform(self):
        d = make_basic("uniform", peak=4)
        assert d.support == (0.0, 4.0)
        np.testing.assert_allclose(d.mean, 2)

    def test_erlang_one_is_exponential(self):
        x = np.linspace(0, 30, 301)
        np.testing.assert_allclose(erlang(1, 3.0).density(x), exponential(3.0).density(x), rtol=1e-14)

    def test_erlang_mean(self):
        np.testing.assert_allclose(make_basic("erlang", shape=4, scale=2.5).mean, 10.0)

    @pytest.mark.parametrize("kind,params", [
        ("exponential", {"mean": 0}),
        ("uniform", {"peak": -1}),
        ("erlang", {"shape": 0, "scale": 1}),
        ("erlang", {"shape": 2, "scale": 0}),
    ])
    def test_nonpositive(self, kind, params):
        with pytest.raises(DomainError):
            make_basic(kind, **params)

    def test_unknown(self):
        with pytest.raises(DomainError):
            make_basic("gamma", shape=1)


class TestAenMix:
    def test_half(self):
        d = make_aen_mix(1.0, 1.0)
        assert d.kind == "mixed"
        np.testing.assert_allclose(d.atoms, [(0.0, 0.5)])

    def test_degenerate(self):
        d = make_aen_mix(1e-9, 1.0)
        np.testing.assert_allclose(d.atom_p[0], 1.0, atol=1e-8)

    def test_mean(self):
        d = make_aen_mix(2.0, 1.0)
        np.testing.assert_allclose(d.mean, 2.0, atol=1e-10)
        # quadrature of the continuous part
        x = np.linspace(0, 200, 2_000_001)
        np.testing.assert_allclose(np.trapezoid(x * d.density(x), x), 2.0, atol=1e-8)

    def test_output_is_exponential(self):
        es, en = 2.0, 1.0
        out = density_convolve(make_aen_mix(es, en), exponential(en))
        y = np.linspace(0.0, 40.0, 1000)
        np.testing.assert_allclose(out.density(y), np.exp(-y / (es + en)) / (es + en), atol=1e-8)


class TestGeometric:
    def test_pmf(self):
        d = make_geometric_spaced(1.0, 1.0)
        np.testing.assert_allclose(d.atom_p[:2], [0.5, 0.25], rtol=1e-11)
        np.testing.assert_allclose(d.atom_x[:2], [0.0, 1.0])

    def test_coarse_lattice(self):
        d = make_geometric_spaced(1.0, 1e6)
        np.testing.assert_allclose(d.atom_p[0], 1.0, atol=1e-5)

    def test_mean(self):
        d = make_geometric_spaced(3.0, 0.5)
        np.testing.assert_allclose(d.mean, 3.0, rtol=1e-9)

    def test_unit_mass(self):
        d = make_geometric_spaced(40.0, 0.3)
        assert abs(d.atom_p.sum() - 1) <= 1e-12


class TestMaxMass:
    @pytest.mark.parametrize("a", [0.3, 1, 1.5, 2, 4, 4.7, 9.99])
    def test_mass_identity(self, a):
        n = math.ceil(a)
        assert 2 * sum(maxmass_weights(a)) == Fraction(1)
        assert 2 * sum(Fraction(n - m, n * (n + 1)) for m in range(n)) == 1

    @pytest.mark.parametrize("a", [1, 2, 3, 4, 7])
    def test_integer_collapse(self, a):
        d = make_maxmass_discrete(a)
        assert d.atom_x.size == a + 1
        np.testing.assert_allclose(d.atom_p, 1.0 / (a + 1), rtol=1e-14)
        np.testing.assert_allclose(d.atom_x, np.arange(-a, a + 1, 2), atol=1e-12)

    def test_a_4_7(self):
        d = make_maxmass_discrete(4.7)
        expected = sorted({s * (4.7 - 2 * m) for m in range(5) for s in (1, -1)})
        np.testing.assert_allclose(d.atom_x, expected, atol=1e-12)
        by_loc = dict(zip(np.round(d.atom_x, 9), d.atom_p))
        for m in range(5):
            np.testing.assert_allclose(by_loc[round(4.7 - 2 * m, 9)], (5 - m) / 30, rtol=1e-12)

    def test_shifted_n1(self):
        d = make_maxmass_discrete(1.0, 3.0, "shifted_nonneg")
        np.testing.assert_allclose(d.atoms, [(0.0, 0.5), (3.0, 0.5)])

    def test_shifted_support(self):
        d = make_maxmass_discrete(2.4, 2.0, "shifted_nonneg")
        assert d.is_nonnegative
        np.testing.assert_allclose(d.support, (0.0, 4.8))

    def test_errors(self):
        with pytest.raises(DomainError):
            make_maxmass_discrete(0.0)
        with pytest.raises(DomainError):
            make_maxmass_discrete(1.0, origin_style="centered")


class TestConvolve:
    def test_uniform_plus_two_atoms(self):
        a = 2.5
        out = density_convolve(uniform(a), discrete([0.0, a], [0.5, 0.5]))
        y = np.linspace(0.01, 2 * a - 0.01, 500)
        np.testing.assert_allclose(out.density(y), 1 / (2 * a), atol=1e-14)
        assert out.density(np.array([2 * a + 0.1]))[0] == 0

    def test_exp_plus_exp(self):
        e = 1.5
        out = density_convolve(exponential(e), exponential(e))
        y = np.linspace(0.0, 40.0, 1000)
        np.testing.assert_allclose(out.density(y), stats.gamma.pdf(y, 2, scale=e), atol=1e-8)

    def test_atoms(self):
        out = density_convolve(discrete([0, 1], [0.5, 0.5]), discrete([0, 2], [0.25, 0.75]))
        np.testing.assert_allclose(out.atoms, [(0, 0.125), (1, 0.125), (2, 0.375), (3, 0.375)])

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            density_convolve(discrete([-1.0], [1.0]), exponential(1.0))


_laws = st.one_of(
    st.floats(0.1, 20).map(exponential),
    st.floats(0.1, 20).map(uniform),
    st.tuples(st.floats(0.1, 5), st.floats(0.1, 5)).map(lambda t: make_aen_mix(*t)),
    st.tuples(st.floats(0.2, 6), st.floats(0.1, 4)).map(lambda t: make_maxmass_discrete(t[0], t[1], "shifted_nonneg")),
)


@settings(max_examples=30, deadline=None)
@given(_laws, _laws)
def test_mean_additivity(d1, d2):
    out = density_convolve(d1, d2)
    np.testing.assert_allclose(out.mean, d1.mean + d2.mean, atol=1e-8)


class TestErlangEntropy:
    def test_exponential_case(self):
        np.testing.assert_allclose(erlang_entropy(ErlangLaw(1, 7.0)), 1 + math.log(7.0), rtol=1e-15)

    def test_k2_value(self):
        np.testing.assert_allclose(erlang_entropy(ErlangLaw(2, 1.0)), 2 - (1 - EULER_GAMMA), atol=1e-15)

    def test_k2_monte_carlo(self):
        # independent oracle for the digamma convention: psi(K) = H_(K-1) - gamma
        rng = np.random.default_rng(428)
        x = rng.gamma(2, 1.0, 400_000)
        terms = -stats.gamma.logpdf(x, 2)
        se = terms.std(ddof=1) / math.sqrt(x.size)
        assert abs(terms.mean() - erlang_entropy(ErlangLaw(2, 1.0))) <= 3 * se
        # the alternative convention psi(K) = H_K - gamma is rejected
        alt = 2 + 0 - (1.5 - EULER_GAMMA)
        assert abs(terms.mean() - alt) > 20 * se

    def test_k4_quadrature(self):
        d = erlang(4, 1.0)
        h = entropy_quadrature(d.density, [(0.0, d.effective_support[1])])
        np.testing.assert_allclose(erlang_entropy(ErlangLaw(4, 1.0)), h, atol=1e-5)

    @pytest.mark.parametrize("k", range(1, 17))
    def test_scale_law(self, k):
        for e in (0.01, 3.0, 1e4):
            diff = erlang_entropy(ErlangLaw(k, e)) - erlang_entropy(ErlangLaw(k, 1.0))
            assert abs(diff - math.log(e)) <= 1e-12

    def test_validation(self):
        with pytest.raises(DomainError):
            ErlangLaw(0, 1.0)


class TestInvariants:
    @pytest.mark.parametrize("d", [
        exponential(2.0), uniform(3.0), erlang(3, 1.0), make_aen_mix(1.0, 2.0),
        make_geometric_spaced(2.0, 0.7), make_maxmass_discrete(3.3),
    ], ids=lambda d: d.name)
    def test_normalized(self, d):
        assert abs(d.atom_p.sum() + sum(p.weight for p in d.parts) - 1) <= 1e-12
        for part in d.parts:
            pts = np.unique(np.concatenate([np.linspace(part.lo, part.upper, 400_001), part.breaks]))
            np.testing.assert_allclose(np.trapezoid(part.pdf(pts), pts), 1.0, atol=1e-6)

    def test_awgn_pdf_integrates(self):
        d = make_aen_mix(3.0, 1.0)
        y = np.linspace(-12, 200, 400_001)
        np.testing.assert_allclose(np.trapezoid(d.awgn_pdf(y, 1.0), y), 1.0, atol=1e-8)

    @pytest.mark.parametrize("mean", [1e-10, 0.01, 1.0, 1e3])
    def test_exponential_smoothing_matches_scipy(self, mean):
        y = np.linspace(-6, 30, 200)
        # exponnorm(K, scale) with K = mean / sigma
        ref = stats.exponnorm.pdf(y, mean, scale=1.0) if mean >= 0.01 else stats.norm.pdf(y)
        np.testing.assert_allclose(exponential(mean).awgn_pdf(y, 1.0), ref, rtol=1e-8, atol=1e-300)

    def test_erlang_smoothing_matches_numeric(self):
        from oimac.distributions import _numeric_smooth

        d = erlang(5, 2.0)
        part = d.parts[0]
        y = np.linspace(-5, 60, 300)
        np.testing.assert_allclose(d.awgn_pdf(y, 1.0), _numeric_smooth(part.pdf, 0.0, part.upper, y, 1.0), atol=1e-12)
