import math
import warnings

import numpy as np
import pytest

from oimac.errors import ArityError, DomainError
from oimac.mutual_information import EST_ERROR_FACTOR
from oimac.numerics import DEFAULT_QUADRATURE, LN2, entropy_quadrature, q_function
from oimac.peak_power import (
    SQRT_2PIE,
    SlantedCoefficientWarning,
    iu,
    iu_plus,
    pp_asymptotic_gap,
    pp_cross_lower,
    pp_inner_corners_2u,
    pp_inner_hrep_2u,
    pp_lemma5_capacity,
    pp_mckellips,
    pp_orientation_gaps,
    pp_outer_2u,
    pp_pnr_star,
    pp_single_lower_closed,
    pp_single_lower_uniform,
    pp_single_upper,
    pp_symmetric_asymptotics,
    pp_symmetric_bound_difference,
    pp_tkb,
    snap_ratio,
    sum_law,
)
from oimac.regions import point_in_hrep, vrep_in_hrep

UNIT = EST_ERROR_FACTOR * DEFAULT_QUADRATURE.abs_tol
EPI_RATIOS = (0.4427, 1.0, 1.7, 3.0)


class TestSingleUserBounds:
    def test_mckellips(self):
        assert pp_mckellips(0) == 0.0
        np.testing.assert_allclose(pp_mckellips(2), 0.5 * math.log(2), rtol=1e-15)
        np.testing.assert_allclose(pp_mckellips(100), math.log1p(100 / SQRT_2PIE), rtol=1e-15)

    def test_tkb(self):
        assert pp_tkb(0) == 0.0
        assert pp_tkb(10) is None
        t = pp_tkb(2)
        assert t is not None
        # the two branches at 2 are close; the combined bound takes the smaller
        assert pp_single_upper(2) == min(t, pp_mckellips(2))

    def test_pnr_star(self):
        s = pp_pnr_star()
        assert abs(s - 4.1324) < 1e-3
        residual = 0.5 - q_function(s) - s / (s + SQRT_2PIE)
        assert abs(residual) < 1e-8
        assert pp_tkb(s - 0.1) is not None
        assert pp_tkb(s + 0.1) is None

    def test_continuity_at_star(self):
        s = pp_pnr_star()
        below = pp_single_upper(s * (1 - 1e-9))
        above = pp_single_upper(s * (1 + 1e-9))
        assert abs(below - above) < 1e-6

    def test_high_pnr_branch(self):
        assert pp_single_upper(1000) == math.log1p(1000 / SQRT_2PIE)

    def test_uniform_zero(self):
        assert pp_single_lower_uniform(0) == (0.0, 0.0)

    def test_closed_form_ln2(self):
        p = math.sqrt(2 * math.pi * math.e * 3)
        np.testing.assert_allclose(pp_single_lower_closed(p), math.log(2), rtol=1e-14)

    def test_high_pnr_asymptote(self):
        numeric, _ = pp_single_lower_uniform(1000)
        assert pp_single_upper(1000) - numeric < 0.5 * math.log(2) + 0.01

    @pytest.mark.parametrize("pnr", np.geomspace(0.05, 3000, 20))
    def test_sandwich(self, pnr):
        numeric, closed = pp_single_lower_uniform(pnr)
        assert closed - UNIT <= numeric <= pp_single_upper(pnr) + UNIT

    @pytest.mark.parametrize("pnr", [0.3, 1.0, 2.0, 4.0])
    def test_tkb_valid(self, pnr):
        assert pp_tkb(pnr) >= iu(pnr) - UNIT

    def test_sigma_invariance(self):
        np.testing.assert_allclose(iu(3.0, sigma=2.5), iu(3.0), atol=2 * UNIT)

    def test_validation(self):
        for f in (pp_mckellips, pp_tkb, pp_single_upper, pp_single_lower_closed, iu):
            with pytest.raises(DomainError):
                f(-1.0)


class TestUniformNoiseCapacity:
    def test_values(self):
        np.testing.assert_allclose(pp_lemma5_capacity(4), math.log(5), rtol=1e-15)
        np.testing.assert_allclose(pp_lemma5_capacity(4.7), math.log(6) - 0.3 * math.log(6 / 5), rtol=1e-14)
        np.testing.assert_allclose(pp_lemma5_capacity(4.7), 1.7371, atol=1e-4)

    def test_small_a(self):
        a = 1e-6
        np.testing.assert_allclose(pp_lemma5_capacity(a), math.log(2) - (1 - a) * math.log(2), rtol=1e-9)
        np.testing.assert_allclose(pp_lemma5_capacity(a), a * math.log(2), rtol=1e-9)

    def test_integer_snap(self):
        assert snap_ratio(3.0000000000001) == (3.0, 3)
        assert snap_ratio(2.5) == (2.5, 3)
        assert pp_lemma5_capacity(3 + 1e-13) == pp_lemma5_capacity(3)

    def test_nondecreasing(self):
        vals = [pp_lemma5_capacity(a) for a in np.linspace(0.01, 8, 400)]
        assert np.all(np.diff(vals) >= 0)

    def test_domain(self):
        with pytest.raises(DomainError):
            pp_lemma5_capacity(0)


class TestTwoUser:
    def test_outer_zero(self):
        h = pp_outer_2u((0, 0))
        np.testing.assert_array_equal(h.bounds, 0)

    @pytest.mark.parametrize("pt", [(1e3, 10**2.5), (10.0, 10**0.5)])
    def test_outer_presets(self, pt):
        h = pp_outer_2u(pt)
        assert h.bound_for([0]) == pp_single_upper(pt[0])
        assert h.bound_for([0, 1]) == pp_single_upper(pt[0] + pt[1])

    def test_refined_outer_tighter(self):
        pt = (10.0, 10**0.5)
        plain, refined = pp_outer_2u(pt), pp_outer_2u(pt, refined=True)
        assert np.all(refined.bounds <= plain.bounds)

    def test_arity(self):
        with pytest.raises(ArityError):
            pp_outer_2u((1.0,))

    def test_symmetric_sum_law(self):
        p = 3.0
        np.testing.assert_allclose(iu_plus(1.0, p), iu(2 * p), atol=2 * UNIT)

    @pytest.mark.parametrize("pt", [(1e3, 10**2.5), (10.0, 10**0.5)])
    def test_corners_inside_outer(self, pt):
        cs = pp_inner_corners_2u(pt, cppoic="midpoint")
        ok, worst = vrep_in_hrep(cs.to_vregion(), pp_outer_2u(pt), 3 * cs.est_error.max())
        assert ok, worst

    def test_corner_labels(self):
        cs = pp_inner_corners_2u((10.0, 10**0.5), cppoic=(1.0, 0.5))
        assert cs.labels[0] == "origin"
        assert cs.points[1, 0] == 1.0 and cs.points[4, 1] == 0.5

    def test_corners_need_positive(self):
        with pytest.raises(DomainError):
            pp_inner_corners_2u((0.0, 1.0))

    def test_worst_ratio_corner(self):
        # large common scale with ratio log2(e) - 1
        a = 1 / LN2 - 1
        p1 = 1e3
        gap = (iu(p1) + math.log1p(a)) - iu_plus(a, p1)
        prof = pp_asymptotic_gap(1, 1 - a)
        np.testing.assert_allclose(gap, prof.gap_nats, atol=5e-3)


class TestClosedFormInner:
    def test_symmetric(self):
        p = 20.0
        h = pp_inner_hrep_2u((p, p))
        l1 = pp_single_lower_closed(p)
        l12 = 0.5 * math.log1p(4 * p * p / (2 * math.pi * math.e))
        np.testing.assert_allclose(pp_cross_lower(1.0, p), l12, rtol=1e-14)
        alpha, beta = h.coeffs[2]
        # the slanted edge passes through (L1, L12 - L1) and (L12 - L1, L1)
        for x in ((l1, l12 - l1), (l12 - l1, l1)):
            np.testing.assert_allclose(alpha * x[0] + beta * x[1], h.bounds[2], rtol=1e-12)

    def test_contained_in_outer(self, rng):
        pt = (10.0, 10**0.5)
        with pytest.warns(SlantedCoefficientWarning):
            h = pp_inner_hrep_2u(pt)
        outer = pp_outer_2u(pt)
        pts = rng.uniform(0, 2, (5000, 2))
        inside = [x for x in pts if point_in_hrep(h, x)]
        assert len(inside) > 100
        assert all(point_in_hrep(outer, x) for x in inside)

    def test_small_pnr(self):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", SlantedCoefficientWarning)
            h = pp_inner_hrep_2u((1e-4, 1e-4))
        assert np.all(np.abs(h.bounds) < 1e-8)

    def test_symmetric_no_warning(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            pp_inner_hrep_2u((30.0, 30.0))


class TestEpi:
    @pytest.mark.parametrize("a", EPI_RATIOS)
    def test_entropy_identity(self, a):
        peak = 2.0
        law = sum_law(a, peak)
        bp = np.unique(law.breakpoints())
        h = entropy_quadrature(law.density, list(zip(bp[:-1], bp[1:])))
        np.testing.assert_allclose(h, pp_lemma5_capacity(a) + math.log(peak), atol=1e-4)

    @pytest.mark.parametrize("a", EPI_RATIOS)
    @pytest.mark.parametrize("p", [1.0, 10.0])
    def test_chain(self, a, p):
        assert iu_plus(a, p) >= pp_cross_lower(a, p) - UNIT

    def test_iu_plus_domain(self):
        with pytest.raises(DomainError):
            iu_plus(0.0, 1.0)


class TestAsymptoticGap:
    def test_symmetric_zero(self):
        assert pp_asymptotic_gap(1, 0.0).gap_nats == 0.0

    def test_worst(self):
        lam = 2 - math.log2(math.e)
        prof = pp_asymptotic_gap(1, lam)
        np.testing.assert_allclose(prof.gap_nats, 0.0597, atol=1e-4)
        np.testing.assert_allclose(prof.gap_bits, 0.0861, atol=1e-4)

    def test_grid_max(self):
        lams = np.arange(0, 1, 1e-4)
        gaps = [pp_asymptotic_gap(1, l).gap_bits for l in lams]
        i = int(np.argmax(gaps))
        assert abs(gaps[i] - 0.0861) <= 1e-4
        assert abs(lams[i] - 0.5573) <= 1e-3

    @pytest.mark.parametrize("lam", np.round(np.arange(0.1, 1.0, 0.1), 1))
    def test_nonincreasing_in_n(self, lam):
        gaps = [pp_asymptotic_gap(n, lam).gap_nats for n in range(1, 51)]
        assert np.all(np.diff(gaps) <= 1e-15)
        assert gaps[4] <= gaps[0]

    def test_integer_ratio_gap_zero(self):
        for n in range(1, 10):
            assert pp_asymptotic_gap(n, 0.0).gap_nats == 0.0

    def test_orientation(self):
        g1, g2 = pp_orientation_gaps((3.0, 1.0))
        assert g1.n == 3 and g1.lam == 0.0
        assert g2.n == 1
        np.testing.assert_allclose(g2.lam, 2 / 3)

    def test_domain(self):
        with pytest.raises(DomainError):
            pp_asymptotic_gap(0, 0.5)
        with pytest.raises(DomainError):
            pp_asymptotic_gap(1, 1.0)


class TestSymmetricLaw:
    @pytest.mark.parametrize("p", [10.0, 1e4, 1e8])
    def test_formula_exact(self, p):
        np.testing.assert_allclose(pp_symmetric_asymptotics(p).sum_minus_individual_bits, 1.0, rtol=1e-14)

    def test_bound_based(self):
        d = pp_symmetric_bound_difference(1e4)
        assert 0.98 <= d <= 1.02

    def test_pre_asymptotic_recorded(self):
        assert math.isfinite(pp_symmetric_bound_difference(10.0))
