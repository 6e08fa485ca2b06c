"""Quadrature engine: peaks, transforms, predictions, and the mpmath oracle."""

import math

import numpy as np
import pytest

import tauberlab as tl

KOHL = tl.PurePower(2.0, 0.5)
KASA = tl.PurePower(-1.0, 2.0)
DEBR = tl.PurePower(-1.0, -1.0)

# Frozen from the high-resolution mpmath oracle (dps=40); the b=0.5 and b=2
# cases are exactly Gaussian, so these equal closed forms:
#   kohlbecker psi=100:  100 + log(20*sqrt(pi))
#   kasahara  psi=100:   log(1 + e^25 * 10*sqrt(pi) * (1+erf(5))/2)
ORACLE_LOG_F = {
    ("kohl", 100.0): 103.56809721647869,
    ("kohl", 1000.0): 1004.7193897629757,
    ("kasa", 100.0): 27.874950035918761,
    ("kasa", 1000.0): 254.02624258241577,
    ("debr", 10.0): -18.25804196681191,
    ("debr", 100.0): -197.12317963120413,
    ("debr", 1000.0): -1995.9735699644387,
}


class TestLogIntegrand:
    def test_direct_value(self):
        assert tl.log_integrand(KOHL, -1.0, 1.0, 1.0) == pytest.approx(1.0)

    def test_peak_value_is_d_psi(self):
        # At s=100 (psi=100) the maximum over u is d*psi = 100, at u=100.
        assert tl.log_integrand(KOHL, -1.0, 100.0, 100.0) == pytest.approx(100.0)

    def test_dominant_linear_decay(self):
        # de Bruijn integrand ~ -u for large u.
        val = tl.log_integrand(DEBR, -1.0, 1.0, 1e6)
        assert val == pytest.approx(-1e6, rel=1e-5)

    def test_domain_errors(self):
        with pytest.raises(tl.DomainError):
            tl.log_integrand(KOHL, -1.0, 1.0, 0.0)
        with pytest.raises(tl.DomainError):
            tl.log_integrand(KOHL, -1.0, -2.0, 1.0)


class TestLocatePeak:
    @pytest.mark.parametrize(
        "target,c,s,expected",
        [
            (KOHL, -1.0, 100.0, 100.0),  # x_peak=1, psi=100
            (KASA, 1.0, 0.1, 50.0),  # x_peak=0.5, psi=100
            (DEBR, -1.0, 0.01, 10.0),  # x_peak=1, psi=10
        ],
    )
    def test_matches_closed_form(self, target, c, s, expected):
        assert tl.locate_peak(target, c, s) == pytest.approx(expected, rel=1e-8)

    def test_closed_form_match_on_random_parameters(self):
        rng = np.random.default_rng(31)
        ranges = {
            "kohlbecker": ((0.1, 0.9), 1, -1),
            "kasahara": ((1.2, 5.0), -1, 1),
            "de-bruijn": ((-4.0, -0.2), -1, -1),
        }
        for (blo, bhi), sa, sc in ranges.values():
            for _ in range(25):
                a = sa * rng.uniform(0.2, 5.0)
                b = rng.uniform(blo, bhi)
                c = sc * rng.uniform(0.2, 5.0)
                p = tl.validate(a, b, c)
                psi = rng.uniform(5.0, 500.0)
                s = tl.s_for_psi(b, psi)
                x_peak = tl.saddle_analysis(p).x_peak
                u = tl.locate_peak(tl.PurePower(a, b), c, s)
                assert u * s ** (-b / (1.0 - b)) / x_peak == pytest.approx(
                    1.0, abs=1e-8
                )

    def test_no_interior_peak_for_monotone_integrand(self):
        # q decreasing and c < 0: supremum at u -> 0.
        with pytest.raises(tl.NoInteriorPeak):
            tl.locate_peak(tl.PurePower(-1.0, 0.5), -1.0, 1.0)


class TestLogTransform:
    @pytest.mark.parametrize(
        "name,target,c,offset,psi",
        [
            ("kohl", KOHL, -1.0, 0.0, 100.0),
            ("kohl", KOHL, -1.0, 0.0, 1000.0),
            ("kasa", KASA, 1.0, 1.0, 100.0),
            ("kasa", KASA, 1.0, 1.0, 1000.0),
            ("debr", DEBR, -1.0, 0.0, 10.0),
            ("debr", DEBR, -1.0, 0.0, 100.0),
            ("debr", DEBR, -1.0, 0.0, 1000.0),
        ],
    )
    def test_frozen_oracle_values(self, name, target, c, offset, psi):
        b = target.b
        s = tl.s_for_psi(b, psi)
        ts = tl.log_transform(target, c, offset, s)
        assert ts.tol_met
        assert ts.log_f == pytest.approx(ORACLE_LOG_F[(name, psi)], abs=5e-7)
        assert ts.psi == pytest.approx(psi, rel=1e-12)

    def test_kohlbecker_spec_window(self):
        # Leading prediction d*psi + 0.5*log(psi) + 0.5*log(2*pi/|h''|) puts
        # log f near 103.57 at psi = 100.
        ts = tl.log_transform(KOHL, -1.0, 0.0, 100.0)
        assert abs(ts.log_f - 103.57) <= 0.2

    def test_unit_integral(self):
        # P == 1: f(s) = int_0^inf e^{-u} du = 1 for every s.
        for s in (0.3, 1.0, 42.0):
            ts = tl.log_transform(tl.PurePower(0.0, 0.5), -1.0, 0.0, s)
            assert ts.log_f == pytest.approx(0.0, abs=1e-9)

    def test_mpmath_oracle_crosscheck(self):
        mp = pytest.importorskip("mpmath")
        mp.mp.dps = 30

        def oracle(a, b, c, offset, psi):
            a, b, c, psi = map(mp.mpf, (a, b, c, psi))
            xm = (-c / (a * b)) ** (1 / (b - 1))
            d = a * xm**b + c * xm
            integ = mp.quad(
                lambda v: mp.exp(psi * (a * v**b + c * v - d)),
                [0, xm / 2, xm, 2 * xm, mp.inf],
            )
            log_i = mp.log(psi) + d * psi + mp.log(integ)
            if offset:
                log_i += mp.log(1 + offset * mp.exp(-log_i))
            return float(log_i)

        cases = [
            (2.0, 0.5, -1.0, 0.0),
            (-1.0, 2.0, 1.0, 1.0),
            (-1.0, -1.0, -1.0, 0.0),
            (3.0, 0.25, -2.0, 0.0),
            (-0.5, 3.0, 0.7, 0.0),
            (-2.0, -0.5, -0.3, 0.0),
        ]
        for a, b, c, offset in cases:
            p = tl.validate(a, b, c, offset)
            for psi in (10.0, 100.0):
                s = tl.s_for_psi(b, psi)
                ts = tl.log_transform(tl.PurePower(a, b), c, offset, s)
                assert ts.log_f == pytest.approx(
                    oracle(a, b, c, offset, psi), abs=1e-6
                ), (a, b, c, psi)

    def test_shift_scale_identity(self):
        # Substituting u -> u/k maps (c, s) -> (k*c, k*s) and divides f by k.
        for k in (0.5, 2.0, 7.0):
            base = tl.log_transform(KOHL, -1.0, 0.0, 50.0)
            scaled = tl.log_transform(KOHL, -k, 0.0, k * 50.0)
            assert scaled.log_f == pytest.approx(base.log_f - math.log(k), abs=1e-6)

    def test_offset_negligible_at_large_psi(self):
        with_off = tl.log_transform(KASA, 1.0, 1.0, 0.1)
        without = tl.log_transform(KASA, 1.0, 0.0, 0.1)
        assert with_off.log_f - without.log_f == pytest.approx(0.0, abs=1e-9)

    def test_offset_dominates_small_integral(self):
        # At s >> 1 the Kasahara-type integral is tiny against offset=1.
        ts = tl.log_transform(KASA, 1.0, 1.0, 40.0)
        assert 0.0 < ts.log_f < 0.05

    def test_not_integrable_near_zero(self):
        # P(x) = exp(x**-1) blows up faster than any integrable power at 0.
        with pytest.raises(tl.NotIntegrable):
            tl.log_transform(tl.PurePower(1.0, -1.0), -1.0, 0.0, 1.0)

    def test_not_integrable_at_infinity(self):
        # q -> 0 while c > 0: integrand grows like e^{c*u}.
        with pytest.raises(tl.NotIntegrable):
            tl.log_transform(tl.PurePower(-1.0, -1.0), 1.0, 0.0, 1.0)

    def test_domain_errors(self):
        with pytest.raises(tl.DomainError):
            tl.log_transform(KOHL, -1.0, 0.0, -1.0)
        with pytest.raises(tl.DomainError):
            tl.log_transform(KOHL, -1.0, -0.5, 1.0)
        with pytest.raises(tl.DomainError):
            tl.log_transform(KOHL, -1.0, 0.0, 1.0, tol=0.0)

    def test_refinement_errors_decrease(self):
        # Richardson-consistent: the successive-refinement estimate shrinks
        # (down to the floating-point noise floor) as resolution doubles.
        for target, c, s in [(KOHL, -1.0, 100.0), (DEBR, -1.0, 0.01)]:
            errs = tl.transform.refinement_errors(target, c, s, n0=4, levels=8)
            assert errs[0] > 0.0
            floor = 1e-12
            for prev, nxt in zip(errs, errs[1:]):
                assert nxt <= max(prev, floor)
            assert errs[-1] <= 1e-10

    def test_tolerance_flagged_when_not_met(self):
        # Step-function target: trapezoid stalls above an extreme tolerance,
        # and the sample comes back flagged instead of raising.
        m = tl.TabulatedMeasure((0.5, 2.0, 7.0), (1.0, 0.3, 0.2))
        ts = tl.log_transform(
            tl.MeasureTarget(m, "cumulative"), -1.0, 0.0, 3.0, tol=1e-13
        )
        assert not ts.tol_met
        assert ts.quad_error > 1e-13

    def test_measure_target_matches_direct_stieltjes(self):
        # For P = mu[0, .] and c = -1 the transform at s = lam equals
        # sum_i m_i e^{-x_i/lam} exactly; quadrature should land close even
        # though the integrand is a step function.
        m = tl.TabulatedMeasure((0.5, 2.0, 7.0), (1.0, 0.3, 0.2))
        for lam in (1.0, 3.0, 9.0):
            ts = tl.log_transform(tl.MeasureTarget(m, "cumulative"), -1.0, 0.0, lam)
            direct = tl.measure_transform_kohlbecker(m, lam)
            assert ts.log_f == pytest.approx(direct, abs=1e-5)


class TestPredictLogF:
    def test_leading(self):
        p = tl.validate(2.0, 0.5, -1.0)
        assert tl.predict_log_f(p, 100.0, "leading") == pytest.approx(100.0)
        q = tl.validate(-1.0, -1.0, -1.0)
        assert tl.predict_log_f(q, 10.0, "leading") == pytest.approx(-20.0)

    def test_corrected_closed_form(self):
        # 100 + 0.5*log(100) + 0.5*log(2*pi/0.5) = 103.568097...
        p = tl.validate(2.0, 0.5, -1.0)
        expected = 100.0 + 0.5 * math.log(100.0) + 0.5 * math.log(4.0 * math.pi)
        got = tl.predict_log_f(p, 100.0, "corrected")
        assert got == pytest.approx(expected, rel=1e-14)
        assert abs(got - 103.569) <= 1e-3

    def test_corrected_matches_quadrature_at_scale(self):
        for a, b, c, offset in [
            (2.0, 0.5, -1.0, 0.0),
            (-1.0, 2.0, 1.0, 1.0),
            (-1.0, -1.0, -1.0, 0.0),
        ]:
            p = tl.validate(a, b, c, offset)
            ts = tl.log_transform(tl.PurePower(a, b), c, offset, tl.s_for_psi(b, 1e3))
            assert abs(ts.log_f - tl.predict_log_f(p, 1e3)) <= 0.01

    def test_corrected_gap_shrinks_along_psi_grid(self):
        # Residual beyond the Gaussian-peak prediction decays like 1/psi;
        # ties at the noise floor are allowed (two canonicals are exactly
        # Gaussian, so their gap is already roundoff at every psi).
        for a, b, c, offset in [
            (2.0, 0.5, -1.0, 0.0),
            (-1.0, 2.0, 1.0, 1.0),
            (-1.0, -1.0, -1.0, 0.0),
        ]:
            p = tl.validate(a, b, c, offset)
            gaps = []
            for psi in tl.make_grid(10.0, 1000.0, 8).psi_values:
                ts = tl.log_transform(tl.PurePower(a, b), c, offset, tl.s_for_psi(b, psi))
                gaps.append(abs(ts.log_f - tl.predict_log_f(p, psi)))
            for prev, nxt in zip(gaps, gaps[1:]):
                assert nxt <= prev + 1e-6
            assert gaps[-1] <= 0.2

    def test_rejects_bad_order_and_psi(self):
        p = tl.validate(2.0, 0.5, -1.0)
        with pytest.raises(tl.ValidationError):
            tl.predict_log_f(p, 10.0, "cubic")
        with pytest.raises(tl.DomainError):
            tl.predict_log_f(p, 0.0)
