"""Validation, dual-coefficient closed forms, and saddle invariants."""

import math

import numpy as np
import pytest

import tauberlab as tl

# Canonical example per regime: (a, b, c, offset) -> (d, dual_exp, regime).
CANONICAL = {
    "kohlbecker": (2.0, 0.5, -1.0, 0.0, 1.0, 1.0, tl.Regime.KOHLBECKER),
    "kasahara": (-1.0, 2.0, 1.0, 0.0, 0.25, -2.0, tl.Regime.KASAHARA),
    "de-bruijn": (-1.0, -1.0, -1.0, 0.0, -2.0, -0.5, tl.Regime.DE_BRUIJN),
}


def _random_triples(rng, regime, n):
    """Admissible (a, b, c) with magnitudes in [0.1, 10] and regime signs."""
    mag_a = rng.uniform(0.1, 10.0, n)
    mag_c = rng.uniform(0.1, 10.0, n)
    if regime == "kohlbecker":
        b = rng.uniform(0.05, 0.95, n)
        return np.column_stack([mag_a, b, -mag_c])
    if regime == "kasahara":
        b = rng.uniform(1.05, 8.0, n)
        return np.column_stack([-mag_a, b, mag_c])
    b = rng.uniform(-8.0, -0.05, n)
    return np.column_stack([-mag_a, b, -mag_c])


class TestValidate:
    @pytest.mark.parametrize("name", sorted(CANONICAL))
    def test_canonical_examples(self, name):
        a, b, c, offset, d, dual, regime = CANONICAL[name]
        p = tl.validate(a, b, c, offset)
        assert p.d == pytest.approx(d, rel=1e-12)
        assert p.dual_exp == pytest.approx(dual, rel=1e-14)
        assert p.regime is regime

    def test_kohlbecker_d_matches_classical_coefficient(self):
        # Cross-check against (alpha-1)*(B/alpha)**(alpha/(alpha-1)), alpha=2, B=2.
        alpha, B = 2.0, 2.0
        classical = (alpha - 1.0) * (B / alpha) ** (alpha / (alpha - 1.0))
        assert tl.validate(2.0, 0.5, -1.0).d == pytest.approx(classical, rel=1e-14)

    def test_debruijn_d_matches_classical_coefficient(self):
        # B*(1-beta)*(rate/(B*beta))**(beta/(beta-1)), beta=-1, B=-1, rate=1.
        beta, B, rate = -1.0, -1.0, 1.0
        classical = B * (1.0 - beta) * (rate / (B * beta)) ** (beta / (beta - 1.0))
        assert tl.validate(-1.0, -1.0, -1.0).d == pytest.approx(classical, rel=1e-14)

    def test_sign_condition_rejected_with_product_value(self):
        with pytest.raises(tl.SignConditionViolated) as err:
            tl.validate(1.0, 2.0, -1.0)
        assert err.value.product == "a*b*(b-1)"
        assert err.value.value == pytest.approx(2.0)
        assert "a*b*(b-1) = 2" in str(err.value)

    def test_kernel_sign_condition_rejected(self):
        with pytest.raises(tl.SignConditionViolated) as err:
            tl.validate(2.0, 0.5, 1.0)  # a*b*(b-1) fine, a*b*c = 1 > 0
        assert err.value.product == "a*b*c"

    @pytest.mark.parametrize("b", [0.0, 1.0])
    def test_degenerate_exponent(self, b):
        with pytest.raises(tl.DegenerateExponent):
            tl.validate(2.0, b, -1.0)

    def test_zero_rate(self):
        with pytest.raises(tl.ZeroRate):
            tl.validate(2.0, 0.5, 0.0)

    def test_offset_not_allowed_when_d_negative(self):
        with pytest.raises(tl.OffsetNotAllowed):
            tl.validate(-1.0, -1.0, -1.0, offset=1.0)
        # d > 0 regimes accept an offset.
        assert tl.validate(-1.0, 2.0, 1.0, offset=1.0).offset == 1.0

    @pytest.mark.parametrize(
        "a,b,c",
        [(1e9, 0.5, -1.0), (1e-9, 0.5, -1.0), (2.0, 65.0, -1.0), (2.0, 0.5, -1e9)],
    )
    def test_guardrails_raise_numeric_overflow(self, a, b, c):
        with pytest.raises(tl.NumericOverflow):
            tl.validate(a, b, c)

    def test_non_finite_rejected(self):
        with pytest.raises(tl.ValidationError):
            tl.validate(float("nan"), 0.5, -1.0)
        with pytest.raises(tl.ValidationError):
            tl.validate(2.0, 0.5, float("inf"))

    def test_every_other_sign_pattern_rejected(self):
        # For each regime's b, only one (sign a, sign c) pattern is admissible.
        cases = {0.5: (1, -1), 2.0: (-1, 1), -1.0: (-1, -1)}
        for b, allowed in cases.items():
            for sa in (1, -1):
                for sc in (1, -1):
                    if (sa, sc) == allowed:
                        tl.validate(sa * 2.0, b, sc * 1.5)
                    else:
                        with pytest.raises(tl.SignConditionViolated):
                            tl.validate(sa * 2.0, b, sc * 1.5)


class TestComputeD:
    @pytest.mark.parametrize(
        "a,b,c,expected",
        [(-1.0, 2.0, 1.0, 0.25), (2.0, 0.5, -1.0, 1.0), (-1.0, -1.0, -1.0, -2.0)],
    )
    def test_examples(self, a, b, c, expected):
        assert tl.compute_d(a, b, c) == pytest.approx(expected, rel=1e-12)

    def test_kasahara_d_matches_classical_coefficient(self):
        # (1-alpha)*(alpha/B)**(alpha/(1-alpha)), alpha=0.5, B=1.
        alpha, B = 0.5, 1.0
        classical = (1.0 - alpha) * (alpha / B) ** (alpha / (1.0 - alpha))
        assert tl.compute_d(-1.0, 2.0, 1.0) == pytest.approx(classical, rel=1e-14)

    def test_agrees_with_value_form_on_random_triples(self):
        rng = np.random.default_rng(1234)
        for regime in ("kohlbecker", "kasahara", "de-bruijn"):
            for a, b, c in _random_triples(rng, regime, 300):
                d = tl.compute_d(a, b, c)
                x = (-c / (a * b)) ** (1.0 / (b - 1.0))
                value_form = a * x**b + c * x
                assert d == pytest.approx(value_form, rel=1e-12)


class TestDVariants:
    def test_base_one_forces_agreement(self):
        assert tl.d_variants(2.0, 0.5, -1.0) == pytest.approx((1.0, 1.0))
        assert tl.d_variants(-1.0, -1.0, -1.0) == pytest.approx((-2.0, -2.0))

    def test_kasahara_variants_differ(self):
        # Base -a*b/c = 2, exponents b/(b-1) = 2 vs b/(1-b) = -2:
        # stated = a*(1-b)*2**2 = 4, consistent = a*(1-b)*2**-2 = 0.25.
        stated, consistent = tl.d_variants(-1.0, 2.0, 1.0)
        assert stated == pytest.approx(4.0, rel=1e-14)
        assert consistent == pytest.approx(0.25, rel=1e-14)

    def test_consistent_variant_equals_compute_d(self):
        rng = np.random.default_rng(99)
        for regime in ("kohlbecker", "kasahara", "de-bruijn"):
            for a, b, c in _random_triples(rng, regime, 100):
                _, consistent = tl.d_variants(a, b, c)
                assert consistent == pytest.approx(tl.compute_d(a, b, c), rel=1e-12)

    def test_variants_agree_iff_unit_base(self):
        rng = np.random.default_rng(7)
        for a, b, c in _random_triples(rng, "kasahara", 200):
            stated, consistent = tl.d_variants(a, b, c)
            base = -(a * b) / c
            if abs(base - 1.0) < 1e-12:
                assert stated == pytest.approx(consistent, rel=1e-9)
            elif abs(math.log(base)) > 1e-3:
                assert stated != pytest.approx(consistent, rel=1e-6)


class TestSaddle:
    @pytest.mark.parametrize(
        "a,b,c,x_peak,curvature",
        [
            (2.0, 0.5, -1.0, 1.0, -0.5),
            (-1.0, -1.0, -1.0, 1.0, -2.0),
            (-1.0, 2.0, 1.0, 0.5, -2.0),
        ],
    )
    def test_examples(self, a, b, c, x_peak, curvature):
        sp = tl.saddle_analysis(tl.validate(a, b, c))
        assert sp.x_peak == pytest.approx(x_peak, rel=1e-12)
        assert abs(sp.h_at_max) <= 1e-10 * abs(tl.compute_d(a, b, c))
        assert sp.curvature == pytest.approx(curvature, rel=1e-12)

    def test_invariants_on_random_triples(self):
        rng = np.random.default_rng(2024)
        for regime in ("kohlbecker", "kasahara", "de-bruijn"):
            for a, b, c in _random_triples(rng, regime, 1000):
                p = tl.validate(a, b, c)
                sp = tl.saddle_analysis(p)
                scale = abs(p.d)
                assert abs(sp.h_at_max) <= 1e-10 * scale
                assert sp.curvature < 0.0
                grid = sp.x_peak * np.logspace(-2, 2, 64)
                assert np.all(tl.h_eval(p, grid) <= 1e-12 * scale)
                assert math.copysign(1.0, p.d) == math.copysign(1.0, p.b)


class TestExponentDuality:
    def test_examples(self):
        assert tl.dual_exponent(0.5) == 1.0
        assert tl.dual_exponent(2.0) == -2.0

    @pytest.mark.parametrize("b", [-3.0, -1.0, 0.25, 0.9, 1.5, 4.0])
    def test_mutual_inverse(self, b):
        assert tl.primal_exponent(tl.dual_exponent(b)) == pytest.approx(b, abs=1e-14)

    def test_degenerate(self):
        for b in (0.0, 1.0):
            with pytest.raises(tl.DegenerateExponent):
                tl.dual_exponent(b)
        with pytest.raises(tl.DegenerateExponent):
            tl.primal_exponent(-1.0)


class TestRecoverPrimal:
    @pytest.mark.parametrize(
        "d,e,c,a,b",
        [
            (1.0, 1.0, -1.0, 2.0, 0.5),
            (0.25, -2.0, 1.0, -1.0, 2.0),
            (-2.0, -0.5, -1.0, -1.0, -1.0),
        ],
    )
    def test_examples(self, d, e, c, a, b):
        a_hat, b_hat = tl.recover_primal(d, e, c)
        assert a_hat == pytest.approx(a, rel=1e-12)
        assert b_hat == pytest.approx(b, rel=1e-12)

    def test_round_trip_on_random_triples(self):
        rng = np.random.default_rng(55)
        for regime in ("kohlbecker", "kasahara", "de-bruijn"):
            for a, b, c in _random_triples(rng, regime, 300):
                d = tl.compute_d(a, b, c)
                a_hat, b_hat = tl.recover_primal(d, tl.dual_exponent(b), c)
                assert a_hat == pytest.approx(a, rel=1e-9)
                assert b_hat == pytest.approx(b, rel=1e-9)

    def test_inconsistent_inputs(self):
        # d > 0 with a c that forces v0 < 0.
        with pytest.raises(tl.InconsistentInputs):
            tl.recover_primal(1.0, 1.0, 1.0)


class TestHEval:
    def test_examples(self):
        p = tl.validate(2.0, 0.5, -1.0)
        assert tl.h_eval(p, 1.0) == pytest.approx(0.0, abs=1e-12)
        assert tl.h_eval(p, 4.0) == pytest.approx(-1.0, rel=1e-12)

    def test_zero_at_peak_for_any_valid_params(self):
        for a, b, c, *_ in CANONICAL.values():
            p = tl.validate(a, b, c)
            x_peak = tl.saddle_analysis(p).x_peak
            assert abs(tl.h_eval(p, x_peak)) <= 1e-10

    def test_domain_error(self):
        p = tl.validate(2.0, 0.5, -1.0)
        for x in (0.0, -1.0):
            with pytest.raises(tl.DomainError):
                tl.h_eval(p, x)


class TestPsiMaps:
    def test_round_trip(self):
        for b in (0.5, 2.0, -1.0, -3.0, 0.25):
            for psi in (1.0, 10.0, 1e3):
                s = tl.s_for_psi(b, psi)
                assert tl.psi_for_s(b, s) == pytest.approx(psi, rel=1e-12)
