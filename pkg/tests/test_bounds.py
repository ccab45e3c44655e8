"""Tests for the closed-form radius bounds and the verifiers."""

import logging
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hadamard_radii import (
    ConvexPolygon,
    CurvatureBand,
    CurvatureDefinition,
    DomainError,
    HypothesisViolationError,
    Ln2Variant,
    ModelPoint,
    Verdict,
    arccoth_bounds,
    gap_bound,
    thm1_bounds,
    thm1doubleprime_bounds,
    thm1prime_bounds,
    verify,
    verify_theorem1,
    verify_theorem1prime,
    verify_theorem2,
)
from hadamard_radii.bounds import arccoth, coth, ln2_term, sphere_curvature_range

LN2 = math.log(2.0)


class TestScalarHelpers:
    """Tests for coth, arccoth and the ln 2 term."""

    def test_coth_values(self):
        assert coth(1.1) == pytest.approx(1.2492, abs=1e-4)
        assert coth(0.1) == pytest.approx(10.033, abs=1e-3)

    def test_arccoth_value(self):
        assert arccoth(2.0) == pytest.approx(0.5493, abs=1e-4)

    def test_arccoth_inverts_coth(self):
        for x in (0.1, 0.7, 2.5):
            assert arccoth(coth(x)) == pytest.approx(x, rel=1e-12)

    def test_arccoth_at_one_is_infinite(self):
        assert math.isinf(arccoth(1.0))

    def test_arccoth_below_one(self):
        with pytest.raises(DomainError):
            arccoth(0.5)

    def test_ln2_term_variants(self):
        assert ln2_term(2.0) == pytest.approx(LN2 / 2)
        assert ln2_term(2.0, Ln2Variant.AS_WRITTEN) == pytest.approx(2 * LN2)
        assert ln2_term(1.0) == ln2_term(1.0, Ln2Variant.AS_WRITTEN)


class TestCurveBounds:
    """Tests for the bounds of smooth convex curves."""

    def test_arccoth_bound_value(self, band):
        bounds = thm1_bounds(band, 0.5)
        assert 0.5 * coth(0.25) == pytest.approx(2.0416, abs=1e-4)
        assert bounds.r_max == pytest.approx(0.5358, abs=1e-4)
        assert bounds.R_max == pytest.approx(bounds.r_max + LN2)

    def test_k1_convex_bound(self):
        bounds = thm1prime_bounds(1.0, 1.0)
        assert bounds.r_max == 1.0
        assert bounds.R_max == pytest.approx(1.6931, abs=1e-4)

    def test_flat_upper_bound(self):
        assert thm1doubleprime_bounds(1.0, 0.5).r_max == pytest.approx(arccoth(2.0))

    def test_zero_k2_dispatches(self):
        assert thm1_bounds(CurvatureBand(1.0, 0.0), 0.5) == thm1doubleprime_bounds(1.0, 0.5)
        assert arccoth_bounds(CurvatureBand(1.0, 0.0), 0.5) == thm1doubleprime_bounds(1.0, 0.5)

    @pytest.mark.parametrize("k2", [1e-2, 1e-3])
    def test_small_k2_approaches_flat_bound(self, k2):
        near = thm1_bounds(CurvatureBand(1.0, k2), 0.5)
        flat = thm1doubleprime_bounds(1.0, 0.5)
        assert near.r_max == pytest.approx(flat.r_max, abs=1e-4)
        assert near.R_max == pytest.approx(flat.R_max, abs=1e-4)

    def test_scale_covariance(self):
        base = thm1_bounds(CurvatureBand(1.0, 0.5), 0.5)
        scaled = thm1_bounds(CurvatureBand(2.0, 1.0), 0.25)
        assert scaled.r_max == pytest.approx(base.r_max / 2, rel=1e-12)
        assert scaled.R_max == pytest.approx(base.R_max / 2, rel=1e-12)

    def test_degenerate_band_gives_rho(self):
        assert thm1_bounds(CurvatureBand(1.0, 1.0), 0.3).r_max == pytest.approx(0.3, rel=1e-10)

    def test_global_hypothesis_violated(self, band):
        with pytest.raises(HypothesisViolationError):
            thm1_bounds(band, 3.0)

    def test_flat_hypothesis_violated(self):
        with pytest.raises(HypothesisViolationError):
            thm1doubleprime_bounds(1.0, 2.0)

    def test_equality_is_unbounded(self, caplog):
        with caplog.at_level(logging.WARNING, logger="hadamard_radii.bounds"):
            bounds = thm1doubleprime_bounds(1.0, 1.0)
        assert math.isinf(bounds.r_max)
        assert "unbounded" in caplog.text

    def test_nonpositive_rho(self, band):
        with pytest.raises(DomainError):
            thm1_bounds(band, 0.0)
        with pytest.raises(DomainError):
            thm1prime_bounds(1.0, -1.0)


class TestGapBound:
    """Tests for the R - r bound."""

    def test_known_value(self):
        assert gap_bound(1.0, 1.0) == pytest.approx(0.6574, abs=1e-4)

    def test_zero_inradius(self):
        assert gap_bound(1.0, 0.0) == 0.0

    def test_negative_inradius(self):
        with pytest.raises(DomainError):
            gap_bound(1.0, -0.1)

    @given(
        k1=st.floats(min_value=0.1, max_value=5.0),
        r=st.floats(min_value=0.0, max_value=20.0),
    )
    def test_below_ln2_term(self, k1, r):
        assert gap_bound(k1, r) <= ln2_term(k1) + 1e-12
        assert gap_bound(k1, r, Ln2Variant.AS_WRITTEN) <= ln2_term(k1, Ln2Variant.AS_WRITTEN) + 1e-12

    @given(
        r=st.floats(min_value=0.0, max_value=10.0),
        dr=st.floats(min_value=1e-3, max_value=1.0),
    )
    def test_increasing_in_r(self, r, dr):
        assert gap_bound(1.0, r) <= gap_bound(1.0, r + dr)


class TestSphereCurvature:
    def test_range(self, band):
        lo, hi = sphere_curvature_range(band, 1.0)
        assert lo == pytest.approx(1.0820, abs=1e-4)
        assert hi == pytest.approx(1.3130, abs=1e-4)


class TestCurveVerifiers:
    """Tests for verify_theorem1 and verify_theorem1prime."""

    def test_circle_in_flattest_model_passes(self, band):
        report = verify_theorem1(0.5, 0.5, band, 0.5)
        assert report.verdict is Verdict.PASS
        assert report.theorem == "1"
        assert report.margins["inradius"] == pytest.approx(0.5358 - 0.5, abs=1e-4)

    def test_flat_upper_bound_label(self):
        report = verify_theorem1(0.4, 0.4, CurvatureBand(1.0, 0.0), 0.5)
        assert report.theorem == "1''"
        assert report.verdict is Verdict.PASS

    def test_k1_circle_is_tight(self):
        report = verify_theorem1prime(0.5, 0.5, 1.0, 0.5)
        assert report.margins["inradius"] == 0.0
        assert report.verdict is Verdict.PASS

    def test_excess_circumradius_fails(self):
        report = verify_theorem1prime(0.5, 0.5 + LN2 + 0.01, 1.0, 0.5)
        assert report.verdict is Verdict.FAIL
        assert report.margins["circumradius"] == pytest.approx(-0.01)

    def test_to_dict(self, band):
        data = verify_theorem1(0.5, 0.5, band, 0.5).to_dict()
        assert data["verdict"] == "pass"
        assert set(data["margins"]) == {"inradius", "circumradius"}


class TestPolygonVerifier:
    """Tests for verify_theorem2."""

    def test_square_passes(self, square, band):
        report = verify_theorem2(square, band, 0.5)
        assert report.verdict is Verdict.PASS
        assert set(report.margins) == {"curvature", "inradius", "circumradius", "gap"}
        assert report.min_margin >= 0
        assert report.theorem == "2"
        assert report.r_bound == pytest.approx(0.5358, abs=1e-4)

    @pytest.mark.parametrize("s", [0.5, 2.0])
    def test_scale_covariance(self, s):
        """Scaling lengths by s and curvature scales by 1/s scales the dimensional bounds by s."""
        radii, angles = [0.165, 0.19, 0.15, 0.2, 0.18], [0.0, 1.2, 2.5, 3.7, 5.0]

        def polygon(scale):
            return ConvexPolygon(
                tuple(ModelPoint.polar(d * scale, a, 0.8 / scale) for d, a in zip(radii, angles))
            )

        base = verify_theorem2(polygon(1.0), CurvatureBand(1.0, 0.5), 0.5)
        scaled = verify_theorem2(polygon(s), CurvatureBand(1.0 / s, 0.5 / s), 0.5 * s)
        assert base.verdict is Verdict.PASS
        assert scaled.verdict is Verdict.PASS
        assert scaled.r == pytest.approx(s * base.r, rel=1e-7)
        assert scaled.R == pytest.approx(s * base.R, rel=1e-7)
        assert scaled.r_bound == pytest.approx(s * base.r_bound, rel=1e-12)
        assert scaled.R_bound_dimensional == pytest.approx(s * base.R_bound_dimensional, rel=1e-12)
        assert scaled.gap_bound == pytest.approx(s * base.gap_bound, rel=1e-7)
        for name in ("inradius", "circumradius", "gap"):
            assert scaled.margins[name] == pytest.approx(s * base.margins[name], rel=1e-6, abs=1e-9)
        assert scaled.margins["curvature"] == pytest.approx(base.margins["curvature"] / s, rel=1e-6)

        # k1·ln 2 does not carry the dimension of a length
        as_written = scaled.R_bound_as_written - scaled.r_bound
        assert as_written == pytest.approx(LN2 / s, rel=1e-12)
        assert as_written != pytest.approx(s * (base.R_bound_as_written - base.r_bound), rel=1e-3)

    def test_corpus_passes(self, small_corpus, band):
        for polygon in small_corpus:
            report = verify_theorem2(polygon, band, 0.5)
            assert report.verdict is Verdict.PASS, report.margins

    def test_model_outside_band_is_skipped(self, band):
        report = verify_theorem2(ConvexPolygon.regular(4, 0.25, k=2.0), band, 0.5)
        assert not report.model_in_band
        assert report.verdict is Verdict.SKIPPED
        assert report.margins == {}
        assert report.r > 0 and report.R > report.r

    def test_strict_band_excludes_upper_bound_model(self, band):
        polygon = ConvexPolygon.regular(4, 0.25, k=0.5)
        assert band.contains(0.5)
        assert verify_theorem2(polygon, band, 0.5).model_in_band
        strict = CurvatureBand(1.0, 0.5, strict=True)
        assert not strict.contains(0.5)
        assert strict.contains(0.75) and strict.contains(1.0)
        report = verify_theorem2(polygon, strict, 0.5)
        assert not report.model_in_band
        assert report.verdict is Verdict.SKIPPED

    def test_vertex_hypothesis_failure_is_skipped(self, band):
        report = verify_theorem2(ConvexPolygon.regular(4, 1.0), band, 0.5)
        assert report.verdict is Verdict.SKIPPED
        assert any(p.startswith("vertex") for p in report.flags.failed_predicates())
        assert report.r_bound is not None

    def test_global_hypothesis_failure_has_no_bound(self, square, band):
        report = verify_theorem2(square, band, 3.0)
        assert report.verdict is Verdict.SKIPPED
        assert report.r_bound is None
        assert report.R_bound is None

    def test_variants_agree_at_unit_k1(self, square, band):
        report = verify_theorem2(square, band, 0.5, Ln2Variant.AS_WRITTEN)
        assert report.R_bound_as_written == pytest.approx(report.R_bound_dimensional)
        assert report.R_bound == report.R_bound_as_written

    def test_variants_differ_off_unit_k1(self):
        band = CurvatureBand(2.0, 1.0)
        report = verify_theorem2(ConvexPolygon.regular(5, 0.1, k=1.5), band, 0.25)
        assert report.R_bound_dimensional == pytest.approx(report.r_bound + LN2 / 2)
        assert report.R_bound_as_written == pytest.approx(report.r_bound + 2 * LN2)

    def test_flat_upper_bound(self, square):
        report = verify_theorem2(square, CurvatureBand(1.0, 0.0), 0.5)
        assert report.theorem == "2'"
        assert report.r_bound == pytest.approx(arccoth(2.0))

    def test_constant_curvature_slack(self, square):
        report = verify_theorem2(square, CurvatureBand(1.0, 1.0), 0.5)
        assert report.karcher_slack == pytest.approx(0.5 - report.R)
        assert report.karcher_slack > 0

    def test_definition_b(self, square, band):
        report = verify_theorem2(square, band, 0.5, definition=CurvatureDefinition.B)
        assert report.flags.definition is CurvatureDefinition.B
        assert report.verdict is Verdict.PASS

    def test_to_dict(self, square, band):
        data = verify(square, band, 0.5).to_dict()
        assert data["verdict"] == "pass"
        assert data["variant"] == "dimensional"
        assert data["hypotheses"]["global_flag"] is True
