"""
Tests for quarrel postulate verdicts, paradox scans and the theorem suite
"""

from fractions import Fraction

import pytest

from conftest import Config

try:
    from quarrelkit import (
        FM,
        LV,
        TYPOLOGY_KINDS,
        CapabilityError,
        Degree,
        Direction,
        GameInputError,
        Measure,
        Postulate,
        QuarrelKind,
        ScaleError,
        Scope,
        VerdictStatus,
        apply,
        check_postulate,
        min_k_monotonicity,
        permute_players,
        run_theorem_suite,
        scan_paradox,
    )
    from quarrelkit.postulate_checker import family_game, grows_without_bound, iter_verdicts
except ImportError:
    pytest.fail("quarrelkit not importable - run 'uv sync' first")


WEAK_SYM = QuarrelKind(Degree.WEAK, Scope.SYMMETRIC, Direction.RECIPROCAL)


class TestCheckPostulate:
    """Test single postulate verdicts."""

    def test_lv_raises_target_power(self, veto3):
        verdict = check_postulate(Postulate.STANDARD, Measure.PB, LV.between(1, 2), veto3)
        assert verdict.status is VerdictStatus.VIOLATED
        assert not verdict.holds
        assert verdict.psi_j_before == Fraction(1, 4)
        assert verdict.psi_j_after == Fraction(1, 2)
        assert verdict.witness == 2

    def test_weak_on_majority_holds(self, majority3):
        verdict = check_postulate("standard", "pb", WEAK_SYM.between(1, 2), majority3)
        assert verdict.holds
        assert verdict.psi_i_before == Fraction(1, 2)
        assert verdict.psi_i_after == 0
        assert verdict.psi_j_after == 0
        assert verdict.witness is None

    def test_fm_makes_dummy_decisive(self, dictator3):
        verdict = check_postulate(Postulate.STANDARD, Measure.PB, FM.between(1, 2), dictator3)
        assert verdict.status is VerdictStatus.VIOLATED
        assert verdict.psi_j_before == 0
        assert verdict.psi_j_after == Fraction(1, 2)
        assert verdict.dummy_gains

    def test_yes_power_postulate(self, dictator3):
        verdict = check_postulate(Postulate.YES_POWER, Measure.PB, FM.between(1, 2), dictator3)
        assert verdict.psi_j_after == Fraction(1, 4)
        assert verdict.status is VerdictStatus.VIOLATED

    def test_ss_on_non_monotonic_result_is_capability_limited(self, dictator3):
        verdict = check_postulate(Postulate.STANDARD, Measure.SS, FM.between(1, 2), dictator3)
        assert verdict.status is VerdictStatus.CAPABILITY_LIMITED
        assert verdict.psi_i_before == 1
        assert verdict.psi_i_after is None
        assert "monotonic" in verdict.note

    def test_yes_postulate_needs_pb(self, dictator3):
        with pytest.raises(CapabilityError) as exc_info:
            check_postulate(Postulate.NO_POWER, Measure.SS, FM.between(1, 2), dictator3)

        assert "only pb provides" in str(exc_info.value)

    def test_verdict_invariant_under_relabelling(self, veto3):
        perm = [2, 3, 1]
        before = check_postulate(Postulate.STANDARD, Measure.PB, LV.between(1, 2), veto3)
        after = check_postulate(
            Postulate.STANDARD, Measure.PB, LV.between(perm[0], perm[1]), permute_players(veto3, perm)
        )
        assert before.status is after.status
        assert (before.psi_j_before, before.psi_j_after) == (after.psi_j_before, after.psi_j_after)


class TestScan:
    """Test exhaustive paradox scans."""

    @pytest.mark.parametrize("measure", [Measure.PB, Measure.SS])
    def test_weak_quarrels_never_raise_power(self, measure):
        assert scan_paradox(Postulate.STANDARD, measure, WEAK_SYM, 3) == []

    def test_fm_violations_include_dictator_games(self, dictator3):
        violations = scan_paradox(Postulate.STANDARD, Measure.PB, FM, 3)
        assert violations
        assert dictator3.game_id in {v.game_id for v in violations}
        assert violations == sorted(violations, key=lambda v: v.sort_key)

    def test_scan_covers_every_ordered_pair(self):
        verdicts = list(iter_verdicts(Postulate.STANDARD, Measure.PB, FM, 3))
        assert len(verdicts) == 18 * 6

    @pytest.mark.parametrize(
        "kind", [k for k in TYPOLOGY_KINDS if k.degree is not Degree.WEAK], ids=lambda k: k.label
    )
    def test_non_monotonic_cells_violate_postulate(self, kind):
        assert scan_paradox(Postulate.STANDARD, Measure.PB, kind, 3)

    def test_scale_limit(self):
        with pytest.raises(ScaleError) as exc_info:
            scan_paradox(Postulate.STANDARD, Measure.PB, FM, 5)

        assert "n <= 4" in str(exc_info.value)

    def test_needs_two_players(self):
        with pytest.raises(GameInputError):
            scan_paradox(Postulate.STANDARD, Measure.PB, FM, 1)

    @pytest.mark.exhaustive
    @pytest.mark.slow
    def test_weak_quarrels_at_four_players(self, test_config: Config):
        for measure in (Measure.PB, Measure.SS):
            assert scan_paradox(Postulate.STANDARD, measure, WEAK_SYM, test_config.max_n) == []


class TestFamilies:
    """Test growth families and the growth rule."""

    def test_fm_family_grows_linearly(self):
        values = [
            min_k_monotonicity(apply(FM.between(1, 2), family_game(FM, n))).min_k for n in (3, 4, 5)
        ]
        assert values == [2, 3, 4]

    def test_lv_family_is_unbounded(self):
        for n in (3, 4, 5):
            assert min_k_monotonicity(apply(LV.between(1, 2), family_game(LV, n))).min_k is None

    def test_unanimity_patch_still_grows(self):
        values = [
            min_k_monotonicity(apply(FM.between(1, 2, unanimity_patch=True), family_game(FM, n))).min_k
            for n in (3, 4, 5)
        ]
        assert values == [1, 2, 3]

    def test_growth_rule(self):
        assert grows_without_bound([2, 3, 4])
        assert grows_without_bound([None, None, None])
        assert grows_without_bound([2, None])
        assert not grows_without_bound([2, 2, 3])
        assert not grows_without_bound([None, 3])

    def test_no_family_for_weak(self):
        with pytest.raises(GameInputError):
            family_game(WEAK_SYM, 3)


class TestTheoremSuite:
    """Test the theorem suite results."""

    @pytest.mark.slow
    def test_everything_verified_at_three_players(self):
        results = run_theorem_suite(3)
        failed = [(r.theorem, r.counterexample) for r in results if not r.verified]
        assert failed == []
        assert len(results) == 18
        assert len([r for r in results if r.theorem.startswith("cell:")]) == 12

    @pytest.mark.slow
    def test_named_results(self):
        results = {r.theorem: r for r in run_theorem_suite(2)}
        assert results["cell:weak:sym:recip"].verified
        assert results["cell:strong:yes:recip"].details == {"max_min_k": "1"}
        assert results["cell:cataclysmic:yes:recip"].details == {"min_k": "2, 3, 4"}
        assert results["cell:strong:sym:nonrecip"].details == {
            "min_k": "none-within-n, none-within-n, none-within-n"
        }
        assert results["lv-non-reciprocal"].verified
        assert results["fm-unanimity-patch"].details == {"min_k": "1, 2, 3"}
        assert {"dummy-paradox", "monotone-source", "ss-weak-postulate", "pb-weak-postulate"} <= set(results)

    @pytest.mark.exhaustive
    @pytest.mark.slow
    def test_everything_verified_at_configured_size(self, test_config: Config):
        results = run_theorem_suite(test_config.max_n)
        assert all(r.verified for r in results), [r.theorem for r in results if not r.verified]

    def test_scale_limit(self):
        with pytest.raises(ScaleError):
            run_theorem_suite(5)

    def test_needs_two_players(self):
        with pytest.raises(GameInputError):
            run_theorem_suite(1)
