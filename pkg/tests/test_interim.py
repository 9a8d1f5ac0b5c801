import numpy as np
import pytest

from robust_pandora.core import DomainError, HomogeneousSpec
from robust_pandora.interim import (
    InterimPolicy,
    exhaustive_utility,
    interim_regret,
    interim_regret_high_belief,
    interim_two_box_intrapersonal,
    solve_interim,
)

SPEC2 = HomogeneousSpec(1.0, 0.3, 2)


def staircase_regret(m, alpha, p, spec):
    """Independent route: willingness is m boxes w.p. 1-alpha, m+1 w.p. alpha."""
    u_n = exhaustive_utility(p, spec.n, spec)
    u_m = exhaustive_utility(p, m, spec) if m >= 1 else 0.0
    u_m1 = exhaustive_utility(p, m + 1, spec)
    return max(u_n, 0.0) - (1 - alpha) * u_m - alpha * u_m1


class TestExhaustiveUtility:
    def test_certain_reward(self):
        for n in (1, 3, 6):
            assert exhaustive_utility(1.0, n, SPEC2) == pytest.approx(0.7, abs=1e-14)

    def test_no_reward(self):
        for n in (1, 4):
            assert exhaustive_utility(0.0, n, SPEC2) == pytest.approx(-n * 0.3, abs=1e-14)

    def test_zero_at_threshold_single_box(self):
        assert exhaustive_utility(0.3, 1, SPEC2) == pytest.approx(0.0, abs=1e-15)

    def test_increasing_in_p(self):
        ps = np.linspace(0.0, 1.0, 50)
        vals = [exhaustive_utility(float(p), 4, SPEC2) for p in ps]
        assert np.all(np.diff(vals) > 0)


class TestInterimRegret:
    def test_never_search_below_threshold(self):
        policy = InterimPolicy.from_m_alpha(0, 0.0, 3)
        spec = HomogeneousSpec(1.0, 0.3, 3)
        for p in (0.0, 0.1, 0.3):
            assert interim_regret(policy, p, spec) == pytest.approx(0.0, abs=1e-14)

    def test_exhaustive_plan_no_reward(self):
        spec = HomogeneousSpec(1.0, 0.3, 4)
        policy = InterimPolicy.from_m_alpha(3, 1.0, 4)
        assert interim_regret(policy, 0.0, spec) == pytest.approx(4 * 0.3, abs=1e-14)

    def test_exhaustive_plan_matches_oracle_above_threshold(self):
        spec = HomogeneousSpec(1.0, 0.3, 4)
        policy = InterimPolicy.from_m_alpha(3, 1.0, 4)
        for p in (0.31, 0.6, 1.0):
            assert interim_regret(policy, p, spec) == pytest.approx(0.0, abs=1e-14)

    def test_matches_willingness_mixture_route(self):
        rng = np.random.default_rng(103)
        for _ in range(40):
            n = int(rng.integers(1, 8))
            spec = HomogeneousSpec(1.0, 0.3, n)
            m = int(rng.integers(0, n))
            alpha = float(rng.random())
            policy = InterimPolicy.from_m_alpha(m, alpha, n)
            p = float(rng.random())
            got = interim_regret(policy, p, spec)
            assert got == pytest.approx(staircase_regret(m, alpha, p, spec), abs=1e-12)

    def test_two_forms_agree_above_threshold(self):
        rng = np.random.default_rng(107)
        for _ in range(40):
            n = int(rng.integers(1, 8))
            spec = HomogeneousSpec(1.0, 0.3, n)
            policy = InterimPolicy.from_m_alpha(int(rng.integers(0, n)), float(rng.random()), n)
            p = 0.3 + 0.7 * float(rng.random())
            a = interim_regret(policy, p, spec)
            b = interim_regret_high_belief(policy, p, spec)
            assert abs(a - b) <= 1e-12

    def test_vectorized_over_p(self):
        policy = InterimPolicy.from_m_alpha(1, 0.4, 3)
        spec = HomogeneousSpec(1.0, 0.3, 3)
        grid = np.linspace(0, 1, 11)
        vec = interim_regret(policy, grid, spec)
        for p, v in zip(grid, vec):
            assert v == pytest.approx(interim_regret(policy, float(p), spec), abs=1e-14)


class TestSolveInterim:
    def test_two_boxes_reference(self):
        rep = solve_interim(SPEC2)
        assert rep.policy.m == 0
        assert 0.0 < rep.policy.alpha < 1.0
        assert rep.policy.alpha == pytest.approx(0.750806661517, abs=1e-9)
        assert rep.residual <= 1e-10
        assert 0.3 < rep.worst_p_high <= 1.0

    def test_single_box_matches_ex_post_case(self):
        rep = solve_interim(HomogeneousSpec(1.0, 0.3, 1))
        assert rep.policy.m == 0
        assert rep.policy.alpha == pytest.approx(0.7, abs=1e-10)
        assert rep.worst_p_high == pytest.approx(1.0, abs=1e-6)

    def test_menu_growth_never_cuts_sure_search(self):
        ms = []
        for n in range(2, 21):
            rep = solve_interim(HomogeneousSpec(1.0, 0.1, n))
            ms.append(rep.policy.m)
            assert rep.residual <= 1e-10
        assert np.all(np.diff(ms) >= 0)

    def test_policy_staircase_shape(self):
        rep = solve_interim(HomogeneousSpec(1.0, 0.1, 6))
        phi = rep.policy.phi
        assert np.all(np.diff(phi) >= -1e-15)
        assert np.all((phi == 0.0) | (phi == 1.0) | (np.abs(phi - rep.policy.alpha) < 1e-15))

    def test_branches_equalized(self):
        # regret at p = 0 equals the maximized high-belief branch
        for ubar, c, n in [(1.0, 0.3, 2), (1.0, 0.1, 5), (2.0, 0.7, 4), (1.7237803, 0.0902015, 3)]:
            spec = HomogeneousSpec(ubar, c, n)
            rep = solve_interim(spec)
            at_zero = interim_regret(rep.policy, 0.0, spec)
            at_worst = interim_regret(rep.policy, rep.worst_p_high, spec)
            assert at_zero == pytest.approx(rep.regret, abs=1e-10)
            assert at_worst == pytest.approx(rep.regret, abs=1e-9)

    def test_solution_is_worst_case_optimal_on_grid(self):
        # no staircase plan on a fine grid beats the solver's worst case
        spec = HomogeneousSpec(1.0, 0.25, 4)
        rep = solve_interim(spec)
        ps = np.linspace(0.0, 1.0, 801)
        solved_worst = float(np.max(interim_regret(rep.policy, ps, spec)))
        for m in range(4):
            for a in np.linspace(0.0, 1.0, 161):
                worst = float(np.max(interim_regret(InterimPolicy.from_m_alpha(m, float(a), 4), ps, spec)))
                assert worst >= solved_worst - 1e-6


class TestTwoBoxIntrapersonal:
    def test_reference_values(self):
        a1, a2 = interim_two_box_intrapersonal(SPEC2)
        assert a1 == pytest.approx(0.7, abs=1e-15)
        assert a2 == pytest.approx(0.7 / 1.21, abs=1e-12)

    def test_vanishing_cost_limit(self):
        a1, a2 = interim_two_box_intrapersonal(HomogeneousSpec(1.0, 1e-9, 2))
        assert a1 == pytest.approx(1.0, abs=1e-8)
        assert a2 == pytest.approx(1.0, abs=1e-8)

    def test_first_stage_less_likely(self):
        rng = np.random.default_rng(109)
        for _ in range(25):
            ubar = rng.uniform(0.5, 2.0)
            c = ubar * rng.uniform(0.05, 0.95)
            a1, a2 = interim_two_box_intrapersonal(HomogeneousSpec(ubar, c, 2))
            assert a2 < a1

    def test_stage_regrets_equalized_at_extremes(self):
        # the stage-two choice balances p = 0 against p = 1
        ubar, c = 1.0, 0.3
        a1, a2 = interim_two_box_intrapersonal(HomogeneousSpec(ubar, c, 2))
        regret_p0 = a2 * (1 + a1) * c
        regret_p1 = (1 - a2) * (ubar - c)
        assert regret_p0 == pytest.approx(regret_p1, abs=1e-12)


class TestPolicyConstruction:
    def test_bad_m_rejected(self):
        with pytest.raises(DomainError):
            InterimPolicy.from_m_alpha(3, 0.5, 3)

    def test_bad_alpha_rejected(self):
        with pytest.raises(DomainError):
            InterimPolicy.from_m_alpha(0, 1.5, 3)
