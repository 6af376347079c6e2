"""Mode detection, log-concavity scans, decrease index, asymptotics, solver."""

import math
from fractions import Fraction as F

import pytest

from posterior_dynamics import diagnostics as dg
from posterior_dynamics import engine
from posterior_dynamics import families as fam
from posterior_dynamics import priors as pr
from posterior_dynamics.families import DomainError


class TestDetectModes:
    def test_strictly_decreasing_counts_left_boundary(self):
        assert dg.detect_modes([F(5), F(4), F(3), F(2)]) == [1]

    def test_plateau_collapses_to_first_index(self):
        assert dg.detect_modes([F(1), F(2), F(2), F(2), F(1)]) == [2]

    def test_left_plateau(self):
        assert dg.detect_modes([F(2), F(2), F(1)]) == [1]

    def test_right_boundary_never_counts(self):
        assert dg.detect_modes([F(1), F(2), F(3)]) == []

    def test_interior_peaks(self):
        assert dg.detect_modes([F(1), F(3), F(2), F(4), F(1)]) == [2, 4]

    def test_float_ties_do_not_sprout_phantom_modes(self):
        base = [1.0, 2.0, 2.0 * (1.0 + 5e-14), 1.0]
        assert dg.detect_modes(base) == [2]

    def test_needs_three_points(self):
        with pytest.raises(DomainError):
            dg.detect_modes([F(1), F(2)])


class TestLogConcavityScan:
    def test_geometric_sequence_is_clean(self):
        geometric = [F(7, 10) * F(9, 10) ** n for n in range(1, 30)]
        assert dg.logconcavity_scan(geometric) == []
        as_floats = [0.7 * 0.9**n for n in range(1, 30)]
        assert dg.logconcavity_scan(as_floats) == []

    def test_single_violation(self):
        assert dg.logconcavity_scan([F(4), F(1), F(4)]) == [2]

    def test_exact_boundary_is_not_a_violation(self):
        assert dg.logconcavity_scan([F(1), F(2), F(4)]) == []


class TestEventualDecrease:
    def test_geometric(self):
        geometric = [F(9, 10) ** n for n in range(1, 20)]
        assert dg.eventual_decrease_index(geometric) == 1

    def test_increasing_never_reaches(self):
        assert dg.eventual_decrease_index([F(1), F(2), F(3)]) is None

    def test_rise_then_fall(self):
        assert dg.eventual_decrease_index([F(1), F(3), F(2), F(1)]) == 2

    def test_late_uptick_blocks(self):
        assert dg.eventual_decrease_index([F(3), F(2), F(1), F(2)]) is None


class TestAnalyze:
    def test_full_report_on_exact_sequence(self):
        prior = pr.atoms(
            (F(1, 2), F(4100, 5001)), (F(13, 20), F(1, 5001)), (F(17, 20), F(900, 5001))
        )
        seq = engine.expected_posterior_discrete(prior, F(1, 2), F(13, 20), 30)
        report = dg.analyze(seq)
        assert report.modes[0] == 1
        assert 11 in [
            n
            for n in range(2, 30)
            if seq.value(n) < seq.value(n - 1) and seq.value(n) <= seq.value(n + 1)
        ]

    def test_normal_report_carries_solver_results(self):
        seq = engine.expected_posterior_normal(-1 / 3, 1 / 3, 100.0, 100)
        report = dg.analyze(seq)
        kinds = [kind for _, kind in report.critical_points]
        assert kinds == ["min", "max"]
        assert report.log_convex_prefix_end == pytest.approx(1e4 / math.sqrt(2), rel=1e-4)


class TestAsymptotics:
    def test_fair_coin_constant(self):
        value = dg.asymptotic_expected_posterior(
            fam.bernoulli(), pr.Uniform01(), 0.5, 0.5, 1
        )
        assert value == pytest.approx(1.0 / math.sqrt(math.pi), rel=1e-15)

    def test_normal_constant(self):
        value = dg.asymptotic_expected_posterior(
            fam.normal(2.0), pr.StdNormal(), 0.0, 0.0, 9
        )
        assert value == pytest.approx(3.0 / (2.0 * 2.0 * math.sqrt(math.pi)), rel=1e-14)

    def test_stirling_ratio_at_1000(self):
        n = 1000
        exact = F(n + 1) * math.comb(2 * n, n) * F(1, 4**n)
        asym = dg.asymptotic_expected_posterior(fam.bernoulli(), pr.Uniform01(), 0.5, 0.5, n)
        ratio = float(exact) / asym
        # Stirling expansion gives 1 + 7/(8n) + O(1/n^2)
        assert ratio == pytest.approx(1.0 + 7.0 / (8.0 * n), abs=2e-6)

    def test_discrete_prior_rejected(self):
        with pytest.raises(DomainError, match="continuous"):
            dg.asymptotic_expected_posterior(
                fam.bernoulli(), pr.atoms((F(1, 2), F(1))), 0.5, 0.5, 10
            )

    def test_off_diagonal_decays(self):
        family = fam.exponential()
        prior = pr.ExpPrior(1)
        v10 = dg.asymptotic_expected_posterior(family, prior, 1.0, 4.0, 10)
        v20 = dg.asymptotic_expected_posterior(family, prior, 1.0, 4.0, 20)
        assert v20 < v10

    def test_growth_constant_exposed(self):
        value = dg.sqrt_n_constant(fam.bernoulli(), 0.5)
        assert value == pytest.approx(math.sqrt(4.0 / (2 * math.pi)), rel=1e-15)


class TestNormalSolver:
    def test_wide_prior_example(self):
        roots = dg.normal_critical_points(-1 / 3, 1 / 3, 100.0)
        assert len(roots) == 2
        (n_min, kind_min), (n_max, kind_max) = roots
        assert kind_min == "min" and kind_max == "max"
        # the slope equation reduces to n^2 - 30000 n + 5e7 = 0
        lo = 15000.0 - math.sqrt(15000.0**2 - 5e7)
        hi = 15000.0 + math.sqrt(15000.0**2 - 5e7)
        assert n_min == pytest.approx(lo, rel=1e-5)
        assert n_max == pytest.approx(hi, rel=1e-5)

    def test_diagonal_has_no_critical_points(self):
        assert dg.normal_critical_points(0.3, 0.3, 10.0) == []

    def test_small_variance_is_concave_from_the_start(self):
        # the continuous turning point sits below the first integer index
        # whenever sigma^2 <= sqrt 2, and at zero when the midpoint is far out
        assert dg.normal_log_convex_prefix_end(0.0, 1.0) < 1.0
        assert dg.normal_log_convex_prefix_end(0.0, 2**0.25) <= 1.0 + 1e-6
        assert dg.normal_log_convex_prefix_end(0.7, 50.0) == 0.0

    def test_always_decreasing_when_parameters_far(self):
        roots = dg.normal_critical_points(-2.0, 2.0, 1.0)
        kinds = [kind for _, kind in roots]
        assert "min" not in kinds

    def test_discrete_extremes_near_continuous_roots(self):
        seq = engine.expected_posterior_normal(-1 / 3, 1 / 3, 100.0, 50_000)
        values = seq.log_values
        argmin = min(range(len(values)), key=values.__getitem__) + 1
        argmax = max(range(len(values)), key=values.__getitem__) + 1
        roots = dict((kind, n) for n, kind in dg.normal_critical_points(-1 / 3, 1 / 3, 100.0))
        assert abs(argmin - roots["min"]) <= 2
        assert abs(argmax - roots["max"]) <= 2
