import itertools
import math
from fractions import Fraction

import pytest

from mncomplex.errors import BudgetExceededError, ConfigError
from mncomplex.experiments import (
    ExperimentConfig,
    exact_face_probability,
    exact_small_distribution,
    expected_copies_lm,
    face_covariance_probe,
    falling_factorial,
    q_from_rule,
    run_copy_count_sweep,
    run_support_census,
    run_threshold_probe,
    target_complex_from_facets,
    theorem3_ratio_probe,
)
from mncomplex.regime import binomial_tail


class TestConfig:
    def test_validate_rejects_unknown_kind(self):
        with pytest.raises(ConfigError):
            ExperimentConfig(kind="nope").validate()

    def test_as_dict_round_trip(self):
        cfg = ExperimentConfig(
            kind="support", trials=3, n_values=(10,), m_values=(1,), p_values=(0.5,)
        )
        d = cfg.as_dict()
        rebuilt = ExperimentConfig(
            **{
                **d,
                "n_values": tuple(d["n_values"]),
                "m_values": tuple(d["m_values"]),
                "p_values": tuple(d["p_values"]),
                "beta_values": tuple(d["beta_values"]),
                "x_facets": tuple(tuple(f) for f in d["x_facets"]),
            }
        )
        assert rebuilt.as_dict() == d


class TestSupportCensus:
    def _config(self, threads=1, trials=4):
        return ExperimentConfig(
            kind="support",
            trials=trials,
            master_seed=11,
            threads=threads,
            n_values=(25, 30),
            m_values=(2,),
            p_values=(0.4,),
        )

    def test_records_sorted_and_complete(self):
        records, summary = run_support_census(self._config())
        assert len(records) == 8
        keys = [(r["n"], r["m"], r["p"], r["trial"]) for r in records]
        assert keys == sorted(keys)
        assert len(summary) == 2
        assert all(0.0 <= s["q_face"] <= 1.0 for s in summary)

    def test_thread_width_does_not_change_results(self):
        serial, _ = run_support_census(self._config(threads=1))
        parallel, _ = run_support_census(self._config(threads=4))
        assert serial == parallel

    def test_missing_grid_rejected(self):
        with pytest.raises(ConfigError):
            run_support_census(ExperimentConfig(kind="support"))


class TestCopySweep:
    def test_runs_and_summarizes(self):
        cfg = ExperimentConfig(
            kind="copies",
            trials=2,
            master_seed=3,
            n_values=(20,),
            m_values=(1,),
            beta_values=(2.0,),
            x_facets=((0, 1),),
        )
        records, summary, extras = run_copy_count_sweep(cfg)
        assert len(records) == 2
        assert summary[0]["trials"] == 2
        assert extras["phi"] == 1 and extras["shape_cap"] == [2, 2]

    def test_needs_facets(self):
        cfg = ExperimentConfig(
            kind="copies", n_values=(10,), m_values=(1,), beta_values=(2.0,)
        )
        with pytest.raises(ConfigError):
            run_copy_count_sweep(cfg)


class TestThresholdProbe:
    def test_some_k_face_frequencies(self):
        cfg = ExperimentConfig(
            kind="threshold",
            trials=10,
            master_seed=21,
            n_values=(60,),
            m_values=(2,),
            beta_values=(2.0, 0.6),
            k=2,
            property="some-k-face",
        )
        records, summary = run_threshold_probe(cfg)
        by_beta = {s["beta"]: s["fraction"] for s in summary}
        assert by_beta[2.0] > by_beta[0.6]
        assert summary[0]["predicted_threshold"] == str(Fraction(1))

    def test_contains_x_reports_density_threshold(self):
        cfg = ExperimentConfig(
            kind="threshold",
            trials=2,
            master_seed=5,
            n_values=(15,),
            m_values=(2,),
            beta_values=(2.0,),
            property="contains-x",
            x_facets=((0, 1),),
        )
        _, summary = run_threshold_probe(cfg)
        assert summary[0]["predicted_threshold"] == str(Fraction(1))  # 2*2/(2+2)

    def test_unknown_property_rejected(self):
        cfg = ExperimentConfig(
            kind="threshold",
            n_values=(10,),
            m_values=(1,),
            beta_values=(1.0,),
            property="frobnicate",
        )
        with pytest.raises(ConfigError):
            run_threshold_probe(cfg)


class TestExactEnumeration:
    def test_face_probability_matches_binomial_sample_points(self):
        for n, s, m, p in [(4, 1, 1, 0.3), (4, 2, 2, 0.5), (5, 2, 1, 0.3)]:
            exact = exact_face_probability(n, m, p, tuple(range(s)))
            assert exact == pytest.approx(binomial_tail(n - s, p**s, m, ">="), abs=1e-12)

    def test_large_n_rejected(self):
        with pytest.raises(BudgetExceededError):
            exact_face_probability(7, 1, 0.5, (0,))

    def test_distributions_are_probability_vectors(self):
        res = exact_small_distribution(4, 1, 0.4, 2, 0.6)
        assert math.fsum(res.gamma_dist.values()) == pytest.approx(1.0, abs=1e-12)
        assert math.fsum(res.lm_dist.values()) == pytest.approx(1.0, abs=1e-12)
        assert 0.0 <= res.tv_distance <= 1.0

    def test_tv_zero_against_itself_at_q_extremes(self):
        # q = 1 and p = 1-epsilon: every 2-set is a face in both models
        res = exact_small_distribution(3, 1, 1.0 - 1e-12, 2, 1.0)
        assert res.tv_distance == pytest.approx(0.0, abs=1e-9)

    def test_covariance_exact_sign(self):
        # shared-vertex faces share witness candidates: nonnegative correlation
        cov = face_covariance_probe(5, 1, 0.5, (0, 1), (1, 2))
        assert isinstance(cov, Fraction)
        assert cov > 0

    def test_disjoint_single_vertices_uncorrelated_weakly(self):
        cov = face_covariance_probe(4, 1, 0.5, (0,), (1,))
        assert cov >= 0


class TestScalingRules:
    def test_q_rules(self):
        assert q_from_rule(100, 2, 3, 4.0, "theorem") == pytest.approx(
            100.0 ** (3 * (1 - 2 / 4.0))
        )
        assert q_from_rule(100, 2, 3, 4.0, "conjecture") == pytest.approx(
            100.0 ** (-2 * 3 / 4.0)
        )
        with pytest.raises(ConfigError):
            q_from_rule(10, 1, 1, 1.0, "guess")

    def test_falling_factorial(self):
        assert falling_factorial(6, 3) == 120
        assert falling_factorial(5, 0) == 1

    def test_expected_copies(self):
        assert expected_copies_lm(10, 2, 1, 0.5) == pytest.approx(45.0)


class TestRatioProbe:
    def test_runs_with_hypothesis_flags(self):
        cfg = ExperimentConfig(
            kind="ratio",
            trials=2,
            master_seed=8,
            n_values=(15, 20),
            m_values=(2,),
            beta_values=(1.2,),
            x_facets=((0, 1),),
        )
        records, summary, extras = theorem3_ratio_probe(cfg)
        assert len(records) == 4
        assert len(summary) == 2
        assert extras["qualitative"] is True
        assert isinstance(extras["flags"], list)

    def test_single_grid_point_required(self):
        cfg = ExperimentConfig(
            kind="ratio",
            n_values=(10,),
            m_values=(1, 2),
            beta_values=(1.0,),
            x_facets=((0, 1),),
        )
        with pytest.raises(ConfigError):
            theorem3_ratio_probe(cfg)


class TestTargetComplex:
    def test_downward_closure_generated(self):
        x = target_complex_from_facets([(0, 1, 2)])
        assert x.contains((0, 1)) and x.contains((2,)) and x.contains((0, 1, 2))
        assert x.is_downward_closed()

    def test_empty_rejected(self):
        with pytest.raises(ConfigError):
            target_complex_from_facets([])


class TestSmallDistributionExamples:
    def test_complete_one_complex_probability_is_one_eighth(self):
        # Three vertices, m=1, p=1/2: every labeled graph on {0,1,2} is
        # equally likely, and exactly 1 of the 8 (the triangle) makes every
        # pair a face.
        result = exact_small_distribution(3, 1, 0.5, 2, 0.5)
        full = ((1, ((0,), (1,), (2,))), (2, ((0, 1), (0, 2), (1, 2))))
        prob = result.gamma_dist[full]
        assert math.isclose(prob, 0.125, rel_tol=0, abs_tol=1e-12)

    def test_covariance_of_face_with_itself_is_variance(self):
        cov = face_covariance_probe(5, 1, 0.5, (0, 1), (0, 1))
        q = exact_face_probability(5, 1, 0.5, (0, 1))
        assert math.isclose(float(cov), q * (1.0 - q), rel_tol=0, abs_tol=1e-12)
        assert cov == Fraction(999, 4096)


class TestRatioProbeHypothesisExample:
    def test_disjoint_edges_large_m_accepted(self):
        # Two disjoint edges: k=2, two facets, four vertices; with m=17 and
        # beta=1.9 every hypothesis inequality holds, so no flags are raised.
        cfg = ExperimentConfig(
            kind="ratio",
            trials=1,
            master_seed=3,
            n_values=(12,),
            m_values=(17,),
            beta_values=(1.9,),
            x_facets=((0, 1), (2, 3)),
        )
        _, _, extras = theorem3_ratio_probe(cfg)
        assert extras["flags"] == []


class TestSupportCensusFrequencyInvariant:
    def test_face_frequency_matches_binomial_probability(self):
        # Empirical frequency of t-sets being faces should sit within five
        # standard errors of the per-face binomial probability q.
        from mncomplex.regime import compute_t_tau, face_probability_q

        n, m, p, trials = 150, 4, 0.2, 100
        cfg = ExperimentConfig(
            kind="support",
            trials=trials,
            master_seed=424242,
            n_values=(n,),
            m_values=(m,),
            p_values=(p,),
            cap=3,
            threads=4,
        )
        records, _ = run_support_census(cfg)
        t, _ = compute_t_tau(n, m, p)
        assert t == 2
        q = face_probability_q(n, m, p)
        ratios = [r["ratio_at"] for r in records]
        mean = sum(ratios) / len(ratios)
        var = sum((r - mean) ** 2 for r in ratios) / (trials - 1)
        stderr = math.sqrt(var / trials)
        assert abs(mean - q) <= 5 * stderr
