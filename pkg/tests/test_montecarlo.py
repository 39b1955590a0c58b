import math

import numpy as np
import pytest

from uwqkd.environment import AtmosphericScenario, DetectorParams, make_link
from uwqkd.montecarlo import (
    InsufficientStatisticsError,
    SimConfig,
    SimResult,
    born_sample,
    measurement_probabilities,
    predicted_qber,
    simulate,
)
from uwqkd.quantum import initial_state

QUIET = AtmosphericScenario(id=0, surface_irradiance=0.0)


def ideal_link(length=0.0):
    return make_link(length, scenario=QUIET, detector=DetectorParams(i_dc=0.0, e_det=0.0))


class TestBornSample:
    def test_bell_rect_outcomes_correlated(self):
        rho = initial_state(np.pi / 4)
        outcomes = {born_sample(rho, "rect", u) for u in np.linspace(0.001, 0.999, 199)}
        assert outcomes == {0, 3}

    def test_bell_diag_outcomes_correlated(self):
        rho = initial_state(np.pi / 4)
        outcomes = {born_sample(rho, "diag", u) for u in np.linspace(0.001, 0.999, 199)}
        assert outcomes == {0, 3}

    def test_bell_probabilities_split_evenly(self):
        rect, diag = measurement_probabilities(initial_state(np.pi / 4))
        assert rect == pytest.approx([0.5, 0.0, 0.0, 0.5], abs=1e-12)
        assert diag == pytest.approx([0.5, 0.0, 0.0, 0.5], abs=1e-12)

    def test_nonmax_diag_anticorrelation_probability(self):
        _, diag = measurement_probabilities(initial_state(np.pi / 5))
        anti = diag[1] + diag[2]
        assert anti == pytest.approx((1 - math.sin(2 * math.pi / 5)) / 2, abs=1e-12)
        assert anti == pytest.approx(0.024472, abs=1e-6)

    def test_nonmax_rect_rounds_error_free(self):
        rect, _ = measurement_probabilities(initial_state(np.pi / 5))
        assert rect[1] == rect[2] == 0.0

    def test_unknown_basis_rejected(self):
        with pytest.raises(ValueError, match="basis"):
            born_sample(initial_state(0.5), "circular", 0.5)

    def test_empirical_frequencies_match_projectors(self):
        rho = initial_state(np.pi / 5)
        rect, diag = measurement_probabilities(rho)
        rng = np.random.default_rng(123)
        n = 1_000_000
        u = rng.random(n)
        for probs in (rect, diag):
            cum = np.cumsum(probs)
            cum[-1] = 1.0
            outcomes = np.searchsorted(cum, u, side="right")
            counts = np.bincount(outcomes, minlength=4)
            for i in range(4):
                sigma = math.sqrt(max(probs[i] * (1 - probs[i]) / n, 1e-18))
                assert abs(counts[i] / n - probs[i]) <= 4 * sigma + 1e-9


class TestSimulate:
    def test_ideal_point_zero_errors(self):
        cfg = SimConfig(link=ideal_link(), beta=np.pi / 4, n_packets=50, photons_per_packet=400)
        result = simulate(cfg)
        assert result.errors == 0
        assert result.qber_estimate == 0.0
        assert result.sifted > 0

    def test_noise_only_regime_near_half(self):
        # detectors blind, loud dark counts: every coincidence is noise
        y0_target = 0.05
        det = DetectorParams(eta_alice=0.0, eta_bob=0.0, i_dc=y0_target / (4 * 40e-9), e_det=0.0)
        link = make_link(0.5, scenario=QUIET, detector=det)
        cfg = SimConfig(link=link, beta=np.pi / 4, n_packets=400, photons_per_packet=1000, master_seed=5)
        result = simulate(cfg)
        assert abs(result.qber_estimate - 0.5) <= 3 * result.std_error

    def test_matches_prediction_at_reference_point(self):
        link = make_link(2.0, water="clear", scenario=1)
        cfg = SimConfig(link=link, beta=np.pi / 4, n_packets=500, photons_per_packet=1000, master_seed=9)
        result = simulate(cfg)
        assert abs(result.qber_estimate - predicted_qber(link, np.pi / 4)) <= 3 * result.std_error

    def test_deterministic_across_worker_counts(self):
        link = make_link(1.0, water="coastal", scenario=3)
        cfg = SimConfig(link=link, beta=np.pi / 5, n_packets=64, photons_per_packet=250, master_seed=21)
        serial = simulate(cfg, n_jobs=1)
        threaded = simulate(cfg, n_jobs=4)
        assert serial == threaded

    def test_seed_changes_result(self):
        link = make_link(1.0, water="coastal", scenario=3)
        a = simulate(SimConfig(link=link, beta=np.pi / 4, n_packets=40, photons_per_packet=250, master_seed=1))
        b = simulate(SimConfig(link=link, beta=np.pi / 4, n_packets=40, photons_per_packet=250, master_seed=2))
        assert a != b

    def test_pooled_estimate_is_totals_ratio(self):
        link = make_link(1.5, water="clear", scenario=2)
        result = simulate(
            SimConfig(link=link, beta=np.pi / 4, n_packets=30, photons_per_packet=300, master_seed=4)
        )
        assert result.qber_estimate == result.errors / result.sifted
        assert result.std_error == pytest.approx(
            math.sqrt(result.qber_estimate * (1 - result.qber_estimate) / result.sifted)
        )
        assert len(result.per_packet_qber) == 30
        finite = [q for q in result.per_packet_qber if not math.isnan(q)]
        # packet-wise mean is a different statistic than the pooled estimate
        assert finite

    def test_count_ordering_invariant(self):
        link = make_link(2.0, water="coastal", scenario=5)
        r = simulate(SimConfig(link=link, beta=np.pi / 5, n_packets=20, photons_per_packet=500))
        assert r.errors <= r.sifted <= r.coincidences <= 20 * 500

    def test_zero_sifted_raises(self):
        det = DetectorParams(eta_alice=0.0, eta_bob=0.0, i_dc=0.0, e_det=0.0)
        link = make_link(0.5, scenario=QUIET, detector=det)
        cfg = SimConfig(link=link, beta=np.pi / 4, n_packets=2, photons_per_packet=10)
        with pytest.raises(InsufficientStatisticsError):
            simulate(cfg)

    def test_excessive_noise_rejected(self):
        det = DetectorParams(i_dc=0.2 / (4 * 40e-9), e_det=0.0)  # y0 = 0.2
        link = make_link(0.5, scenario=QUIET, detector=det)
        with pytest.raises(ValueError, match="noise count"):
            simulate(SimConfig(link=link, beta=np.pi / 4, n_packets=1, photons_per_packet=10))

    def test_invalid_sizes_rejected(self):
        with pytest.raises(ValueError):
            SimConfig(link=ideal_link(), beta=np.pi / 4, n_packets=0)


class TestStatisticalAgreement:
    def test_grid_within_three_sigma(self):
        # scaled distances per water so every cell keeps usable statistics
        distances = {"clear": (0.5, 1.0, 2.0, 3.0), "coastal": (0.25, 0.5, 1.0, 1.5),
                     "turbid": (0.05, 0.1, 0.2, 0.3)}
        cells = []
        for water, lengths in distances.items():
            for scenario in (1, 2, 3, 4, 5):
                for beta in (np.pi / 4, np.pi / 5):
                    cells.append((water, scenario, beta, lengths[(scenario + int(beta * 10)) % 4]))
        hits = 0
        for index, (water, scenario, beta, length) in enumerate(cells):
            link = make_link(length, water=water, scenario=scenario)
            cfg = SimConfig(
                link=link, beta=beta, n_packets=100, photons_per_packet=1000,
                master_seed=1000 + index,
            )
            result = simulate(cfg)
            if abs(result.qber_estimate - predicted_qber(link, beta)) <= 3 * result.std_error:
                hits += 1
        assert hits >= math.ceil(0.95 * len(cells))


class TestSimResult:
    def test_is_value_object(self):
        a = SimResult(10, 5, 1, 0.2, 0.1, (0.2,))
        b = SimResult(10, 5, 1, 0.2, 0.1, (0.2,))
        assert a == b
