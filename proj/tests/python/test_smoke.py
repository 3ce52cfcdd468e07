import math

import pytest

import alertswarm as aswarm


def test_distance():
    assert aswarm.distance((0, 0), (3, 4)) == 5.0
    assert aswarm.distance((1.5, 2.0), (4.5, 6.0)) == 5.0


def test_fleiss_kappa():
    # systematic disagreement: kappa = -1
    assert aswarm.fleiss_kappa([[1, 1], [1, 1]]) == pytest.approx(-1.0)
    with pytest.raises(aswarm.DegenerateAgreementError):
        aswarm.fleiss_kappa([[4, 0], [4, 0]])


def test_luciferin_and_range():
    p = aswarm.GsoParams(rho=0.4, gamma=0.6)
    assert aswarm.update_luciferin(5.0, 1.0, p) == pytest.approx(3.6)
    g = 5.0
    for _ in range(100):
        g = aswarm.update_luciferin(g, 1.0, p)
    assert g == pytest.approx(1.5)
    assert aswarm.update_domain_range(1.0, 2, aswarm.GsoParams(r_s=3.0)) == pytest.approx(1.24)


def test_gso_params_validation():
    with pytest.raises(aswarm.InvalidConfigError):
        aswarm.GsoParams(rho=1.2)


def test_neighborhood_and_probabilities():
    swarm = [
        (0, 0.0, 0.0, 1.0, 5.0),
        (1, 1.0, 0.0, 2.0, 5.0),
        (2, 2.0, 0.0, 3.0, 5.0),
        (3, 9.9, 0.0, 9.0, 5.0),  # out of range
    ]
    cands = aswarm.neighborhood(0, swarm)
    assert [c[0] for c in cands] == [1, 2]
    probs = aswarm.inclusion_probabilities(1.0, cands)
    assert probs == pytest.approx([1 / 3, 2 / 3])
    with pytest.raises(aswarm.EmptyNeighborhoodError):
        aswarm.inclusion_probabilities(1.0, [])


def test_select_communication_domain_trims():
    p = aswarm.GsoParams(r_s=100.0, s=2)
    peers = [(i, float(i), 0.0, float(i)) for i in range(1, 6)]
    members, (g, r_d) = aswarm.select_communication_domain(
        0, (0.0, 0.0), 0.0, 50.0, 0.0, peers, p
    )
    assert members == [4, 5]
    assert g == 0.0
    assert 0.0 <= r_d <= p.r_s


def test_merge_and_classify():
    merged = aswarm.merge_behavior_data(
        [(1, 9, 1.0, 0.9), (2, 9, 1.0, 0.3)], {1: 1.0, 2: 0.5}
    )
    resp, truth, weight = merged[9]
    assert truth == pytest.approx(0.7)
    assert weight == pytest.approx(1.5)

    assert aswarm.classify_threat(0.9, 0.9) == aswarm.ThreatLevel.Cooperative
    assert aswarm.classify_threat(0.9, 0.1) == aswarm.ThreatLevel.Noxious
    assert aswarm.classify_threat(0.1, 0.1) == aswarm.ThreatLevel.Malicious
    assert aswarm.classify_threat(0.1, 0.9) == aswarm.ThreatLevel.Suspicious
    assert aswarm.classify_threat(0.5, 0.5) == aswarm.ThreatLevel.Suspicious


def test_risk_and_alertness():
    risk = aswarm.assess_risk(
        [(1, aswarm.ThreatLevel.Noxious, 0.0, 0.0), (2, aswarm.ThreatLevel.Cooperative, 5.0, 0.0)],
        (0.0, 0.0),
        10.0,
    )
    assert risk == pytest.approx(1.0 / 1.5)
    assert aswarm.update_alertness(0.0) == aswarm.AlertnessLevel.Low
    assert aswarm.update_alertness(0.4) == aswarm.AlertnessLevel.Elevated
    assert aswarm.update_alertness(1.0) == aswarm.AlertnessLevel.High


def test_run_experiment_deterministic():
    cfg = aswarm.parse_config(
        """
world: {agents: 12, ticks: 20, seed: 9}
profiles:
  mix: {honest: 0.75, responsive_liar: 0.25}
"""
    )
    a = aswarm.run_experiment(cfg)
    b = aswarm.run_experiment(cfg)
    assert a == b
    assert len(a["per_tick"]) == 20
    assert a["summary"]["applicable"] is True
    assert a["agents_per_kind"]["honest"] == 9
    assert a["agents_per_kind"]["responsive_liar"] == 3
    total = sum(row["messages"] for row in a["per_tick"])
    assert total == a["summary"]["total_messages"]


def test_world_stepping():
    cfg = aswarm.parse_config("world: {agents: 6, ticks: 5, seed: 3}")
    w = aswarm.World.spawn(cfg)
    assert w.tick == 0
    m = w.step()
    assert w.tick == 1
    assert m["tick"] == 1
    agents = w.agents()
    assert len(agents) == 6
    assert all(a["risk"] >= 0.0 for a in agents)
    assert math.isfinite(agents[0]["luciferin"])


def test_bad_config_raises():
    with pytest.raises(aswarm.InvalidConfigError):
        aswarm.parse_config("gso: {rho: 1.2}")
    with pytest.raises(aswarm.ConfigParseError):
        aswarm.parse_config("world: [unclosed")
