import json

import pytest

import geoclust


def test_families_listed():
    names = geoclust.families()
    assert "whirl" in names and "random-convex" in names


def test_generate_and_recover_whirl():
    inst = geoclust.generate("whirl")
    assert inst.n == 130 and inst.k == 2
    result = geoclust.recover(inst)
    assert result["exact"]
    assert result["labels"] == inst.labels
    assert result["scq_used"] <= geoclust.query_budget(inst, ball_cap=64)


def test_check_reports_violations():
    assert geoclust.check(geoclust.generate("oort"))["ok"]
    verdict = geoclust.check(geoclust.generate("violate-margin"))
    assert not verdict["ok"]
    assert {v["property"] for v in verdict["violations"]} == {"metric-margin"}


def test_learn_radii_matches_min_radius():
    inst = geoclust.generate("radii-path", {"n": 64, "k": 2}, rng_seed=3)
    learned = geoclust.learn_radii(inst)
    assert learned["radii"] == [geoclust.min_radius(inst, i) for i in range(inst.k)]
    assert learned["radii"] == inst.radii


def test_multi_mode_and_seed_policy():
    inst = geoclust.generate("random-convex", {"n": 50, "k": 2, "two_scale": 1}, rng_seed=1)
    assert inst.generalized
    assert geoclust.recover(inst, mode="multi", seed_policy="adversarial-minmax")["exact"]
    assert geoclust.recover(inst, mode="learn-radii")["exact"]


def test_matches_truth():
    inst = geoclust.generate("caterpillar", {"n": 12})
    assert geoclust.matches_truth(inst, inst.labels, inst.k)
    assert not geoclust.matches_truth(inst, [0] * inst.n, 1)


def test_json_roundtrip(tmp_path):
    inst = geoclust.generate("random-convex", {"n": 30}, rng_seed=4)
    path = str(tmp_path / "inst.json")
    geoclust.save_instance(inst, path)
    back = geoclust.load_instance(path)
    assert back.to_json() == inst.to_json()
    assert geoclust.from_json(inst.to_json()).labels == inst.labels
    assert json.loads(inst.to_json())["n"] == 30


def test_errors_raise():
    with pytest.raises(geoclust.GeoclustError):
        geoclust.generate("no-such-family")
    with pytest.raises(geoclust.GeoclustError):
        geoclust.recover(geoclust.generate("oort"), mode="identical")


def test_pstar_complete_graph():
    inst = geoclust.generate("complete-random", {"n": 16})
    assert geoclust.pstar(inst, "1/2") == 16
