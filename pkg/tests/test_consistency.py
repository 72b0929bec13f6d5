import json

import numpy as np
import pytest

from prefcone import (
    EpsilonSearchConfig,
    InvalidInstanceError,
    MaxIterExceededError,
    NotPointedError,
    PreferenceInstance,
    consistency_verdict,
    dual_hrep,
    epsilon_search,
    extract_linear_weights,
    generators,
    is_pointed_geometric,
    preference_cone,
    test_pointedness,
)
from _helpers import random_instance, synthetic_dm_instance


def test_pointed_fixture(pointed_instance):
    pointed, z_star, d = test_pointedness(pointed_instance, 0.0)
    assert pointed and z_star == pytest.approx(0.0, abs=1e-9)
    assert (d >= 1 - 1e-7).all()
    assert (generators(pointed_instance, 0.0) @ d >= 1 - 1e-7).all()


def test_halfplane_fixture_not_pointed(halfplane_instance):
    pointed, z_star, d = test_pointedness(halfplane_instance, 0.0)
    assert not pointed
    assert z_star == pytest.approx(2.0, abs=1e-9)
    assert d is None


def test_single_judgement_along_ones():
    inst = PreferenceInstance([[1.0, 1.0], [2.0, 2.0]], 0, [1])
    pointed, z_star, d = test_pointedness(inst, 0.0)
    assert pointed and z_star <= 1e-9
    assert (d >= 1 - 1e-9).all()


def test_epsilon_search_first_trial(pointed_instance):
    assert epsilon_search(pointed_instance) == pytest.approx(0.01)
    cfg = EpsilonSearchConfig(epsilon0=0.25, beta=0.5, max_iter=20)
    eps = epsilon_search(pointed_instance, cfg)
    assert test_pointedness(pointed_instance, eps).pointed


def test_epsilon_search_rejects_non_pointed(halfplane_instance):
    with pytest.raises(NotPointedError):
        epsilon_search(halfplane_instance)


def test_epsilon_search_huge_start_terminates(pointed_instance):
    cfg = EpsilonSearchConfig(epsilon0=1e6, beta=0.5, max_iter=60)
    try:
        eps = epsilon_search(pointed_instance, cfg)
    except MaxIterExceededError:
        return  # permitted by the contract
    assert eps > 0
    assert test_pointedness(pointed_instance, eps).pointed


def test_epsilon_monotone_in_pointedness():
    rng = np.random.default_rng(23)
    checked = 0
    while checked < 25:
        inst = random_instance(rng)
        if not test_pointedness(inst, 0.0).pointed:
            continue
        checked += 1
        eps_grid = [0.0, 1e-4, 1e-3, 1e-2, 0.1, 0.5]
        flags = [test_pointedness(inst, e).pointed for e in eps_grid]
        # once pointedness is lost at some epsilon it never comes back smaller
        for small, big in zip(flags, flags[1:]):
            assert small or not big


def test_config_validation():
    with pytest.raises(ValueError):
        EpsilonSearchConfig(epsilon0=0.0)
    with pytest.raises(ValueError):
        EpsilonSearchConfig(beta=1.0)
    with pytest.raises(ValueError):
        EpsilonSearchConfig(max_iter=0)


def test_extract_weights(pointed_instance, halfplane_instance):
    d = extract_linear_weights(pointed_instance)
    alts = pointed_instance.alternatives
    ref = pointed_instance.reference
    for j in pointed_instance.preferred_indices:
        assert alts[j] @ d > ref @ d
    with pytest.raises(NotPointedError):
        extract_linear_weights(halfplane_instance)


def test_verdict_pointed_fixture(pointed_instance):
    report = consistency_verdict(pointed_instance)
    assert report.pointed
    assert report.z_star == pytest.approx(0.0, abs=1e-9)
    assert report.weight_certificate is not None
    assert report.epsilon_bar == pytest.approx(0.01)
    assert report.facet_count == 2
    assert all(report.statements.values())
    assert "yes" in report.verdict_text


def test_verdict_halfplane_fixture(halfplane_instance):
    report = consistency_verdict(halfplane_instance)
    assert not report.pointed
    assert report.z_star == pytest.approx(2.0, abs=1e-9)
    assert report.weight_certificate is None and report.epsilon_bar is None
    assert report.facet_count == 1
    assert not any(report.statements.values())
    assert "inconsistent" in report.verdict_text


def test_verdict_whole_plane_fixture(whole_plane_instance):
    report = consistency_verdict(whole_plane_instance)
    assert not report.pointed
    assert report.facet_count == 0


def test_verdict_rejects_invalid_instance():
    inst = PreferenceInstance([[1.0], [2.0]], 0, [])
    with pytest.raises(InvalidInstanceError):
        consistency_verdict(inst)


def test_report_json_schema(pointed_instance):
    doc = json.loads(consistency_verdict(pointed_instance).to_json())
    assert set(doc) == {
        "pointed",
        "z_star",
        "weight_certificate",
        "epsilon_bar",
        "facet_count",
        "verdict_text",
        "equivalent_statements",
    }
    assert set(doc["equivalent_statements"]) == {
        "linear_function_exists",
        "quasiconcave_function_exists",
        "cone_pointed",
        "lp_optimum_zero",
    }
    # presence equivalence
    assert (doc["weight_certificate"] is not None) == doc["pointed"]
    assert (doc["epsilon_bar"] is not None) == doc["pointed"]


def test_lp_agrees_with_geometry_on_random_instances():
    rng = np.random.default_rng(101)
    seen_pointed = seen_not = 0
    for _ in range(200):
        inst = random_instance(rng)
        by_lp = test_pointedness(inst, 0.0).pointed
        by_geometry = is_pointed_geometric(dual_hrep(preference_cone(inst, 0.0)))
        assert by_lp == by_geometry
        seen_pointed += by_lp
        seen_not += not by_lp
    assert seen_pointed > 10 and seen_not > 10  # both kinds exercised


def test_certificate_soundness_random():
    rng = np.random.default_rng(37)
    for _ in range(60):
        inst = random_instance(rng)
        eps = float(rng.uniform(0.0, 0.05))
        pointed, _, d = test_pointedness(inst, eps)
        if pointed:
            assert (d >= 1 - 1e-7).all()
            assert (generators(inst, eps) @ d >= 1 - 1e-7).all()


def test_synthetic_dm_instances_test_consistent():
    rng = np.random.default_rng(59)
    for _ in range(25):
        inst = synthetic_dm_instance(rng)
        assert test_pointedness(inst, 0.0).pointed


def test_concurrent_verdicts_are_identical(pointed_instance):
    # all operations are pure functions of immutable inputs
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=8) as pool:
        reports = list(pool.map(lambda _: consistency_verdict(pointed_instance), range(16)))
    first = reports[0].to_json()
    assert all(r.to_json() == first for r in reports)


def test_verdict_scale_invariant():
    rng = np.random.default_rng(73)
    for _ in range(25):
        inst = random_instance(rng)
        base = test_pointedness(inst, 0.0).pointed
        for alpha in (0.5, 3.7):
            scaled = PreferenceInstance(
                inst.alternatives * alpha,
                inst.reference_index,
                inst.preferred_indices,
            )
            assert test_pointedness(scaled, 0.0).pointed == base
