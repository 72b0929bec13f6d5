import numpy as np
import pytest

from prefcone import (
    FacetCone,
    NotPointedError,
    PreferenceInstance,
    ValueFunctionHandle,
    WholeSpaceError,
    epsilon_search,
    evaluate,
    evaluate_batch,
    make_linear,
    make_psi,
    make_vartheta,
)
from prefcone.oracle import check_properties

SQRT5 = np.sqrt(5.0)


@pytest.fixture(scope="module")
def psi(pointed_instance):
    return make_psi(pointed_instance)


@pytest.fixture(scope="module")
def vartheta(pointed_instance):
    return make_vartheta(pointed_instance, epsilon_search(pointed_instance))


def test_make_psi_fixture(psi):
    assert psi.kind == "psi"
    assert psi.gen_cone.epsilon == 0.0
    assert not psi.facet_cone.is_whole_space


def test_make_psi_whole_space_rejected(whole_plane_instance):
    with pytest.raises(WholeSpaceError):
        make_psi(whole_plane_instance)


def test_make_psi_single_judgement_above_reference():
    inst = PreferenceInstance([[0.0, 0.0], [1.0, 1.0]], 0, [1])
    handle = make_psi(inst)
    assert evaluate(handle, np.array([2.0, 2.0])) > 0


def test_make_psi_defined_for_non_pointed_halfplane(halfplane_instance):
    # the cone is a half-plane, not the whole space: the signed distance
    # stays available even though no strict/linear function exists
    handle = make_psi(halfplane_instance)
    ref = halfplane_instance.reference
    up = ref + np.array([2.0, 2.0])
    down = ref + np.array([-2.0, -2.0])
    assert evaluate(handle, up) == pytest.approx(4 / np.sqrt(2), abs=1e-8)
    assert evaluate(handle, down) == pytest.approx(-4 / np.sqrt(2), abs=1e-8)
    assert evaluate(handle, ref) == 0.0


def test_make_vartheta_requires_positive_epsilon(pointed_instance):
    with pytest.raises(ValueError):
        make_vartheta(pointed_instance, 0.0)


def test_make_vartheta_requires_pointedness(halfplane_instance):
    with pytest.raises(NotPointedError):
        make_vartheta(halfplane_instance, 0.01)


def test_make_vartheta_fixture(vartheta, pointed_instance):
    assert vartheta.kind == "vartheta"
    assert vartheta.gen_cone.epsilon > 0
    np.testing.assert_allclose(
        vartheta.judgement_points,
        pointed_instance.alternatives[list(pointed_instance.preferred_indices)],
        atol=1e-12,
    )


def test_psi_fixture_values(psi):
    assert evaluate(psi, np.array([3.0, 3.0])) == pytest.approx(2.0, abs=1e-9)
    assert evaluate(psi, np.array([2.0, 1.0])) == 0.0
    assert evaluate(psi, np.array([-2.0, -2.0])) == pytest.approx(-9 / SQRT5, abs=1e-8)


def test_psi_zero_at_reference_and_weak_separation(psi, pointed_instance):
    assert evaluate(psi, pointed_instance.reference) == 0.0
    for j in pointed_instance.preferred_indices:
        assert evaluate(psi, pointed_instance.alternatives[j]) >= 0.0


def test_vartheta_strict_separation(vartheta, pointed_instance):
    ref_val = evaluate(vartheta, pointed_instance.reference)
    assert ref_val == 0.0
    for j in pointed_instance.preferred_indices:
        assert evaluate(vartheta, pointed_instance.alternatives[j]) > ref_val + 1e-9


def test_linear_fixture(pointed_instance):
    handle = make_linear(pointed_instance)
    assert (handle.weights >= 1 - 1e-7).all()
    ref_val = evaluate(handle, pointed_instance.reference)
    for j in pointed_instance.preferred_indices:
        assert evaluate(handle, pointed_instance.alternatives[j]) > ref_val


def test_linear_known_weights_separate(pointed_instance):
    handle = ValueFunctionHandle(
        kind="linear",
        reference=pointed_instance.reference.copy(),
        weights=np.array([1.0, 4.0]),
    )
    assert evaluate(handle, np.array([0.0, 2.0])) == pytest.approx(8.0)
    assert evaluate(handle, pointed_instance.reference) == pytest.approx(5.0)


def test_linear_rejected_when_not_pointed(halfplane_instance):
    with pytest.raises(NotPointedError):
        make_linear(halfplane_instance)


def test_evaluate_dimension_checked(psi):
    with pytest.raises(ValueError):
        evaluate(psi, np.array([1.0, 2.0, 3.0]))


def test_evaluate_batch_matches_pointwise(psi, vartheta, pointed_instance):
    rng = np.random.default_rng(17)
    X = rng.uniform(-6, 6, size=(200, 2))
    for handle in (psi, vartheta, make_linear(pointed_instance)):
        batch = evaluate_batch(handle, X)
        single = np.array([evaluate(handle, x) for x in X])
        np.testing.assert_allclose(batch, single, atol=1e-12)


def test_check_properties_clean_on_fixture(psi):
    assert check_properties(psi, 1000, seed=42) == []


def test_check_properties_clean_on_vartheta(vartheta):
    assert check_properties(vartheta, 1000, seed=42) == []


def test_check_properties_flags_corrupted_handle(psi):
    normals = psi.facet_cone.facet_normals.copy()
    normals[0] = -normals[0]
    broken = ValueFunctionHandle(
        kind="psi",
        reference=psi.reference,
        gen_cone=psi.gen_cone,
        facet_cone=FacetCone(normals, False),
    )
    assert check_properties(broken, 1000, seed=42)


def test_check_properties_linear(pointed_instance):
    handle = make_linear(pointed_instance)
    points = pointed_instance.alternatives[list(pointed_instance.preferred_indices)]
    assert check_properties(handle, 1000, seed=42, judgement_points=points) == []
    # a weight vector that ranks the reference above a judgement must be flagged
    bad = ValueFunctionHandle(
        kind="linear",
        reference=pointed_instance.reference.copy(),
        weights=np.array([2.0, 0.1]),
    )
    assert check_properties(bad, 1000, seed=42, judgement_points=points)


def test_lipschitz_bound_on_fixture(psi):
    rng = np.random.default_rng(4)
    X = rng.uniform(-10, 10, size=(400, 2))
    Y = rng.uniform(-10, 10, size=(400, 2))
    fx = evaluate_batch(psi, X)
    fy = evaluate_batch(psi, Y)
    assert (np.abs(fx - fy) <= 2 * np.linalg.norm(X - Y, axis=1) + 1e-9).all()
