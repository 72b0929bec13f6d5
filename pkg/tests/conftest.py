from pathlib import Path

import pytest
from hypothesis import settings

from prefcone import parse_instance

settings.register_profile("ci", derandomize=True)
settings.load_profile("ci")

DATA = Path(__file__).resolve().parent.parent / "data"

ACCEPTANCE_LABELS = {
    "test_c1_zero_optimum_with_certificate": (
        "criterion 1: pointed fixture LP optimum 0, certificate valid, witness (1,4) feasible, <10ms"
    ),
    "test_c2_positive_optimum_matches_oracle_and_exit_code": (
        "criterion 2: half-plane fixture LP optimum 2 (oracle-matched), verdict inconsistent, exit 1"
    ),
    "test_c3_signed_distance_values": (
        "criterion 3: signed-distance values 2 / 0 / -9/sqrt(5) on the pointed fixture"
    ),
    "test_c4_property_battery": (
        "criterion 4: zero sampled property violations over 100 random instances, <60s"
    ),
    "test_c5_equivalence_audit": (
        "criterion 5: four equivalent statements agree on every random instance"
    ),
    "test_c6_synthetic_dm_soundness": (
        "criterion 6: 50 linear-scorer instances all test consistent"
    ),
    "test_c7_epsilon_search_and_interiority": (
        "criterion 7: epsilon search terminates and judgements are interior to the shrunk cone"
    ),
    "test_c8_distance_engine_vs_oracles": (
        "criterion 8: projection distance within brute-force bound and analytic 2-d values"
    ),
}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    name = report.nodeid.split("::")[-1].split("[")[0]
    label = ACCEPTANCE_LABELS.get(name)
    if label:
        status = "PASS" if report.passed else "FAIL"
        print(f"\nACCEPTANCE [{status}] {label}", flush=True)


@pytest.fixture(scope="session")
def pointed_instance():
    return parse_instance((DATA / "pointed.json").read_text())


@pytest.fixture(scope="session")
def halfplane_instance():
    return parse_instance((DATA / "halfplane.json").read_text())


@pytest.fixture(scope="session")
def whole_plane_instance():
    return parse_instance((DATA / "whole_plane.json").read_text())


@pytest.fixture(scope="session")
def data_dir():
    return DATA
