import numpy as np
import pytest

from berkcrucial.selftest import CHECKS, random_map, random_point, run_check, run_suite


def test_random_instances():
    rng = np.random.default_rng(11)
    for _ in range(5):
        assert random_map(rng, 3).d >= 2
        assert random_point(rng, 3).is_type_ii


def test_suite_summary():
    summary = run_suite(seed=7, samples=2)
    assert summary["seed"] == 7
    assert set(summary["checks"]) == set(CHECKS)
    for counts in summary["checks"].values():
        assert sum(counts.values()) == 2
    assert summary["failures"] == []
    assert summary["passed"]


@pytest.mark.parametrize(
    "name, samples",
    [
        ("ordres", 200),
        ("degrees", 100),
        ("slopes", 100),
        ("measure", 25),
        ("branches", 50),
        ("laplacian", 50),
    ],
)
def test_invariants_on_random_instances(name, samples):
    counts, failures = run_check(name, np.random.default_rng(20240601), samples)
    assert failures == []
    assert counts["failed"] == 0
    assert counts["passed"] + counts["skipped"] == samples
    assert counts["passed"] > 0
