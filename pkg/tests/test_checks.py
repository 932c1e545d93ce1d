"""The seeded invariant suites themselves: determinism and coverage."""

import pytest

from dlscape import DomainError, build, run_suite
from dlscape.checks import SUITES


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_suites_pass_on_h_graph(suite):
    result = run_suite(suite, build("h_graph"), 36, 40, seed=7)
    assert result.ok, result.violations[:3]
    assert result.checked > 0


def test_suites_deterministic():
    space = build("line")
    a = run_suite("monotone", space, 30, 30, seed=3)
    b = run_suite("monotone", space, 30, 30, seed=3)
    assert a.to_json() == b.to_json()


def test_unknown_suite():
    with pytest.raises(DomainError):
        run_suite("nope", build("line"), 20, 10, seed=0)
