"""Desk-scale acceptance criteria.

Runs the complete verification suite once (window [-6,6], enlargement 2,
degree scan [-4,4]) and asserts every criterion; one pass/fail line is
printed per criterion.  All comparisons are exact in Q(q) (zero tolerance).
Run with `pytest -s tests/test_acceptance.py` to watch the lines appear.
"""

import pytest

from homlie.algebra import Window
from homlie.suite import AcceptanceSuite, SuiteConfig


@pytest.fixture(scope="module")
def suite_results():
    cfg = SuiteConfig(window=Window(-6, 6), delta=2, degree_range=(-4, 4))
    suite = AcceptanceSuite(cfg)
    results = {}
    for name in AcceptanceSuite.CRITERIA:
        res = getattr(suite, name)()
        print(res.line(), flush=True)
        results[name] = res
    return results


def _assert_criterion(results, name):
    res = results[name]
    assert res.passed, "\n".join([res.line()] + ["  " + d for d in res.details])


@pytest.mark.parametrize("name", AcceptanceSuite.CRITERIA)
def test_criterion(suite_results, name):
    _assert_criterion(suite_results, name)


def test_every_criterion_was_run(suite_results):
    assert len(suite_results) == 12
