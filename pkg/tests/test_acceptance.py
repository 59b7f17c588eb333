"""One test per acceptance criterion; each prints its pass/fail line.

Tolerances are pinned here: time budgets per criterion and the stability
defaults (8 trials, 60 iterations, 1e-9 on the unit-direction distance).
"""

from __future__ import annotations

import inspect

import pytest

from tropclust import acceptance
from tropclust.dynamics import classify_stability

BUDGETS = {1: 1, 2: 10, 3: 5, 4: 10, 5: 120, 6: 600, 7: 300, 8: 60, 9: 900, 10: 60, 11: 300}

# The printed Gr(4,8) sequence repeats a block of four terms; see the ledger.
PRINTED_GR48 = "gr48 printed sequence differs"


def test_pinned_budgets():
    assert {num: budget for num, _, budget, _ in acceptance.CRITERIA} == BUDGETS


def test_pinned_stability_defaults():
    params = inspect.signature(classify_stability).parameters
    assert params["trials"].default == 8
    assert params["max_iter"].default == 60
    assert params["tol"].default == 1e-9


@pytest.mark.parametrize("number", [n for n in BUDGETS if n != 9])
def test_criterion(number, criterion):
    res = criterion(number)
    print(res.line())
    assert res.ok, res.failures[:5]
    assert res.seconds <= BUDGETS[number]


def test_criterion_9_computed(criterion):
    """Closed forms, Gr(3,9) printed terms, cones and figure labels."""
    res = criterion(9)
    print(res.line())
    other = [f for f in res.failures if not f.startswith(PRINTED_GR48)]
    assert not other, other[:5]
    assert res.seconds <= BUDGETS[9]


@pytest.mark.xfail(strict=True, reason="printed Gr(4,8) sequence disagrees with the closed form from r = 22")
def test_criterion_9_printed_gr48(criterion):
    res = criterion(9)
    assert not [f for f in res.failures if f.startswith(PRINTED_GR48)]
