import pytest

from conftest import group
from george_cost.conjectures import (
    check_affB_formula,
    check_affD_bounds,
    check_bounded_gap,
    conjecture_equality_candidates,
    equality_form_shift,
    is_conjectured_equality_form,
)
from george_cost.factorization import product
from george_cost.groups import enumerate_elements, identity, make_element
from george_cost.models import ConjectureId
from george_cost.transpositions import make
from george_cost.utils import CONFIG


def assert_counts(report, total):
    assert report.tested == report.agree + len(report.counterexamples)
    assert report.tested + len(report.inconclusive) == total


def swept(descriptor, bound):
    return sum(1 for _ in enumerate_elements(descriptor, bound))


def assert_replayable(report):
    for counterexample in report.counterexamples:
        descriptor = report.descriptor
        factors = [make(descriptor, i, j) for i, j in counterexample.witness]
        assert list(product(descriptor, factors).window) == counterexample.window


def test_equality_form_shift():
    assert equality_form_shift(make_element(group("~D", 2), [13, 2])) == 1
    assert equality_form_shift(make_element(group("~D", 2), [-11, 2])) == -1
    assert equality_form_shift(identity(group("~D", 2))) == 0
    assert equality_form_shift(make_element(group("~D", 2), [2, 1])) is None
    assert is_conjectured_equality_form(make_element(group("~D", 2), [1, 14]))
    assert not is_conjectured_equality_form(make_element(group("~D", 2), [2, 1]))


def test_equality_candidates():
    windows = [w.window for w in conjecture_equality_candidates(2, 1)]
    assert windows == [(-11, 2), (1, -10), (13, 2), (1, 14)]
    with_identity = conjecture_equality_candidates(2, 1, include_degenerate=True)
    assert with_identity[0].window == (1, 2)
    assert len(with_identity) == 5


@pytest.mark.asyncio
async def test_affine_b_formula_on_generators():
    report = await check_affB_formula(2, length_bound=1)
    assert report.conjecture_id is ConjectureId.AFF_B_FORMULA
    assert report.length_bound == 1
    assert report.tested == report.agree == 4
    assert report.counterexamples == []
    assert report.max_gap == 0


@pytest.mark.asyncio
async def test_affine_b_formula_sweep():
    report = await check_affB_formula(2, length_bound=3)
    assert_counts(report, swept(group("~B", 2), 3))
    assert_replayable(report)
    assert report.max_gap is not None and report.max_gap >= 0


@pytest.mark.asyncio
async def test_exhausted_searches_are_inconclusive(monkeypatch):
    monkeypatch.setitem(CONFIG["oracle"], "MAX_EXPANSIONS", 0)
    report = await check_affB_formula(2, length_bound=1)
    assert report.tested == 1
    assert len(report.inconclusive) == 3


@pytest.mark.asyncio
async def test_affine_d_bounds_on_generators():
    report = await check_affD_bounds(2, length_bound=1)
    assert report.conjecture_id is ConjectureId.AFF_D_BOUNDS
    assert report.tested == report.agree == 5
    assert report.max_gap == 0
    (equality,) = report.related
    assert equality.conjecture_id is ConjectureId.AFF_D_EQUALITY_CLASS
    assert equality.tested == equality.agree == 5
    assert equality.degenerate_equalities == [[1, 2]]
    assert equality.equality_cases == []


@pytest.mark.asyncio
async def test_affine_d_bounds_sweep():
    report = await check_affD_bounds(3, length_bound=2)
    assert_counts(report, swept(group("~D", 3), 2))
    assert_replayable(report)
    assert_counts(report.related[0], swept(group("~D", 3), 2))


@pytest.mark.slow
@pytest.mark.asyncio
async def test_affine_d_bounds_with_equality_candidates():
    report = await check_affD_bounds(2, length_bound=2, k_range=1)
    equality = report.related[0]
    assert_counts(equality, report.tested + len(report.inconclusive))
    assert_replayable(equality)


@pytest.mark.slow
@pytest.mark.asyncio
async def test_affine_b_formula_to_length_five():
    report = await check_affB_formula(2, length_bound=5)
    assert report.inconclusive == []
    assert_counts(report, swept(group("~B", 2), 5))
    assert_replayable(report)


@pytest.mark.slow
@pytest.mark.asyncio
async def test_affine_d_bounds_to_length_five():
    report = await check_affD_bounds(2, length_bound=5)
    assert report.inconclusive == []
    assert report.tested == swept(group("~D", 2), 5) == 61
    assert_replayable(report)
    equality = report.related[0]
    assert equality.inconclusive == []
    found = {tuple(window) for window in equality.equality_cases}
    assert {(13, 2), (1, 14), (-11, 2), (1, -10)} <= found


@pytest.mark.asyncio
async def test_bounded_gap_in_proved_families():
    report = await check_bounded_gap(group("A", 3))
    assert report.conjecture_id is ConjectureId.BOUNDED_GAP
    assert report.tested == report.agree == 6
    assert report.max_gap == 0

    report = await check_bounded_gap(group("D", 2))
    assert report.tested == report.agree == 4
    assert report.max_gap == 1


@pytest.mark.asyncio
async def test_bounded_gap_in_affine_b():
    report = await check_bounded_gap(group("~B", 2), length_bound=2)
    assert_counts(report, swept(group("~B", 2), 2))
    assert report.max_gap is not None
