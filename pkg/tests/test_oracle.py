import pytest

from conftest import group
from george_cost.factorization import product
from george_cost.groups import enumerate_elements, enumerate_with_lengths, identity, make_element
from george_cost.models import BudgetExhaustedError, DomainError, Weight
from george_cost.oracle import inequality_chain, min_cost, verify_theorem, word_length
from george_cost.statistics import cost_formula, cycle_count, length, tvd
from george_cost.transpositions import as_element, make, simple_generators
from george_cost.utils import BUDGET_ENV_VAR, CONFIG


def test_min_cost_in_type_d():
    w = make_element(group("D", 2), [-1, -2])
    result = min_cost(w)
    assert result.doubled_optimum == 8
    assert result.optimum == 4
    assert product(w.descriptor, result.witness.factors) == w
    assert result.witness.doubled_cost == 8


def test_min_cost_of_the_identity():
    result = min_cost(identity(group("~C", 3)))
    assert result.doubled_optimum == 0
    assert result.witness.factors == []


@pytest.mark.parametrize("weight,expected", [(Weight.COST, 4), (Weight.UNIT, 4), (Weight.DEPTH, 4)])
def test_three_cycle_under_each_weight(weight, expected):
    result = min_cost(make_element(group("A", 3), [2, 3, 1]), weight)
    assert result.doubled_optimum == expected
    assert result.weight is weight


@pytest.mark.parametrize(
    "flag,n",
    [
        ("A", 3),
        ("B", 2),
        ("D", 3),
        ("A", 4),
        pytest.param("A", 5, marks=pytest.mark.slow),
        pytest.param("B", 4, marks=pytest.mark.slow),
        pytest.param("D", 4, marks=pytest.mark.slow),
    ],
)
def test_oracle_matches_the_formula_on_finite_groups(flag, n):
    for w in enumerate_elements(group(flag, n)):
        assert min_cost(w).doubled_optimum == 2 * cost_formula(w)


@pytest.mark.parametrize(
    "flag,n,bound",
    [
        ("~A", 2, 3),
        ("~C", 2, 3),
        ("~A", 3, 3),
        ("~C", 3, 3),
        pytest.param("~A", 2, 8, marks=pytest.mark.slow),
        pytest.param("~A", 3, 8, marks=pytest.mark.slow),
        pytest.param("~C", 2, 8, marks=pytest.mark.slow),
    ],
)
def test_oracle_matches_half_displacement_on_unbranched_affine_groups(flag, n, bound):
    for w in enumerate_elements(group(flag, n), bound):
        result = min_cost(w)
        assert result.doubled_optimum == tvd(w)
        assert result.frontier_cost is not None


@pytest.mark.parametrize("flag,n", [("B", 3), ("D", 3), ("~C", 2)])
def test_astar_expands_no_more_than_dijkstra(flag, n):
    for w in enumerate_elements(group(flag, n), 4):
        plain = min_cost(w)
        guided = min_cost(w, heuristic=True)
        assert guided.doubled_optimum == plain.doubled_optimum
        assert guided.heuristic
        assert guided.expanded_nodes <= plain.expanded_nodes


@pytest.mark.slow
@pytest.mark.parametrize(
    "flag,n,bound",
    [("A", 5, None), ("B", 4, None), ("~A", 2, 8), ("~A", 3, 8), ("~C", 2, 8)],
)
def test_astar_on_full_unbranched_sweeps(flag, n, bound):
    for w in enumerate_elements(group(flag, n), bound):
        plain = min_cost(w)
        guided = min_cost(w, heuristic=True)
        assert guided.doubled_optimum == plain.doubled_optimum == tvd(w)
        assert guided.expanded_nodes <= plain.expanded_nodes


def test_oracle_never_goes_below_half_displacement():
    for flag in ("~B", "~D"):
        for w in enumerate_elements(group(flag, 2), 3):
            assert min_cost(w, heuristic=True).doubled_optimum >= tvd(w)


def test_unit_weight_counts_transpositions():
    for t in simple_generators(group("~C", 2)):
        assert min_cost(as_element(t), Weight.UNIT).doubled_optimum == 2


def test_budget_too_small():
    with pytest.raises(BudgetExhaustedError) as e:
        min_cost(make_element(group("A", 3), [3, 2, 1]), budget=1)
    assert e.value.budget == 1


def test_budget_from_environment(monkeypatch):
    w = make_element(group("A", 3), [3, 2, 1])
    monkeypatch.setenv(BUDGET_ENV_VAR, "1")
    with pytest.raises(BudgetExhaustedError):
        min_cost(w)
    monkeypatch.setenv(BUDGET_ENV_VAR, "not-a-number")
    assert min_cost(w).doubled_optimum == 4


def test_expansion_guard(monkeypatch):
    monkeypatch.setitem(CONFIG["oracle"], "MAX_EXPANSIONS", 0)
    with pytest.raises(BudgetExhaustedError):
        min_cost(make_element(group("A", 3), [3, 2, 1]))


def test_budget_is_capped(monkeypatch):
    monkeypatch.setitem(CONFIG["oracle"], "HARD_CAP", 1)
    with pytest.raises(BudgetExhaustedError):
        min_cost(make_element(group("A", 3), [3, 2, 1]), budget=50)


def test_word_length():
    assert word_length(make_element(group("~A", 2), [0, 3])) == 1
    assert word_length(make_element(group("A", 3), [3, 2, 1])) == 3
    with pytest.raises(BudgetExhaustedError):
        word_length(make_element(group("A", 3), [3, 2, 1]), max_length=2)


def test_word_length_agrees_with_class_inversions():
    for w, _ in enumerate_with_lengths(group("~D", 3), 3):
        assert word_length(w) == length(w)

    assert length(make_element(group("~D", 2), [13, 2])) == 4
    for window in ([13, 2], [1, 14], [-11, 2], [1, -10]):
        w = make_element(group("~D", 2), window)
        assert word_length(w) == length(w)


@pytest.mark.asyncio
@pytest.mark.parametrize("flag,n,bound,tested", [("A", 3, None, 6), ("B", 2, None, 8), ("D", 3, None, 24)])
async def test_verify_theorem_on_finite_groups(flag, n, bound, tested):
    report = await verify_theorem(group(flag, n), bound=bound)
    assert report.tested == tested
    assert report.agree == tested
    assert report.disagree == 0
    assert report.inconclusive == 0
    assert report.max_deviation == 0
    assert len(report.rows) == tested


@pytest.mark.asyncio
async def test_verify_theorem_on_affine_groups_uses_a_length_bound():
    report = await verify_theorem(group("~C", 2), bound=3, heuristic=True)
    assert report.max_length == 3
    assert report.agree == report.tested > 0
    assert all(row.oracle == row.tvd // 2 for row in report.rows)


@pytest.mark.asyncio
async def test_verify_theorem_reports_exhausted_budgets():
    report = await verify_theorem(group("A", 3), budget=1)
    assert report.inconclusive > 0
    assert report.tested == 6


@pytest.mark.asyncio
async def test_verify_theorem_needs_a_proved_formula():
    with pytest.raises(DomainError):
        await verify_theorem(group("~B", 3), bound=2)


@pytest.mark.slow
@pytest.mark.asyncio
async def test_verify_theorem_with_worker_processes():
    report = await verify_theorem(group("B", 3), jobs=2, heuristic=True)
    assert report.tested == 48
    assert report.agree == 48


@pytest.mark.parametrize("window", [[3, 2, 1], [2, 3, 1], [1, 2, 3]])
def test_inequality_chain_in_symmetric_groups(window):
    report = inequality_chain(make_element(group("A", 3), window))
    assert report.chain_holds
    assert report.extended_chain_holds
    assert report.cost == report.half_tvd


def test_inequality_chain_in_type_d():
    report = inequality_chain(make_element(group("D", 2), [-1, -2]))
    assert report.chain_holds
    assert report.extended_chain_holds is None
    assert report.length == 4
    assert report.cost == 8


@pytest.mark.parametrize("flag", ["A", "B", "D"])
@pytest.mark.parametrize("n", [2, 3])
def test_inequality_chain_on_whole_finite_groups(flag, n):
    descriptor = group(flag, n)
    for w in enumerate_elements(descriptor):
        report = inequality_chain(w)
        assert report.chain_holds, report
        if descriptor.is_unbranched:
            assert report.extended_chain_holds, report


@pytest.mark.parametrize("n", [2, 3])
def test_branched_reflection_breaks_the_extended_chain(n):
    descriptor = group("D", n)
    report = inequality_chain(as_element(make(descriptor, 1, -2)))
    assert report.chain_holds
    assert report.extended_chain_holds is None
    assert (report.half_tvd, report.length) == (6, 2)
    assert report.half_tvd > report.length


def test_inequality_chain_in_affine_c():
    for w in enumerate_elements(group("~C", 2), 3):
        assert inequality_chain(w).chain_holds


@pytest.mark.parametrize("n", [4, pytest.param(5, marks=pytest.mark.slow)])
def test_reflection_length_in_symmetric_groups(n):
    descriptor = group("A", n)
    for w in enumerate_elements(descriptor):
        assert min_cost(w, Weight.UNIT).doubled_optimum == 2 * (descriptor.n - cycle_count(w))
