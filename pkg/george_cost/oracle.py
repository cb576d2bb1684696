"""
Ground truth by search on the weighted Cayley graph of transpositions.

States are windows; an edge right-multiplies by a transposition. Every weight
is doubled so the queue only ever holds integers:

- cost: tvd(t)
- depth: 1 + length(t)
- unit: 2
"""
import heapq
from functools import lru_cache, partial
from typing import Dict, List, Optional, Tuple

import logging
logger = logging.getLogger("george_cost.oracle")

from .groups import compose_windows, enumerate_elements, enumerate_with_lengths, inverse_window
from .models import (
    BudgetExhaustedError,
    ChainReport,
    DomainError,
    Element,
    Factorization,
    Family,
    GeorgeError,
    GroupDescriptor,
    SearchResult,
    SweepReport,
    SweepRow,
    Transposition,
    Weight,
)
from .pipeline import run_batched
from .statistics import cost_formula, length, tvd
from .transpositions import (
    all_transpositions,
    as_element,
    simple_generators,
    transpositions_with_cost_at_most,
)
from .utils import CONFIG, default_budget, half

Window = Tuple[int, ...]


@lru_cache(maxsize=None)
def _doubled_weight(t: Transposition, weight: Weight) -> int:
    if weight is Weight.COST:
        return t.doubled_cost
    if weight is Weight.DEPTH:
        return 1 + length(as_element(t))
    return 2


def _doubled_tvd(window: Window) -> int:
    return sum(abs(v - i) for i, v in enumerate(window, start=1))


def _automatic_budget(w: Element, weight: Weight) -> int:
    """Default budget in weight units, known to be at least the optimum."""
    if weight is not Weight.COST:
        # reflen <= depth <= length
        return length(w)
    if w.descriptor.is_unbranched:
        # the greedy factorization costs exactly tvd/2
        return tvd(w) // 2
    # a reduced word over the simple reflections is a factorization of w
    dearest = max((t.doubled_cost for t in simple_generators(w.descriptor)), default=0)
    return -(-dearest * length(w) // 2)


def _resolve_budget(w: Element, weight: Weight, budget: Optional[int]) -> int:
    if budget is None:
        budget = default_budget()
    if budget is None:
        budget = _automatic_budget(w, weight)
    cap = CONFIG["oracle"].get("HARD_CAP", 200)
    if budget > cap:
        logger.warning(f"Budget {budget} for {w} exceeds the hard cap; using {cap}")
        budget = cap
    return budget


def _pool(w: Element, weight: Weight, budget: int) -> Tuple[List[Transposition], Optional[int]]:
    """Transpositions offered to the search, cheapest first, and the cost frontier used."""
    descriptor = w.descriptor
    if not descriptor.is_affine:
        pool, frontier = all_transpositions(descriptor), None
    elif weight is Weight.COST:
        pool, frontier = transpositions_with_cost_at_most(descriptor, budget), budget
    else:
        frontier = max(CONFIG["oracle"].get("AFFINE_FRONTIER_COST", 6), tvd(w) // 2)
        pool = transpositions_with_cost_at_most(descriptor, frontier)
    return sorted(pool, key=lambda t: (_doubled_weight(t, weight), t.i, t.j)), frontier


def min_cost(
    w: Element,
    weight: Weight = Weight.COST,
    budget: Optional[int] = None,
    heuristic: bool = False,
) -> SearchResult:
    """
    Minimum total weight of a factorization of w into transpositions.

    Args:
        w: Target element
        weight: Weight of a transposition (cost, depth or unit)
        budget: Largest total weight explored, in weight units; defaults to
            GEORGE_COST_BUDGET, then to a bound known to cover the optimum
        heuristic: Use A* with tvd(u^-1 w) as the estimate (cost weight only)

    Returns:
        The optimum, a witness and the number of expanded nodes

    Raises:
        BudgetExhaustedError: If the target is not reached within the budget
            or within oracle.MAX_EXPANSIONS expansions
    """
    descriptor = w.descriptor
    budget = _resolve_budget(w, weight, budget)
    doubled_budget = 2 * budget
    pool, frontier = _pool(w, weight, budget)
    weights = [_doubled_weight(t, weight) for t in pool]
    use_heuristic = heuristic and weight is Weight.COST
    max_expansions = CONFIG["oracle"].get("MAX_EXPANSIONS", 500000)

    target = w.window

    def estimate(window: Window) -> int:
        if not use_heuristic:
            return 0
        return _doubled_tvd(compose_windows(descriptor, inverse_window(descriptor, window), target))

    start = tuple(range(1, descriptor.n + 1))
    dist: Dict[Window, int] = {start: 0}
    parents: Dict[Window, Tuple[Window, Transposition]] = {}
    closed = set()
    queue = [(estimate(start), start)]
    expanded = 0

    while queue:
        _, current = heapq.heappop(queue)
        if current in closed:
            continue
        closed.add(current)
        g = dist[current]
        if current == target:
            factors: List[Transposition] = []
            node = current
            while node in parents:
                node, t = parents[node]
                factors.append(t)
            factors.reverse()
            logger.debug(f"Optimum {g / 2} for {w} ({weight.value}) after {expanded} expansions")
            return SearchResult(
                target=w,
                weight=weight,
                doubled_optimum=g,
                witness=Factorization(
                    descriptor=descriptor,
                    factors=factors,
                    doubled_cost=sum(t.doubled_cost for t in factors),
                ),
                expanded_nodes=expanded,
                budget_used=doubled_budget,
                heuristic=use_heuristic,
                frontier_cost=frontier,
            )

        expanded += 1
        if expanded > max_expansions:
            raise BudgetExhaustedError(
                f"gave up on {w} after {max_expansions} expansions",
                budget=budget,
                expanded_nodes=expanded,
            )
        for t, step in zip(pool, weights):
            g_next = g + step
            if g_next > doubled_budget:
                break
            child = compose_windows(descriptor, current, t.window)
            if child in closed or g_next >= dist.get(child, doubled_budget + 1):
                continue
            f_next = g_next + estimate(child)
            if f_next > doubled_budget:
                continue
            dist[child] = g_next
            parents[child] = (current, t)
            heapq.heappush(queue, (f_next, child))

    raise BudgetExhaustedError(
        f"no factorization of {w} with {weight.value} weight at most {budget}",
        budget=budget,
        expanded_nodes=expanded,
    )


def word_length(w: Element, max_length: Optional[int] = None) -> int:
    """
    Breadth-first distance from the identity over the simple generators.

    Raises:
        BudgetExhaustedError: If w is not reached within max_length layers
    """
    max_length = max_length if max_length is not None else CONFIG["oracle"].get("MAX_WORD_LENGTH", 64)
    visited = 0
    for element, layer in enumerate_with_lengths(w.descriptor, max_length):
        visited += 1
        if element.window == w.window:
            return layer
    raise BudgetExhaustedError(f"{w} is not within {max_length} simple reflections", budget=max_length, expanded_nodes=visited)


def _verify_one(descriptor: GroupDescriptor, heuristic: bool, budget: Optional[int], window: Window) -> SweepRow:
    w = Element.model_construct(descriptor=descriptor, window=window)
    formula = cost_formula(w)
    try:
        result = min_cost(w, Weight.COST, budget=budget, heuristic=heuristic)
    except BudgetExhaustedError as e:
        logger.warning(f"Inconclusive on {w}: {e}")
        return SweepRow(window=list(window), tvd=tvd(w), formula=formula, expanded_nodes=e.expanded_nodes, status="inconclusive")
    observed = half(result.doubled_optimum)
    if 2 * observed < tvd(w):
        raise GeorgeError(f"oracle found cost {observed} for {w}, below tvd/2 = {tvd(w) // 2}")
    agree = observed == formula
    return SweepRow(
        window=list(window),
        tvd=tvd(w),
        formula=formula,
        oracle=observed,
        agree=agree,
        expanded_nodes=result.expanded_nodes,
        status="agree" if agree else "disagree",
        witness=[(t.i, t.j) for t in result.witness.factors],
    )


async def verify_theorem(
    descriptor: GroupDescriptor,
    bound: Optional[int] = None,
    jobs: int = 1,
    heuristic: bool = False,
    budget: Optional[int] = None,
) -> SweepReport:
    """
    Compare the oracle with the proved cost formula on every element.

    Args:
        descriptor: A family with a proved formula (A, B, D, ~A, ~C)
        bound: Length bound; required in spirit for affine families, where it
            defaults to sweeps.DEFAULT_MAX_LENGTH
        jobs: Worker processes
        heuristic: Search with A*
        budget: Oracle budget override

    Raises:
        DomainError: For ~B and ~D
    """
    if not (descriptor.is_unbranched or descriptor.family is Family.D):
        raise DomainError(f"no proved formula to verify in {descriptor.label()}")
    if bound is None and descriptor.is_affine:
        bound = CONFIG["sweeps"].get("DEFAULT_MAX_LENGTH", 6)

    windows = [w.window for w in enumerate_elements(descriptor, bound)]
    logger.info(f"Verifying the cost formula on {len(windows)} elements of {descriptor.label()}")
    rows = await run_batched(windows, partial(_verify_one, descriptor, heuristic, budget), jobs=jobs)

    report = SweepReport(descriptor=descriptor, max_length=bound, heuristic=heuristic, rows=rows)
    for row in rows:
        report.tested += 1
        report.expanded_nodes += row.expanded_nodes or 0
        if row.status == "inconclusive":
            report.inconclusive += 1
            continue
        if row.agree:
            report.agree += 1
        else:
            logger.warning(f"Formula {row.formula} disagrees with oracle {row.oracle} on {row.window}")
        report.max_deviation = max(report.max_deviation, abs(row.oracle - row.formula))
    logger.info(
        f"{descriptor.label()}: {report.agree}/{report.tested} agree, "
        f"{report.inconclusive} inconclusive, {report.expanded_nodes} expansions"
    )
    return report


def inequality_chain(w: Element) -> ChainReport:
    """
    reflen <= (reflen + length)/2 <= depth <= length, and for unbranched
    families depth <= tvd/2 = cost <= length. Every value is doubled.
    """
    reflen = min_cost(w, Weight.UNIT).doubled_optimum
    doubled_length = 2 * length(w)
    depth = min_cost(w, Weight.DEPTH).doubled_optimum
    cost = min_cost(w, Weight.COST).doubled_optimum
    half_tvd = tvd(w)
    chain = reflen <= (reflen + doubled_length) // 2 <= depth <= doubled_length
    extended = None
    if w.descriptor.is_unbranched:
        extended = depth <= half_tvd == cost <= doubled_length
    return ChainReport(
        window=list(w.window),
        reflen=reflen,
        length=doubled_length,
        depth=depth,
        half_tvd=half_tvd,
        cost=cost,
        chain_holds=chain,
        extended_chain_holds=extended,
    )
