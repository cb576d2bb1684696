"""
Sweeps testing the open statements about ~B and ~D against the oracle.

Nothing unproved is asserted here: disagreements become counterexamples in
the report. The proved lower bound cost >= tvd/2 is asserted on every
element, and so is the gap bound in families where it is a theorem.
"""
from functools import partial
from typing import List, Optional, Tuple

import logging
logger = logging.getLogger("george_cost.conjectures")

from .groups import _element, enumerate_elements, identity, validate, violations
from .models import (
    BudgetExhaustedError,
    ConjectureId,
    ConjectureReport,
    Counterexample,
    Element,
    Family,
    GeorgeError,
    GroupDescriptor,
    SweepRow,
    Weight,
)
from .oracle import min_cost
from .pipeline import run_batched
from .statistics import cost_formula, cost_formula_affineB_conjectured, tvd
from .utils import CONFIG, half, make_descriptor

Window = Tuple[int, ...]


def _slack(descriptor: GroupDescriptor) -> int:
    return descriptor.n * CONFIG["conjectures"].get("BUDGET_SLACK_FACTOR", 1)


def _measure(w: Element, budget: Optional[int], expected: Optional[int] = None) -> SweepRow:
    """
    Oracle cost of w under budget, retried once with twice the budget.

    Raises:
        GeorgeError: If the oracle reports a cost below tvd/2
    """
    attempts = [budget] if budget is None else [budget, 2 * budget]
    result = None
    expanded = 0
    for attempt in attempts:
        try:
            result = min_cost(w, Weight.COST, budget=attempt, heuristic=True)
            break
        except BudgetExhaustedError as e:
            expanded += e.expanded_nodes
            logger.info(f"Budget {attempt} exhausted on {w}")
    if result is None:
        logger.warning(f"Inconclusive on {w} after budgets {attempts}")
        return SweepRow(window=list(w.window), tvd=tvd(w), formula=expected, expanded_nodes=expanded, status="inconclusive")

    observed = half(result.doubled_optimum)
    if 2 * observed < tvd(w):
        raise GeorgeError(f"oracle found cost {observed} for {w}, below tvd/2 = {tvd(w) // 2}")
    agree = expected is None or observed == expected
    return SweepRow(
        window=list(w.window),
        tvd=tvd(w),
        formula=expected,
        oracle=observed,
        agree=agree,
        expanded_nodes=expanded + result.expanded_nodes,
        status="agree" if agree else "disagree",
        witness=[(t.i, t.j) for t in result.witness.factors],
    )


def _counterexample(row: SweepRow, note: str) -> Counterexample:
    return Counterexample(
        window=row.window,
        expected=row.formula,
        observed=row.oracle,
        witness=row.witness,
        note=note,
    )


def _sweep_windows(descriptor: GroupDescriptor, length_bound: Optional[int]) -> Tuple[Optional[int], List[Window]]:
    if length_bound is None and descriptor.is_affine:
        length_bound = CONFIG["sweeps"].get("DEFAULT_MAX_LENGTH", 6)
    windows = []
    for w in enumerate_elements(descriptor, length_bound):
        problems = violations(descriptor, w.window)
        if problems:
            raise GeorgeError(f"enumeration produced {w}, which is not in {descriptor.label()}: {problems}")
        windows.append(w.window)
    logger.info(f"Sweeping {len(windows)} elements of {descriptor.label()} up to length {length_bound}")
    return length_bound, windows


def _affB_one(descriptor: GroupDescriptor, window: Window) -> SweepRow:
    w = _element(descriptor, window)
    conjectured = cost_formula_affineB_conjectured(w)
    return _measure(w, conjectured + _slack(descriptor), expected=conjectured)


async def check_affB_formula(n: int, length_bound: Optional[int] = None, jobs: int = 1) -> ConjectureReport:
    """
    Compare the oracle cost with tvd/2 + bl^C - bl^B on ~B_n up to length_bound.

    Elements whose search exhausts both budgets are listed as inconclusive
    and do not count as tested.
    """
    descriptor = make_descriptor(Family.AFF_B.value, n)
    length_bound, windows = _sweep_windows(descriptor, length_bound)
    rows = await run_batched(windows, partial(_affB_one, descriptor), jobs=jobs)

    report = ConjectureReport(conjecture_id=ConjectureId.AFF_B_FORMULA, descriptor=descriptor, length_bound=length_bound)
    gaps = []
    for row in rows:
        if row.status == "inconclusive":
            report.inconclusive.append(row.window)
            continue
        report.tested += 1
        gaps.append(row.oracle - row.tvd // 2)
        if row.agree:
            report.agree += 1
        else:
            logger.warning(f"Counterexample in {descriptor.label()}: {row.window} costs {row.oracle}, conjectured {row.formula}")
            report.counterexamples.append(_counterexample(row, "cost differs from tvd/2 + bl^C - bl^B"))
    report.max_gap = max(gaps, default=None)
    return report


def equality_form_shift(w: Element) -> Optional[int]:
    """
    k when w = [1, ..., i-1, i + 2k(2n+2), i+1, ..., n] for some i, else None.
    The identity gives 0.
    """
    n = w.descriptor.n
    moved = [(i, v) for i, v in enumerate(w.window, start=1) if v != i]
    if not moved:
        return 0
    if len(moved) > 1:
        return None
    i, v = moved[0]
    step = 2 * (2 * n + 2)
    if (v - i) % step:
        return None
    return (v - i) // step


def is_conjectured_equality_form(w: Element) -> bool:
    return equality_form_shift(w) is not None


def conjecture_equality_candidates(n: int, k_range: int, include_degenerate: bool = False) -> List[Element]:
    """
    Elements [1, ..., i + 2k(2n+2), ..., n] of ~D_n for i in [n] and
    0 < |k| <= k_range, ordered by (|k|, k, i). With include_degenerate the
    k = 0 case, the identity, comes first.
    """
    descriptor = make_descriptor(Family.AFF_D.value, n)
    candidates = [identity(descriptor)] if include_degenerate else []
    step = 2 * (2 * n + 2)
    for k in sorted(range(-k_range, k_range + 1), key=lambda k: (abs(k), k)):
        if k == 0:
            continue
        for i in range(1, n + 1):
            window = list(range(1, n + 1))
            window[i - 1] = i + k * step
            result = validate(descriptor, window)
            if isinstance(result, Element):
                candidates.append(result)
            else:
                logger.debug(f"Skipping {window}: {result}")
    return candidates


def _affD_one(descriptor: GroupDescriptor, window: Window) -> SweepRow:
    w = _element(descriptor, window)
    upper = tvd(w)
    row = _measure(w, upper + _slack(descriptor))
    row.formula = upper
    if row.status != "inconclusive":
        row.agree = row.oracle <= upper
        row.status = "agree" if row.agree else "disagree"
    return row


def _equality_report(descriptor: GroupDescriptor, length_bound: Optional[int], rows: List[SweepRow]) -> ConjectureReport:
    report = ConjectureReport(
        conjecture_id=ConjectureId.AFF_D_EQUALITY_CLASS,
        descriptor=descriptor,
        length_bound=length_bound,
    )
    for row in rows:
        if row.status == "inconclusive":
            report.inconclusive.append(row.window)
            continue
        report.tested += 1
        equal = row.oracle == row.tvd
        shift = equality_form_shift(_element(descriptor, row.window))
        if equal and shift == 0:
            report.degenerate_equalities.append(row.window)
        elif equal:
            report.equality_cases.append(row.window)
        if equal == (shift is not None):
            report.agree += 1
        elif equal:
            report.counterexamples.append(_counterexample(row, "cost equals tvd outside the conjectured family"))
        else:
            report.counterexamples.append(_counterexample(row, "conjectured family member with cost below tvd"))
    return report


async def check_affD_bounds(
    n: int,
    length_bound: Optional[int] = None,
    jobs: int = 1,
    k_range: Optional[int] = None,
) -> ConjectureReport:
    """
    Check tvd/2 <= cost <= tvd on ~D_n up to length_bound.

    The lower bound is a theorem and is asserted; upper bound violations are
    counterexamples. The equality classification comes back as the single
    related report; with k_range, the conjectured equality elements with
    0 < |k| <= k_range are costed too, even beyond the length bound.
    """
    descriptor = make_descriptor(Family.AFF_D.value, n)
    length_bound, windows = _sweep_windows(descriptor, length_bound)
    if k_range:
        known = set(windows)
        windows += [w.window for w in conjecture_equality_candidates(n, k_range) if w.window not in known]
    rows = await run_batched(windows, partial(_affD_one, descriptor), jobs=jobs)

    report = ConjectureReport(conjecture_id=ConjectureId.AFF_D_BOUNDS, descriptor=descriptor, length_bound=length_bound)
    gaps = []
    for row in rows:
        if row.status == "inconclusive":
            report.inconclusive.append(row.window)
            continue
        report.tested += 1
        gaps.append(row.oracle - row.tvd // 2)
        if row.agree:
            report.agree += 1
        else:
            logger.warning(f"Counterexample in {descriptor.label()}: {row.window} costs {row.oracle} > tvd = {row.tvd}")
            report.counterexamples.append(_counterexample(row, "cost exceeds tvd"))
    report.max_gap = max(gaps, default=None)
    report.related.append(_equality_report(descriptor, length_bound, rows))
    return report


def _gap_one(descriptor: GroupDescriptor, window: Window) -> SweepRow:
    w = _element(descriptor, window)
    if descriptor.family is Family.AFF_B:
        expected = cost_formula_affineB_conjectured(w)
        return _measure(w, expected + _slack(descriptor), expected=expected)
    if descriptor.family is Family.AFF_D:
        return _measure(w, tvd(w) + _slack(descriptor))
    return _measure(w, None, expected=cost_formula(w))


async def check_bounded_gap(descriptor: GroupDescriptor, length_bound: Optional[int] = None, jobs: int = 1) -> ConjectureReport:
    """
    Largest cost - tvd/2 over a sweep, checked against n.

    In finite and unbranched families the bound is a theorem and a violation
    raises GeorgeError; in ~B and ~D violations are only reported.
    """
    length_bound, windows = _sweep_windows(descriptor, length_bound)
    rows = await run_batched(windows, partial(_gap_one, descriptor), jobs=jobs)
    proved = descriptor.family not in (Family.AFF_B, Family.AFF_D)

    report = ConjectureReport(conjecture_id=ConjectureId.BOUNDED_GAP, descriptor=descriptor, length_bound=length_bound)
    for row in rows:
        if row.status == "inconclusive":
            report.inconclusive.append(row.window)
            continue
        report.tested += 1
        gap = row.oracle - row.tvd // 2
        report.max_gap = gap if report.max_gap is None else max(report.max_gap, gap)
        if gap <= descriptor.n:
            report.agree += 1
            continue
        if proved:
            raise GeorgeError(f"{row.window} in {descriptor.label()} has gap {gap} > {descriptor.n}")
        logger.warning(f"Gap {gap} > {descriptor.n} at {row.window} in {descriptor.label()}")
        report.counterexamples.append(_counterexample(row, f"gap {gap} exceeds n"))
    logger.info(f"{descriptor.label()}: max gap {report.max_gap} over {report.tested} elements")
    return report
