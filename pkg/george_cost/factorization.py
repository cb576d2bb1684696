"""
Greedy minimum-cost factorization of elements of the unbranched George groups.

Each step finds a transposable pair with w(x) >= y > x >= w(y), peels the
transposition <(x y)> off the right of w and recurses on the shorter element.
Peeling removes exactly tvd(<(x y)>) from the total displacement, so the
factors cost tvd(w)/2 in total.
"""
from typing import Iterable, List, Tuple

import logging
logger = logging.getLogger("george_cost.factorization")

from .groups import compose, evaluate, identity, inverse, is_identity
from .models import (
    DescriptorMismatchError,
    DomainError,
    Element,
    Factorization,
    Family,
    GroupDescriptor,
    PeelError,
    Transposition,
    WitnessReport,
)
from .statistics import cost_formula, tvd
from .transpositions import as_element, make


def _peel_pair_ordered(w: Element, positions: List[int]) -> Tuple[int, int]:
    """Smallest non-fixed value, read over positions in increasing order."""
    moved = [p for p in positions if evaluate(w, p) != p]
    smallest = min(evaluate(w, p) for p in moved)
    y = evaluate(inverse(w), smallest)
    x = next(p for p in positions if evaluate(w, p) >= y)
    return x, y


def _peel_pair_affine(w: Element) -> Tuple[int, int]:
    period = w.descriptor.period
    for y in range(1, period + 1):
        if evaluate(w, y) >= y:
            continue
        z = y - 1
        while evaluate(w, z) == z:
            z -= 1
        if evaluate(w, z) > z:
            return z, y
    raise PeelError(f"no anti-exceedance of {w} follows an exceedance")


def find_peel_pair(w: Element) -> Tuple[int, int]:
    """
    A transposable pair (x, y) with w(x) >= y > x >= w(y).

    In S_n and S^B_n, y carries the smallest non-fixed value and x is the
    leftmost position whose value reaches y (over -n..-1, 1..n for S^B_n). In
    the affine families y is the first anti-exceedance in 1..period whose
    nearest non-fixed position below is an exceedance, and x is that position.

    Raises:
        DomainError: For a branched family
        PeelError: For the identity
    """
    descriptor = w.descriptor
    if not descriptor.is_unbranched:
        raise DomainError(f"{descriptor.label()} is branched; no peel pair is guaranteed")
    if is_identity(w):
        raise PeelError("the identity has no peel pair")
    n = descriptor.n
    if descriptor.family is Family.A:
        return _peel_pair_ordered(w, list(range(1, n + 1)))
    if descriptor.family is Family.B:
        return _peel_pair_ordered(w, list(range(-n, 0)) + list(range(1, n + 1)))
    return _peel_pair_affine(w)


def peel(w: Element, x: int, y: int) -> Tuple[Element, Transposition]:
    """
    Split w = v <(x y)>.

    Returns:
        (v, t) with t = <(x y)> and tvd(v) = tvd(w) - tvd(t)

    Raises:
        PeelError: If w(x) >= y > x >= w(y) fails
        NotTransposableError: If {x, y} is not transposable
    """
    wx, wy = evaluate(w, x), evaluate(w, y)
    if not wx >= y > x >= wy:
        raise PeelError(f"need w(x) >= y > x >= w(y), got w({x}) = {wx}, w({y}) = {wy}")
    t = make(w.descriptor, x, y)
    v = compose(w, as_element(t))
    if tvd(v) != tvd(w) - t.doubled_cost:
        raise PeelError(f"peeling {t} from {w} changed tvd from {tvd(w)} to {tvd(v)}")
    return v, t


def factor_unbranched(w: Element) -> Factorization:
    """
    Factor w into transpositions of total cost tvd(w)/2.

    Raises:
        DomainError: For a branched family
    """
    if not w.descriptor.is_unbranched:
        raise DomainError(f"{w.descriptor.label()} is branched; use the oracle for a witness")
    peeled: List[Transposition] = []
    v = w
    while not is_identity(v):
        x, y = find_peel_pair(v)
        v, t = peel(v, x, y)
        peeled.append(t)
    factors = peeled[::-1]
    logger.debug("Factored %s into %d transpositions", w, len(factors))
    return Factorization(
        descriptor=w.descriptor,
        factors=factors,
        doubled_cost=sum(t.doubled_cost for t in factors),
    )


def product(descriptor: GroupDescriptor, factors: Iterable[Transposition]) -> Element:
    """The product t_1 t_2 ... t_k, read left to right."""
    result = identity(descriptor)
    for t in factors:
        if t.descriptor != descriptor:
            raise DescriptorMismatchError(f"factor {t} belongs to {t.descriptor.label()}, not {descriptor.label()}")
        result = compose(result, as_element(t))
    return result


def verify_witness(w: Element, f: Factorization) -> WitnessReport:
    """
    Check that f multiplies to w and compare its cost with the proved formula.

    `optimal` is True or False when the formula applies, True when the cost
    meets the tvd/2 lower bound, and None otherwise. A product whose recorded
    costs fall below tvd/2 keeps `valid` but gets a reason and no verdict.
    """
    total = sum(t.doubled_cost for t in f.factors)
    reasons: List[str] = []
    if f.descriptor != w.descriptor or any(t.descriptor != w.descriptor for t in f.factors):
        reasons.append(f"witness belongs to {f.descriptor.label()}, target to {w.descriptor.label()}")
        return WitnessReport(valid=False, total_cost=total, reasons=reasons)
    if f.doubled_cost != total:
        reasons.append(f"recorded cost {f.doubled_cost / 2} differs from the summed cost {total / 2}")
    result = product(w.descriptor, f.factors)
    if result.window != w.window:
        reasons.append(f"product is {result}, expected {w}")

    formula = None
    try:
        formula = 2 * cost_formula(w)
    except DomainError:
        pass
    valid = not reasons
    optimal = None
    if valid:
        if total < tvd(w):
            reasons.append(f"witness costs {total / 2}, below the lower bound {tvd(w) / 2}")
        elif formula is not None:
            optimal = total == formula
        elif total == tvd(w):
            optimal = True
    return WitnessReport(valid=valid, total_cost=total, formula=formula, optimal=optimal, reasons=reasons)
