"""
Transpositions (reflections) of the George groups.

A transposition <(i j)> is the extension of the swap i <-> j under the symmetry
rules of its family. It is built by carrying the swap to every window position
and then validated as a group element; the per-family table in
`_transposable_by_table` is only a shortcut and has to agree with that.
"""
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

import logging
logger = logging.getLogger("george_cost.transpositions")

from .groups import _element, Window, evaluate_window, normalizer, same_symmetry_class, violations
from .models import (
    DomainError,
    Element,
    Family,
    GroupDescriptor,
    NotTransposableError,
    Transposition,
)


def _symmetries_taking(descriptor: GroupDescriptor, src: int, p: int) -> List[Tuple[int, int]]:
    """Symmetries g(x) = sign * x + shift of the family with g(src) = p."""
    family = descriptor.family
    if family is Family.A:
        return [(1, 0)] if src == p else []
    if family in (Family.B, Family.D):
        found = []
        if src == p:
            found.append((1, 0))
        if -src == p:
            found.append((-1, 0))
        return found
    period = descriptor.period
    found = []
    if (p - src) % period == 0:
        found.append((1, p - src))
    if family is not Family.AFF_A and (p + src) % period == 0:
        found.append((-1, p + src))
    return found


def swap_window(descriptor: GroupDescriptor, a: int, b: int) -> Optional[Window]:
    """
    Window of the symmetric extension of a <-> b, or None when the swap clashes
    with the symmetry rules (the two halves ask a position for different images).
    The result is not yet checked for membership.
    """
    window = []
    for p in range(1, descriptor.n + 1):
        images = set()
        for src, dst in ((a, b), (b, a)):
            for sign, shift in _symmetries_taking(descriptor, src, p):
                images.add(sign * dst + shift)
        if len(images) > 1:
            return None
        window.append(images.pop() if images else p)
    return tuple(window)


def _transposable_by_table(descriptor: GroupDescriptor, i: int, j: int) -> Optional[bool]:
    """Closed-form transposability where one is known; None defers to construction."""
    n = descriptor.n
    family = descriptor.family
    if i == j:
        return False
    if family is Family.A:
        return 1 <= i <= n and 1 <= j <= n
    if family in (Family.B, Family.D):
        if i == 0 or j == 0 or abs(i) > n or abs(j) > n:
            return False
        return family is Family.B or i != -j
    if family is Family.AFF_A:
        return (i - j) % n != 0
    if family is Family.AFF_C:
        period = descriptor.period
        fixed = i % (n + 1) == 0 or j % (n + 1) == 0
        return not fixed and (i - j) % period != 0
    return None


def _transposable_by_construction(descriptor: GroupDescriptor, i: int, j: int) -> bool:
    return _build(descriptor, i, j) is not None


def is_transposable(descriptor: GroupDescriptor, i: int, j: int) -> bool:
    """True iff some element of the group swaps i and j."""
    known = _transposable_by_table(descriptor, i, j)
    if known is not None:
        return known
    return _transposable_by_construction(descriptor, i, j)


def canonical_pair(descriptor: GroupDescriptor, a: int, b: int) -> Tuple[int, int]:
    """
    One name per reflection.

    The symmetry images of {a, b} with an entry in [1, n] are the two obtained
    by normalizing a or b; prefer the image whose lower entry is in [1, n], then
    the lexicographically smaller one.

    Raises:
        DomainError: If a or b lies in a fixed class of an affine signed family
    """
    n = descriptor.n
    candidates = []
    for entry in (a, b):
        sign, shift = normalizer(descriptor, entry)
        x, y = sign * a + shift, sign * b + shift
        candidates.append((min(x, y), max(x, y)))
    return min(candidates, key=lambda pair: (not 1 <= pair[0] <= n, pair))


def _displacement(window: Sequence[int]) -> int:
    return sum(abs(v - i) for i, v in enumerate(window, start=1))


@lru_cache(maxsize=None)
def _build(descriptor: GroupDescriptor, i: int, j: int) -> Optional[Transposition]:
    if i == j:
        return None
    window = swap_window(descriptor, i, j)
    if window is None or violations(descriptor, window):
        return None
    try:
        if evaluate_window(descriptor, window, i) != j:
            return None
    except DomainError:
        return None
    return Transposition(
        descriptor=descriptor,
        i=i,
        j=j,
        same_class=same_symmetry_class(descriptor, i, j),
        window=window,
        doubled_cost=_displacement(window),
    )


def try_make(descriptor: GroupDescriptor, i: int, j: int) -> Optional[Transposition]:
    """make() that answers None for an untransposable pair."""
    if i == j:
        return None
    try:
        pair = canonical_pair(descriptor, i, j)
    except DomainError:
        return None
    return _build(descriptor, *pair)


def make(descriptor: GroupDescriptor, i: int, j: int) -> Transposition:
    """
    The transposition <(i j)> in canonical form.

    Raises:
        NotTransposableError: If no element of the group swaps i and j
    """
    t = try_make(descriptor, i, j)
    if t is None:
        raise NotTransposableError(f"{{{i}, {j}}} is not transposable in {descriptor.label()}")
    return t


def as_element(t: Transposition) -> Element:
    return _element(t.descriptor, t.window)


def cost(t: Transposition):
    """Cost tvd(t)/2, as an exact Fraction."""
    return t.cost


def closed_form_doubled_cost(t: Transposition) -> int:
    """2|i - j| across classes, |i - j| within one class."""
    gap = abs(t.i - t.j)
    return gap if t.same_class else 2 * gap


def simple_generators(descriptor: GroupDescriptor) -> List[Transposition]:
    """
    The simple reflections, in Coxeter-diagram order.

    s_i = <(i i+1)>, s_0 = <(1 -1)>, s'_1 = <(1 -2)>, s'_n = <(n n+2)> and, for
    ~D, s''_n = <(n-1 n+2)>, which straddles n + 1 at distances 2 and 1.
    ~D_2 has a fourth simple reflection, <(1 -4)>, with window [-4, 7].
    """
    n = descriptor.n
    family = descriptor.family
    chain = [make(descriptor, i, i + 1) for i in range(1, n)]
    if family is Family.A:
        return chain
    if family is Family.B:
        return [make(descriptor, 1, -1)] + chain
    if family is Family.D:
        return [make(descriptor, 1, -2)] + chain
    if family is Family.AFF_A:
        return chain + [make(descriptor, n, n + 1)]
    if family is Family.AFF_C:
        return [make(descriptor, 1, -1)] + chain + [make(descriptor, n, n + 2)]
    if family is Family.AFF_B:
        return [make(descriptor, 1, -2)] + chain + [make(descriptor, n, n + 2)]
    generators = [make(descriptor, 1, -2)] + chain + [make(descriptor, n - 1, n + 2)]
    if n == 2:
        generators.append(make(descriptor, 1, -4))
    return generators


def _candidate_pairs(descriptor: GroupDescriptor, reach: int) -> Iterable[Tuple[int, int]]:
    """Pairs (r, b) with r in [1, n] covering every reflection moving r at most reach."""
    n = descriptor.n
    for r in range(1, n + 1):
        if descriptor.family is Family.A:
            others = range(r + 1, n + 1)
        elif not descriptor.is_affine:
            others = [b for b in range(-n, n + 1) if b not in (0, r)]
        else:
            others = [b for b in range(r - reach, r + reach + 1) if b != r]
        for b in others:
            if abs(b - r) <= reach:
                yield r, b


@lru_cache(maxsize=None)
def _bounded(descriptor: GroupDescriptor, doubled_budget: int) -> Tuple[Transposition, ...]:
    found = {}
    # a reflection within one class costs |i - j|/2, so its pair spans at most twice the budget
    for r, b in _candidate_pairs(descriptor, doubled_budget):
        t = try_make(descriptor, r, b)
        if t is not None and t.doubled_cost <= doubled_budget:
            found.setdefault(t.window, t)
    ordered = sorted(found.values(), key=lambda t: (t.doubled_cost, t.i, t.j))
    logger.debug("%d transpositions of %s cost at most %s", len(ordered), descriptor.label(), doubled_budget / 2)
    return tuple(ordered)


def transpositions_with_cost_at_most(descriptor: GroupDescriptor, budget) -> List[Transposition]:
    """
    Every transposition of the group with cost at most budget, each once,
    ordered by (cost, i, j).
    """
    doubled_budget = int(2 * budget)
    if doubled_budget < 0:
        return []
    return list(_bounded(descriptor, doubled_budget))


def all_transpositions(descriptor: GroupDescriptor) -> List[Transposition]:
    """Every reflection of a finite group (no reflection there costs more than 2n)."""
    if descriptor.is_affine:
        raise DomainError(f"{descriptor.label()} has infinitely many transpositions")
    return transpositions_with_cost_at_most(descriptor, 2 * descriptor.n)
