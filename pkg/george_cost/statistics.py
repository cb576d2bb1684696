"""
Per-element statistics: total displacement, class inversions and length,
negative count, blocks, affine good values, the closed-form costs and the
depth of transpositions.
"""
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

import logging
logger = logging.getLogger("george_cost.statistics")

from .groups import evaluate_window, in_domain, symmetry_class
from .models import (
    AFFINE_SIGNED_FAMILIES,
    AffineBlockData,
    BlockDecomposition,
    BlockFlavor,
    DomainError,
    Element,
    Family,
    StatisticsReport,
    Transposition,
)
from .transpositions import as_element, try_make


def tvd(w: Element) -> int:
    """Total displacement sum |w(i) - i| over the window; always even."""
    return sum(abs(v - i) for i, v in enumerate(w.window, start=1))


def tvd_over(w: Element, index_set: Iterable[int]) -> int:
    """
    Total displacement summed over any transversal of the nontrivial symmetry
    classes; equal to tvd(w) for every such choice.

    Raises:
        DomainError: If index_set is not a transversal
    """
    descriptor = w.descriptor
    positions = list(index_set)
    seen = set()
    for i in positions:
        if not in_domain(descriptor, i):
            raise DomainError(f"position {i} outside the domain of {descriptor.label()}")
        cls = symmetry_class(descriptor, i)
        if cls.trivial:
            raise DomainError(f"position {i} lies in a fixed class")
        if cls.representative in seen:
            raise DomainError(f"two positions of {positions} share the class of {cls.representative}")
        seen.add(cls.representative)
    if len(seen) != descriptor.n:
        raise DomainError(f"{positions} misses a symmetry class; expected {descriptor.n} positions")
    return sum(abs(evaluate_window(descriptor, w.window, i) - i) for i in positions)


def max_displacement(w: Element) -> int:
    return max((abs(v - i) for i, v in enumerate(w.window, start=1)), default=0)


def _inversion_candidates(w: Element) -> Iterable[Tuple[int, int]]:
    descriptor = w.descriptor
    n = descriptor.n
    if descriptor.family is Family.A:
        positions = list(range(1, n + 1))
        return ((a, b) for a in positions for b in positions if a < b)
    if not descriptor.is_affine:
        positions = [p for p in range(-n, n + 1) if p != 0]
        return ((a, b) for a in positions for b in positions if a < b)
    # w(a) > w(b) with a < b forces b - a < 2 * max displacement
    reach = 2 * max_displacement(w)
    return (
        (min(r, b), max(r, b))
        for r in range(1, n + 1)
        for b in range(r - reach + 1, r + reach)
        if b != r
    )


def class_inversions(w: Element) -> List[Transposition]:
    """
    The transpositions <(i j)> with some representative pair i < j inverted by
    w, each listed once, ordered by (i, j).
    """
    descriptor = w.descriptor
    found = {}
    for a, b in _inversion_candidates(w):
        if evaluate_window(descriptor, w.window, a) <= evaluate_window(descriptor, w.window, b):
            continue
        t = try_make(descriptor, a, b)
        if t is not None:
            found.setdefault(t.window, t)
    return sorted(found.values(), key=lambda t: (t.i, t.j))


def length(w: Element) -> int:
    """Coxeter length, the number of class inversions."""
    return len(class_inversions(w))


def neg(w: Element) -> int:
    """
    Number of negative window entries.

    Raises:
        DomainError: For an unsigned family
    """
    if not w.descriptor.is_signed:
        raise DomainError(f"neg is defined for signed families, not {w.descriptor.label()}")
    return sum(1 for v in w.window if v < 0)


def _block_windows(window: Sequence[int], cuts: List[int]) -> List[Tuple[int, ...]]:
    blocks = []
    start = 0
    for end in cuts:
        blocks.append(tuple(v - start if v > 0 else v + start for v in window[start:end]))
        start = end
    return blocks


def _type_b_cuts(window: Sequence[int]) -> List[int]:
    cuts = []
    largest = 0
    for k, v in enumerate(window, start=1):
        largest = max(largest, abs(v))
        if largest == k:
            cuts.append(k)
    return cuts


def blocks(w: Element, flavor: BlockFlavor) -> BlockDecomposition:
    """
    Maximal direct-sum decomposition of a finite element.

    Flavor A splits a permutation, flavor B a signed permutation, and flavor D
    keeps only the flavor-B cuts after which the negative count so far is
    even, so every summand is even-signed. Blocks are windows re-indexed from 1.

    Raises:
        DomainError: For an affine element, flavor A on a signed window, or
            flavor D on an odd-signed window
    """
    descriptor = w.descriptor
    window = w.window
    if descriptor.is_affine:
        raise DomainError(f"blocks are defined for finite families, not {descriptor.label()}")
    negatives = sum(1 for v in window if v < 0)
    if flavor is BlockFlavor.A and negatives:
        raise DomainError("flavor A needs an unsigned permutation")
    if flavor is BlockFlavor.D and negatives % 2:
        raise DomainError(f"flavor D needs an even-signed permutation, {list(window)} has {negatives} negatives")

    cuts = _type_b_cuts(window)
    if flavor is BlockFlavor.D:
        kept = []
        start = 0
        for cut in cuts:
            if sum(1 for v in window[start:cut] if v < 0) % 2 == 0:
                kept.append(cut)
                start = cut
        cuts = kept
    return BlockDecomposition(flavor=flavor, blocks=_block_windows(window, cuts))


def direct_sum(summands: Iterable[Sequence[int]]) -> Tuple[int, ...]:
    """Concatenate block windows, shifting each by the size of those before it."""
    result: List[int] = []
    for block in summands:
        offset = len(result)
        result.extend(v + offset if v > 0 else v - offset for v in block)
    return tuple(result)


def affine_block_data(w: Element) -> AffineBlockData:
    """
    Good values j in [n - 1], where w restricts to a bijection of +-[j], and
    very good values, where that restriction is even-signed.

    Raises:
        DomainError: Outside the affine signed families
    """
    descriptor = w.descriptor
    if descriptor.family not in AFFINE_SIGNED_FAMILIES:
        raise DomainError(f"affine block data needs ~B, ~C or ~D, not {descriptor.label()}")
    good: List[int] = []
    very_good: List[int] = []
    largest = 0
    negatives = 0
    for j, v in enumerate(w.window[:-1], start=1):
        largest = max(largest, abs(v))
        negatives += v < 0
        if largest == j:
            good.append(j)
            if negatives % 2 == 0:
                very_good.append(j)
    return AffineBlockData(
        good_values=good,
        very_good_values=very_good,
        bl_C=1 + len(good),
        bl_B=1 + len(very_good),
    )


def cost_formula(w: Element) -> int:
    """
    The proved closed-form cost: tvd/2 on unbranched families and
    tvd/2 + bl^B - bl^D on D.

    Raises:
        DomainError: For ~B and ~D, where only conjectures are known
    """
    family = w.descriptor.family
    if w.descriptor.is_unbranched:
        return tvd(w) // 2
    if family is Family.D:
        return tvd(w) // 2 + blocks(w, BlockFlavor.B).count - blocks(w, BlockFlavor.D).count
    raise DomainError(f"no proved cost formula for {w.descriptor.label()}")


def cost_formula_affineB_conjectured(w: Element) -> int:
    """Conjectured ~B cost tvd/2 + bl^C - bl^B."""
    if w.descriptor.family is not Family.AFF_B:
        raise DomainError(f"the conjectured formula is stated for ~B, not {w.descriptor.label()}")
    data = affine_block_data(w)
    return tvd(w) // 2 + data.bl_C - data.bl_B


def depth_of_transposition(t: Transposition) -> Fraction:
    """(1 + length(t)) / 2."""
    return Fraction(1 + length(as_element(t)), 2)


def cycle_count(w: Element) -> int:
    """Number of cycles of a permutation, fixed points included."""
    if w.descriptor.family is not Family.A:
        raise DomainError(f"cycle_count is defined for A, not {w.descriptor.label()}")
    seen = set()
    cycles = 0
    for start in range(1, w.descriptor.n + 1):
        if start in seen:
            continue
        cycles += 1
        i = start
        while i not in seen:
            seen.add(i)
            i = w.window[i - 1]
    return cycles


def statistics_report(w: Element) -> StatisticsReport:
    """Every statistic of w, with None where one does not apply."""
    family = w.descriptor.family
    report = StatisticsReport(tvd=tvd(w), length=length(w))
    if w.descriptor.is_signed:
        report.neg = neg(w)
    if family is Family.A:
        report.bl_A = blocks(w, BlockFlavor.A).count
    if not w.descriptor.is_affine:
        report.bl_B = blocks(w, BlockFlavor.B).count
    if family is Family.D:
        report.bl_D = blocks(w, BlockFlavor.D).count
    if family in AFFINE_SIGNED_FAMILIES:
        data = affine_block_data(w)
        report.bl_C_aff = data.bl_C
        report.bl_B_aff = data.bl_B
    if family is Family.AFF_B:
        report.cost_formula = cost_formula_affineB_conjectured(w)
        report.conjectured = True
    elif family is not Family.AFF_D:
        report.cost_formula = cost_formula(w)
    logger.debug("Statistics of %s in %s: %s", w, w.descriptor.label(), report)
    return report

