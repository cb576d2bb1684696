"""
George groups in window notation.

An element is stored only through its window [w(1), ..., w(n)]; values anywhere
else on the integers are recovered on demand from the symmetry rules of its
family:

- B, D: w(-i) = -w(i)
- ~A: w(i + n) = w(i) + n
- ~B, ~C, ~D: w(-i) = -w(i) and w(i + 2n + 2) = w(i) + 2n + 2
"""
import itertools
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import logging
logger = logging.getLogger("george_cost.groups")

from .models import (
    AFFINE_SIGNED_FAMILIES,
    DescriptorMismatchError,
    DomainError,
    Element,
    Family,
    GroupDescriptor,
    InvalidElementError,
    SymmetryClass,
)

Window = Tuple[int, ...]


def _element(descriptor: GroupDescriptor, window: Sequence[int]) -> Element:
    """Wrap a window already known to be valid."""
    return Element.model_construct(descriptor=descriptor, window=tuple(window))


def identity(descriptor: GroupDescriptor) -> Element:
    return _element(descriptor, range(1, descriptor.n + 1))


def in_domain(descriptor: GroupDescriptor, i: int) -> bool:
    n = descriptor.n
    if descriptor.family is Family.A:
        return 1 <= i <= n
    if descriptor.family in (Family.B, Family.D):
        return i != 0 and -n <= i <= n
    return True


def evaluate_window(descriptor: GroupDescriptor, window: Sequence[int], i: int) -> int:
    """w(i) for the element with the given window."""
    family = descriptor.family
    n = descriptor.n
    if family is Family.A:
        if not 1 <= i <= n:
            raise DomainError(f"position {i} outside [1, {n}]")
        return window[i - 1]
    if family in (Family.B, Family.D):
        if i == 0 or abs(i) > n:
            raise DomainError(f"position {i} outside +-[1, {n}]")
        return window[i - 1] if i > 0 else -window[-i - 1]
    if family is Family.AFF_A:
        q, r = divmod(i - 1, n)
        return window[r] + q * n
    period = 2 * n + 2
    q, r = divmod(i, period)
    if r == 0 or r == n + 1:
        return i
    if r <= n:
        return window[r - 1] + q * period
    # r = period - s with s in [1, n], and w(period - s) = period - w(s)
    return (q + 1) * period - window[period - r - 1]


def evaluate(w: Element, i: int) -> int:
    """
    Evaluate an element anywhere in its domain.

    Args:
        w: The element
        i: A position; finite families accept only [n] (A) or +-[n] (B, D)

    Returns:
        w(i)

    Raises:
        DomainError: If i lies outside the domain of a finite family
    """
    return evaluate_window(w.descriptor, w.window, i)


def normalizer(descriptor: GroupDescriptor, v: int) -> Tuple[int, int]:
    """
    A symmetry g(x) = sign * x + shift of the family with g(v) in [1, n].

    Raises:
        DomainError: For values in a fixed class k(n + 1) of the affine signed families
    """
    family = descriptor.family
    n = descriptor.n
    if family is Family.A:
        return 1, 0
    if family in (Family.B, Family.D):
        return (1, 0) if v > 0 else (-1, 0)
    if family is Family.AFF_A:
        return 1, -((v - 1) // n) * n
    period = 2 * n + 2
    r = v % period
    if 1 <= r <= n:
        return 1, r - v
    if n + 2 <= r <= 2 * n + 1:
        return -1, (period - r) + v
    raise DomainError(f"{v} lies in a fixed class of {descriptor.label()}")


def compose_windows(descriptor: GroupDescriptor, u: Sequence[int], w: Sequence[int]) -> Window:
    """Window of u o w, i.e. i -> u(w(i))."""
    return tuple(evaluate_window(descriptor, u, v) for v in w)


def inverse_window(descriptor: GroupDescriptor, window: Sequence[int]) -> Window:
    result = [0] * descriptor.n
    for i, v in enumerate(window, start=1):
        # w commutes with g, so w(g(i)) = g(v) and g(v) lies in the window
        sign, shift = normalizer(descriptor, v)
        result[sign * v + shift - 1] = sign * i + shift
    return tuple(result)


def compose(u: Element, w: Element) -> Element:
    """
    The product uw, acting as i -> u(w(i)).

    Raises:
        DescriptorMismatchError: If u and w live in different groups
    """
    if u.descriptor != w.descriptor:
        raise DescriptorMismatchError(f"cannot compose {u.descriptor.label()} with {w.descriptor.label()}")
    return _element(u.descriptor, compose_windows(u.descriptor, u.window, w.window))


def inverse(w: Element) -> Element:
    return _element(w.descriptor, inverse_window(w.descriptor, w.window))


def is_identity(w: Element) -> bool:
    return all(v == i for i, v in enumerate(w.window, start=1))


def sign_crossings(descriptor: GroupDescriptor, window: Sequence[int], mirror: int) -> int:
    """
    #{p > mirror : w(p) < mirror} for an affine signed permutation.

    The mirror is a multiple of n + 1. Each position p in one period above the
    mirror contributes the number of k >= 0 with w(p) + k(2n + 2) < mirror, so the
    count is a finite sum over a single period.
    """
    n = descriptor.n
    period = 2 * n + 2
    total = 0
    for p in range(mirror + 1, mirror + period):
        if p % (n + 1) == 0:
            continue
        v = evaluate_window(descriptor, window, p)
        if v < mirror:
            total += -((v - mirror) // period)
    return total


def violations(descriptor: GroupDescriptor, window: Sequence[Any]) -> List[str]:
    """Every membership condition the window fails; empty when it is valid."""
    n = descriptor.n
    family = descriptor.family
    problems: List[str] = []
    if len(window) != n:
        return [f"window has {len(window)} entries, expected {n}"]
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in window):
        return ["window entries must be integers"]

    if family is Family.A:
        if sorted(window) != list(range(1, n + 1)):
            problems.append(f"not a bijection: entries must be a permutation of 1..{n}")
        return problems

    if family in (Family.B, Family.D):
        if sorted(abs(v) for v in window) != list(range(1, n + 1)):
            problems.append(f"not a bijection: |entries| must be a permutation of 1..{n}")
        negatives = sum(1 for v in window if v < 0)
        if family is Family.D and negatives % 2:
            problems.append(f"parity: {negatives} negative entries, expected an even count")
        return problems

    if family is Family.AFF_A:
        if len({v % n for v in window}) != n:
            problems.append(f"not a bijection: residues mod {n} repeat")
        expected = n * (n + 1) // 2
        if sum(window) != expected:
            problems.append(f"sum of window is {sum(window)}, expected {expected}")
        return problems

    period = 2 * n + 2
    residues = [v % period for v in window] + [(-v) % period for v in window]
    if any(r == 0 or r == n + 1 for r in residues):
        problems.append(f"not a bijection: an entry lies in a fixed class k({n + 1})")
    elif len(set(residues)) != 2 * n:
        problems.append(f"not a bijection: residues of +-entries mod {period} repeat")
    if problems:
        return problems
    if family in (Family.AFF_B, Family.AFF_D):
        count = sign_crossings(descriptor, window, 0)
        if count % 2:
            problems.append(f"parity: #{{i > 0 : w(i) < 0}} = {count} is odd")
    if family is Family.AFF_D:
        count = sign_crossings(descriptor, window, n + 1)
        if count % 2:
            problems.append(f"parity: #{{i > {n + 1} : w(i) < {n + 1}}} = {count} is odd")
    return problems


def validate(descriptor: GroupDescriptor, window: Sequence[Any]) -> Union[Element, List[str]]:
    """
    Check a window against the membership conditions of its family.

    Returns:
        The validated Element, or the list of every violated condition
    """
    problems = violations(descriptor, window)
    if problems:
        logger.debug("Rejected %s in %s: %s", list(window), descriptor.label(), problems)
        return problems
    return _element(descriptor, window)


def make_element(descriptor: GroupDescriptor, window: Sequence[Any]) -> Element:
    """Like validate, but raises InvalidElementError on a bad window."""
    result = validate(descriptor, window)
    if isinstance(result, list):
        raise InvalidElementError(result)
    return result


def element_from_json(data: Dict[str, Any]) -> Element:
    """Read the {"family", "n", "window"} JSON shape of an element."""
    from .utils import make_descriptor

    descriptor = make_descriptor(data["family"], int(data["n"]))
    return make_element(descriptor, list(data["window"]))


def symmetry_class(descriptor: GroupDescriptor, i: int) -> SymmetryClass:
    """The symmetry class of position i, named by its canonical member."""
    if not in_domain(descriptor, i):
        raise DomainError(f"position {i} outside the domain of {descriptor.label()}")
    if descriptor.family in AFFINE_SIGNED_FAMILIES and i % (descriptor.n + 1) == 0:
        return SymmetryClass(descriptor=descriptor, representative=i, trivial=True)
    sign, shift = normalizer(descriptor, i)
    return SymmetryClass(descriptor=descriptor, representative=sign * i + shift)


def same_symmetry_class(descriptor: GroupDescriptor, i: int, j: int) -> bool:
    return symmetry_class(descriptor, i) == symmetry_class(descriptor, j)


def _finite_windows(descriptor: GroupDescriptor) -> Iterator[Window]:
    n = descriptor.n
    for perm in itertools.permutations(range(1, n + 1)):
        if descriptor.family is Family.A:
            yield perm
            continue
        for signs in itertools.product((1, -1), repeat=n):
            if descriptor.family is Family.D and signs.count(-1) % 2:
                continue
            yield tuple(s * v for s, v in zip(signs, perm))


def enumerate_with_lengths(descriptor: GroupDescriptor, max_length: int) -> Iterator[Tuple[Element, int]]:
    """
    Breadth-first closure of the identity under right multiplication by the
    simple generators, paired with Coxeter length, in nondecreasing length.
    """
    from .transpositions import simple_generators

    generators = [t.window for t in simple_generators(descriptor)]
    start = tuple(range(1, descriptor.n + 1))
    seen = {start}
    layer = [start]
    length = 0
    while layer:
        for window in layer:
            yield _element(descriptor, window), length
        if length == max_length:
            return
        next_layer = []
        for window in layer:
            for s in generators:
                child = compose_windows(descriptor, window, s)
                if child not in seen:
                    seen.add(child)
                    next_layer.append(child)
        layer = next_layer
        length += 1
    logger.debug("Enumerated the whole of %s at length %d", descriptor.label(), length - 1)


def enumerate_elements(descriptor: GroupDescriptor, max_length: Optional[int] = None) -> Iterator[Element]:
    """
    Stream the elements of a group.

    Args:
        descriptor: The group
        max_length: Coxeter length bound; None enumerates a finite group entirely

    Raises:
        DomainError: For an affine family without a length bound
    """
    if max_length is None:
        if descriptor.is_affine:
            raise DomainError(f"{descriptor.label()} is infinite; a max_length is required")
        for window in _finite_windows(descriptor):
            yield _element(descriptor, window)
        return
    if max_length < 0:
        raise DomainError("max_length must be nonnegative")
    for element, _ in enumerate_with_lengths(descriptor, max_length):
        yield element
