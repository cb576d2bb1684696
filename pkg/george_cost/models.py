"""
Data models for the george_cost library.
"""
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


def exact_number(doubled: int) -> Any:
    """Render a doubled quantity exactly: an int when even, "k/2" otherwise."""
    if doubled % 2 == 0:
        return doubled // 2
    return f"{doubled}/2"


class GeorgeError(ValueError):
    """Base class for every error raised by george_cost."""


class InvalidElementError(GeorgeError):
    """A window that does not describe an element of its group."""

    def __init__(self, violations: List[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid element")


class DescriptorMismatchError(GeorgeError):
    """Operands belong to different groups."""


class DomainError(GeorgeError):
    """Input outside the domain of an operation (position, family or flavor)."""


class NotTransposableError(GeorgeError):
    """No element of the group swaps the two positions."""


class PeelError(GeorgeError):
    """A pair that does not satisfy w(x) >= y > x >= w(y)."""


class BudgetExhaustedError(RuntimeError):
    """The oracle stopped before reaching its target."""

    def __init__(self, message: str, budget: int, expanded_nodes: int):
        self.budget = budget
        self.expanded_nodes = expanded_nodes
        super().__init__(message)


class Family(str, Enum):
    """Families of George groups, valued by their command-line flag."""
    A = "A"
    B = "B"
    D = "D"
    AFF_A = "~A"
    AFF_B = "~B"
    AFF_C = "~C"
    AFF_D = "~D"


SIGNED_FAMILIES = frozenset({Family.B, Family.D, Family.AFF_B, Family.AFF_C, Family.AFF_D})
AFFINE_FAMILIES = frozenset({Family.AFF_A, Family.AFF_B, Family.AFF_C, Family.AFF_D})
UNBRANCHED_FAMILIES = frozenset({Family.A, Family.B, Family.AFF_A, Family.AFF_C})
AFFINE_SIGNED_FAMILIES = frozenset({Family.AFF_B, Family.AFF_C, Family.AFF_D})


class GroupDescriptor(BaseModel):
    """A George group of window size n."""
    model_config = ConfigDict(frozen=True)

    family: Family = Field(..., description="Family tag of the group")
    n: int = Field(..., ge=1, description="Window size")

    @model_validator(mode="after")
    def _check_rank(self) -> "GroupDescriptor":
        if self.family is not Family.A and self.family is not Family.B and self.n < 2:
            raise ValueError(f"family {self.family.value} requires window size n >= 2, got {self.n}")
        return self

    @property
    def is_affine(self) -> bool:
        return self.family in AFFINE_FAMILIES

    @property
    def is_signed(self) -> bool:
        return self.family in SIGNED_FAMILIES

    @property
    def is_unbranched(self) -> bool:
        return self.family in UNBRANCHED_FAMILIES

    @property
    def period(self) -> Optional[int]:
        """Translation period of the symmetry rules; None for finite families."""
        if self.family is Family.AFF_A:
            return self.n
        if self.family in AFFINE_SIGNED_FAMILIES:
            return 2 * self.n + 2
        return None

    def label(self) -> str:
        return f"{self.family.value}{self.n}"


class Element(BaseModel):
    """A group element given by its window [w(1), ..., w(n)]."""
    model_config = ConfigDict(frozen=True)

    descriptor: GroupDescriptor
    window: Tuple[int, ...]

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "family": self.descriptor.family.value,
            "n": self.descriptor.n,
            "window": list(self.window),
        }

    def __str__(self) -> str:
        return "[" + ",".join(str(v) for v in self.window) + "]"


class SymmetryClass(BaseModel):
    """An orbit of the integers under the symmetries of a group."""
    model_config = ConfigDict(frozen=True)

    descriptor: GroupDescriptor
    representative: int = Field(..., description="Canonical member of the class")
    trivial: bool = Field(default=False, description="True for the fixed classes {k(n+1)}")


class Transposition(BaseModel):
    """The reflection <(i j)> with canonical i < j."""
    model_config = ConfigDict(frozen=True)

    descriptor: GroupDescriptor
    i: int
    j: int
    same_class: bool
    window: Tuple[int, ...] = Field(..., description="Window of the reflection as a group element")
    doubled_cost: int = Field(..., ge=0, description="Twice the cost, i.e. the total displacement")

    @property
    def cost(self) -> Fraction:
        return Fraction(self.doubled_cost, 2)

    def to_json_dict(self) -> Dict[str, Any]:
        return {"family": self.descriptor.family.value, "n": self.descriptor.n, "i": self.i, "j": self.j}

    def __str__(self) -> str:
        return f"<({self.i} {self.j})>"


class Factorization(BaseModel):
    """An ordered product t_1 ... t_k of transpositions."""
    descriptor: GroupDescriptor
    factors: List[Transposition] = Field(default_factory=list)
    doubled_cost: int = Field(default=0, ge=0, description="Twice the summed cost of the factors")

    @property
    def total_cost(self) -> Fraction:
        return Fraction(self.doubled_cost, 2)

    def to_json_dict(self, optimal: Optional[bool] = None) -> Dict[str, Any]:
        return {
            "factors": [{"i": t.i, "j": t.j} for t in self.factors],
            "total_cost": exact_number(self.doubled_cost),
            "optimal": optimal,
        }


class BlockFlavor(str, Enum):
    A = "A"
    B = "B"
    D = "D"


class BlockDecomposition(BaseModel):
    """Maximal direct-sum decomposition of a finite (signed) permutation."""
    flavor: BlockFlavor
    blocks: List[Tuple[int, ...]] = Field(default_factory=list, description="Windows of the summands")

    @property
    def count(self) -> int:
        return len(self.blocks)


class AffineBlockData(BaseModel):
    """Good and very good values of an affine signed permutation."""
    good_values: List[int] = Field(default_factory=list)
    very_good_values: List[int] = Field(default_factory=list)
    bl_C: int = Field(..., ge=1)
    bl_B: int = Field(..., ge=1)


class StatisticsReport(BaseModel):
    """Every statistic of one element; None where a statistic does not apply."""
    tvd: int
    length: int
    neg: Optional[int] = None
    bl_A: Optional[int] = None
    bl_B: Optional[int] = None
    bl_D: Optional[int] = None
    bl_C_aff: Optional[int] = None
    bl_B_aff: Optional[int] = None
    cost_formula: Optional[int] = None
    conjectured: bool = False


class WitnessReport(BaseModel):
    """Outcome of checking a factorization against its target."""
    valid: bool
    total_cost: int = Field(..., description="Doubled total cost of the factors")
    formula: Optional[int] = Field(default=None, description="Doubled closed-form cost, when proved")
    optimal: Optional[bool] = None
    reasons: List[str] = Field(default_factory=list)


class Weight(str, Enum):
    """Weight put on a transposition by the oracle."""
    COST = "cost"
    DEPTH = "depth"
    UNIT = "unit"


class SearchResult(BaseModel):
    """Exact optimum of a weighted factorization search."""
    target: Element
    weight: Weight
    doubled_optimum: int = Field(..., ge=0)
    witness: Factorization
    expanded_nodes: int = 0
    budget_used: int = Field(..., description="Doubled weight budget the search ran under")
    heuristic: bool = False
    frontier_cost: Optional[int] = Field(default=None, description="Largest transposition cost offered to the search")

    @property
    def optimum(self) -> Fraction:
        return Fraction(self.doubled_optimum, 2)


class ChainReport(BaseModel):
    """The statistics of the chain reflen <= (reflen + l)/2 <= depth <= l, all doubled."""
    window: List[int]
    reflen: int
    length: int
    depth: int
    half_tvd: int
    cost: int
    chain_holds: bool
    extended_chain_holds: Optional[bool] = None


class SweepRow(BaseModel):
    """One element of a theorem sweep."""
    window: List[int]
    tvd: int
    formula: Optional[int] = None
    oracle: Optional[int] = None
    agree: Optional[bool] = None
    expanded_nodes: Optional[int] = None
    status: str = Field(default="agree", description="agree, disagree or inconclusive")
    witness: List[Tuple[int, int]] = Field(default_factory=list, description="Pairs of the oracle witness")


class SweepReport(BaseModel):
    """Result of checking the proved cost formula over many elements."""
    descriptor: GroupDescriptor
    max_length: Optional[int] = None
    heuristic: bool = False
    tested: int = 0
    agree: int = 0
    inconclusive: int = 0
    max_deviation: int = 0
    expanded_nodes: int = 0
    rows: List[SweepRow] = Field(default_factory=list)

    @property
    def disagree(self) -> int:
        return self.tested - self.agree - self.inconclusive


class ConjectureId(str, Enum):
    AFF_B_FORMULA = "AffB_formula"
    AFF_D_BOUNDS = "AffD_bounds"
    AFF_D_EQUALITY_CLASS = "AffD_equality_class"
    BOUNDED_GAP = "Bounded_gap"


class Counterexample(BaseModel):
    """An element on which a conjectured statement failed, with its replayable witness."""
    window: List[int]
    expected: Optional[int] = None
    observed: Optional[int] = None
    witness: List[Tuple[int, int]] = Field(default_factory=list)
    note: str = ""


class ConjectureReport(BaseModel):
    """Outcome of a conjecture sweep."""
    conjecture_id: ConjectureId
    descriptor: GroupDescriptor
    length_bound: Optional[int] = None
    tested: int = 0
    agree: int = 0
    counterexamples: List[Counterexample] = Field(default_factory=list)
    inconclusive: List[List[int]] = Field(default_factory=list)
    max_gap: Optional[int] = None
    equality_cases: List[List[int]] = Field(default_factory=list)
    degenerate_equalities: List[List[int]] = Field(default_factory=list)
    related: List["ConjectureReport"] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_counts(self) -> "ConjectureReport":
        if self.tested != self.agree + len(self.counterexamples):
            raise ValueError("tested must equal agree + counterexamples")
        return self
