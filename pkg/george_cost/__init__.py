"""
george_cost: factorization costs in the classical and affine Weyl groups
realized as George groups of window size n.
"""
from .models import (
    BudgetExhaustedError,
    DomainError,
    Element,
    Family,
    GeorgeError,
    GroupDescriptor,
    InvalidElementError,
    NotTransposableError,
    PeelError,
    Transposition,
    Weight,
)
from .groups import compose, evaluate, identity, inverse, make_element, validate
from .transpositions import make, simple_generators
from .statistics import cost_formula, length, tvd
from .factorization import factor_unbranched, verify_witness
from .oracle import min_cost

__version__ = "0.1.0"
