"""
Utility functions for the george_cost library.
"""
import os
import re
from typing import Any, Dict, List, Optional

import yaml

import logging
logger = logging.getLogger("george_cost.utils")

from .models import DomainError, Family, GroupDescriptor

# Load configuration
config_path = os.path.join(os.path.dirname(os.path.abspath(__file__)), "config.yaml")
with open(config_path, "r") as f:
    CONFIG = yaml.safe_load(f)

BUDGET_ENV_VAR = "GEORGE_COST_BUDGET"
LOG_LEVEL_ENV_VAR = "GEORGE_COST_LOG_LEVEL"

_WINDOW_PATTERN = re.compile(r"^\s*\[\s*(-?\d+\s*(?:,\s*-?\d+\s*)*)\]\s*$")


def parse_window(text: str) -> List[int]:
    """
    Parse a window string such as "[-5, 6, 7]".

    Args:
        text: Comma-separated integers in square brackets; whitespace is allowed

    Returns:
        The list of integers

    Raises:
        DomainError: If the text does not follow the window grammar
    """
    match = _WINDOW_PATTERN.match(text)
    if not match:
        raise DomainError(f"not a window: {text!r}")
    return [int(part) for part in match.group(1).split(",")]


def format_window(window) -> str:
    """Format a window the way parse_window reads it."""
    return "[" + ",".join(str(v) for v in window) + "]"


def parse_family(flag: str) -> Family:
    """Map a family flag (A, B, D, ~A, ~B, ~C, ~D) to a Family."""
    try:
        return Family(flag.strip())
    except ValueError:
        raise DomainError(f"unknown family {flag!r}; expected one of {[f.value for f in Family]}")


def make_descriptor(flag: str, n: int) -> GroupDescriptor:
    """Build a validated descriptor from command-line style arguments."""
    family = parse_family(flag)
    try:
        return GroupDescriptor(family=family, n=n)
    except ValueError as e:
        raise DomainError(str(e)) from e


def default_budget() -> Optional[int]:
    """Oracle budget override from the environment, in cost units."""
    raw = os.environ.get(BUDGET_ENV_VAR)
    if not raw:
        return None
    try:
        budget = int(raw)
    except ValueError:
        logger.error("Ignoring %s=%r: not an integer", BUDGET_ENV_VAR, raw)
        return None
    if budget < 0:
        logger.error("Ignoring %s=%r: negative", BUDGET_ENV_VAR, raw)
        return None
    return budget


def log_level() -> str:
    """Log level from the environment, else from config."""
    return os.environ.get(LOG_LEVEL_ENV_VAR) or CONFIG["log"].get("LOG_LEVEL", "INFO")


def half(doubled: int) -> int:
    """Halve a doubled quantity that is known to be even."""
    if doubled % 2:
        raise DomainError(f"expected an even doubled value, got {doubled}")
    return doubled // 2


def sweep_summary(report: Any) -> Dict[str, Any]:
    """Summary block shared by the JSON and text renderings of a sweep."""
    return {
        "group": report.descriptor.label(),
        "max_length": report.max_length,
        "tested": report.tested,
        "agree": report.agree,
        "inconclusive": report.inconclusive,
        "max_deviation": report.max_deviation,
        "expanded_nodes": report.expanded_nodes,
    }
