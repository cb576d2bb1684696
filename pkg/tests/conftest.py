import os
import random
import sys

import pytest

# Add parent directory to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from george_cost.models import Family, GroupDescriptor
from george_cost.utils import CONFIG, BUDGET_ENV_VAR


def group(flag: str, n: int) -> GroupDescriptor:
    return GroupDescriptor(family=Family(flag), n=n)


@pytest.fixture
def rng():
    return random.Random(CONFIG["sweeps"]["RANDOM_SEED"])


@pytest.fixture(autouse=True)
def no_budget_override(monkeypatch):
    monkeypatch.delenv(BUDGET_ENV_VAR, raising=False)
