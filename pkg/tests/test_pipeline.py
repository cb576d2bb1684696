import pytest

from george_cost.pipeline import run_batched


@pytest.mark.asyncio
@pytest.mark.parametrize("jobs", [1, 2])
async def test_results_keep_input_order(jobs):
    items = list(range(-20, 20))
    assert await run_batched(items, abs, jobs=jobs, batch_size=7) == [abs(i) for i in items]


@pytest.mark.asyncio
async def test_empty_input():
    assert await run_batched([], abs) == []


@pytest.mark.asyncio
async def test_worker_errors_propagate():
    with pytest.raises(TypeError):
        await run_batched([1, "x", 3], abs, batch_size=2)
