"""
Batch runner shared by the sweeps.
"""
import asyncio
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Iterable, List, Optional

import logging
logger = logging.getLogger("george_cost.pipeline")

from .utils import CONFIG


async def _inline(worker: Callable[[Any], Any], item: Any) -> Any:
    return worker(item)


async def run_batched(
    items: Iterable[Any],
    worker: Callable[[Any], Any],
    jobs: int = 1,
    batch_size: Optional[int] = None,
) -> List[Any]:
    """
    Run worker over items in batches, keeping the input order.

    Args:
        items: Work items; they and the results must pickle when jobs > 1
        worker: A module-level callable (or functools.partial of one)
        jobs: Worker processes; 1 runs every item in this process
        batch_size: Items gathered at once; defaults to sweeps.BATCH_SIZE

    Returns:
        One result per item, in input order

    Raises:
        Exception: The first error raised by a worker, after its batch finishes
    """
    items = list(items)
    batch_size = batch_size or CONFIG["sweeps"].get("BATCH_SIZE", 32)
    loop = asyncio.get_running_loop()
    executor = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None

    results: List[Any] = []
    try:
        for i in range(0, len(items), batch_size):
            batch = items[i:i + batch_size]
            if executor is not None:
                batch_tasks = [loop.run_in_executor(executor, worker, item) for item in batch]
            else:
                batch_tasks = [_inline(worker, item) for item in batch]

            logger.debug(f"Executing batch of {len(batch_tasks)} items ({i + len(batch)}/{len(items)})")
            batch_responses = await asyncio.gather(*batch_tasks, return_exceptions=True)

            errors = [response for response in batch_responses if isinstance(response, BaseException)]
            for error in errors:
                logger.error(f"Worker failed: {error}")
            if errors:
                raise errors[0]
            results.extend(batch_responses)
    finally:
        if executor is not None:
            executor.shutdown()
    return results
