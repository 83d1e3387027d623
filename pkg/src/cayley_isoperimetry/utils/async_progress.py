import asyncio
import logging
from typing import Callable, List, Optional, Sequence, TypeVar

import tqdm

T = TypeVar("T")


async def run_blocking(
    jobs: Sequence[Callable[[], T]],
    desc: str,
    logger: logging.Logger,
    threads: int = 1,
    unit: str = "items",
    show_progress: bool = True,
) -> List[T]:
    """Run blocking callables on worker threads with a tqdm progress bar.

    At most ``threads`` callables run at once. Results come back in input
    order whatever the completion order, so callers see the same output for
    any thread count.

    Args:
        jobs: Zero-argument callables doing the heavy work
        desc: Description for the progress bar
        logger: Logger instance for error reporting
        threads: Worker cap (values below 1 count as 1)
        unit: Unit label for the progress bar
        show_progress: Disable to keep the bar out of captured output

    Returns:
        List of results in the same order as ``jobs``

    Raises:
        The first exception raised by any job, after all jobs have settled
    """
    semaphore = asyncio.Semaphore(max(1, threads))

    async def _guarded(job: Callable[[], T]) -> T:
        async with semaphore:
            return await asyncio.to_thread(job)

    tasks = [asyncio.create_task(_guarded(job)) for job in jobs]
    results: List[Optional[T]] = [None] * len(tasks)
    first_error: Optional[BaseException] = None

    with tqdm.tqdm(
        total=len(tasks), desc=desc, unit=unit, disable=not show_progress
    ) as pbar:
        for index, task in enumerate(tasks):
            try:
                results[index] = await task
            except Exception as e:
                logger.error(f"{desc}: item {index} failed: {e}")
                if first_error is None:
                    first_error = e
            finally:
                pbar.update(1)

    if first_error is not None:
        raise first_error
    return results  # type: ignore[return-value]
