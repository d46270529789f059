import concurrent.futures
from typing import Callable, List, Optional, Sequence, TypeVar

from .config import TorsionLabConfig
from .logging import log
from .progress import SweepProgressDisplay
from .types import ProgressCallback, ProgressType, SweepProgress

T = TypeVar("T")
R = TypeVar("R")


def run_sweep(func: Callable[[T], R], items: Sequence[T], description: str, *, jobs: Optional[int] = None,
              progress_type: Optional[ProgressType] = None,
              progress_callback: Optional[ProgressCallback] = None) -> List[R]:
    """
    Apply a function to every item of a sequence, sequentially or on a thread pool, and return the results in the
    order of the items. The first exception raised by the function is raised to the caller

    :param func: The function to apply
    :param items: The items to apply the function to
    :param description: A short description of the sweep, used for logging and progress
    :param jobs: The number of jobs to use, 1 job corresponds to no parallelism, zero or negative values will use the
                 system's default number of jobs. If None, the setting in torsionlab's config is used
    :param progress_type: The method to use for showing progress, if None will default to the setting in torsionlab's
                          config
    :param progress_callback: An additional callback to invoke when progress is made
    :return: The results, one per item
    """
    config = TorsionLabConfig.get()
    if jobs is None:
        jobs = config.jobs
    if progress_type is None:
        progress_type = config.progress_type

    callbacks: List[ProgressCallback] = []
    display = SweepProgressDisplay(description) if progress_type == ProgressType.Fancy else None
    if display is not None:
        callbacks.append(display)
    if progress_callback is not None:
        callbacks.append(progress_callback)

    def _report(state: SweepProgress, done: int) -> None:
        for callback in callbacks:
            callback(state, description, len(items), done)

    log.debug("Sweeping {} over {} items with {} job(s)".format(description, len(items), jobs))
    results: List[R] = []
    if display is not None:
        display.start()
    try:
        _report(SweepProgress.Started, 0)
        if jobs == 1:
            for item in items:
                results.append(func(item))
                _report(SweepProgress.InProgress, len(results))
        else:
            with concurrent.futures.ThreadPoolExecutor(max_workers=jobs if jobs > 0 else None) as executor:
                futures = [executor.submit(func, item) for item in items]
                for future in futures:
                    results.append(future.result())
                    _report(SweepProgress.InProgress, len(results))
        _report(SweepProgress.Done, len(results))
    finally:
        if display is not None:
            display.stop()
    return results


def first_failure(results: Sequence[Optional[R]]) -> Optional[R]:
    """
    :return: The first result that is not None, i.e. the first counterexample of a sweep, or None
    """
    return next((r for r in results if r is not None), None)
