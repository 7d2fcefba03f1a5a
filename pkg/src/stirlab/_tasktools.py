"""
Task Tools (:mod:`~stirlab._tasktools`)
==========================================================================

Thread-based parallelisation tools.

.. autosummary::
    split_tasks
    map_segments

"""
from concurrent.futures import ThreadPoolExecutor

import numpy as np


def split_tasks(task_total, workers):
    """Split a run of tasks into contiguous segments, one per worker.

    Segment sizes differ by at most one and are non-decreasing; no
    segment is empty, so there are ``min(task_total, workers)`` of them.

    Parameters
    ----------
    task_total : int
        Total number of tasks.
    workers : int
        Maximum number of workers.

    Returns
    -------
    list of slice
        Index slices covering ``range(task_total)`` in order.

    Raises
    ------
    TypeError
        When `task_total` or `workers` is not an integer.
    ValueError
        When `task_total` or `workers` is not positive.

    """
    if not isinstance(task_total, (int, np.integer)) \
            or not isinstance(workers, (int, np.integer)):
        raise TypeError(
            "Both `task_total` and `workers` must be integers: "
            f"got {type(task_total)=} and {type(workers)=}."
        )
    if task_total <= 0 or workers <= 0:
        raise ValueError("Both `task_total` and `workers` must be positive.")

    nsegments = min(task_total, workers)
    sizes = np.full(nsegments, task_total // nsegments)
    sizes[nsegments - task_total % nsegments:] += 1

    breakpoints = np.insert(np.cumsum(sizes), 0, values=0)
    return [
        slice(int(start), int(stop))
        for start, stop in zip(breakpoints[:-1], breakpoints[1:])
    ]


def map_segments(func, tasks, workers=1):
    """Apply a function to contiguous segments of tasks on worker
    threads and concatenate the results in task order.

    Parameters
    ----------
    func : callable
        Function taking a list of tasks and returning a list of results.
    tasks : sequence
        Tasks.
    workers : int, optional
        Number of worker threads (default is 1, meaning no threads).

    Returns
    -------
    list
        Results in task order.

    """
    tasks = list(tasks)
    if workers <= 1 or len(tasks) <= 1:
        return list(func(tasks))

    segments = split_tasks(len(tasks), workers)
    with ThreadPoolExecutor(max_workers=len(segments)) as executor:
        futures = [
            executor.submit(func, tasks[segment]) for segment in segments
        ]
        results = []
        for future in futures:
            results.extend(future.result())

    return results
