# Local parallelism over chunks of work
#
# Copyright (C) 2026 The mohavere authors
#
# This file is part of mohavere, colloquial Persian standardisation.
#
# mohavere is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# mohavere is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with mohavere. If not, see <http://www.gnu.org/licenses/gpl.html>.

import logging
from joblib import Parallel, delayed
from multiprocessing import cpu_count
from mohavere import Logger
from typing import List, Any, Callable, Sequence, Tuple


logger = logging.getLogger(Logger)


#: Default number of items in a chunk of parallel work.
ChunkSize = 1000


def numberOfCores(jobs: int) -> int:
    '''Resolve a requested number of jobs into a number of cores:

    - a value of +n uses n cores, up to the number available;
    - a value of 0 uses all available cores; and
    - a value of -n uses (available - n) cores, with a minimum of 1.

    This differs slightly from ``joblib``'s own interpretation of ``n_jobs``.

    :param jobs: the requested number of jobs
    :returns: the number of cores to use'''
    if jobs == 0:
        return cpu_count()
    elif jobs < 0:
        return max(cpu_count() + jobs, 1)
    else:
        return min(jobs, cpu_count())


def chunked(xs: Sequence[Any], size: int = ChunkSize) -> List[Sequence[Any]]:
    '''Split a sequence into consecutive chunks.

    :param xs: the sequence
    :param size: the chunk size
    :returns: a list of chunks'''
    return [xs[i:i + size] for i in range(0, len(xs), size)]


def runChunks(fn: Callable[..., Any], chunks: List[Tuple[Any, ...]], jobs: int = 1) -> List[Any]:
    '''Apply a function to each tuple of arguments, in parallel if more
    than one core is requested. Results come back in the order of the
    arguments whatever the number of cores.

    :param fn: the function
    :param chunks: the argument tuples
    :param jobs: the requested number of jobs (default 1, sequential)
    :returns: the results'''
    cores = numberOfCores(jobs)
    if cores == 1 or len(chunks) <= 1:
        return [fn(*c) for c in chunks]
    logger.info(f'Running {len(chunks)} chunks on {cores} cores')
    with Parallel(n_jobs=cores) as processes:
        return processes(delayed(fn)(*c) for c in chunks)
