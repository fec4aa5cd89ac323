# Tests of parallel chunking
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

from mohavere.parallel import numberOfCores, chunked, runChunks
import unittest
from multiprocessing import cpu_count


def total(xs, offset):
    return sum(xs) + offset


class ParallelTests(unittest.TestCase):

    def testCores(self):
        '''Test the interpretation of job counts.'''
        self.assertEqual(numberOfCores(1), 1)
        self.assertEqual(numberOfCores(0), cpu_count())
        self.assertEqual(numberOfCores(cpu_count() + 10), cpu_count())
        self.assertEqual(numberOfCores(-cpu_count() - 5), 1)

    def testChunked(self):
        '''Test chunks are consecutive and cover the sequence.'''
        cs = chunked(list(range(25)), 10)
        self.assertEqual([len(c) for c in cs], [10, 10, 5])
        self.assertEqual(cs[2], [20, 21, 22, 23, 24])
        self.assertEqual(chunked([], 10), [])

    def testSequential(self):
        '''Test results come back in order.'''
        args = [(c, 0) for c in chunked(list(range(100)), 10)]
        self.assertEqual(runChunks(total, args), [sum(range(k, k + 10)) for k in range(0, 100, 10)])

    def testParallel(self):
        '''Test parallel results match sequential ones.'''
        args = [(c, k) for (k, c) in enumerate(chunked(list(range(100)), 7))]
        self.assertEqual(runChunks(total, args, jobs=2), runChunks(total, args, jobs=1))


if __name__ == '__main__':
    unittest.main()
