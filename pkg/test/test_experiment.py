# Tests of experiments
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

from mohavere import *
import unittest
from datetime import datetime


class SampleExperiment(Experiment):
    '''Adds its parameters, recording the protocol calls it sees.'''

    def __init__(self):
        super().__init__()
        self.calls = []

    def setUp(self, params):
        super().setUp(params)
        self.calls.append('setUp')

    def do(self, params):
        self.calls.append('do')
        return dict(total=params['a'] + params['b'])

    def tearDown(self):
        super().tearDown()
        self.calls.append('tearDown')


class FailingExperiment(SampleExperiment):
    '''Fails in the body of the run.'''

    def do(self, params):
        self.calls.append('do')
        raise ValueError('failed on purpose')


class ExperimentTests(unittest.TestCase):

    def testRun(self):
        '''Test a run returns parameters, results, and metadata.'''
        e = SampleExperiment()
        rc = e.set(dict(a=1, b=2)).run()
        self.assertEqual(rc[Experiment.PARAMETERS], dict(a=1, b=2))
        self.assertEqual(rc[Experiment.RESULTS], dict(total=3))
        self.assertEqual(e['total'], 3)
        self.assertEqual(e.calls, ['setUp', 'do', 'tearDown'])
        self.assertTrue(e.success())
        self.assertFalse(e.failed())

    def testMetadata(self):
        '''Test the standard metadata of a successful run.'''
        rc = SampleExperiment().set(dict(a=1, b=2)).run()
        meta = rc[Experiment.METADATA]
        for k in [Experiment.START_TIME, Experiment.END_TIME, Experiment.ELAPSED_TIME,
                  Experiment.SETUP_TIME, Experiment.EXPERIMENT_TIME, Experiment.TEARDOWN_TIME,
                  Experiment.STATUS, Experiment.EXPERIMENT]:
            self.assertIn(k, meta)
            self.assertIsInstance(meta[k], Experiment.StandardMetadataTypes[k])
        self.assertTrue(meta[Experiment.EXPERIMENT].endswith('SampleExperiment'))
        self.assertLessEqual(meta[Experiment.START_TIME], meta[Experiment.END_TIME])
        self.assertIsInstance(meta[Experiment.START_TIME], datetime)

    def testFailure(self):
        '''Test a failing run is recorded, and still torn down.'''
        e = FailingExperiment()
        rc = e.set(dict(a=1, b=2)).run()
        meta = rc[Experiment.METADATA]
        self.assertFalse(meta[Experiment.STATUS])
        self.assertIsInstance(meta[Experiment.EXCEPTION], ValueError)
        self.assertIn('failed on purpose', meta[Experiment.TRACEBACK])
        self.assertEqual(rc[Experiment.RESULTS], dict())
        self.assertEqual(e.calls, ['setUp', 'do', 'tearDown'])
        self.assertTrue(e.failed())

    def testFatal(self):
        '''Test a fatal run re-raises its exception.'''
        with self.assertRaises(ValueError):
            FailingExperiment().set(dict(a=1, b=2)).run(fatal=True)

    def testSetReplaces(self):
        '''Test setting parameters replaces the old ones.'''
        e = SampleExperiment()
        e.set(dict(a=1, b=2))
        e.set(dict(a=5, b=5))
        self.assertEqual(e.parameters(), dict(a=5, b=5))
        e.run()
        self.assertEqual(e['total'], 10)

    def testNoRun(self):
        '''Test an experiment that hasn't run has neither succeeded nor failed.'''
        e = SampleExperiment()
        self.assertFalse(e.success())
        self.assertFalse(e.failed())

    def testResultsDict(self):
        '''Test the empty results dict.'''
        rc = Experiment.resultsdict()
        self.assertEqual(set(rc.keys()), set([Experiment.PARAMETERS, Experiment.METADATA, Experiment.RESULTS]))
        self.assertEqual(len(Experiment.StandardMetadata), 10)


if __name__ == '__main__':
    unittest.main()
