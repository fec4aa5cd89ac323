# Tests of the command-line interface
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
from mohavere.scripts.mohavere import run
import unittest
import os
import shutil
from tempfile import mkdtemp
from unittest.mock import patch
from click.testing import CliRunner


class CLITests(unittest.TestCase):

    def setUp(self):
        self._dir = mkdtemp()
        self._runner = CliRunner()

    def tearDown(self):
        shutil.rmtree(self._dir, ignore_errors=True)

    def file(self, name, lines=None):
        fn = os.path.join(self._dir, name)
        if lines is not None:
            with open(fn, 'w', encoding='utf-8') as fh:
                for l in lines:
                    fh.write(l + '\n')
        return fn

    def lines(self, fn):
        with open(fn, 'r', encoding='utf-8') as fh:
            return fh.read().split('\n')[:-1]

    def invoke(self, args):
        return self._runner.invoke(run, args, catch_exceptions=False)

    def testVersion(self):
        '''Test the version banner.'''
        result = self.invoke(['--version'])
        self.assertEqual(result.exit_code, 0)
        self.assertIn('mohavere 0.1.0', result.output)

    def testBleu(self):
        '''Test scoring identical files.'''
        fn = self.file('same.txt', ['a b c d e', 'p q r s'])
        result = self.invoke(['bleu', '--hyp', fn, '--ref', fn])
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.output.split('\n')[0], '100.0')

    def testBleuMismatch(self):
        '''Test files of different lengths fail cleanly.'''
        h = self.file('h.txt', ['a b c d e', 'p q r s'])
        r = self.file('r.txt', ['a b c d e'])
        result = self.invoke(['bleu', '--hyp', h, '--ref', r])
        self.assertEqual(result.exit_code, 1)
        self.assertIn('BleuException', result.output)

    def testUnknownOption(self):
        '''Test an unknown option is a usage error.'''
        result = self.invoke(['bleu', '--colour', 'blue'])
        self.assertEqual(result.exit_code, 2)

    def testNormalize(self):
        '''Test normalising a file.'''
        fn = self.file('in.txt', ['كتاب  علي'])
        out = self.file('out.txt')
        result = self.invoke(['normalize', '--in', fn, '--out', out])
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(self.lines(out), ['کتاب علی'])

    def testTokenize(self):
        '''Test tokenising from standard input.'''
        result = self._runner.invoke(run, ['tokenize'], input='سلام، خوبی؟\n')
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.output.split('\n')[0], 'سلام ، خوبی ؟')

    def testBreak(self):
        '''Test breaking with no skipped conversions.'''
        fn = self.file('std.txt', ['تو را دیدم', 'نان کم است'])
        out = self.file('col.txt')
        tr = self.file('col.trace')
        result = self.invoke(['break', '--in', fn, '--out', out, '--trace', tr, '--p', '0'])
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(self.lines(out), ['تورو دیدم', 'نون کمه'])
        self.assertEqual(self.lines(tr)[0], 'cm.to:0-2:0-1')

    def testBreakDeterministic(self):
        '''Test the same seed breaks text the same way.'''
        fn = self.file('std.txt', ['تو را در تهران دیدم که نان کم است'] * 20)
        outs = []
        for k in range(2):
            out = self.file(f'col{k}.txt')
            self.invoke(['break', '--in', fn, '--out', out, '--p', '0.5', '--seed', '3'])
            outs.append(self.lines(out))
        self.assertEqual(outs[0], outs[1])

    def testConfigFile(self):
        '''Test values are taken from a configuration file.'''
        cfg = self.file('run.conf', ['skip_probability=0'])
        fn = self.file('std.txt', ['تو را دیدم'])
        out = self.file('col.txt')
        result = self.invoke(['--config', cfg, 'break', '--in', fn, '--out', out])
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(self.lines(out), ['تورو دیدم'])

    def testBadConfigFile(self):
        '''Test a configuration with a bad value fails cleanly.'''
        cfg = self.file('run.conf', ['skip_probability=2'])
        fn = self.file('std.txt', ['تو را دیدم'])
        result = self.invoke(['--config', cfg, 'break', '--in', fn])
        self.assertEqual(result.exit_code, 1)
        self.assertIn('ConfigException', result.output)

    def testPipeline(self):
        '''Test generating a corpus, training on it, and standardising with the model.'''
        std = self.file('std.txt', ['تو را دیدم', 'نان کم است'] * 20)
        prefix = os.path.join(self._dir, 'corpus')
        model = os.path.join(self._dir, 'model.h5')
        result = self.invoke(['generate', '--in', std, '--prefix', prefix, '--p', '0'])
        self.assertEqual(result.exit_code, 0)
        self.assertIn('sentences=40', result.output)
        result = self.invoke(['train', '--corpus', prefix, '--model-file', model])
        self.assertEqual(result.exit_code, 0)
        self.assertTrue(os.path.exists(model))
        col = self.file('col.txt', ['تورو دیدم'])
        out = self.file('out.txt')
        result = self.invoke(['standardize', '--in', col, '--out', out, '--model-file', model])
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(self.lines(out), ['تو را دیدم'])

    def testStandardizeRules(self):
        '''Test standardising with the inverted rules.'''
        col = self.file('col.txt', ['تهرون رو دیدم'])
        out = self.file('out.txt')
        result = self.invoke(['standardize', '--system', 'rules', '--in', col, '--out', out])
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(self.lines(out), ['تهران را دیدم'])

    def testStandardizeRulesTrainingFrequencies(self):
        '''Test the rules resolve ambiguities by frequency in the model's training corpus.'''
        std = self.file('std.txt', ['او را دیدم'] * 20)
        prefix = os.path.join(self._dir, 'corpus')
        model = os.path.join(self._dir, 'model.h5')
        self.assertEqual(self.invoke(['generate', '--in', std, '--prefix', prefix, '--p', '0']).exit_code, 0)
        self.assertEqual(self.invoke(['train', '--corpus', prefix, '--model-file', model]).exit_code, 0)
        col = self.file('col.txt', ['اونو دیدم'])
        out = self.file('out.txt')
        result = self.invoke(['standardize', '--system', 'rules', '--model-file', model, '--in', col, '--out', out])
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(self.lines(out), ['او را دیدم'])

        # without a frequency corpus the first listed reading wins
        result = self.invoke(['standardize', '--system', 'rules', '--in', col, '--out', out])
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(self.lines(out), ['آن را دیدم'])

    def testStandardizeRulesFrequencyCorpus(self):
        '''Test an explicit frequency corpus.'''
        freqs = self.file('freqs.txt', ['او را دیدم'] * 3)
        col = self.file('col.txt', ['اونو دیدم'])
        out = self.file('out.txt')
        result = self.invoke(['standardize', '--system', 'rules', '--freq-corpus', freqs, '--in', col, '--out', out])
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(self.lines(out), ['او را دیدم'])

    def testEval(self):
        '''Test evaluating the no-edit system on a dataset file.'''
        data = self.file('data.tsv', ['source\tword_ref',
                                      'من امروز کتاب خریدم\tمن امروز کتاب خریدم',
                                      'او دیروز رفت خانه\tاو دیروز رفت خانه'])
        report = self.file('report.txt')
        result = self.invoke(['eval', '--data', data, '--system', 'identity', '--report', report])
        self.assertEqual(result.exit_code, 0)
        text = '\n'.join(self.lines(report))
        self.assertIn('bleu=100.0', text)
        self.assertIn('system=identity', text)

    def testEvalMissingData(self):
        '''Test a missing dataset fails cleanly.'''
        result = self.invoke(['eval', '--data', os.path.join(self._dir, 'nothing.tsv')])
        self.assertEqual(result.exit_code, 1)
        self.assertIn('DatasetException', result.output)

    def testEvalSystemFailure(self):
        '''Test a system failing while evaluating several systems fails the command.'''
        data = self.file('data.tsv', ['source\tword_ref',
                                      'من امروز کتاب خریدم\tمن امروز کتاب خریدم',
                                      'او دیروز رفت خانه\tاو دیروز رفت خانه'])
        report = self.file('report.txt')

        def broken(tokens):
            raise ValueError('broken')

        with patch('mohavere.scripts.mohavere.buildSystem', return_value=broken):
            result = self.invoke(['eval', '--data', data, '--system', 'identity,rules', '--report', report])
        self.assertEqual(result.exit_code, 1)
        self.assertIn('error: SystemFailureException: System failed on record 0', result.output)

    def testEvalModelNeedsFile(self):
        '''Test the model system can't be evaluated without a model.'''
        data = self.file('data.tsv', ['source\tword_ref', 'من امروز کتاب خریدم\tمن امروز کتاب خریدم'])
        result = self._runner.invoke(run, ['eval', '--data', data, '--system', 'model'])
        self.assertEqual(result.exit_code, 2)


if __name__ == '__main__':
    unittest.main()
