# Tests of n-gram language models
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
import math


class LanguageModelTests(unittest.TestCase):

    def setUp(self):
        # <s> a b </s> and <s> a c </s>: 6 tokens, 4 word types
        self._lm = NGramLanguageModel(order=2, backoff=0.4)
        self._lm.addSentences([['a', 'b'], ['a', 'c']])

    def testCounts(self):
        '''Test the n-gram counts of a bigram model.'''
        counts = self._lm.counts()
        self.assertEqual(counts[('a',)], 2)
        self.assertEqual(counts[('<s>', 'a')], 2)
        self.assertEqual(counts[('a', 'b')], 1)
        self.assertEqual(counts[('c', '</s>')], 1)
        self.assertEqual(self._lm.total(), 6)
        self.assertEqual(self._lm.vocabularySize(), 4)

    def testSeen(self):
        '''Test the relative frequency of seen bigrams.'''
        self.assertAlmostEqual(self._lm.prob('a', ('<s>',)), 1.0)
        self.assertAlmostEqual(self._lm.prob('b', ('a',)), 0.5)

    def testBackoff(self):
        '''Test an unseen bigram backs off to the unigram estimate.'''
        self.assertAlmostEqual(self._lm.prob('c', ('b',)), 0.4 * 2 / 11)

    def testUnknownWord(self):
        '''Test an unknown word still has a non-zero score.'''
        self.assertAlmostEqual(self._lm.prob('z', ('a',)), 0.4 * 1 / 11)
        self.assertTrue(math.isfinite(self._lm.logProb('z', ('a',))))

    def testSentenceScore(self):
        '''Test the score of a whole sentence includes its end.'''
        self.assertAlmostEqual(self._lm.score(['a', 'b']), math.log(0.5))

    def testUnigramModel(self):
        '''Test a unigram model ignores its history.'''
        lm = NGramLanguageModel(order=1)
        lm.addSentence(['a', 'a', 'b'])
        self.assertEqual(lm.startState(), ())
        self.assertEqual(lm.advance((), 'a'), ())
        self.assertAlmostEqual(lm.prob('a', ('b',)), 3 / 8)

    def testHistory(self):
        '''Test histories keep the last order - 1 words.'''
        lm = NGramLanguageModel(order=3)
        h = lm.startState()
        self.assertEqual(h, ('<s>', '<s>'))
        h = lm.advance(lm.advance(h, 'x'), 'y')
        self.assertEqual(h, ('x', 'y'))

    def testMerge(self):
        '''Test merging models adds their counts.'''
        lm1 = NGramLanguageModel(order=2)
        lm1.addSentence(['a', 'b'])
        lm2 = NGramLanguageModel(order=2)
        lm2.addSentence(['a', 'c'])
        lm1.merge(lm2)
        self.assertEqual(lm1.counts(), self._lm.counts())
        self.assertEqual(lm1.total(), self._lm.total())
        self.assertEqual(lm1.vocabularySize(), self._lm.vocabularySize())

    def testMergeOrders(self):
        '''Test models of different orders can't be merged.'''
        with self.assertRaises(ValueError):
            self._lm.merge(NGramLanguageModel(order=3))

    def testSetCounts(self):
        '''Test replacing the counts recomputes the totals.'''
        lm = NGramLanguageModel(order=2, backoff=0.4)
        lm.setCounts(dict(self._lm.counts()))
        self.assertEqual(lm.total(), 6)
        self.assertAlmostEqual(lm.prob('c', ('b',)), self._lm.prob('c', ('b',)))

    def testBadParameters(self):
        '''Test bad orders and backoff factors are rejected.'''
        with self.assertRaises(ValueError):
            NGramLanguageModel(order=0)
        with self.assertRaises(ValueError):
            NGramLanguageModel(backoff=0.0)


if __name__ == '__main__':
    unittest.main()
