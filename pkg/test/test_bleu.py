# Tests of corpus BLEU
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
import sacrebleu


HYPS = ['a b c d e', 'a b x d', 'p q r s t u']
REFS = ['a b c d e', 'a b c d', 'p q r s t u v']


def split(lines):
    return [l.split() for l in lines]


class BleuTests(unittest.TestCase):

    def testCorpus(self):
        '''Test a small corpus with a mismatch and a short hypothesis.'''
        b = corpusBleu(split(HYPS), split(REFS))
        self.assertEqual(b.counts(), [14, 10, 7, 5])
        self.assertEqual(b.totals(), [15, 12, 9, 6])
        self.assertEqual((b.hypLength(), b.refLength()), (15, 16))
        self.assertAlmostEqual(b.brevityPenalty(), math.exp(1 - 16 / 15))
        self.assertAlmostEqual(b.brevityPenalty(), 0.935507, places=6)
        self.assertAlmostEqual(b.score(), 78.827815, places=4)

    def testPrintable(self):
        '''Test the printed form of a score.'''
        b = corpusBleu(split(HYPS), split(REFS))
        self.assertTrue(str(b).startswith('BLEU = 78.83'))
        d = b.asDict()
        self.assertAlmostEqual(d['bleu'], b.score())
        self.assertEqual(d['hyp_len'], 15)

    def testSmoothing(self):
        '''Test a sentence with no trigram matches under both smoothings.'''
        h = [['a', 'b', 'x', 'd']]
        r = [['a', 'b', 'c', 'd']]
        self.assertAlmostEqual(corpusBleu(h, r).score(), 35.3553390593, places=6)
        self.assertEqual(corpusBleu(h, r, BleuScore.NONE).score(), 0.0)

    def testFromStatistics(self):
        '''Test scoring from already-summed statistics.'''
        b = BleuScore.fromStatistics([14, 10, 7, 5], [15, 12, 9, 6], 15, 16)
        self.assertAlmostEqual(b.score(), 78.827815, places=4)
        self.assertEqual(b.counts(), [14, 10, 7, 5])
        with self.assertRaises(BleuException):
            BleuScore.fromStatistics([1, 0, 0, 0], [1, 0, 0, 0], 1, 1, 'add-one')

    def testIdentical(self):
        '''Test identical corpora score 100.'''
        b = corpusBleu(split(REFS), split(REFS))
        self.assertAlmostEqual(b.score(), 100.0)

    def testDisjoint(self):
        '''Test corpora with nothing in common score 0 without smoothing.'''
        b = corpusBleu(split(['a b c d']), split(['w x y z']), BleuScore.NONE)
        self.assertEqual(b.score(), 0.0)

    def testShort(self):
        '''Test a corpus too short for 4-grams scores 0.'''
        b = corpusBleu(split(['a b c']), split(['a b c']))
        self.assertEqual(b.score(), 0.0)

    def testEmptyHypothesis(self):
        '''Test an empty hypothesis contributes to the reference length only.'''
        b = corpusBleu([[]] + split(REFS), [['a', 'b']] + split(REFS))
        self.assertEqual(b.refLength(), 18)
        self.assertLess(b.brevityPenalty(), 1.0)

    def testOrderInvariant(self):
        '''Test the score doesn't depend on the order of sentences.'''
        b1 = corpusBleu(split(HYPS), split(REFS))
        b2 = corpusBleu(split(HYPS[::-1]), split(REFS[::-1]))
        self.assertEqual(b1.score(), b2.score())

    def testErrors(self):
        '''Test mismatched and empty corpora are rejected.'''
        with self.assertRaises(BleuException):
            corpusBleu(split(HYPS), split(REFS[:2]))
        with self.assertRaises(BleuException):
            corpusBleu([], [])
        with self.assertRaises(BleuException):
            corpusBleu(split(HYPS), split(REFS), 'add-one')

    def testAgreesWithSacreBleu(self):
        '''Test the score agrees with sacrebleu on pre-tokenised text.'''
        hyps = HYPS + ['من به تو گفتم که دیگر نمی\u200cآیم']
        refs = REFS + ['من به تو گفتم که دیگه نمی\u200cآیم']
        theirs = sacrebleu.corpus_bleu(hyps, [refs], tokenize='none')
        ours = corpusBleu(split(hyps), split(refs))
        self.assertAlmostEqual(ours.score(), theirs.score, places=4)


if __name__ == '__main__':
    unittest.main()
