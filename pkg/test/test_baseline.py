# Tests of the rule-based standardiser
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


class BaselineTests(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls._inverted = invertRuleSet(parseRuleFile())

    def testSentence(self):
        '''Test a sentence with several colloquial forms.'''
        self.assertEqual(ruleStandardize(['تهرون', 'رو', 'دیدم'], self._inverted), ['تهران', 'را', 'دیدم'])
        self.assertEqual(ruleStandardize(['تورو', 'دیدم'], self._inverted), ['تو', 'را', 'دیدم'])

    def testUnmatchedCopied(self):
        '''Test tokens no rule matches are copied.'''
        self.assertEqual(ruleStandardize(['سلام', 'دوست'], self._inverted), ['سلام', 'دوست'])
        self.assertEqual(ruleStandardize([], self._inverted), [])

    def testFirstListed(self):
        '''Test the first rule of an ambiguity group wins by default.'''
        self.assertEqual(ruleStandardize(['اونو'], self._inverted), ['آن', 'را'])
        policy = BaselinePolicy(BaselinePolicy.FIRST_LISTED)
        self.assertEqual(ruleStandardize(['اونو'], self._inverted, policy), ['آن', 'را'])

    def testMostFrequent(self):
        '''Test the reading with the most frequent rarest token wins.'''
        policy = BaselinePolicy(BaselinePolicy.MOST_FREQUENT, {'او': 10, 'را': 50, 'آن': 3})
        self.assertEqual(ruleStandardize(['اونو'], self._inverted, policy), ['او', 'را'])

    def testMostFrequentTie(self):
        '''Test ties go to the first listed reading.'''
        policy = BaselinePolicy(BaselinePolicy.MOST_FREQUENT, {'او': 5, 'را': 50, 'آن': 5})
        self.assertEqual(ruleStandardize(['اونو'], self._inverted, policy), ['آن', 'را'])

    def testIdentityWins(self):
        '''Test a colloquial token more frequent than any reading is kept.'''
        policy = BaselinePolicy(BaselinePolicy.MOST_FREQUENT, {'او': 10, 'را': 50, 'آن': 3, 'اونو': 100})
        self.assertEqual(ruleStandardize(['اونو'], self._inverted, policy), ['اونو'])

    def testAlreadyStandard(self):
        '''Test standard forms aren't undone.'''
        self.assertEqual(ruleStandardize(['گلها'], self._inverted), ['گلها'])
        self.assertEqual(ruleStandardize(['گلا'], self._inverted), ['گلها'])

    def testCopulaSuffix(self):
        '''Test an attached copula is split back off.'''
        self.assertEqual(ruleStandardize(['کمه'], self._inverted), ['کم', 'است'])

    def testRecovery(self):
        '''Test sentences broken by invertible rules at every site are recovered exactly.'''
        rs = parseRuleFile()
        invertible = RuleSet([r for r in rs.rules() if r.invertible()], rs.lexicon(), rs.sets())
        stds = [prepare(s) for s in ['تهران را دیدم', 'تو را دیدم', 'نان کم است',
                                     'او را دیدم', 'من به خانه آمدم', 'به تو گفتم']]
        policy = BaselinePolicy(BaselinePolicy.MOST_FREQUENT, frequencyTable(stds))
        cfg = GeneratorConfig(0.0)
        for (i, std) in enumerate(stds):
            pair = breakSentence(std, invertible, cfg, rngFor(cfg.seed(), i))
            self.assertNotEqual(pair.colloquial(), std)
            self.assertEqual(ruleStandardize(pair.colloquial(), self._inverted, policy), std)

    def testBadPolicy(self):
        '''Test inconsistent policies are rejected.'''
        with self.assertRaises(PolicyException):
            BaselinePolicy('random')
        with self.assertRaises(PolicyException):
            BaselinePolicy(BaselinePolicy.MOST_FREQUENT)

    def testFrequency(self):
        '''Test a reading is as frequent as its rarest token.'''
        policy = BaselinePolicy(BaselinePolicy.MOST_FREQUENT, {'a': 4, 'b': 2})
        self.assertEqual(policy.frequency(['a', 'b']), 2)
        self.assertEqual(policy.frequency(['a', 'z']), 0)
        self.assertEqual(BaselinePolicy(BaselinePolicy.FIRST_LISTED).frequency(['a']), 0)

    def testFrequencyTable(self):
        '''Test counting tokens from strings and lists.'''
        freqs = frequencyTable(['a b a', ['b', 'c']])
        self.assertEqual(dict(freqs), {'a': 2, 'b': 2, 'c': 1})


if __name__ == '__main__':
    unittest.main()
