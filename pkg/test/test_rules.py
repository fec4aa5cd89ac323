# Tests of rewrite rules, rule files, and rule inversion
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
import os
from tempfile import NamedTemporaryFile


class RuleTests(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls._rules = parseRuleFile()

    def colloquial(self, std):
        (out, _) = applyRules(std, self._rules)
        return out

    # ---------- The shipped rules ----------

    def testShippedRules(self):
        '''Test the shipped rule file covers all the rule families.'''
        self.assertEqual(self._rules.path(), DefaultRuleFile)
        self.assertGreaterEqual(len(self._rules.categories()), 9)
        self.assertEqual(len(self._rules.digest()), 64)

    def testAnSuffix(self):
        '''Test the vowel change in the "an" ending.'''
        self.assertEqual(self.colloquial(['تهران']), ['تهرون'])
        self.assertEqual(self.colloquial(['نان']), ['نون'])

    def testCaseMarker(self):
        '''Test a pronoun and its object marker merge.'''
        self.assertEqual(self.colloquial(['تو', 'را']), ['تورو'])
        self.assertEqual(self.colloquial(['من', 'را']), ['منو'])

    def testCopulas(self):
        '''Test the copulas contract onto the word before.'''
        self.assertEqual(self.colloquial(['کم', 'است']), ['کمه'])
        self.assertEqual(self.colloquial(['کم', 'هستند']), ['کمند'])

    def testVerbs(self):
        '''Test verb forms and personal endings contract.'''
        self.assertEqual(self.colloquial(['می\u200cگویم']), ['می\u200cگم'])
        self.assertEqual(self.colloquial(['برود']), ['بره'])
        self.assertEqual(self.colloquial(['بروند']), ['برن'])
        self.assertEqual(self.colloquial(['بروم']), ['برم'])

    def testHaSuffix(self):
        '''Test the plural suffix contracts on nouns.'''
        self.assertEqual(self.colloquial(['گلها']), ['گلا'])

    def testAttachedPronouns(self):
        '''Test a preposition and pronoun merge.'''
        self.assertEqual(self.colloquial(['به', 'تو']), ['بهت'])
        self.assertEqual(self.colloquial(['به', 'او']), ['بهش'])

    def testCommon(self):
        '''Test the common word changes.'''
        self.assertEqual(self.colloquial(['دیگر']), ['دیگه'])
        self.assertEqual(self.colloquial(['صاحب']), ['صاحاب'])
        self.assertEqual(self.colloquial(['آنجا']), ['اونجا'])

    def testFirstMatchWins(self):
        '''Test the two-token rule takes precedence over the one-token rule.'''
        self.assertEqual(self.colloquial(['آن', 'را']), ['اونو'])
        self.assertEqual(self.colloquial(['آن']), ['اون'])

    def testSentenceTrace(self):
        '''Test a sentence is converted with untouched tokens copied.'''
        (out, trace) = applyRules(['من', 'به', 'تو', 'گفتم'], self._rules)
        self.assertEqual(out, ['من', 'بهت', 'گفتم'])
        self.assertEqual([str(a) for a in trace], ['ap.to:1-3:1-2'])

    def testNothingToDo(self):
        '''Test a sentence no rule matches is unchanged.'''
        (out, trace) = applyRules(['کتاب', 'خوب'], self._rules)
        self.assertEqual(out, ['کتاب', 'خوب'])
        self.assertEqual(trace, [])

    # ---------- Traces ----------

    def testReplay(self):
        '''Test a trace replays to the colloquial sentence.'''
        std = ['من', 'به', 'تو', 'گفتم', 'تهران', 'دیگر']
        (out, trace) = applyRules(std, self._rules)
        self.assertEqual(replayTrace(std, trace, self._rules), out)

    def testReplayWrongRule(self):
        '''Test a trace naming a rule that doesn't fire is rejected.'''
        with self.assertRaises(TraceException):
            replayTrace(['من', 'به', 'تو'], [RuleApplication('ap.to', (0, 2), (0, 1))], self._rules)

    def testReplayUnknownRule(self):
        '''Test a trace naming an unknown rule is rejected.'''
        with self.assertRaises(TraceException):
            replayTrace(['به', 'تو'], [RuleApplication('no.such', (0, 2), (0, 1))], self._rules)

    def testFullAlignment(self):
        '''Test a trace expands into a monotone alignment with copies.'''
        trace = [RuleApplication('ap.to', (1, 3), (1, 2))]
        self.assertEqual(fullAlignment(trace, 4, 3),
                         [(None, (0, 1), (0, 1)),
                          ('ap.to', (1, 3), (1, 2)),
                          (None, (3, 4), (2, 3))])

    def testFullAlignmentInconsistent(self):
        '''Test a trace that doesn't fit the sentence lengths is rejected.'''
        trace = [RuleApplication('ap.to', (1, 3), (1, 2))]
        with self.assertRaises(TraceException):
            fullAlignment(trace, 4, 4)

    def testEmptySpan(self):
        '''Test rule applications can't have empty spans.'''
        with self.assertRaises(ValueError):
            RuleApplication('x', (1, 1), (0, 1))

    # ---------- Patterns ----------

    def testGlobPattern(self):
        '''Test matching with a stem class.'''
        p = GlobPattern.parse('*[^اوهی]ه')
        self.assertEqual(p.match('کمه'), 'کم')
        self.assertIsNone(p.match('خوبوه'))
        self.assertIsNone(p.match('ه'))
        self.assertEqual(str(p), '*[^اوهی]ه')
        self.assertEqual(p.expand('خوب'), 'خوبه')

    def testBadGlobPatterns(self):
        '''Test malformed patterns are rejected.'''
        for bad in ['ab', '**', '*[ab', '*[]']:
            with self.assertRaises(ValueError):
                GlobPattern.parse(bad)

    def testIdentityRule(self):
        '''Test a rule mapping a token to itself is rejected.'''
        with self.assertRaises(ValueError):
            RewriteRule('id', RewriteRule.LEXICAL, RewriteRule.EXACT, 'a', ['a'])

    def testProducesForm(self):
        '''Test recognising a rule's output.'''
        r = self._rules.rule('ap.to')
        self.assertTrue(r.producesForm(['بهت']))
        self.assertFalse(r.producesForm(['به', 'تو']))


class RuleFileTests(unittest.TestCase):

    def setUp(self):
        tf = NamedTemporaryFile(suffix='.rules', delete=False)
        tf.close()
        self._fn = tf.name

    def tearDown(self):
        try:
            os.remove(self._fn)
        except OSError:
            pass

    def write(self, lines):
        with open(self._fn, 'w', encoding='utf-8') as fh:
            fh.write('\n'.join(lines) + '\n')

    def testSmallFile(self):
        '''Test reading a small rule file with a set and a comment.'''
        self.write(['# a comment',
                    '@set people a b',
                    'r1\tlexical\texact\tx\t-\t-\ty\tyes',
                    'r2\tcase_marker\tset\tpeople\texact\tra\t*ro\tyes'])
        rs = parseRuleFile(self._fn)
        self.assertEqual(len(rs), 2)
        self.assertEqual(rs.sets()['people'], ['a', 'b'])
        (out, _) = applyRules(['b', 'ra', 'x'], rs)
        self.assertEqual(out, ['bro', 'y'])

    def testDuplicateId(self):
        '''Test a repeated rule identifier is reported with its line.'''
        self.write(['r1\tlexical\texact\tx\t-\t-\ty\tyes',
                    'r1\tlexical\texact\tz\t-\t-\ty\tyes'])
        with self.assertRaises(DuplicateRuleException) as cm:
            parseRuleFile(self._fn)
        self.assertEqual(cm.exception.lineNumber(), 2)
        self.assertEqual(cm.exception.ruleId(), 'r1')

    def testFieldCount(self):
        '''Test a line with the wrong number of fields.'''
        self.write(['', 'r1\tlexical\texact\tx\ty'])
        with self.assertRaises(RuleFileException) as cm:
            parseRuleFile(self._fn)
        self.assertEqual(cm.exception.lineNumber(), 2)

    def testUndefinedSet(self):
        '''Test a set must be defined before it's used.'''
        self.write(['r1\tlexical\tset\tpeople\t-\t-\t*ha\tyes'])
        with self.assertRaises(RuleFileException):
            parseRuleFile(self._fn)

    def testUnknownCategory(self):
        '''Test an unknown category is reported.'''
        self.write(['r1\tslang\texact\tx\t-\t-\ty\tyes'])
        with self.assertRaises(RuleFileException):
            parseRuleFile(self._fn)

    def testBadInvertibility(self):
        '''Test the invertibility field must be yes or no.'''
        self.write(['r1\tlexical\texact\tx\t-\t-\ty\tperhaps'])
        with self.assertRaises(RuleFileException):
            parseRuleFile(self._fn)

    def testIdentityInFile(self):
        '''Test an identity rule in a file is reported against its line.'''
        self.write(['r1\tlexical\texact\tx\t-\t-\tx\tyes'])
        with self.assertRaises(RuleFileException) as cm:
            parseRuleFile(self._fn)
        self.assertEqual(cm.exception.lineNumber(), 1)

    def testNotUtf8(self):
        '''Test a file that isn't UTF-8 is rejected.'''
        with open(self._fn, 'wb') as fh:
            fh.write(b'r1\tlexical\texact\t\xff\t-\t-\ty\tyes\n')
        with self.assertRaises(RuleFileException):
            parseRuleFile(self._fn)

    def testMissingFile(self):
        '''Test a missing file is reported as a rule file problem.'''
        os.remove(self._fn)
        with self.assertRaises(RuleFileException) as cm:
            parseRuleFile(self._fn)
        self.assertEqual(cm.exception.lineNumber(), 0)

    def testDigestTracksContents(self):
        '''Test the digest changes with the file.'''
        self.write(['r1\tlexical\texact\tx\t-\t-\ty\tyes'])
        d1 = parseRuleFile(self._fn).digest()
        self.write(['r1\tlexical\texact\tx\t-\t-\tz\tyes'])
        d2 = parseRuleFile(self._fn).digest()
        self.assertNotEqual(d1, d2)


class InversionTests(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls._rules = parseRuleFile()
        cls._inverted = invertRuleSet(cls._rules)

    def standard(self, col):
        return ruleStandardize(col, self._inverted)

    def testInvertOneToOne(self):
        '''Test the "an" ending reads backwards.'''
        self.assertEqual(self.standard(['تهرون']), ['تهران'])

    def testInvertOneToTwo(self):
        '''Test merged tokens split again.'''
        self.assertEqual(self.standard(['تورو']), ['تو', 'را'])
        self.assertEqual(self.standard(['کمه']), ['کم', 'است'])
        self.assertEqual(self.standard(['بهت']), ['به', 'تو'])

    def testInverseRule(self):
        '''Test the shape of an inverted case-marker rule.'''
        r = self._inverted.rule('cm.to~inv')
        self.assertEqual(r.match(), 'تورو')
        self.assertEqual(r.replacement(), ['تو', 'را'])
        self.assertEqual(r.arity(), 1)
        self.assertEqual(r.inverts(), 'cm.to')

    def testNonInvertible(self):
        '''Test rules marked as non-invertible are dropped.'''
        with self.assertRaises(KeyError):
            self._inverted.rule('cm.consonant~inv')
        (inv, ok) = invertRule(self._rules.rule('lex.aknun'))
        self.assertFalse(ok)
        self.assertEqual(inv, [])

    def testAmbiguityGroup(self):
        '''Test two rules producing the same form are grouped.'''
        an = self._inverted.rule('cm.an~inv')
        u = self._inverted.rule('cm.u~inv')
        self.assertIsNotNone(an.ambiguityGroup())
        self.assertEqual(an.ambiguityGroup(), u.ambiguityGroup())
        self.assertLess(self._inverted.rules().index(an), self._inverted.rules().index(u))

    def testExactBeforeGlob(self):
        '''Test exact inverse rules come before patterns.'''
        rules = self._inverted.rules()
        kinds = [r.matchKind() for r in rules if r.arity() == 1]
        self.assertEqual(kinds, sorted(kinds, key=lambda k: 0 if k == RewriteRule.EXACT else 1))

    def testAlreadyStandard(self):
        '''Test a form that's already standard isn't converted again.'''
        self.assertEqual(self.standard(['گلا']), ['گلها'])
        self.assertEqual(self.standard(['گلها']), ['گلها'])

    def testInvertSetRule(self):
        '''Test a set rule inverts into one rule per member.'''
        (inv, ok) = invertRule(self._rules.rule('cm.plural'))
        self.assertTrue(ok)
        self.assertEqual(len(inv), len(self._rules.rule('cm.plural').matchSet()))
        self.assertEqual(inv[0].replacement(), ['ما', 'را'])


if __name__ == '__main__':
    unittest.main()
