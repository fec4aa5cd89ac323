# Rule-based standardisation with inverted rules
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

import sys
import logging
from collections import Counter
from mohavere import Logger, TokenSequence, RuleSet
from mohavere.rules import RuleMatch
from typing import Dict, List, Optional, Iterable, Union
if sys.version_info >= (3, 8):
    from typing import Final
else:
    from typing_extensions import Final


logger = logging.getLogger(Logger)


class PolicyException(Exception):
    '''An exception raised when a baseline policy is inconsistent.

    :param msg: the problem'''

    def __init__(self, msg: str):
        super().__init__(msg)


class BaselinePolicy(object):
    '''How the rule-based standardiser chooses between inverse rules in
    the same ambiguity group.

    With :attr:`MOST_FREQUENT` each candidate reading is scored by the
    frequency of its rarest output token in a table of standard word
    frequencies, and the highest-scoring reading wins, ties going to the
    first listed. Leaving the colloquial token alone also competes: it
    is kept if it is itself strictly more frequent as a standard word.
    With :attr:`FIRST_LISTED` the first rule in the group always wins.

    :param resolution: the resolution policy (defaults to :attr:`MOST_FREQUENT`)
    :param frequencies: the standard word frequencies (required for :attr:`MOST_FREQUENT`)
    :raises PolicyException: if the resolution is unknown or the frequencies are missing'''

    MOST_FREQUENT: Final[str] = 'most_frequent_standard_form'   #: Choose the most frequent reading.
    FIRST_LISTED: Final[str] = 'first_listed'                   #: Choose the first rule.

    def __init__(self, resolution: str = MOST_FREQUENT, frequencies: Optional[Dict[str, int]] = None):
        if resolution not in BaselinePolicy.resolutions():
            raise PolicyException(f'Unknown ambiguity resolution {resolution}')
        if resolution == BaselinePolicy.MOST_FREQUENT and frequencies is None:
            raise PolicyException(f'Resolution {resolution} needs a frequency table')
        self._resolution = resolution
        self._frequencies = frequencies

    @staticmethod
    def resolutions() -> List[str]:
        return [BaselinePolicy.MOST_FREQUENT, BaselinePolicy.FIRST_LISTED]

    def resolution(self) -> str:
        return self._resolution

    def frequencies(self) -> Optional[Dict[str, int]]:
        return self._frequencies

    def frequency(self, tokens: TokenSequence) -> int:
        '''Return the frequency of the rarest of some tokens.

        :param tokens: the tokens
        :returns: the lowest frequency'''
        if self._frequencies is None:
            return 0
        return min([self._frequencies.get(t, 0) for t in tokens], default=0)

    def choose(self, candidates: List[RuleMatch], span: TokenSequence) -> Optional[RuleMatch]:
        '''Choose between the matching rules of an ambiguity group.

        :param candidates: the matches, in rule order
        :param span: the colloquial tokens the first match consumes
        :returns: the chosen match, or None to leave the token alone'''
        if self._resolution == BaselinePolicy.FIRST_LISTED:
            return candidates[0]
        best = candidates[0]
        bestScore = self.frequency(best[1])
        for m in candidates[1:]:
            s = self.frequency(m[1])
            if s > bestScore:
                (best, bestScore) = (m, s)
        if self.frequency(span) > bestScore:
            return None
        return best


def frequencyTable(lines: Iterable[Union[str, TokenSequence]]) -> Dict[str, int]:
    '''Count the tokens of a tokenised standard corpus.

    :param lines: the sentences, as whitespace-separated strings or token lists
    :returns: a table of token frequencies'''
    counts: Counter = Counter()
    for line in lines:
        counts.update(line.split() if isinstance(line, str) else line)
    return counts


def _fires(rs: RuleSet, seq: TokenSequence, i: int) -> List[RuleMatch]:
    ms = []
    for m in rs.matches(seq, i):
        r = m[0]
        # don't undo a form that's already standard
        if r.producesForm(seq[i:i + len(r.replacement())]):
            continue
        ms.append(m)
    return ms


def ruleStandardize(colloquial: TokenSequence, inverted: RuleSet, policy: Optional[BaselinePolicy] = None) -> TokenSequence:
    '''Standardise a colloquial sentence with inverted rules, in a single
    left-to-right pass. At each position the first inverse rule that
    matches fires, unless the tokens there already look like that rule's
    output. If the rule is in an ambiguity group the policy chooses
    between the group's matching rules. Tokens no rule matches are copied.

    :param colloquial: the normalised and tokenised colloquial sentence
    :param inverted: the inverted rules
    :param policy: the ambiguity policy (defaults to :attr:`BaselinePolicy.FIRST_LISTED`)
    :returns: the standard tokens'''
    if policy is None:
        policy = BaselinePolicy(BaselinePolicy.FIRST_LISTED)
    out: TokenSequence = []
    i = 0
    while i < len(colloquial):
        ms = _fires(inverted, colloquial, i)
        chosen: Optional[RuleMatch] = None
        if len(ms) > 0:
            g = ms[0][0].ambiguityGroup()
            if g is None:
                chosen = ms[0]
            else:
                group = [m for m in ms if m[0].ambiguityGroup() == g]
                chosen = policy.choose(group, colloquial[i:i + ms[0][2]])
        if chosen is None:
            out.append(colloquial[i])
            i += 1
        else:
            out.extend(chosen[1])
            i += chosen[2]
    return out
