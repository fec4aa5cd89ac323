# Corpus BLEU on tokenised text
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
from sacrebleu.metrics import BLEU                              # type: ignore
from sacrebleu.metrics.bleu import MAX_NGRAM_ORDER             # type: ignore
from mohavere import Logger, TokenSequence
from typing import List, Dict, Any
if sys.version_info >= (3, 8):
    from typing import Final
else:
    from typing_extensions import Final


logger = logging.getLogger(Logger)


#: Highest n-gram order counted.
MaxOrder: Final[int] = MAX_NGRAM_ORDER


class BleuException(Exception):
    '''An exception raised when BLEU can't be computed for a corpus.

    :param msg: the problem'''

    def __init__(self, msg: str):
        super().__init__(msg)


class BleuScore(object):
    '''A corpus BLEU score with the statistics it was computed from,
    wrapping the result returned by ``sacrebleu``.

    :param result: the ``sacrebleu`` score
    :param smoothing: the smoothing method it was computed with'''

    NONE: Final[str] = 'none'   #: No smoothing.
    EXP: Final[str] = 'exp'     #: Exponential decay smoothing, the usual default.

    def __init__(self, result: Any, smoothing: str = EXP):
        self._result = result
        self._smoothing = smoothing

    @staticmethod
    def smoothings() -> List[str]:
        return [BleuScore.NONE, BleuScore.EXP]

    @staticmethod
    def fromStatistics(correct: List[int], total: List[int], hypLength: int, refLength: int,
                       smoothing: str = EXP) -> 'BleuScore':
        '''Compute a score from already-summed statistics.

        :param correct: matched n-gram counts for each order
        :param total: hypothesis n-gram counts for each order
        :param hypLength: the total hypothesis length
        :param refLength: the total reference length
        :param smoothing: the smoothing method
        :returns: the score
        :raises BleuException: if the smoothing method is unknown'''
        if smoothing not in BleuScore.smoothings():
            raise BleuException(f'Unknown smoothing {smoothing}')
        return BleuScore(BLEU.compute_bleu(list(correct), list(total), hypLength, refLength,
                                           smooth_method=smoothing, max_ngram_order=MaxOrder),
                         smoothing)

    def score(self) -> float:
        return self._result.score

    def precisions(self) -> List[float]:
        '''Return the modified n-gram precisions, as fractions.

        :returns: a list of precisions for orders 1 to 4'''
        return [p / 100.0 for p in self._result.precisions]

    def brevityPenalty(self) -> float:
        return self._result.bp

    def hypLength(self) -> int:
        return self._result.sys_len

    def refLength(self) -> int:
        return self._result.ref_len

    def counts(self) -> List[int]:
        return [int(c) for c in self._result.counts]

    def totals(self) -> List[int]:
        return [int(t) for t in self._result.totals]

    def smoothing(self) -> str:
        return self._smoothing

    def asDict(self) -> Dict[str, Any]:
        '''Return the score and its statistics as a dict.

        :returns: a dict'''
        return {'bleu': self.score(),
                'bp': self.brevityPenalty(),
                'precisions': self.precisions(),
                'hyp_len': self.hypLength(),
                'ref_len': self.refLength()}

    def __str__(self) -> str:
        ps = '/'.join([f'{100 * p:.1f}' for p in self.precisions()])
        return f'BLEU = {self.score():.2f} {ps} (BP = {self.brevityPenalty():.3f} hyp_len = {self.hypLength()} ref_len = {self.refLength()})'


def corpusBleu(hypotheses: List[TokenSequence], references: List[TokenSequence], smoothing: str = BleuScore.EXP) -> BleuScore:
    '''Compute corpus BLEU-4 of tokenised hypotheses against one reference
    each, using ``sacrebleu`` with its own tokenisation turned off.
    Sentences are joined on single spaces, so the tokens are exactly
    the ones given.

    :param hypotheses: the hypothesis sentences
    :param references: the reference sentences
    :param smoothing: the smoothing method, :attr:`BleuScore.EXP` (the default) or :attr:`BleuScore.NONE`
    :returns: the score
    :raises BleuException: if the lists differ in length or are empty, or the smoothing is unknown'''
    if len(hypotheses) != len(references):
        raise BleuException(f'{len(hypotheses)} hypotheses but {len(references)} references')
    if len(hypotheses) == 0:
        raise BleuException('Empty corpus')
    if smoothing not in BleuScore.smoothings():
        raise BleuException(f'Unknown smoothing {smoothing}')
    metric = BLEU(tokenize='none', smooth_method=smoothing, effective_order=False)
    result = metric.corpus_score([' '.join(h) for h in hypotheses],
                                 [[' '.join(r) for r in references]])
    logger.debug(f'Corpus BLEU over {len(hypotheses)} sentences: {result.score:.2f}')
    return BleuScore(result, smoothing)
