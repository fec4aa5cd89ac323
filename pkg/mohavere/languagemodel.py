# N-gram language model of standard text
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
import math
import logging
from collections import Counter
from mohavere import Logger, TokenSequence
from typing import Dict, Tuple, Iterable
if sys.version_info >= (3, 8):
    from typing import Final
else:
    from typing_extensions import Final


logger = logging.getLogger(Logger)


# Type aliases
NGram = Tuple[str, ...]      #: Type of n-grams and histories.


class NGramLanguageModel(object):
    '''An n-gram language model with "stupid" backoff.

    The score of a word w after a history h is c(h w) / c(h) if the
    n-gram h w has been seen. Otherwise the oldest word is dropped from
    the history and the score multiplied by the backoff factor, down to
    an add-one unigram estimate (c(w) + 1) / (N + V + 1), where N is
    the number of tokens (including end markers) and V the number of
    distinct words. Unseen words therefore get a small non-zero score.

    Sentences are padded with order - 1 start markers and one end
    marker. The model is just its counts, which can be merged across
    shards of a corpus.

    :param order: the order of the model (default 3)
    :param backoff: the backoff factor (default 0.4)'''

    BOS: Final[str] = '<s>'     #: Start-of-sentence marker.
    EOS: Final[str] = '</s>'    #: End-of-sentence marker.

    DEFAULT_ORDER: Final[int] = 3          #: Default order.
    DEFAULT_BACKOFF: Final[float] = 0.4    #: Default backoff factor.

    def __init__(self, order: int = DEFAULT_ORDER, backoff: float = DEFAULT_BACKOFF):
        if order < 1:
            raise ValueError(f'Language model order must be at least 1, not {order}')
        if not (0.0 < backoff <= 1.0):
            raise ValueError(f'Backoff factor must be in (0, 1], not {backoff}')
        self._order = order
        self._backoff = backoff
        self._counts: Counter = Counter()
        self._total = 0
        self._vocabulary = 0

    def order(self) -> int:
        return self._order

    def backoff(self) -> float:
        return self._backoff

    def counts(self) -> Dict[NGram, int]:
        '''Return the n-gram counts for all orders up to the model's.

        :returns: a dict from n-grams to counts'''
        return self._counts

    def total(self) -> int:
        '''Return the number of tokens seen, including end markers.

        :returns: the token count'''
        return self._total

    def vocabularySize(self) -> int:
        '''Return the number of distinct words seen, including the end marker.

        :returns: the vocabulary size'''
        return self._vocabulary

    def _recount(self):
        unigrams = [(g, c) for (g, c) in self._counts.items() if len(g) == 1 and g[0] != self.BOS]
        self._total = sum([c for (_, c) in unigrams])
        self._vocabulary = len(unigrams)

    def _countPadded(self, padded: TokenSequence):
        for k in range(1, self._order + 1):
            for i in range(len(padded) - k + 1):
                g = tuple(padded[i:i + k])
                self._counts[g] += 1
                if k == 1 and g[0] != self.BOS:
                    self._total += 1
                    if self._counts[g] == 1:
                        self._vocabulary += 1

    def addSentence(self, tokens: TokenSequence):
        '''Count the n-grams of a sentence.

        :param tokens: the standard tokens'''
        self._countPadded([self.BOS] * (self._order - 1) + list(tokens) + [self.EOS])

    def addSentences(self, sentences: Iterable[TokenSequence]):
        '''Count the n-grams of several sentences.

        :param sentences: an iterable of token sequences'''
        for tokens in sentences:
            self.addSentence(tokens)

    def setCounts(self, counts: Dict[NGram, int]):
        '''Replace the model's counts, for example when loading a model.

        :param counts: the n-gram counts'''
        self._counts = Counter(counts)
        self._recount()

    def merge(self, other: 'NGramLanguageModel'):
        '''Add the counts of another model of the same order into this one.

        :param other: the other model'''
        if other.order() != self._order:
            raise ValueError(f'Can\'t merge models of orders {self._order} and {other.order()}')
        self._counts.update(other._counts)
        self._recount()

    def startState(self) -> NGram:
        '''Return the history at the start of a sentence.

        :returns: the history'''
        return tuple([self.BOS] * (self._order - 1))

    def advance(self, history: NGram, word: str) -> NGram:
        '''Return the history after seeing a word.

        :param history: the current history
        :param word: the word
        :returns: the new history'''
        if self._order == 1:
            return ()
        return (history + (word,))[-(self._order - 1):]

    def prob(self, word: str, history: NGram) -> float:
        '''Return the score of a word following a history.

        :param word: the word
        :param history: the history (at most order - 1 words are used)
        :returns: the score'''
        h = tuple(history)[-(self._order - 1):] if self._order > 1 else ()
        factor = 1.0
        while len(h) > 0:
            c = self._counts.get(h + (word,), 0)
            if c > 0:
                return factor * c / self._counts[h]
            factor *= self._backoff
            h = h[1:]
        return factor * (self._counts.get((word,), 0) + 1) / (self._total + self._vocabulary + 1)

    def logProb(self, word: str, history: NGram) -> float:
        '''Return the natural log of :meth:`prob`.

        :param word: the word
        :param history: the history
        :returns: the log score'''
        return math.log(self.prob(word, history))

    def score(self, tokens: TokenSequence) -> float:
        '''Return the log score of a whole sentence, including its end marker.

        :param tokens: the tokens
        :returns: the log score'''
        h = self.startState()
        s = 0.0
        for w in list(tokens) + [self.EOS]:
            s += self.logProb(w, h)
            h = self.advance(h, w)
        return s
