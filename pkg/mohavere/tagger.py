# Coarse part-of-speech tagging for rule constraints
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
from mohavere import Logger, PUNCTUATION
from typing import Dict, List, Optional
if sys.version_info >= (3, 8):
    from typing import Final
else:
    from typing_extensions import Final


logger = logging.getLogger(Logger)


class Tagger(object):
    '''Base class for part-of-speech taggers used to evaluate rule
    constraints. Tags are coarse: every token is a verb, a noun, or
    something else.

    Sub-classes override :meth:`tag`.'''

    # Coarse classes
    VERB: Final[str] = 'verb'     #: Tag for verbs and copulas.
    NOUN: Final[str] = 'noun'     #: Tag for nouns and open-class words.
    OTHER: Final[str] = 'other'   #: Tag for closed-class words.

    @staticmethod
    def tags() -> List[str]:
        '''Return the tags a tagger may produce.

        :returns: the tags'''
        return [Tagger.VERB, Tagger.NOUN, Tagger.OTHER]

    def tag(self, token: str) -> str:
        '''Return the coarse class of a token. The base class
        tags everything as a noun.

        :param token: the token
        :returns: the tag'''
        return self.NOUN


class LexiconTagger(Tagger):
    '''A tagger driven by a closed-class lexicon, falling back on verb
    affixes and then defaulting to nouns.

    Entries in the lexicon take precedence, and punctuation is closed-class.
    Otherwise a token is a verb if it carries the continuous prefix (with
    or without its negation) or the subjunctive prefix together with a
    personal ending, standard or colloquial.

    :param lexicon: extra or overriding entries mapping tokens to tags'''

    # Closed-class words known without a lexicon
    PRONOUNS: Final[List[str]] = ['من', 'تو', 'او', 'ما', 'شما', 'آنها', 'ایشان', 'این', 'آن']
    COPULAS: Final[List[str]] = ['است', 'هست', 'هستم', 'هستی', 'هستیم', 'هستید', 'هستند', 'نیست']
    FUNCTION_WORDS: Final[List[str]] = ['را', 'به', 'از', 'با', 'در', 'برای', 'تا', 'که', 'و']

    # Affixes
    CONTINUOUS_PREFIXES: Final[List[str]] = ['می\u200c', 'نمی\u200c']
    SUBJUNCTIVE_PREFIX: Final[str] = 'ب'
    PERSONAL_ENDINGS: Final[List[str]] = ['م', 'ی', 'د', 'یم', 'ید', 'ند', 'ه', 'ن']

    def __init__(self, lexicon: Optional[Dict[str, str]] = None):
        super().__init__()
        self._lexicon: Dict[str, str] = dict()
        for w in self.PRONOUNS + self.FUNCTION_WORDS:
            self._lexicon[w] = self.OTHER
        for w in self.COPULAS:
            self._lexicon[w] = self.VERB
        if lexicon is not None:
            for (w, t) in lexicon.items():
                if t not in self.tags():
                    raise ValueError(f'Unknown tag {t} for {w}')
                self._lexicon[w] = t

    def lexicon(self) -> Dict[str, str]:
        '''Return the lexicon.

        :returns: a dict from tokens to tags'''
        return self._lexicon

    def tag(self, token: str) -> str:
        if token in self._lexicon:
            return self._lexicon[token]
        if all(c in PUNCTUATION for c in token):
            return self.OTHER
        for p in self.CONTINUOUS_PREFIXES:
            if token.startswith(p) and len(token) > len(p):
                return self.VERB
        if token.startswith(self.SUBJUNCTIVE_PREFIX) and len(token) >= 3:
            if any(token.endswith(e) for e in self.PERSONAL_ENDINGS):
                return self.VERB
        return self.NOUN
