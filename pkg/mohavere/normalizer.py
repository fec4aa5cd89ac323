# Character normalisation and tokenisation for Persian text
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
import re
import unicodedata
import logging
from mohavere import Logger
from typing import List, Dict, Any, Optional
if sys.version_info >= (3, 8):
    from typing import Final
else:
    from typing_extensions import Final


logger = logging.getLogger(Logger)


# Type aliases
TokenSequence = List[str]     #: Type of tokenised sentences.


# Character classes
ZWNJ: Final[str] = '\u200c'   #: The zero-width non-joiner.

# Arabic-script variants mapped onto their Persian forms
_VARIANTS: Dict[int, Optional[str]] = {
    0x064A: 'ی',         # Arabic yeh
    0x0649: 'ی',         # alef maksura
    0x0643: 'ک',         # Arabic kaf
    0x0629: 'ه',         # teh marbuta
    0x06C1: 'ه',         # heh goal
    0x06D5: 'ه',         # ae
    0x0640: None,        # tatweel
}

_DIACRITICS: Dict[int, Optional[str]] = dict([(c, None) for c in range(0x064B, 0x0660)] + [(0x0670, None)])

_DIGITS: Dict[int, str] = dict([(0x0660 + i, chr(0x06F0 + i)) for i in range(10)] +
                               [(ord('0') + i, chr(0x06F0 + i)) for i in range(10)])

_SEPARATORS: Dict[int, str] = {0x200B: ' ', 0xFEFF: ' '}

#: Punctuation that attaches to the preceding token when detokenising.
CLOSING_PUNCTUATION: Final[str] = '.,!?:;)]}»،؛؟…'

#: Punctuation that attaches to the following token when detokenising.
OPENING_PUNCTUATION: Final[str] = '([{«'

#: All characters detached as separate tokens.
PUNCTUATION: Final[str] = CLOSING_PUNCTUATION + OPENING_PUNCTUATION + '"'

_EDGE = '[\\s' + re.escape(PUNCTUATION) + ']'
_EDGE_ZWNJ = re.compile(f'(?:^|(?<={_EDGE})){ZWNJ}+|{ZWNJ}+(?={_EDGE}|$)')
_ZWNJ_RUN = re.compile(f'{ZWNJ}+')


def _isPresentationForm(c: str) -> bool:
    o = ord(c)
    return (0xFB50 <= o <= 0xFDFF) or (0xFE70 <= o <= 0xFEFF and o != 0xFEFF)


class NormalizationConfig(object):
    '''The character normalisations applied to raw text.

    All normalisations are enabled by default except diacritic stripping,
    which loses information that is occasionally present in real text.

    :param mapArabicVariants: map Arabic letter variants and presentation forms to Persian (default True)
    :param stripDiacritics: remove short-vowel and other combining marks (default False)
    :param normalizeDigits: map Arabic-Indic and ASCII digits to Persian (default True)
    :param collapseWhitespace: collapse whitespace runs and trim (default True)
    :param preserveZwnj: keep zero-width non-joiners inside words (default True)'''

    # Key names used in key=value flags
    MAP_ARABIC_VARIANTS: Final[str] = 'map_arabic_variants'  #: Flag for mapping Arabic variants.
    STRIP_DIACRITICS: Final[str] = 'strip_diacritics'        #: Flag for stripping diacritics.
    NORMALIZE_DIGITS: Final[str] = 'normalize_digits'        #: Flag for digit normalisation.
    COLLAPSE_WHITESPACE: Final[str] = 'collapse_whitespace'  #: Flag for whitespace collapsing.
    PRESERVE_ZWNJ: Final[str] = 'preserve_zwnj'              #: Flag for keeping ZWNJs.

    def __init__(self, mapArabicVariants: bool = True,
                       stripDiacritics: bool = False,
                       normalizeDigits: bool = True,
                       collapseWhitespace: bool = True,
                       preserveZwnj: bool = True):
        self._flags = {self.MAP_ARABIC_VARIANTS: mapArabicVariants,
                       self.STRIP_DIACRITICS: stripDiacritics,
                       self.NORMALIZE_DIGITS: normalizeDigits,
                       self.COLLAPSE_WHITESPACE: collapseWhitespace,
                       self.PRESERVE_ZWNJ: preserveZwnj}

    @staticmethod
    def keys() -> List[str]:
        '''Return the flag names, in canonical order.

        :returns: a list of flag names'''
        return [NormalizationConfig.MAP_ARABIC_VARIANTS,
                NormalizationConfig.STRIP_DIACRITICS,
                NormalizationConfig.NORMALIZE_DIGITS,
                NormalizationConfig.COLLAPSE_WHITESPACE,
                NormalizationConfig.PRESERVE_ZWNJ]

    @staticmethod
    def parseFlag(key: str, v: str) -> bool:
        '''Parse the textual value of a flag. Accepts true/false, yes/no,
        on/off, and 1/0, case-insensitively.

        :param key: the flag name, for error reporting
        :param v: the value
        :returns: the boolean value'''
        s = v.strip().lower()
        if s in ['true', 'yes', 'on', '1']:
            return True
        elif s in ['false', 'no', 'off', '0']:
            return False
        else:
            raise ValueError(f'Flag {key} needs a boolean value, not {v}')

    @staticmethod
    def fromFlags(flags: Dict[str, str]) -> 'NormalizationConfig':
        '''Build a configuration from key=value flags, starting from the
        defaults.

        :param flags: a dict from flag names to textual values
        :returns: the configuration'''
        cfg = NormalizationConfig()
        for (k, v) in flags.items():
            if k not in cfg._flags:
                raise ValueError(f'Unknown normalisation flag {k}')
            cfg._flags[k] = NormalizationConfig.parseFlag(k, v)
        return cfg

    def asFlags(self) -> Dict[str, str]:
        '''Return the configuration as textual flags.

        :returns: a dict from flag names to "true" or "false"'''
        return dict([(k, 'true' if self._flags[k] else 'false') for k in self.keys()])

    def mapArabicVariants(self) -> bool:
        return self._flags[self.MAP_ARABIC_VARIANTS]

    def stripDiacritics(self) -> bool:
        return self._flags[self.STRIP_DIACRITICS]

    def normalizeDigits(self) -> bool:
        return self._flags[self.NORMALIZE_DIGITS]

    def collapseWhitespace(self) -> bool:
        return self._flags[self.COLLAPSE_WHITESPACE]

    def preserveZwnj(self) -> bool:
        return self._flags[self.PRESERVE_ZWNJ]

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, NormalizationConfig) and self._flags == other._flags

    def __repr__(self) -> str:
        return 'NormalizationConfig({fs})'.format(fs=', '.join([f'{k}={v}' for (k, v) in self.asFlags().items()]))


def normalizeText(raw: str, cfg: Optional[NormalizationConfig] = None) -> str:
    '''Normalise a raw string. The result is idempotent: normalising it
    again leaves it unchanged.

    The steps are applied in a fixed order: presentation forms and
    letter variants, diacritics, digits, zero-width non-joiners, and
    finally whitespace. Non-joiners are removed when they sit at a
    word edge (next to whitespace, punctuation, or the ends of the
    string) and runs of them are collapsed to one.

    :param raw: the string
    :param cfg: the normalisation configuration (defaults if omitted)
    :returns: the normalised string'''
    if cfg is None:
        cfg = NormalizationConfig()
    s = raw

    if cfg.mapArabicVariants():
        if any(_isPresentationForm(c) for c in s):
            s = ''.join([unicodedata.normalize('NFKC', c) if _isPresentationForm(c) else c for c in s])
        s = s.translate(_VARIANTS)
    if cfg.stripDiacritics():
        s = s.translate(_DIACRITICS)
    if cfg.normalizeDigits():
        s = s.translate(_DIGITS)

    if cfg.collapseWhitespace():
        s = s.translate(_SEPARATORS)
    if cfg.preserveZwnj():
        s = _EDGE_ZWNJ.sub('', s)
        s = _ZWNJ_RUN.sub(ZWNJ, s)
    else:
        s = s.replace(ZWNJ, '')

    if cfg.collapseWhitespace():
        s = ' '.join(s.split())
    return s


def tokenize(text: str) -> TokenSequence:
    '''Split normalised text into tokens. Text is split on whitespace
    and then every punctuation character is detached as a token of
    its own. Characters joined by a ZWNJ stay in one token.

    :param text: the text
    :returns: the tokens'''
    tokens: TokenSequence = []
    for chunk in text.split():
        word = ''
        for c in chunk:
            if c in PUNCTUATION:
                if len(word) > 0:
                    tokens.append(word)
                    word = ''
                tokens.append(c)
            else:
                word += c
        if len(word) > 0:
            tokens.append(word)
    return tokens


def detokenize(seq: TokenSequence) -> str:
    '''Join tokens into a string. Tokens are separated by single spaces,
    except that closing punctuation attaches to the token before it
    and opening punctuation to the token after it.

    :param seq: the tokens
    :returns: the string'''
    s = ''
    glue = True
    for t in seq:
        if not (glue or (len(t) == 1 and t in CLOSING_PUNCTUATION)):
            s += ' '
        s += t
        glue = len(t) == 1 and t in OPENING_PUNCTUATION
    return s


def prepare(raw: str, cfg: Optional[NormalizationConfig] = None) -> TokenSequence:
    '''Normalise and tokenise a raw line.

    :param raw: the line
    :param cfg: the normalisation configuration (defaults if omitted)
    :returns: the tokens'''
    return tokenize(normalizeText(raw, cfg))
