# Persistent transduction models, HDF5 version
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

import os
import sys
import logging
import numpy
import h5py
from mohavere import Logger, PackageContactInfo, NGramLanguageModel, TransductionModel
from typing import Dict, List, Optional, Any
if sys.version_info >= (3, 8):
    from typing import Final
else:
    from typing_extensions import Final


logger = logging.getLogger(Logger)


#: Magic string identifying a model file.
Magic: Final[str] = 'mohavere-transduction-model'

#: Version of the model file structure.
Version: Final[str] = '1'

# Attribute names
MAGIC: Final[str] = 'magic'
VERSION: Final[str] = 'version'
CREATOR: Final[str] = 'creator'
LM_ORDER: Final[str] = 'lm_order'
LM_WEIGHT: Final[str] = 'lm_weight'
BACKOFF: Final[str] = 'backoff'
ALPHA: Final[str] = 'alpha'
IDENTITY_WEIGHT: Final[str] = 'identity_weight'
RULE_HASH: Final[str] = 'rule_hash'

# Dataset names
VOCABULARY_DATASET: Final[str] = 'vocabulary'
PHRASE_SOURCE_DATASET: Final[str] = 'phrase_source'
PHRASE_TARGET_DATASET: Final[str] = 'phrase_target'
PHRASE_LOGPROB_DATASET: Final[str] = 'phrase_logprob'
LM_NGRAMS_DATASET: Final[str] = 'lm_ngrams'
LM_COUNTS_DATASET: Final[str] = 'lm_counts'

# Widths of the phrase arrays
SOURCE_WIDTH: Final[int] = 2
TARGET_WIDTH: Final[int] = 3


class ModelFormatException(Exception):
    '''An exception raised when a file isn't a readable model file.

    :param path: the file
    :param msg: what's wrong with it'''

    def __init__(self, path: str, msg: str):
        super().__init__(f'{path}: {msg}')
        self._path = path

    def path(self) -> str:
        return self._path


class ModelVersionException(Exception):
    '''An exception raised when a model file has an unexpected version
    of the file structure.

    :param expected: the expected version
    :param actual: the actual version'''

    def __init__(self, expected: str, actual: str):
        super().__init__(f'Expected model file version {expected}, got {actual}')
        self._expected = expected
        self._actual = actual

    def expectedVersion(self) -> str:
        return self._expected

    def actualVersion(self) -> str:
        return self._actual


def _padded(rows: List[List[int]], width: int) -> numpy.ndarray:
    a = numpy.full((len(rows), width), -1, dtype=numpy.int32)
    for (i, r) in enumerate(rows):
        a[i, :len(r)] = r
    return a


def _unpadded(row: numpy.ndarray, vocabulary: List[str]) -> tuple:
    return tuple([vocabulary[j] for j in row if j >= 0])


def saveModel(m: TransductionModel, path: str, meta: Optional[Dict[str, str]] = None):
    '''Save a model to an HDF5 file, replacing any existing file. Phrase
    and n-gram entries are written in sorted order so that the same model
    always gives the same file contents.

    :param m: the model
    :param path: the file name
    :param meta: additional string attributes to record (optional)'''
    lm = m.languageModel()
    table = m.phraseTable()
    order = lm.order()
    if max([len(src) for src in table.keys()], default=0) > SOURCE_WIDTH or \
       max([len(t) for cands in table.values() for (t, _) in cands], default=0) > TARGET_WIDTH:
        raise ValueError('Model has phrases longer than the file format allows')

    # build the vocabulary
    words = set()
    for (src, cands) in table.items():
        words.update(src)
        for (tgt, _) in cands:
            words.update(tgt)
    for g in lm.counts().keys():
        words.update(g)
    vocabulary = sorted(words)
    index = {w: i for (i, w) in enumerate(vocabulary)}

    # flatten the phrase table
    sources: List[List[int]] = []
    targets: List[List[int]] = []
    logprobs: List[float] = []
    for src in sorted(table.keys()):
        for (tgt, lp) in table[src]:
            sources.append([index[w] for w in src])
            targets.append([index[w] for w in tgt])
            logprobs.append(lp)

    # flatten the n-grams
    ngrams = sorted(lm.counts().items())
    grams = [[index[w] for w in g] for (g, _) in ngrams]
    counts = [c for (_, c) in ngrams]

    with h5py.File(path, 'w') as f:
        attrs: Dict[str, Any] = {MAGIC: Magic,
                                 VERSION: Version,
                                 CREATOR: PackageContactInfo,
                                 LM_ORDER: str(order),
                                 LM_WEIGHT: repr(m.lmWeight()),
                                 BACKOFF: repr(lm.backoff()),
                                 ALPHA: repr(m.alpha()),
                                 IDENTITY_WEIGHT: repr(m.identityWeight()),
                                 RULE_HASH: '' if m.ruleHash() is None else m.ruleHash()}
        if meta is not None:
            for (k, v) in meta.items():
                if k not in attrs:
                    attrs[k] = str(v)
        for k in sorted(attrs.keys()):
            f.attrs.create(k, attrs[k], dtype=h5py.string_dtype())

        ds = f.create_dataset(VOCABULARY_DATASET, (len(vocabulary),), dtype=h5py.string_dtype(), track_times=False)
        if len(vocabulary) > 0:
            ds[:] = vocabulary
        f.create_dataset(PHRASE_SOURCE_DATASET, data=_padded(sources, SOURCE_WIDTH), track_times=False)
        f.create_dataset(PHRASE_TARGET_DATASET, data=_padded(targets, TARGET_WIDTH), track_times=False)
        f.create_dataset(PHRASE_LOGPROB_DATASET, data=numpy.array(logprobs, dtype=numpy.float64), track_times=False)
        f.create_dataset(LM_NGRAMS_DATASET, data=_padded(grams, order), track_times=False)
        f.create_dataset(LM_COUNTS_DATASET, data=numpy.array(counts, dtype=numpy.int64), track_times=False)
    logger.info(f'Saved model to {path} ({len(logprobs)} phrase pairs, {len(counts)} n-grams)')


def modelMetadata(path: str) -> Dict[str, str]:
    '''Read the attributes of a model file without loading the model.

    :param path: the file name
    :returns: a dict of attributes
    :raises ModelFormatException: if the file isn't a model file
    :raises ModelVersionException: if the file has the wrong version'''
    with _openModel(path) as f:
        return {k: str(f.attrs[k]) for k in f.attrs.keys()}


def _openModel(path: str) -> h5py.File:
    if not os.path.exists(path):
        raise ModelFormatException(path, 'No such file')
    try:
        f = h5py.File(path, 'r')
    except OSError as e:
        raise ModelFormatException(path, f'Not an HDF5 file ({e})')
    if MAGIC not in f.attrs or str(f.attrs[MAGIC]) != Magic:
        f.close()
        raise ModelFormatException(path, 'Not a model file')
    v = str(f.attrs[VERSION]) if VERSION in f.attrs else '?'
    if v != Version:
        f.close()
        raise ModelVersionException(Version, v)
    return f


def loadModel(path: str) -> TransductionModel:
    '''Load a model from an HDF5 file.

    :param path: the file name
    :returns: the model
    :raises ModelFormatException: if the file is missing, isn't a model file, or is damaged
    :raises ModelVersionException: if the file has the wrong version'''
    with _openModel(path) as f:
        try:
            attrs = {k: str(f.attrs[k]) for k in f.attrs.keys()}
            order = int(attrs[LM_ORDER])
            ds = f[VOCABULARY_DATASET]
            vocabulary = list(ds.asstr()[()]) if ds.shape[0] > 0 else []
            sources = f[PHRASE_SOURCE_DATASET][()]
            targets = f[PHRASE_TARGET_DATASET][()]
            logprobs = f[PHRASE_LOGPROB_DATASET][()]
            grams = f[LM_NGRAMS_DATASET][()]
            counts = f[LM_COUNTS_DATASET][()]

            if not (len(sources) == len(targets) == len(logprobs)) or len(grams) != len(counts):
                raise ValueError('Dataset lengths differ')
            table: Dict[tuple, list] = dict()
            for (s, t, lp) in zip(sources, targets, logprobs):
                table.setdefault(_unpadded(s, vocabulary), []).append((_unpadded(t, vocabulary), float(lp)))
            lm = NGramLanguageModel(order, float(attrs[BACKOFF]))
            lm.setCounts({_unpadded(g, vocabulary): int(c) for (g, c) in zip(grams, counts)})
            m = TransductionModel(table, lm,
                                  lmWeight=float(attrs[LM_WEIGHT]),
                                  alpha=float(attrs[ALPHA]),
                                  identityWeight=float(attrs[IDENTITY_WEIGHT]),
                                  ruleHash=attrs[RULE_HASH] if len(attrs[RULE_HASH]) > 0 else None)
        except (KeyError, ValueError, IndexError, OSError) as e:
            raise ModelFormatException(path, f'Damaged model file ({e})')
    logger.info(f'Loaded model from {path} ({len(table)} colloquial phrases)')
    return m
