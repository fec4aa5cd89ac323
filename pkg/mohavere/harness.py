# Evaluation of standardisers against hand-standardised references
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
import csv
import logging
from pandas import DataFrame                                   # type: ignore
import pandas
from mohavere import Logger, TokenSequence, NormalizationConfig, prepare, RuleSet, TransductionModel, DecodeConfig
from mohavere import BaselinePolicy, ruleStandardize, standardize, BleuScore, corpusBleu
from mohavere.parallel import chunked, runChunks
from typing import Dict, List, Optional, Callable, Any
if sys.version_info >= (3, 8):
    from typing import Final
else:
    from typing_extensions import Final


logger = logging.getLogger(Logger)


# Type aliases
System = Callable[[TokenSequence], TokenSequence]   #: Type of standardisers.


class DatasetException(Exception):
    '''An exception raised when an evaluation dataset can't be loaded.

    :param path: the dataset file
    :param lineno: the line at fault, or None for the whole file
    :param msg: the problem'''

    def __init__(self, path: str, lineno: Optional[int], msg: str):
        where = path if lineno is None else f'{path}:{lineno}'
        super().__init__(f'{where}: {msg}')
        self._path = path
        self._lineno = lineno

    def path(self) -> str:
        return self._path

    def lineNumber(self) -> Optional[int]:
        return self._lineno


class SystemFailureException(Exception):
    '''An exception raised when a standardiser fails on a record. The
    evaluation is abandoned rather than scoring a partial output.

    :param index: the index of the record
    :param cause: the exception the standardiser raised'''

    def __init__(self, index: int, cause: Exception):
        super().__init__(f'System failed on record {index}: {cause}')
        self._index = index
        self._cause = cause

    def __reduce__(self):
        return (self.__class__, (self._index, self._cause))

    def index(self) -> int:
        return self._index

    def cause(self) -> Exception:
        return self._cause


# ---------- Records ----------

class EvalRecord(object):
    '''A colloquial sentence with its two standardised references, one
    changing word forms only and one also changing style. The texts are
    held normalised and tokenised.

    :param source: the colloquial tokens
    :param wordRef: the word-level reference tokens
    :param styleRef: the style-level reference tokens (defaults to the word-level reference)
    :param genre: the genre label (optional)
    :param split: the split the record comes from (optional)'''

    WORD: Final[str] = 'word'     #: Word-level references.
    STYLE: Final[str] = 'style'   #: Style-level references.

    DEV: Final[str] = 'dev'       #: Development split.
    TEST: Final[str] = 'test'     #: Test split.

    #: Published sizes of the splits.
    SplitSizes: Final[Dict[str, int]] = {DEV: 917, TEST: 1012}

    # Canonical column names
    SOURCE_COLUMN: Final[str] = 'source'
    WORD_REF_COLUMN: Final[str] = 'word_ref'
    STYLE_REF_COLUMN: Final[str] = 'style_ref'
    GENRE_COLUMN: Final[str] = 'genre'

    def __init__(self, source: TokenSequence, wordRef: TokenSequence, styleRef: Optional[TokenSequence] = None,
                 genre: Optional[str] = None, split: Optional[str] = None):
        if len(source) == 0:
            raise ValueError('Empty source')
        if len(wordRef) == 0:
            raise ValueError('Empty word-level reference')
        self._source = list(source)
        self._wordRef = list(wordRef)
        self._styleRef = list(wordRef) if styleRef is None or len(styleRef) == 0 else list(styleRef)
        self._genre = genre
        self._split = split

    @staticmethod
    def referenceTypes() -> List[str]:
        return [EvalRecord.WORD, EvalRecord.STYLE]

    @staticmethod
    def columns() -> List[str]:
        return [EvalRecord.SOURCE_COLUMN, EvalRecord.WORD_REF_COLUMN, EvalRecord.STYLE_REF_COLUMN, EvalRecord.GENRE_COLUMN]

    def source(self) -> TokenSequence:
        return self._source

    def wordRef(self) -> TokenSequence:
        return self._wordRef

    def styleRef(self) -> TokenSequence:
        return self._styleRef

    def reference(self, referenceType: str) -> TokenSequence:
        '''Return the reference of the given type.

        :param referenceType: :attr:`WORD` or :attr:`STYLE`
        :returns: the reference tokens'''
        if referenceType == EvalRecord.WORD:
            return self._wordRef
        elif referenceType == EvalRecord.STYLE:
            return self._styleRef
        else:
            raise ValueError(f'Unknown reference type {referenceType}')

    def genre(self) -> Optional[str]:
        return self._genre

    def split(self) -> Optional[str]:
        return self._split


def datasetPath(directory: str, split: str) -> str:
    '''Return the canonical file of a split within a dataset directory.

    :param directory: the dataset directory
    :param split: the split
    :returns: the file name'''
    return os.path.join(directory, f'{split}.tsv')


def loadDataset(path: str, columnMap: Optional[Dict[str, str]] = None, split: Optional[str] = None,
                normalization: Optional[NormalizationConfig] = None) -> List[EvalRecord]:
    '''Load an evaluation dataset from a tab-separated file with a header
    line. The canonical columns are ``source``, ``word_ref``,
    ``style_ref`` and ``genre``; the last two may be missing. A column
    map renames the file's columns to the canonical ones, so that other
    layouts can be read. All texts are normalised and tokenised the same way.

    If the path is a directory, the split's canonical file within it is
    read. Blank lines are skipped. A split whose size differs from its
    published size gets a warning.

    :param path: the dataset file or directory
    :param columnMap: a map from canonical column names to the file's names (optional)
    :param split: the split being loaded (optional)
    :param normalization: the normalisation configuration (defaults if omitted)
    :returns: the records
    :raises DatasetException: if the file is missing, lacks a column, or has an empty source or reference'''
    if os.path.isdir(path):
        if split is None:
            raise DatasetException(path, None, 'Need a split to load from a directory')
        path = datasetPath(path, split)
    if not os.path.exists(path):
        raise DatasetException(path, None, 'No such file')
    try:
        df = pandas.read_csv(path, sep='\t', quoting=csv.QUOTE_NONE, dtype=str, keep_default_na=False,
                             skip_blank_lines=False, encoding='utf-8')
    except (UnicodeDecodeError, pandas.errors.ParserError, pandas.errors.EmptyDataError) as e:
        raise DatasetException(path, None, f'Can\'t parse dataset ({e})')

    if columnMap is not None:
        df = df.rename(columns={v: k for (k, v) in columnMap.items()})
    for c in [EvalRecord.SOURCE_COLUMN, EvalRecord.WORD_REF_COLUMN]:
        if c not in df.columns:
            raise DatasetException(path, None, f'No {c} column')
    hasStyle = EvalRecord.STYLE_REF_COLUMN in df.columns
    hasGenre = EvalRecord.GENRE_COLUMN in df.columns

    df = df.fillna('')
    records = []
    for (i, r) in enumerate(df.to_dict('records')):
        lineno = i + 2
        if all(len(v.strip()) == 0 for v in r.values()):
            continue
        source = prepare(r[EvalRecord.SOURCE_COLUMN], normalization)
        if len(source) == 0:
            raise DatasetException(path, lineno, 'Empty source')
        wordRef = prepare(r[EvalRecord.WORD_REF_COLUMN], normalization)
        if len(wordRef) == 0:
            raise DatasetException(path, lineno, 'Empty word-level reference')
        styleRef = prepare(r[EvalRecord.STYLE_REF_COLUMN], normalization) if hasStyle else None
        genre = r[EvalRecord.GENRE_COLUMN] if hasGenre and len(r[EvalRecord.GENRE_COLUMN]) > 0 else None
        records.append(EvalRecord(source, wordRef, styleRef, genre, split))

    if split in EvalRecord.SplitSizes and len(records) != EvalRecord.SplitSizes[split]:
        logger.warning(f'Split {split} has {len(records)} records, expected {EvalRecord.SplitSizes[split]}')
    logger.info(f'Loaded {len(records)} records from {path}')
    return records


# ---------- Systems ----------

class IdentitySystem(object):
    '''The no-edit standardiser, leaving its input unchanged.'''

    def name(self) -> str:
        return 'identity'

    def __call__(self, tokens: TokenSequence) -> TokenSequence:
        return list(tokens)


class RuleSystem(object):
    '''The rule-based standardiser.

    :param inverted: the inverted rules
    :param policy: the ambiguity policy (optional)'''

    def __init__(self, inverted: RuleSet, policy: Optional[BaselinePolicy] = None):
        self._inverted = inverted
        self._policy = policy

    def name(self) -> str:
        return 'rules'

    def __call__(self, tokens: TokenSequence) -> TokenSequence:
        return ruleStandardize(tokens, self._inverted, self._policy)


class ModelSystem(object):
    '''The transduction model standardiser.

    :param m: the model
    :param cfg: the decoding configuration (optional)'''

    def __init__(self, m: TransductionModel, cfg: Optional[DecodeConfig] = None):
        self._model = m
        self._cfg = cfg

    def name(self) -> str:
        return 'model'

    def __call__(self, tokens: TokenSequence) -> TokenSequence:
        return standardize(tokens, self._model, self._cfg)


def identitySystem() -> IdentitySystem:
    return IdentitySystem()


def ruleSystem(inverted: RuleSet, policy: Optional[BaselinePolicy] = None) -> RuleSystem:
    return RuleSystem(inverted, policy)


def modelSystem(m: TransductionModel, cfg: Optional[DecodeConfig] = None) -> ModelSystem:
    return ModelSystem(m, cfg)


def _systemName(system: System) -> str:
    return system.name() if hasattr(system, 'name') else getattr(system, '__name__', 'system')


def _runChunk(system: System, start: int, sources: List[TokenSequence]) -> List[TokenSequence]:
    outs = []
    for (k, s) in enumerate(sources):
        try:
            outs.append(list(system(s)))
        except Exception as e:
            raise SystemFailureException(start + k, e)
    return outs


def runSystem(system: System, sources: List[TokenSequence], jobs: int = 1) -> List[TokenSequence]:
    '''Run a standardiser over some sentences, in parallel if requested.
    The outputs are in the order of the inputs.

    :param system: the standardiser
    :param sources: the colloquial sentences
    :param jobs: the number of jobs (default 1)
    :returns: the standardised sentences
    :raises SystemFailureException: if the standardiser fails on any sentence'''
    chunks = chunked(sources)
    args = [(system, k * len(chunks[0]), c) for (k, c) in enumerate(chunks)]
    hyps: List[TokenSequence] = []
    for outs in runChunks(_runChunk, args, jobs):
        hyps.extend(outs)
    return hyps


# ---------- Reports ----------

class EvalReport(object):
    '''The result of evaluating a standardiser on a set of records. Both
    reference types are scored from the same outputs, and the no-edit
    score on the same records is kept alongside.

    :param system: the name of the system
    :param referenceType: the reference type the report is primarily about
    :param records: the records
    :param hypotheses: the system's outputs
    :param split: the split (optional)'''

    ALL_GENRES: Final[str] = 'all'   #: Row label for the whole set of records.

    def __init__(self, system: str, referenceType: str, records: List[EvalRecord], hypotheses: List[TokenSequence],
                 split: Optional[str] = None):
        if referenceType not in EvalRecord.referenceTypes():
            raise ValueError(f'Unknown reference type {referenceType}')
        self._system = system
        self._referenceType = referenceType
        self._split = split
        self._hypotheses = hypotheses
        self._n = len(records)
        sources = [r.source() for r in records]
        self._scores: Dict[str, BleuScore] = dict()
        self._identity: Dict[str, BleuScore] = dict()
        self._genres: Dict[str, Dict[str, BleuScore]] = dict()
        genres = sorted(set([r.genre() for r in records if r.genre() is not None]))
        for rt in EvalRecord.referenceTypes():
            refs = [r.reference(rt) for r in records]
            self._scores[rt] = corpusBleu(hypotheses, refs)
            self._identity[rt] = corpusBleu(sources, refs)
            self._genres[rt] = dict()
            for g in genres:
                ks = [k for (k, r) in enumerate(records) if r.genre() == g]
                self._genres[rt][g] = corpusBleu([hypotheses[k] for k in ks], [refs[k] for k in ks])

    def system(self) -> str:
        return self._system

    def referenceType(self) -> str:
        return self._referenceType

    def split(self) -> Optional[str]:
        return self._split

    def records(self) -> int:
        return self._n

    def hypotheses(self) -> List[TokenSequence]:
        return self._hypotheses

    def score(self, referenceType: Optional[str] = None) -> BleuScore:
        '''Return the system's score.

        :param referenceType: the reference type (defaults to the report's own)
        :returns: the score'''
        return self._scores[referenceType or self._referenceType]

    def identityScore(self, referenceType: Optional[str] = None) -> BleuScore:
        '''Return the no-edit score on the same records.

        :param referenceType: the reference type (defaults to the report's own)
        :returns: the score'''
        return self._identity[referenceType or self._referenceType]

    def genreScores(self, referenceType: Optional[str] = None) -> Dict[str, BleuScore]:
        '''Return the system's score on each genre.

        :param referenceType: the reference type (defaults to the report's own)
        :returns: a dict from genres to scores'''
        return self._genres[referenceType or self._referenceType]

    def dataframe(self) -> DataFrame:
        '''Return the scores as a table, one row per genre plus one for
        all records. Columns ``<system>_<ref>`` hold the system's scores
        against each reference type and ``original_<ref>`` the no-edit
        scores, on the all-records row only. Scores are rounded to one
        decimal place.

        :returns: the table'''
        rows = []
        labels = [self.ALL_GENRES] + sorted(self._genres[EvalRecord.WORD].keys())
        for g in labels:
            row: Dict[str, Any] = {'genre': g}
            for rt in EvalRecord.referenceTypes():
                s = self._scores[rt] if g == self.ALL_GENRES else self._genres[rt][g]
                row[f'{self._system}_{rt}'] = round(s.score(), 1)
            if g == self.ALL_GENRES:
                for rt in EvalRecord.referenceTypes():
                    row[f'original_{rt}'] = round(self._identity[rt].score(), 1)
            rows.append(row)
        return DataFrame(rows).set_index('genre')

    def keyValues(self) -> Dict[str, str]:
        '''Return the report's machine-readable values.

        :returns: a dict of strings'''
        kv = {'system': self._system,
              'split': '-' if self._split is None else self._split,
              'ref': self._referenceType,
              'records': str(self._n),
              'bleu': f'{self.score().score():.1f}',
              'identity_bleu': f'{self.identityScore().score():.1f}'}
        for rt in EvalRecord.referenceTypes():
            kv[f'bleu_{rt}'] = f'{self._scores[rt].score():.4f}'
            kv[f'identity_bleu_{rt}'] = f'{self._identity[rt].score():.4f}'
        return kv

    def format(self, meta: Optional[Dict[str, str]] = None) -> str:
        '''Format the report as an aligned table followed by
        ``key=value`` lines.

        :param meta: further values to stamp the report with (optional)
        :returns: the report text'''
        kv = self.keyValues()
        if meta is not None:
            kv.update(meta)
        lines = [self.dataframe().fillna('-').to_string(), '']
        lines.extend([f'{k}={v}' for (k, v) in kv.items()])
        return '\n'.join(lines) + '\n'


def evaluate(system: System, records: List[EvalRecord], referenceType: str = EvalRecord.WORD,
             jobs: int = 1, name: Optional[str] = None, split: Optional[str] = None) -> EvalReport:
    '''Evaluate a standardiser on some records. The standardiser is run
    once on every source, and its outputs scored against both types of
    reference along with the no-edit outputs.

    :param system: the standardiser
    :param records: the records
    :param referenceType: the reference type the report is about (default word-level)
    :param jobs: the number of jobs (default 1)
    :param name: the system's name (defaults to the name the system gives itself)
    :param split: the split the records come from (optional)
    :returns: the report
    :raises SystemFailureException: if the standardiser fails on any record'''
    if referenceType not in EvalRecord.referenceTypes():
        raise ValueError(f'Unknown reference type {referenceType}')
    if name is None:
        name = _systemName(system)
    if split is None and len(records) > 0:
        split = records[0].split()
    hyps = runSystem(system, [r.source() for r in records], jobs)
    report = EvalReport(name, referenceType, records, hyps, split)
    logger.info(f'Evaluated {name} on {len(records)} records: BLEU {report.score().score():.1f} ({referenceType})')
    return report
