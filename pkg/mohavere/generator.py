# Synthetic parallel corpus generation
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
import numpy
from mohavere import Logger, PackageContactInfo, TokenSequence, NormalizationConfig, prepare
from mohavere import RuleSet, RuleApplication, TraceException, parseRuleFile
from mohavere.parallel import runChunks, chunked
from typing import List, Dict, Tuple, Optional, Iterator, Iterable, Union, Any
if sys.version_info >= (3, 8):
    from typing import Final
else:
    from typing_extensions import Final


logger = logging.getLogger(Logger)


class CorpusException(Exception):
    '''An exception raised when input text can't be read, or when the
    files of a corpus don't line up.

    :param path: the file or corpus prefix
    :param msg: the problem'''

    def __init__(self, path: str, msg: str):
        super().__init__(f'{path}: {msg}')
        self._path = path

    def path(self) -> str:
        '''Return the offending path.

        :returns: the path'''
        return self._path


class GeneratorConfig(object):
    '''Parameters for generating a synthetic corpus.

    :param skipProbability: probability of leaving a convertible site unconverted (default 0.1)
    :param seed: the random seed, a 64-bit unsigned integer (default 0)
    :param ruleFile: the rule file (default the shipped rules)
    :param maxSentences: the maximum number of sentences to generate (default no limit)'''

    DEFAULT_SKIP_PROBABILITY: Final[float] = 0.1     #: Default probability of skipping a conversion.

    def __init__(self, skipProbability: float = DEFAULT_SKIP_PROBABILITY,
                       seed: int = 0,
                       ruleFile: Optional[str] = None,
                       maxSentences: Optional[int] = None):
        if not (0.0 <= skipProbability <= 1.0):
            raise ValueError(f'Skip probability must be in [0, 1], not {skipProbability}')
        if not (0 <= seed < 2 ** 64):
            raise ValueError(f'Seed must be a 64-bit unsigned integer, not {seed}')
        if maxSentences is not None and maxSentences < 0:
            raise ValueError(f'Maximum number of sentences can\'t be negative ({maxSentences})')
        self._p = skipProbability
        self._seed = seed
        self._ruleFile = ruleFile
        self._maxSentences = maxSentences

    def skipProbability(self) -> float:
        return self._p

    def seed(self) -> int:
        return self._seed

    def ruleFile(self) -> Optional[str]:
        return self._ruleFile

    def maxSentences(self) -> Optional[int]:
        return self._maxSentences


class AlignedPair(object):
    '''A training example: a colloquial sentence, the standard sentence
    it was generated from, and the trace of rules applied.

    :param colloquial: the colloquial tokens
    :param standard: the standard tokens
    :param trace: the rule applications
    :param sites: the number of positions at which a rule could have fired
    :param skips: the number of those positions left unconverted'''

    SOURCE_TAG: Final[str] = '<fab>'    #: Language tag of colloquial text.
    TARGET_TAG: Final[str] = '<fa>'     #: Language tag of standard text.

    def __init__(self, colloquial: TokenSequence, standard: TokenSequence, trace: List[RuleApplication],
                       sites: int = 0, skips: int = 0):
        self._colloquial = colloquial
        self._standard = standard
        self._trace = trace
        self._sites = sites
        self._skips = skips

    def colloquial(self) -> TokenSequence:
        return self._colloquial

    def standard(self) -> TokenSequence:
        return self._standard

    def trace(self) -> List[RuleApplication]:
        return self._trace

    def sites(self) -> int:
        return self._sites

    def skips(self) -> int:
        return self._skips

    def sourceTag(self) -> str:
        return self.SOURCE_TAG

    def targetTag(self) -> str:
        return self.TARGET_TAG

    def __eq__(self, other: Any) -> bool:
        return (isinstance(other, AlignedPair) and
                self._colloquial == other._colloquial and
                self._standard == other._standard and
                self._trace == other._trace)

    def __repr__(self) -> str:
        return f'AlignedPair({self._colloquial}, {self._standard}, {formatTrace(self._trace)})'


class GenerationSummary(object):
    '''Counts describing a run of corpus generation.'''

    def __init__(self):
        self.sentences = 0            #: Sentences generated.
        self.sites = 0                #: Positions at which a rule matched.
        self.skips = 0                #: Sites left unconverted.
        self.conversions = 0          #: Rules fired.
        self.converted = 0            #: Sentences with at least one conversion.
        self.malformed = 0            #: Input lines skipped.

    def add(self, pair: AlignedPair):
        '''Add a generated pair to the counts.

        :param pair: the pair'''
        self.sentences += 1
        self.sites += pair.sites()
        self.skips += pair.skips()
        self.conversions += len(pair.trace())
        if len(pair.trace()) > 0:
            self.converted += 1

    def convertedFraction(self) -> float:
        '''Return the fraction of sentences with at least one conversion.

        :returns: the fraction, 0 for an empty corpus'''
        return self.converted / self.sentences if self.sentences > 0 else 0.0

    def skipRate(self) -> float:
        '''Return the observed fraction of sites skipped.

        :returns: the rate, 0 if there were no sites'''
        return self.skips / self.sites if self.sites > 0 else 0.0

    def asDict(self) -> Dict[str, str]:
        '''Return the counts as key=value metadata.

        :returns: a dict of strings'''
        return {'sentences': str(self.sentences),
                'sites': str(self.sites),
                'skips': str(self.skips),
                'conversions': str(self.conversions),
                'converted_sentences': str(self.converted),
                'converted_fraction': f'{self.convertedFraction():.6f}',
                'malformed_lines': str(self.malformed)}

    def __str__(self) -> str:
        return (f'{self.sentences} sentences, {self.conversions} conversions at {self.sites} sites '
                f'({self.skips} skipped), {self.convertedFraction():.1%} of sentences converted, '
                f'{self.malformed} lines skipped')


# ---------- Traces ----------

def formatTrace(trace: List[RuleApplication]) -> str:
    '''Format a trace as semicolon-separated ``rule_id:i-j:p-q`` entries.

    :param trace: the rule applications
    :returns: the trace line (empty if there are no applications)'''
    return ';'.join([str(a) for a in trace])


def parseTrace(line: str, lineno: Optional[int] = None) -> List[RuleApplication]:
    '''Parse a trace line.

    :param line: the line
    :param lineno: the line number, for error reporting
    :returns: the rule applications
    :raises TraceException: if the line is malformed'''
    trace: List[RuleApplication] = []
    line = line.strip()
    if len(line) == 0:
        return trace
    for entry in line.split(';'):
        fs = entry.rsplit(':', 2)
        if len(fs) != 3:
            raise TraceException(lineno, f'Entry {entry} is not rule_id:i-j:p-q')
        try:
            (i, j) = [int(x) for x in fs[1].split('-')]
            (p, q) = [int(x) for x in fs[2].split('-')]
            trace.append(RuleApplication(fs[0], (i, j), (p, q)))
        except ValueError as e:
            raise TraceException(lineno, f'Entry {entry}: {e}')
    return trace


# ---------- Breaking sentences ----------

def rngFor(seed: int, index: int) -> numpy.random.Generator:
    '''Return the random stream for a sentence. The stream depends only
    on the seed and the sentence's index, so sentences can be generated
    in any order or in parallel.

    :param seed: the seed
    :param index: the sentence index
    :returns: a generator'''
    return numpy.random.default_rng(numpy.random.SeedSequence(seed, spawn_key=(index,)))


def breakSentence(std: TokenSequence, rs: RuleSet, cfg: GeneratorConfig, rng: numpy.random.Generator) -> AlignedPair:
    '''Break a standard sentence into a colloquial one. At each
    position where a rule matches, one uniform variate is drawn and the
    conversion skipped (copying the token) with the configured probability;
    otherwise the rule fires. Positions where no rule matches draw nothing.

    :param std: the standard tokens
    :param rs: the rules
    :param cfg: the generator configuration
    :param rng: the random stream
    :returns: the aligned pair'''
    p = cfg.skipProbability()
    out: TokenSequence = []
    trace: List[RuleApplication] = []
    sites = skips = 0
    i = 0
    while i < len(std):
        m = rs.firstMatch(std, i)
        if m is None:
            out.append(std[i])
            i += 1
            continue
        sites += 1
        if rng.random() < p:
            skips += 1
            out.append(std[i])
            i += 1
        else:
            (r, ts, consumed) = m
            trace.append(RuleApplication(r.ruleId(), (i, i + consumed), (len(out), len(out) + len(ts))))
            out.extend(ts)
            i += consumed
    return AlignedPair(out, std, trace, sites, skips)


def _breakChunk(chunk: List[Tuple[int, TokenSequence]], rs: RuleSet, cfg: GeneratorConfig) -> List[AlignedPair]:
    return [breakSentence(std, rs, cfg, rngFor(cfg.seed(), index)) for (index, std) in chunk]


# ---------- Corpus files ----------

def _readLines(input: Union[str, Iterable[str]]) -> Iterator[Tuple[int, Optional[str]]]:
    if isinstance(input, str):
        try:
            with open(input, 'rb') as fh:
                data = fh.read()
        except OSError as e:
            raise CorpusException(input, f'Can\'t read input: {e.strerror}')
        lines = data.split(b'\n')
        if len(lines) > 0 and len(lines[-1]) == 0:
            lines = lines[:-1]
        for (n, bs) in enumerate(lines):
            try:
                yield (n, bs.rstrip(b'\r').decode('utf-8'))
            except UnicodeDecodeError:
                yield (n, None)
    else:
        for (n, s) in enumerate(input):
            yield (n, s.rstrip('\r\n'))


def readMeta(path: str) -> Dict[str, str]:
    '''Read a key=value metadata file.

    :param path: the file
    :returns: the metadata, in file order'''
    meta: Dict[str, str] = dict()
    with open(path, 'r', encoding='utf-8') as fh:
        for line in fh:
            line = line.rstrip('\n')
            if '=' in line:
                (k, v) = line.split('=', 1)
                meta[k] = v
    return meta


def writeMeta(path: str, meta: Dict[str, str]):
    '''Write a key=value metadata file.

    :param path: the file
    :param meta: the metadata'''
    with open(path, 'w', encoding='utf-8', newline='\n') as fh:
        for (k, v) in meta.items():
            fh.write(f'{k}={v}\n')


def _writeLines(path: str, lines: Iterable[str]):
    with open(path, 'w', encoding='utf-8', newline='\n') as fh:
        for line in lines:
            fh.write(line + '\n')


def generateCorpus(input: Union[str, Iterable[str]], prefix: str,
                   cfg: Optional[GeneratorConfig] = None,
                   rules: Optional[RuleSet] = None,
                   normalization: Optional[NormalizationConfig] = None,
                   jobs: int = 1) -> GenerationSummary:
    '''Generate a synthetic parallel corpus from standard text, one
    sentence per line. Four files are written: ``<prefix>.fab`` holding
    the colloquial sentences, ``<prefix>.fa`` the standard sentences,
    ``<prefix>.trace`` the rule applications, and ``<prefix>.meta``
    the configuration and counts. Line i of the first three files
    describe the same sentence.

    Input lines are normalised and tokenised. Lines that aren't valid
    UTF-8 or that are empty are skipped with a warning. The output
    depends only on the input and the configuration, and not on the
    number of jobs.

    :param input: a file name, or an iterable of lines
    :param prefix: the output prefix
    :param cfg: the generator configuration (defaults if omitted)
    :param rules: the rules (defaults to reading the configured rule file)
    :param normalization: the normalisation configuration (defaults if omitted)
    :param jobs: the number of jobs (default 1)
    :returns: a summary of the run'''
    if cfg is None:
        cfg = GeneratorConfig()
    if rules is None:
        rules = parseRuleFile(cfg.ruleFile())
    summary = GenerationSummary()

    # read and prepare the sentences
    sentences: List[Tuple[int, TokenSequence]] = []
    for (n, line) in _readLines(input):
        if cfg.maxSentences() is not None and len(sentences) >= cfg.maxSentences():
            break
        if line is None:
            logger.warning(f'Line {n + 1}: not valid UTF-8, skipped')
            summary.malformed += 1
            continue
        tokens = prepare(line, normalization)
        if len(tokens) == 0:
            logger.warning(f'Line {n + 1}: empty, skipped')
            summary.malformed += 1
            continue
        sentences.append((n, tokens))

    # break them
    pairs: List[AlignedPair] = []
    for ps in runChunks(_breakChunk, [(c, rules, cfg) for c in chunked(sentences)], jobs):
        pairs.extend(ps)
    for pair in pairs:
        summary.add(pair)

    # write the corpus
    _writeLines(prefix + '.fab', [' '.join(pair.colloquial()) for pair in pairs])
    _writeLines(prefix + '.fa', [' '.join(pair.standard()) for pair in pairs])
    _writeLines(prefix + '.trace', [formatTrace(pair.trace()) for pair in pairs])
    meta = {'creator': PackageContactInfo,
            'seed': str(cfg.seed()),
            'skip_probability': repr(cfg.skipProbability()),
            'rule_file': str(rules.path()),
            'rule_hash': str(rules.digest()),
            'max_sentences': '-' if cfg.maxSentences() is None else str(cfg.maxSentences())}
    if normalization is not None:
        meta.update(normalization.asFlags())
    else:
        meta.update(NormalizationConfig().asFlags())
    meta.update(summary.asDict())
    writeMeta(prefix + '.meta', meta)

    logger.info(f'Generated {prefix}: {summary}')
    return summary


def _readCorpusLines(prefix: str) -> Tuple[List[str], List[str], List[str]]:
    sides = []
    for ext in ['.fab', '.fa', '.trace']:
        try:
            with open(prefix + ext, 'r', encoding='utf-8') as fh:
                sides.append(fh.read().split('\n')[:-1])
        except OSError as e:
            raise CorpusException(prefix + ext, f'Can\'t read corpus: {e.strerror}')
        except UnicodeDecodeError:
            raise CorpusException(prefix + ext, 'Corpus is not UTF-8')
    (fab, fa, trace) = sides
    if not (len(fab) == len(fa) == len(trace)):
        raise CorpusException(prefix, f'Corpus files have different lengths ({len(fab)}, {len(fa)}, {len(trace)})')
    return (fab, fa, trace)


def readCorpus(prefix: str) -> Iterator[AlignedPair]:
    '''Read back a corpus written by :func:`generateCorpus`.

    :param prefix: the corpus prefix
    :returns: a generator of aligned pairs
    :raises CorpusException: if the files can't be read or don't line up
    :raises TraceException: if a trace line is malformed'''
    (fab, fa, trace) = _readCorpusLines(prefix)
    for (n, (c, s, t)) in enumerate(zip(fab, fa, trace)):
        yield AlignedPair(c.split(), s.split(), parseTrace(t, n + 1))


def splitCorpus(prefix: str, heldOut: int, trainPrefix: str, testPrefix: str) -> Tuple[int, int]:
    '''Split a corpus into training and held-out parts, the held-out part
    being the last sentences.

    :param prefix: the corpus prefix
    :param heldOut: the number of sentences to hold out
    :param trainPrefix: the prefix for the training part
    :param testPrefix: the prefix for the held-out part
    :returns: the sizes of the two parts'''
    if heldOut < 0:
        raise ValueError(f'Can\'t hold out {heldOut} sentences')
    (fab, fa, trace) = _readCorpusLines(prefix)
    n = max(len(fa) - heldOut, 0)
    try:
        meta = readMeta(prefix + '.meta')
    except OSError:
        meta = dict()
    for (p, part, lo, hi) in [(trainPrefix, 'train', 0, n), (testPrefix, 'test', n, len(fa))]:
        _writeLines(p + '.fab', fab[lo:hi])
        _writeLines(p + '.fa', fa[lo:hi])
        _writeLines(p + '.trace', trace[lo:hi])
        pmeta = dict(meta)
        pmeta.update({'split_of': prefix, 'split': part, 'sentences': str(hi - lo)})
        writeMeta(p + '.meta', pmeta)
    logger.info(f'Split {prefix} into {n} training and {len(fa) - n} held-out sentences')
    return (n, len(fa) - n)
