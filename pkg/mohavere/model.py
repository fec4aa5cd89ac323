# Phrase-table transduction from colloquial to standard text
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
from mohavere import Logger, TokenSequence, AlignedPair, RuleSet, TraceException, NGramLanguageModel, replayTrace, fullAlignment
from mohavere.parallel import chunked, runChunks
from typing import Dict, List, Tuple, Optional, Iterable
if sys.version_info >= (3, 8):
    from typing import Final
else:
    from typing_extensions import Final


logger = logging.getLogger(Logger)


# Type aliases
Phrase = Tuple[str, ...]                  #: Type of phrases, as tuples of tokens.
Candidate = Tuple[Phrase, float]          #: Type of a standard phrase with its log probability.
PhraseTable = Dict[Phrase, List[Candidate]]  #: Type of phrase tables, from colloquial phrases to candidates.


#: Log score of copying a token the phrase table doesn't know.
UnknownPenalty: Final[float] = math.log(1e-4)


# ---------- Configuration ----------

class TrainingConfig(object):
    '''Configuration for training a :class:`TransductionModel`.

    :param alpha: add-alpha smoothing constant for phrase candidates (default 0.1)
    :param identityWeight: weight given to each copied token (default 0.1)
    :param lmOrder: order of the language model (default 3)
    :param backoff: backoff factor of the language model (default 0.4)
    :param lmWeight: language model weight stored in the model (default 1.0)
    :param pruneIdentity: drop colloquial phrases only ever seen copied (default True)
    :param maxSource: longest colloquial phrase (default 2)
    :param maxTarget: longest standard phrase (default 3)'''

    DEFAULT_ALPHA: Final[float] = 0.1             #: Default smoothing constant.
    DEFAULT_IDENTITY_WEIGHT: Final[float] = 0.1   #: Default weight of copies.
    DEFAULT_LM_WEIGHT: Final[float] = 1.0         #: Default language model weight.
    DEFAULT_MAX_SOURCE: Final[int] = 2            #: Default longest colloquial phrase.
    DEFAULT_MAX_TARGET: Final[int] = 3            #: Default longest standard phrase.

    def __init__(self, alpha: float = DEFAULT_ALPHA,
                 identityWeight: float = DEFAULT_IDENTITY_WEIGHT,
                 lmOrder: int = NGramLanguageModel.DEFAULT_ORDER,
                 backoff: float = NGramLanguageModel.DEFAULT_BACKOFF,
                 lmWeight: float = DEFAULT_LM_WEIGHT,
                 pruneIdentity: bool = True,
                 maxSource: int = DEFAULT_MAX_SOURCE,
                 maxTarget: int = DEFAULT_MAX_TARGET):
        if alpha < 0.0:
            raise ValueError(f'Smoothing constant must be non-negative, not {alpha}')
        if not (0.0 <= identityWeight <= 1.0):
            raise ValueError(f'Identity weight must be in [0, 1], not {identityWeight}')
        if lmOrder < 1:
            raise ValueError(f'Language model order must be at least 1, not {lmOrder}')
        if not (0.0 < backoff <= 1.0):
            raise ValueError(f'Backoff factor must be in (0, 1], not {backoff}')
        if lmWeight < 0.0:
            raise ValueError(f'Language model weight must be non-negative, not {lmWeight}')
        if maxSource < 1 or maxTarget < 1:
            raise ValueError(f'Phrase length limits must be positive, not {maxSource}/{maxTarget}')
        self._alpha = alpha
        self._identityWeight = identityWeight
        self._lmOrder = lmOrder
        self._backoff = backoff
        self._lmWeight = lmWeight
        self._pruneIdentity = pruneIdentity
        self._maxSource = maxSource
        self._maxTarget = maxTarget

    def alpha(self) -> float:
        return self._alpha

    def identityWeight(self) -> float:
        return self._identityWeight

    def lmOrder(self) -> int:
        return self._lmOrder

    def backoff(self) -> float:
        return self._backoff

    def lmWeight(self) -> float:
        return self._lmWeight

    def pruneIdentity(self) -> bool:
        return self._pruneIdentity

    def maxSource(self) -> int:
        return self._maxSource

    def maxTarget(self) -> int:
        return self._maxTarget


class DecodeConfig(object):
    '''Configuration for decoding. Greedy decoding is beam search with a
    beam of one.

    :param mode: the decoding mode, :attr:`GREEDY` (the default) or :attr:`BEAM`
    :param beamSize: the beam size used in beam mode (default 4)
    :param lmWeight: language model weight overriding the model's own (optional)'''

    GREEDY: Final[str] = 'greedy'     #: Greedy decoding.
    BEAM: Final[str] = 'beam'         #: Beam search.

    DEFAULT_BEAM_SIZE: Final[int] = 4   #: Default beam size.

    def __init__(self, mode: str = GREEDY, beamSize: int = DEFAULT_BEAM_SIZE, lmWeight: Optional[float] = None):
        if mode not in DecodeConfig.modes():
            raise ValueError(f'Unknown decoding mode {mode}')
        if beamSize < 1:
            raise ValueError(f'Beam size must be at least 1, not {beamSize}')
        if lmWeight is not None and lmWeight < 0.0:
            raise ValueError(f'Language model weight must be non-negative, not {lmWeight}')
        self._mode = mode
        self._beamSize = beamSize
        self._lmWeight = lmWeight

    @staticmethod
    def modes() -> List[str]:
        return [DecodeConfig.GREEDY, DecodeConfig.BEAM]

    def mode(self) -> str:
        return self._mode

    def beamSize(self) -> int:
        return self._beamSize

    def effectiveBeamSize(self) -> int:
        '''Return the beam actually searched with: one for greedy decoding.

        :returns: the beam size'''
        return 1 if self._mode == DecodeConfig.GREEDY else self._beamSize

    def lmWeight(self) -> Optional[float]:
        return self._lmWeight


# ---------- The model ----------

class TransductionModel(object):
    '''A colloquial-to-standard transducer made of a phrase table and an
    n-gram language model of standard text.

    Each colloquial phrase of one or two tokens maps to a list of
    standard phrases of one to three tokens with their log conditional
    probabilities, sorted best first. A trained model is never modified.

    :param phraseTable: the phrase table
    :param lm: the language model
    :param lmWeight: the weight of the language model (default 1.0)
    :param alpha: the smoothing constant the table was built with
    :param identityWeight: the identity weight the table was built with
    :param ruleHash: digest of the rule file the training corpus came from'''

    def __init__(self, phraseTable: PhraseTable, lm: NGramLanguageModel,
                 lmWeight: float = TrainingConfig.DEFAULT_LM_WEIGHT,
                 alpha: float = TrainingConfig.DEFAULT_ALPHA,
                 identityWeight: float = TrainingConfig.DEFAULT_IDENTITY_WEIGHT,
                 ruleHash: Optional[str] = None):
        if lmWeight < 0.0:
            raise ValueError(f'Language model weight must be non-negative, not {lmWeight}')
        for (src, cands) in phraseTable.items():
            for (_, lp) in cands:
                if not (lp <= 0.0) or math.isinf(lp):
                    raise ValueError(f'Probability of a candidate for {" ".join(src)} is not in (0, 1]')
        self._table = phraseTable
        self._lm = lm
        self._lmWeight = lmWeight
        self._alpha = alpha
        self._identityWeight = identityWeight
        self._ruleHash = ruleHash
        self._maxSource = max([len(src) for src in phraseTable.keys()], default=1)

    def phraseTable(self) -> PhraseTable:
        return self._table

    def languageModel(self) -> NGramLanguageModel:
        return self._lm

    def lmWeight(self) -> float:
        return self._lmWeight

    def alpha(self) -> float:
        return self._alpha

    def identityWeight(self) -> float:
        return self._identityWeight

    def ruleHash(self) -> Optional[str]:
        return self._ruleHash

    def maxSourceLength(self) -> int:
        return self._maxSource

    def candidates(self, src: Phrase) -> List[Candidate]:
        '''Return the standard candidates of a colloquial phrase.

        :param src: the colloquial phrase
        :returns: the candidates, best first, or an empty list'''
        return self._table.get(tuple(src), [])

    def knows(self, src: Phrase) -> bool:
        return tuple(src) in self._table

    def __len__(self) -> int:
        return len(self._table)


# ---------- Training ----------

def _alignPair(pair: AlignedPair, rules: Optional[RuleSet]) -> Optional[List[Tuple[Optional[str], Tuple[int, int], Tuple[int, int]]]]:
    std = pair.standard()
    col = pair.colloquial()
    try:
        if rules is not None:
            if replayTrace(std, pair.trace(), rules) != col:
                return None
        alignment = fullAlignment(pair.trace(), len(std), len(col))
    except TraceException:
        return None
    for (rid, (a, _), (p, _)) in alignment:
        if rid is None and std[a] != col[p]:
            return None
    return alignment


class PhraseCounts(object):
    '''Integer counts of aligned phrases drawn from a corpus. Rule spans
    give colloquial-to-standard phrase pairs and copied tokens give
    identity counts. Counts from shards of a corpus can be merged in
    any order with the same result.

    :param cfg: the training configuration (defaults if omitted)'''

    def __init__(self, cfg: Optional[TrainingConfig] = None):
        if cfg is None:
            cfg = TrainingConfig()
        self._cfg = cfg
        self._pairs: Counter = Counter()
        self._copies: Counter = Counter()
        self.accepted = 0
        self.rejected = 0
        self.oversized = 0

    def pairCounts(self) -> Dict[Tuple[Phrase, Phrase], int]:
        return self._pairs

    def copyCounts(self) -> Dict[Phrase, int]:
        return self._copies

    def addPair(self, pair: AlignedPair, rules: Optional[RuleSet] = None) -> bool:
        '''Count the phrases of an aligned pair. The pair's trace is
        replayed against the rules if they are given, and otherwise
        just checked for consistency with the two sentences.

        :param pair: the pair
        :param rules: the rules the corpus was generated with (optional)
        :returns: True if the pair was counted, False if it was rejected'''
        alignment = _alignPair(pair, rules)
        if alignment is None:
            self.rejected += 1
            logger.debug(f'Rejected pair {pair}')
            return False
        self.accepted += 1
        std = pair.standard()
        col = pair.colloquial()
        for (rid, (a, b), (p, q)) in alignment:
            if rid is None:
                self._copies[(col[p],)] += 1
            elif q - p > self._cfg.maxSource() or b - a > self._cfg.maxTarget():
                self.oversized += 1
                logger.debug(f'Span {rid} over the phrase length limits')
            else:
                self._pairs[(tuple(col[p:q]), tuple(std[a:b]))] += 1
        return True

    def merge(self, other: 'PhraseCounts'):
        '''Add another set of counts into this one.

        :param other: the other counts'''
        self._pairs.update(other._pairs)
        self._copies.update(other._copies)
        self.accepted += other.accepted
        self.rejected += other.rejected
        self.oversized += other.oversized

    def phraseTable(self) -> PhraseTable:
        '''Normalise the counts into a phrase table. A candidate standard
        phrase t of a colloquial phrase s gets weight w(t), its rule count
        plus the identity weight times the copy count if t is s itself,
        and probability (w(t) + alpha) / (W + alpha K) where W is the
        total weight and K the number of candidates.

        :returns: the phrase table'''
        alpha = self._cfg.alpha()
        iw = self._cfg.identityWeight()
        weights: Dict[Phrase, Dict[Phrase, float]] = dict()
        for ((src, tgt), c) in self._pairs.items():
            weights.setdefault(src, dict())[tgt] = float(c)
        for (src, c) in self._copies.items():
            if src in weights:
                weights[src][src] = weights[src].get(src, 0.0) + iw * c
            elif not self._cfg.pruneIdentity():
                weights[src] = {src: iw * c}

        table: PhraseTable = dict()
        for src in sorted(weights.keys()):
            ws = [(tgt, weights[src][tgt]) for tgt in sorted(weights[src].keys())]
            total = math.fsum([w for (_, w) in ws]) + alpha * len(ws)
            if total <= 0.0:
                continue
            cands = [(tgt, math.log((w + alpha) / total)) for (tgt, w) in ws if w + alpha > 0.0]
            cands.sort(key=lambda c: (-c[1], c[0]))
            table[src] = cands
        return table


def _countChunk(pairs: List[AlignedPair], cfg: TrainingConfig, rules: Optional[RuleSet]) -> Tuple[PhraseCounts, NGramLanguageModel]:
    counts = PhraseCounts(cfg)
    lm = NGramLanguageModel(cfg.lmOrder(), cfg.backoff())
    for pair in pairs:
        if counts.addPair(pair, rules):
            lm.addSentence(pair.standard())
    return (counts, lm)


def train(pairs: Iterable[AlignedPair], cfg: Optional[TrainingConfig] = None,
          rules: Optional[RuleSet] = None, jobs: int = 1) -> TransductionModel:
    '''Train a transduction model from an aligned corpus. The phrase
    table comes from the rule spans and copied tokens of each pair, and
    the language model from the standard sides. Pairs whose traces don't
    check out are rejected and counted.

    Counting is done in shards, in parallel if more than one job is
    requested; the model doesn't depend on the number of jobs.

    :param pairs: the aligned pairs
    :param cfg: the training configuration (defaults if omitted)
    :param rules: the rules the corpus was generated with, to replay traces (optional)
    :param jobs: the number of jobs (default 1)
    :returns: the model'''
    if cfg is None:
        cfg = TrainingConfig()
    ps = list(pairs)
    counts = PhraseCounts(cfg)
    lm = NGramLanguageModel(cfg.lmOrder(), cfg.backoff())
    for (c, l) in runChunks(_countChunk, [(chunk, cfg, rules) for chunk in chunked(ps)], jobs):
        counts.merge(c)
        lm.merge(l)
    if counts.rejected > 0:
        logger.warning(f'Rejected {counts.rejected} of {len(ps)} pairs with invalid traces')
    table = counts.phraseTable()
    m = TransductionModel(table, lm, lmWeight=cfg.lmWeight(), alpha=cfg.alpha(), identityWeight=cfg.identityWeight(),
                          ruleHash=None if rules is None else rules.digest())
    logger.info(f'Trained model on {counts.accepted} pairs: {len(table)} colloquial phrases, {len(lm.counts())} n-grams')
    return m


# ---------- Decoding ----------

class _Hypothesis(object):
    '''A partial decoding: the standard tokens so far, their score,
    and the language model history they leave.'''

    def __init__(self, score: float, output: Phrase, history: Phrase):
        self.score = score
        self.output = output
        self.history = history

    def key(self) -> Tuple[float, Phrase]:
        # best first, ties broken by the output
        return (-self.score, self.output)


def _search(colloquial: TokenSequence, m: TransductionModel, beam: int, lw: float) -> _Hypothesis:
    lm = m.languageModel()
    n = len(colloquial)
    stacks: List[Dict[Phrase, _Hypothesis]] = [dict() for _ in range(n + 1)]
    stacks[0][lm.startState()] = _Hypothesis(0.0, (), lm.startState())

    def push(j: int, h: _Hypothesis):
        # recombine hypotheses leaving the same history
        old = stacks[j].get(h.history)
        if old is None or h.key() < old.key():
            stacks[j][h.history] = h

    for i in range(n):
        live = sorted(stacks[i].values(), key=lambda h: h.key())[:beam]
        for h in live:
            for k in range(1, min(m.maxSourceLength(), n - i) + 1):
                src = tuple(colloquial[i:i + k])
                cands = m.candidates(src)
                if len(cands) == 0:
                    if k > 1:
                        continue
                    # copy an unknown token
                    cands = [(src, UnknownPenalty)]
                for (tgt, lp) in cands:
                    score = h.score + lp
                    history = h.history
                    for w in tgt:
                        score += lw * lm.logProb(w, history)
                        history = lm.advance(history, w)
                    push(i + k, _Hypothesis(score, h.output + tgt, history))

    finals = [_Hypothesis(h.score + lw * lm.logProb(NGramLanguageModel.EOS, h.history), h.output, h.history)
              for h in stacks[n].values()]
    return min(finals, key=lambda h: h.key())


def decode(colloquial: TokenSequence, m: TransductionModel, cfg: Optional[DecodeConfig] = None) -> Tuple[TokenSequence, float]:
    '''Decode a colloquial sentence, returning the best standard sentence
    found together with its model score.

    The search runs left to right over segmentations of the input into
    phrases of one or two tokens, keeping the best hypotheses at each
    position and recombining those with the same language model history.
    A beam of size B is searched as beams of sizes 1, 2, 4, ... up to B,
    keeping the best result, so that a wider beam never scores worse.
    Ties go to the lexicographically smaller output.

    :param colloquial: the colloquial tokens
    :param m: the model
    :param cfg: the decoding configuration (defaults if omitted)
    :returns: a pair of the standard tokens and their score'''
    if cfg is None:
        cfg = DecodeConfig()
    lw = m.lmWeight() if cfg.lmWeight() is None else cfg.lmWeight()
    tokens = untagSequence(colloquial)
    beam = cfg.effectiveBeamSize()
    widths = []
    b = 1
    while b < beam:
        widths.append(b)
        b *= 2
    widths.append(beam)
    best = min([_search(tokens, m, w, lw) for w in widths], key=lambda h: h.key())
    return (list(best.output), best.score)


def standardize(colloquial: TokenSequence, m: TransductionModel, cfg: Optional[DecodeConfig] = None) -> TokenSequence:
    '''Standardise a colloquial sentence. Tokens the model doesn't know
    are copied through.

    :param colloquial: the normalised and tokenised colloquial sentence
    :param m: the model
    :param cfg: the decoding configuration (defaults to greedy)
    :returns: the standard tokens'''
    (tokens, _) = decode(colloquial, m, cfg)
    return tokens


# ---------- Language tags ----------

def tagSequence(seq: TokenSequence, tag: str = AlignedPair.SOURCE_TAG) -> TokenSequence:
    '''Prepend a language tag to a sequence, for export to an external
    system that expects the tagged convention.

    :param seq: the tokens
    :param tag: the tag (defaults to the colloquial tag)
    :returns: the tagged tokens'''
    return [tag] + list(seq)


def untagSequence(seq: TokenSequence) -> TokenSequence:
    '''Strip any leading language tags from a sequence.

    :param seq: the tokens
    :returns: the tokens without tags'''
    tags = [AlignedPair.SOURCE_TAG, AlignedPair.TARGET_TAG]
    i = 0
    while i < len(seq) and seq[i] in tags:
        i += 1
    return list(seq[i:])
