# Initialisation for mohavere package
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

"""`mohavere` is a Python module for standardising colloquial Iranian
Persian. Persian has two written registers: the standard one assumed
by most language tools, and a colloquial one full of contracted
"broken" word forms that dominates web text, chat, and fiction
dialogue. `mohavere` converts text from the latter to the former.

There is no parallel colloquial/standard text to learn from, so
`mohavere` makes some. A :term:`rule set` describes how standard word
forms break into colloquial ones; applying it to standard text, while
randomly skipping some conversions, gives a synthetic
:term:`parallel corpus` of mixed-register sentences aligned with their
originals. A :term:`transduction model` is trained on the corpus
(a phrase table of colloquial-to-standard conversions together with an
n-gram language model of standard text) and used to decode colloquial
sentences back into standard ones. The same rules, read backwards,
give a rule-based :term:`baseline` to compare against.

Everything is evaluated with corpus BLEU against hand-standardised
references, either at the level of word forms or of style, and
experiments can be run in a :term:`lab` that assembles the results
into a table.

"""

# Package version
__version__ = '0.1.0'

# String written into every persistent model file
PackageContactInfo = 'Created by mohavere, colloquial Persian standardisation <https://pypi.org/project/mohavere/>'

# Library-specific logger name
Logger = 'mohavere'

# Text
from .normalizer import NormalizationConfig, TokenSequence, normalizeText, tokenize, detokenize, prepare, ZWNJ, PUNCTUATION
from .tagger import Tagger, LexiconTagger

# Rules
from .rules import RewriteRule, RuleSet, RuleApplication, GlobPattern, RuleFileException, DuplicateRuleException, TraceException, DefaultRuleFile, parseRuleFile, applyRules, replayTrace, fullAlignment, invertRule, invertRuleSet

# Synthetic corpora
from .generator import GeneratorConfig, AlignedPair, GenerationSummary, CorpusException, breakSentence, generateCorpus, readCorpus, splitCorpus, formatTrace, parseTrace, rngFor

# Models
from .languagemodel import NGramLanguageModel
from .model import TrainingConfig, DecodeConfig, PhraseCounts, TransductionModel, train, decode, standardize, tagSequence, untagSequence
from .modelfile import ModelFormatException, ModelVersionException, saveModel, loadModel, modelMetadata

# Baseline and evaluation
from .baseline import BaselinePolicy, PolicyException, ruleStandardize, frequencyTable
from .bleu import BleuScore, BleuException, corpusBleu
from .experiment import Experiment, ResultsDict, ExperimentalParameters
from .harness import EvalRecord, EvalReport, DatasetException, SystemFailureException, IdentitySystem, RuleSystem, ModelSystem, datasetPath, loadDataset, runSystem, evaluate, identitySystem, ruleSystem, modelSystem
from .lab import StandardisationExperiment, EvaluationLab

# Configuration
from .config import PipelineConfig, ConfigException

# Late and/or complex initialisation
Experiment._init_statics()
