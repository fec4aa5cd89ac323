# Pipeline configuration files
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
from mohavere import Logger, NormalizationConfig, GeneratorConfig, TrainingConfig, DecodeConfig
from typing import Dict, List, Set, Any, Optional, Callable
if sys.version_info >= (3, 8):
    from typing import Final
else:
    from typing_extensions import Final


logger = logging.getLogger(Logger)


class ConfigException(Exception):
    '''An exception raised for an unknown configuration key or a value
    that can't be parsed.

    :param key: the key
    :param msg: the problem'''

    def __init__(self, key: str, msg: str):
        super().__init__(f'{key}: {msg}')
        self._key = key

    def key(self) -> str:
        return self._key


def _optionalInt(s: str) -> Optional[int]:
    return None if s == '-' else int(s)


def _optionalStr(s: str) -> Optional[str]:
    return None if s == '-' else s


def _mode(s: str) -> str:
    if s not in DecodeConfig.modes():
        raise ValueError(f'mode must be one of {", ".join(DecodeConfig.modes())}')
    return s


class PipelineConfig(object):
    '''The resolved configuration of a pipeline run, as a flat set of
    keys. Configurations are read from and written to UTF-8 files of
    ``key=value`` lines, in which blank lines and lines starting with
    ``#`` are ignored. An optional value is written ``-`` when absent.

    Values are checked by building the per-stage configurations from
    them, so an out-of-range value is reported against its key.

    :param values: initial values overriding the defaults (optional)'''

    RULE_FILE: Final[str] = 'rule_file'
    SEED: Final[str] = 'seed'
    SKIP_PROBABILITY: Final[str] = 'skip_probability'
    MAX_SENTENCES: Final[str] = 'max_sentences'
    ALPHA: Final[str] = 'alpha'
    LM_ORDER: Final[str] = 'lm_order'
    LM_WEIGHT: Final[str] = 'lm_weight'
    BEAM: Final[str] = 'beam'
    MODE: Final[str] = 'mode'
    JOBS: Final[str] = 'jobs'

    #: Defaults of the pipeline keys.
    Defaults: Final[Dict[str, Any]] = {RULE_FILE: None,
                                       SEED: 0,
                                       SKIP_PROBABILITY: GeneratorConfig.DEFAULT_SKIP_PROBABILITY,
                                       MAX_SENTENCES: None,
                                       ALPHA: TrainingConfig.DEFAULT_ALPHA,
                                       LM_ORDER: 3,
                                       LM_WEIGHT: TrainingConfig.DEFAULT_LM_WEIGHT,
                                       BEAM: DecodeConfig.DEFAULT_BEAM_SIZE,
                                       MODE: DecodeConfig.GREEDY,
                                       JOBS: 1}

    #: Parsers for the textual values of the pipeline keys.
    Parsers: Final[Dict[str, Callable[[str], Any]]] = {RULE_FILE: _optionalStr,
                                                       SEED: int,
                                                       SKIP_PROBABILITY: float,
                                                       MAX_SENTENCES: _optionalInt,
                                                       ALPHA: float,
                                                       LM_ORDER: int,
                                                       LM_WEIGHT: float,
                                                       BEAM: int,
                                                       MODE: _mode,
                                                       JOBS: int}

    def __init__(self, values: Optional[Dict[str, Any]] = None):
        self._values: Dict[str, Any] = dict(self.Defaults)
        self._explicit: Set[str] = set()
        self._values.update({k: NormalizationConfig().asFlags()[k] == 'true' for k in NormalizationConfig.keys()})
        if values is not None:
            self.update(values)

    @staticmethod
    def keys() -> List[str]:
        '''Return all the configuration keys, pipeline keys first.

        :returns: the keys'''
        return list(PipelineConfig.Defaults.keys()) + NormalizationConfig.keys()

    @staticmethod
    def parse(key: str, text: str) -> Any:
        '''Parse the textual value of a key.

        :param key: the key
        :param text: the value
        :returns: the typed value
        :raises ConfigException: if the key is unknown or the value unparsable'''
        text = text.strip()
        try:
            if key in PipelineConfig.Parsers:
                return PipelineConfig.Parsers[key](text)
            elif key in NormalizationConfig.keys():
                return NormalizationConfig.parseFlag(key, text)
        except ValueError as e:
            raise ConfigException(key, f'Bad value {text} ({e})')
        raise ConfigException(key, 'Unknown configuration key')

    def _check(self, key: str):
        try:
            self.generatorConfig()
            self.trainingConfig()
            self.decodeConfig()
            if self._values[self.JOBS] is None:
                raise ValueError('jobs needs a value')
        except ValueError as e:
            raise ConfigException(key, str(e))

    def update(self, values: Dict[str, Any]):
        '''Set several values. String values are parsed.

        :param values: a dict from keys to values
        :raises ConfigException: if a key is unknown or a value is bad'''
        for (k, v) in values.items():
            if k not in self._values:
                raise ConfigException(k, 'Unknown configuration key')
            old = self._values[k]
            self._values[k] = PipelineConfig.parse(k, v) if isinstance(v, str) else v
            try:
                self._check(k)
            except ConfigException:
                self._values[k] = old
                raise
            self._explicit.add(k)

    def __getitem__(self, key: str) -> Any:
        return self._values[key]

    def __setitem__(self, key: str, v: Any):
        self.update({key: v})

    def __contains__(self, key: str) -> bool:
        return key in self._values

    @staticmethod
    def load(path: str) -> 'PipelineConfig':
        '''Load a configuration file over the defaults.

        :param path: the file name
        :returns: the configuration
        :raises ConfigException: if the file can't be read or holds bad keys or values'''
        values: Dict[str, str] = dict()
        try:
            with open(path, 'r', encoding='utf-8') as fh:
                for (n, line) in enumerate(fh):
                    line = line.strip()
                    if len(line) == 0 or line.startswith('#'):
                        continue
                    if '=' not in line:
                        raise ConfigException(path, f'Line {n + 1} is not key=value')
                    (k, v) = line.split('=', 1)
                    values[k.strip()] = v.strip()
        except OSError as e:
            raise ConfigException(path, f'Can\'t read configuration: {e.strerror}')
        cfg = PipelineConfig(values)
        logger.info(f'Loaded configuration from {path}')
        return cfg

    def asDict(self) -> Dict[str, str]:
        '''Return the configuration as textual key=value pairs.

        :returns: a dict from keys to strings'''
        d: Dict[str, str] = dict()
        for k in self.keys():
            v = self._values[k]
            if v is None:
                d[k] = '-'
            elif isinstance(v, bool):
                d[k] = 'true' if v else 'false'
            else:
                d[k] = str(v)
        return d

    def save(self, path: str):
        '''Write the configuration to a file.

        :param path: the file name'''
        with open(path, 'w', encoding='utf-8', newline='\n') as fh:
            for (k, v) in self.asDict().items():
                fh.write(f'{k}={v}\n')

    # ---------- Per-stage configurations ----------

    def normalizationConfig(self) -> NormalizationConfig:
        return NormalizationConfig.fromFlags({k: self.asDict()[k] for k in NormalizationConfig.keys()})

    def generatorConfig(self) -> GeneratorConfig:
        return GeneratorConfig(skipProbability=self._values[self.SKIP_PROBABILITY],
                               seed=self._values[self.SEED],
                               ruleFile=self._values[self.RULE_FILE],
                               maxSentences=self._values[self.MAX_SENTENCES])

    def trainingConfig(self) -> TrainingConfig:
        return TrainingConfig(alpha=self._values[self.ALPHA],
                              lmOrder=self._values[self.LM_ORDER],
                              lmWeight=self._values[self.LM_WEIGHT])

    def isExplicit(self, key: str) -> bool:
        '''Test whether a key was given a value, rather than left at its default.

        :param key: the key
        :returns: True if the key was set'''
        return key in self._explicit

    def decodeConfig(self) -> DecodeConfig:
        '''Return the decoding configuration. The language model weight
        overrides a model's own weight only if it was set explicitly.

        :returns: the decoding configuration'''
        return DecodeConfig(mode=self._values[self.MODE],
                            beamSize=self._values[self.BEAM],
                            lmWeight=self._values[self.LM_WEIGHT] if self.isExplicit(self.LM_WEIGHT) else None)
