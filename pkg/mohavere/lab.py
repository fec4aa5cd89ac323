# A lab for comparing standardisers across splits
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
from pandas import DataFrame                                   # type: ignore
from mohavere import Logger, Experiment, ExperimentalParameters, ResultsDict
from mohavere.harness import EvalRecord, System, evaluate, identitySystem
from mohavere.parallel import runChunks
from typing import Dict, List, Any, Tuple
if sys.version_info >= (3, 8):
    from typing import Final
else:
    from typing_extensions import Final


logger = logging.getLogger(Logger)


class StandardisationExperiment(Experiment):
    '''An experiment evaluating one standardiser on one split.

    :param system: the standardiser
    :param records: the records to evaluate on'''

    # Parameter and result names
    SYSTEM: Final[str] = 'system'
    SPLIT: Final[str] = 'split'
    RECORDS: Final[str] = 'records'
    BLEU_WORD: Final[str] = 'bleu_word'
    BLEU_STYLE: Final[str] = 'bleu_style'
    IDENTITY_BLEU_WORD: Final[str] = 'identity_bleu_word'
    IDENTITY_BLEU_STYLE: Final[str] = 'identity_bleu_style'

    def __init__(self, system: System, records: List[EvalRecord]):
        super().__init__()
        self._system = system
        self._records = records

    def do(self, params: ExperimentalParameters) -> Dict[str, Any]:
        report = evaluate(self._system, self._records, name=params[self.SYSTEM], split=params[self.SPLIT])
        return {self.RECORDS: report.records(),
                self.BLEU_WORD: report.score(EvalRecord.WORD).score(),
                self.BLEU_STYLE: report.score(EvalRecord.STYLE).score(),
                self.IDENTITY_BLEU_WORD: report.identityScore(EvalRecord.WORD).score(),
                self.IDENTITY_BLEU_STYLE: report.identityScore(EvalRecord.STYLE).score()}


def _runExperiment(e: Experiment, params: ExperimentalParameters) -> ResultsDict:
    return e.set(params).run()


class EvaluationLab(object):
    '''A lab that evaluates every standardiser it is given on every split
    it is given, and collects the scores into a table with a row per
    system and a column per split and reference type. The no-edit
    system is always included, as the "Original Data" row.

    Experiments run in parallel if more than one job is requested.

    :param jobs: the number of jobs (default 1)'''

    ORIGINAL_DATA: Final[str] = 'Original Data'    #: Row label of the no-edit system.

    def __init__(self, jobs: int = 1):
        self._jobs = jobs
        self._systems: Dict[str, System] = {self.ORIGINAL_DATA: identitySystem()}
        self._splits: Dict[str, List[EvalRecord]] = dict()
        self._results: List[ResultsDict] = []

    def addSystem(self, name: str, system: System):
        '''Add a standardiser.

        :param name: the row label for the system
        :param system: the standardiser'''
        self._systems[name] = system

    def addSplit(self, split: str, records: List[EvalRecord]):
        '''Add a split of the evaluation data.

        :param split: the split name
        :param records: the records'''
        self._splits[split] = records

    def systems(self) -> List[str]:
        return list(self._systems.keys())

    def splits(self) -> List[str]:
        return list(self._splits.keys())

    def experiments(self) -> List[Tuple[Experiment, ExperimentalParameters]]:
        '''Return the experiments to run, one per system and split.

        :returns: a list of (experiment, parameters) pairs'''
        return [(StandardisationExperiment(system, self._splits[split]),
                 {StandardisationExperiment.SYSTEM: name, StandardisationExperiment.SPLIT: split})
                for (name, system) in self._systems.items()
                for split in self._splits.keys()]

    def runAll(self) -> List[ResultsDict]:
        '''Run all the experiments, replacing any earlier results. Every
        experiment is run even if some fail; the results are kept, and the
        exception of the first failed experiment is then re-raised.

        :returns: the results dicts
        :raises SystemFailureException: if a standardiser failed on a record'''
        es = self.experiments()
        logger.info(f'Running {len(es)} evaluation experiments')
        self._results = runChunks(_runExperiment, es, self._jobs)
        failures = [rc for rc in self._results if not rc[Experiment.METADATA][Experiment.STATUS]]
        for rc in failures:
            p = rc[Experiment.PARAMETERS]
            logger.error(f'Experiment {p[StandardisationExperiment.SYSTEM]}/{p[StandardisationExperiment.SPLIT]} failed')
        if len(failures) > 0:
            raise failures[0][Experiment.METADATA][Experiment.EXCEPTION]
        return self._results

    def results(self) -> List[ResultsDict]:
        return self._results

    def dataframe(self) -> DataFrame:
        '''Return the scores of the successful experiments as a table, to
        one decimal place. Rows are systems in the order they were added;
        columns are ``<split>/<ref>``.

        :returns: the table'''
        rows: Dict[str, Dict[str, float]] = {name: dict() for name in self._systems.keys()}
        for rc in self._results:
            if not rc[Experiment.METADATA][Experiment.STATUS]:
                continue
            p = rc[Experiment.PARAMETERS]
            r = rc[Experiment.RESULTS]
            split = p[StandardisationExperiment.SPLIT]
            row = rows[p[StandardisationExperiment.SYSTEM]]
            row[f'{split}/{EvalRecord.WORD}'] = round(r[StandardisationExperiment.BLEU_WORD], 1)
            row[f'{split}/{EvalRecord.STYLE}'] = round(r[StandardisationExperiment.BLEU_STYLE], 1)
        columns = [f'{s}/{rt}' for s in self._splits.keys() for rt in EvalRecord.referenceTypes()]
        return DataFrame([[row.get(c) for c in columns] for row in rows.values()],
                         index=list(rows.keys()), columns=columns)
