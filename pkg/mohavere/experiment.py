# Base class for evaluation experiments
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
import traceback
import logging
from datetime import datetime
from mohavere import Logger
from typing import Set, Dict, Any
if sys.version_info >= (3, 8):
    from typing import Final
else:
    from typing_extensions import Final


logger = logging.getLogger(Logger)


# Type aliases
ResultsDict = Dict[str, Dict[str, Any]]     #: Type of results dicts.
ExperimentalParameters = Dict[str, Any]     #: Type of experimental parameter dicts.


class Experiment(object):
    """Base class for an :term:`experiment`, a single evaluation run
    conducted by a :term:`lab`.

    An experiment is given its parameters with :meth:`set` and then
    :meth:`run`, which calls :meth:`setUp`, :meth:`do`, and
    :meth:`tearDown` in turn and returns a :term:`results dict` holding
    the parameters, the results returned by :meth:`do`, and metadata
    about the run: its timings, whether it succeeded, and any exception
    it raised. Sub-classes override :meth:`do`.
    """

    # Top-level structure for results dicts
    METADATA: Final[str] = 'metadata'        #: Results dict key for metadata.
    PARAMETERS: Final[str] = 'parameters'    #: Results dict key for the parameters of the run.
    RESULTS: Final[str] = 'results'          #: Results dict key for the results of the run.

    # Standard metadata elements reported
    EXPERIMENT: Final[str] = 'mohavere.experiment.classname'              #: Metadata element for the class name of the experiment.
    START_TIME: Final[str] = 'mohavere.experiment.start_time'             #: Metadata element for the datetime the run started.
    END_TIME: Final[str] = 'mohavere.experiment.end_time'                 #: Metadata element for the datetime the run ended.
    ELAPSED_TIME: Final[str] = 'mohavere.experiment.elapsed_time'         #: Metadata element for the overall time of the run in seconds.
    SETUP_TIME: Final[str] = 'mohavere.experiment.setup_time'             #: Metadata element for the time spent setting up in seconds.
    EXPERIMENT_TIME: Final[str] = 'mohavere.experiment.experiment_time'   #: Metadata element for the time spent in :meth:`do` in seconds.
    TEARDOWN_TIME: Final[str] = 'mohavere.experiment.teardown_time'       #: Metadata element for the time spent tearing down in seconds.
    STATUS: Final[str] = 'mohavere.experiment.status'                     #: Metadata element, True if the run succeeded.
    EXCEPTION: Final[str] = 'mohavere.experiment.exception'               #: Metadata element holding the exception of a failed run.
    TRACEBACK: Final[str] = 'mohavere.experiment.traceback'               #: Metadata element holding the traceback of a failed run.

    StandardMetadata: Set[str]                 #: The metadata elements always captured.
    StandardMetadataTypes: Dict[str, type]     #: Types of the standard metadata.

    def __init__(self):
        self._metadata: Dict[str, Any] = dict()
        self._parameters: ExperimentalParameters = dict()
        self._results: Dict[str, Any] = dict()

    @classmethod
    def _init_statics(cls):
        '''Initialise the static members that need the class to exist.'''
        cls.StandardMetadataTypes = {cls.EXPERIMENT: str,
                                     cls.START_TIME: datetime,
                                     cls.END_TIME: datetime,
                                     cls.ELAPSED_TIME: float,
                                     cls.SETUP_TIME: float,
                                     cls.EXPERIMENT_TIME: float,
                                     cls.TEARDOWN_TIME: float,
                                     cls.STATUS: bool,
                                     cls.EXCEPTION: str,
                                     cls.TRACEBACK: str}
        cls.StandardMetadata = set(cls.StandardMetadataTypes.keys())

    @staticmethod
    def resultsdict() -> ResultsDict:
        '''Create an empty results dict.

        :returns: the results dict'''
        return {Experiment.PARAMETERS: dict(),
                Experiment.METADATA: dict(),
                Experiment.RESULTS: dict()}

    # ---------- Configuration ----------

    def set(self, params: ExperimentalParameters) -> 'Experiment':
        """Set the parameters for the next run.

        :param params: the parameters
        :returns: the experiment"""
        self.deconfigure()
        self.configure(params)
        return self

    def configure(self, params: ExperimentalParameters):
        """Configure the experiment. Sub-classes overriding this should
        call the base method.

        :param params: the parameters"""
        self._parameters = dict(params)

    def deconfigure(self):
        """Forget the current parameters."""
        self._parameters = dict()

    # ---------- The protocol ----------

    def setUp(self, params: ExperimentalParameters):
        """Set up a run. The default does nothing.

        :param params: the parameters"""
        pass

    def tearDown(self):
        """Tear down a run. The default does nothing."""
        pass

    def do(self, params: ExperimentalParameters) -> Dict[str, Any]:
        """Perform the body of the run. The default does nothing.

        :param params: the parameters
        :returns: a dict of results"""
        return dict()

    def report(self, params: ExperimentalParameters, meta: Dict[str, Any], res: Dict[str, Any]) -> ResultsDict:
        """Package the parameters, metadata, and results of a run.

        :param params: the parameters
        :param meta: the metadata
        :param res: the results
        :returns: a :term:`results dict`"""
        rc = Experiment.resultsdict()
        rc[Experiment.PARAMETERS] = dict(params)
        rc[Experiment.METADATA] = dict(meta)
        rc[Experiment.RESULTS] = res
        return rc

    def run(self, fatal: bool = False) -> ResultsDict:
        """Run the experiment with the parameters given to :meth:`set`.
        An exception raised by the run is recorded in the metadata
        together with its traceback, and also re-raised if ``fatal``
        is True. If :meth:`do` fails, :meth:`tearDown` is still called.

        :param fatal: re-raise any exception (default False)
        :returns: a :term:`results dict`"""
        params = self.parameters()
        self._metadata = {self.EXPERIMENT: f'{self.__class__.__module__}.{self.__class__.__name__}'}
        self._results = dict()
        res: Dict[str, Any] = dict()
        started = datetime.now()
        self._metadata[self.START_TIME] = started
        setUpDone = doDone = None
        try:
            self.setUp(params)
            setUpDone = datetime.now()
            self._metadata[self.SETUP_TIME] = (setUpDone - started).total_seconds()
            res = self.do(params)
            doDone = datetime.now()
            self._metadata[self.EXPERIMENT_TIME] = (doDone - setUpDone).total_seconds()
            self.tearDown()
            ended = datetime.now()
            self._metadata[self.TEARDOWN_TIME] = (ended - doDone).total_seconds()
            self._metadata[self.STATUS] = True
        except Exception as e:
            tb = traceback.format_exc()
            if setUpDone is not None and doDone is None:
                try:
                    self.tearDown()
                except Exception as f:
                    logger.error(f'Caught exception in teardown (ignored): {f}')
            ended = datetime.now()
            self._metadata[self.STATUS] = False
            self._metadata[self.EXCEPTION] = e
            self._metadata[self.TRACEBACK] = tb
            if fatal:
                raise e
            logger.error(f'Caught exception in experiment: {e}')
        self._metadata[self.END_TIME] = ended
        self._metadata[self.ELAPSED_TIME] = (ended - started).total_seconds()

        self._results = res
        return self.report(params, self._metadata, res)

    # ---------- Accessing results ----------

    def __getitem__(self, k: str) -> Any:
        """Return one of the results of the last run.

        :param k: the result name
        :returns: the value"""
        return self._results[k]

    def success(self) -> bool:
        """Test whether the last run succeeded. False if there hasn't been one.

        :returns: True if the run succeeded"""
        return self._metadata.get(self.STATUS, False)

    def failed(self) -> bool:
        '''Test whether the last run failed. False if there hasn't been one.

        :returns: True if the run failed'''
        return self.STATUS in self._metadata and not self._metadata[self.STATUS]

    def experimentalResults(self) -> Dict[str, Any]:
        return self._results

    def parameters(self) -> ExperimentalParameters:
        return self._parameters

    def metadata(self) -> Dict[str, Any]:
        return self._metadata
