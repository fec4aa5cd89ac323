# Generate a synthetic corpus, train on it, and evaluate on its held-out part
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

# usage: python utils/synthetic-pipeline.py <standard text> <work directory> [<held out> [<jobs>]]

import os
import sys
import logging
import mohavere

logging.basicConfig(level=logging.INFO, format='%(levelname)s: %(message)s')

text = sys.argv[1]
work = sys.argv[2]
heldOut = int(sys.argv[3]) if len(sys.argv) > 3 else 2000
jobs = int(sys.argv[4]) if len(sys.argv) > 4 else 1
os.makedirs(work, exist_ok=True)
corpus = os.path.join(work, 'corpus')
trainPrefix = os.path.join(work, 'train')
testPrefix = os.path.join(work, 'test')
modelFile = os.path.join(work, 'model.h5')

rules = mohavere.parseRuleFile()
summary = mohavere.generateCorpus(text, corpus, mohavere.GeneratorConfig(), rules, jobs=jobs)
print(summary)
mohavere.splitCorpus(corpus, heldOut, trainPrefix, testPrefix)

m = mohavere.train(mohavere.readCorpus(trainPrefix), rules=rules, jobs=jobs)
mohavere.saveModel(m, modelFile, {'corpus': trainPrefix})

# the held-out broken side against its standard original
records = [mohavere.EvalRecord(p.colloquial(), p.standard(), split='synthetic')
           for p in mohavere.readCorpus(testPrefix)]
standard = [p.standard() for p in mohavere.readCorpus(trainPrefix)]

lab = mohavere.EvaluationLab(jobs)
policy = mohavere.BaselinePolicy(mohavere.BaselinePolicy.MOST_FREQUENT, mohavere.frequencyTable(standard))
lab.addSystem('Rules', mohavere.ruleSystem(mohavere.invertRuleSet(rules), policy))
lab.addSystem('Model', mohavere.modelSystem(m))
lab.addSplit('synthetic', records)
lab.runAll()
print(lab.dataframe().to_string(na_rep='-'))
