# Command-line interface to the standardisation pipeline
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
from functools import wraps
import click
import mohavere
from mohavere.generator import readMeta
from mohavere.modelfile import Version as ModelFileVersion


# Exceptions reported as one-line errors
ExpectedErrors = (mohavere.RuleFileException, mohavere.TraceException, mohavere.CorpusException,
                  mohavere.ModelFormatException, mohavere.ModelVersionException, mohavere.DatasetException,
                  mohavere.SystemFailureException, mohavere.BleuException, mohavere.PolicyException,
                  mohavere.ConfigException, OSError, ValueError)

# Systems that can be evaluated
SYSTEMS = ['identity', 'rules', 'model']


def failsCleanly(f):
    '''Report expected failures of a command as a single line on
    standard error and exit with status 1.'''
    @wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except ExpectedErrors as e:
            click.echo(f'error: {e.__class__.__name__}: {e}', err=True)
            sys.exit(1)
    return wrapper


def resolveConfig(ctx: click.Context, norm=(), **flags) -> mohavere.PipelineConfig:
    '''Resolve the configuration of a command: flags given on the command
    line override values in the configuration file, which override defaults.'''
    path = ctx.obj.get('config') if ctx.obj is not None else None
    cfg = mohavere.PipelineConfig.load(path) if path is not None else mohavere.PipelineConfig()
    cfg.update({k: v for (k, v) in flags.items() if v is not None})
    for kv in norm:
        if '=' not in kv:
            raise click.BadParameter(f'{kv} is not key=value', param_hint='--norm')
        (k, v) = kv.split('=', 1)
        if k not in mohavere.NormalizationConfig.keys():
            raise click.BadParameter(f'Unknown normalisation flag {k}', param_hint='--norm')
        cfg.update({k: v})
    return cfg


def readLines(path: str):
    with click.open_file(path, 'r', encoding='utf-8') as fh:
        return [line.rstrip('\r\n') for line in fh]


def writeLines(path: str, lines):
    with click.open_file(path, 'w', encoding='utf-8') as fh:
        for line in lines:
            fh.write(line + '\n')


def loadRules(cfg: mohavere.PipelineConfig) -> mohavere.RuleSet:
    return mohavere.parseRuleFile(cfg[mohavere.PipelineConfig.RULE_FILE])


def frequencyCorpus(freqCorpus, modelFile):
    '''Find the standard text used to resolve ambiguous inverse rules: the
    one given, or else the standard side of the corpus the model was
    trained on. None if neither is available.'''
    if freqCorpus is not None:
        return freqCorpus
    if modelFile is not None:
        corpus = mohavere.modelMetadata(modelFile).get('corpus')
        if corpus is not None and os.path.exists(corpus + '.fa'):
            return corpus + '.fa'
    return None


def buildRuleSystem(cfg: mohavere.PipelineConfig, freqCorpus, modelFile=None) -> mohavere.RuleSystem:
    inverted = mohavere.invertRuleSet(loadRules(cfg))
    freqCorpus = frequencyCorpus(freqCorpus, modelFile)
    if freqCorpus is not None:
        ncfg = cfg.normalizationConfig()
        table = mohavere.frequencyTable([mohavere.prepare(l, ncfg) for l in readLines(freqCorpus)])
        policy = mohavere.BaselinePolicy(mohavere.BaselinePolicy.MOST_FREQUENT, table)
        logging.getLogger(mohavere.Logger).info(f'Ambiguous inverses resolved by frequency in {freqCorpus}')
    else:
        logging.getLogger(mohavere.Logger).warning('No frequency corpus, ambiguous inverses resolved by rule order')
        policy = mohavere.BaselinePolicy(mohavere.BaselinePolicy.FIRST_LISTED)
    return mohavere.ruleSystem(inverted, policy)


def buildSystem(name: str, cfg: mohavere.PipelineConfig, modelFile, freqCorpus):
    if name == 'identity':
        return mohavere.identitySystem()
    elif name == 'rules':
        return buildRuleSystem(cfg, freqCorpus, modelFile)
    else:
        if modelFile is None:
            raise click.UsageError('The model system needs --model-file')
        return mohavere.modelSystem(mohavere.loadModel(modelFile), cfg.decodeConfig())


def showVersion(ctx: click.Context, param, value):
    if not value or ctx.resilient_parsing:
        return
    click.echo(f'mohavere {mohavere.__version__}')
    click.echo(f'model file format {ModelFileVersion}')
    try:
        click.echo(f'default rules {mohavere.parseRuleFile().digest()}')
    except mohavere.RuleFileException as e:
        click.echo(f'default rules unreadable ({e})')
    ctx.exit()


# Shared options
def generationOptions(f):
    f = click.option('--seed', type=int, default=None, help='Random seed')(f)
    f = click.option('--p', 'skip_probability', type=float, default=None, help='Probability of skipping a conversion')(f)
    f = click.option('--max-sentences', type=int, default=None, help='Stop after this many sentences')(f)
    return f


def decodingOptions(f):
    f = click.option('--model-file', type=click.Path(), default=None, help='Model file')(f)
    f = click.option('--mode', type=click.Choice(mohavere.DecodeConfig.modes()), default=None, help='Decoding mode')(f)
    f = click.option('--beam', type=int, default=None, help='Beam size')(f)
    f = click.option('--lm-weight', type=float, default=None, help='Language model weight')(f)
    f = click.option('--freq-corpus', type=click.Path(), default=None,
                     help='Standard text for resolving ambiguous rules by frequency')(f)
    return f


def rulesOption(f):
    return click.option('--rules', 'rule_file', type=click.Path(), default=None, help='Rule file')(f)


def jobsOption(f):
    return click.option('--jobs', type=int, default=None, help='Number of jobs (0 for all cores)')(f)


def normOption(f):
    return click.option('--norm', multiple=True, help='Normalisation flag as key=value (repeatable)')(f)


@click.group()
@click.option('--version', is_flag=True, callback=showVersion, expose_value=False, is_eager=True,
              help='Show versions and the default rule file hash')
@click.option('-v', '--verbose', count=True, help='Generate verbose output (repeat for extra verbosity)')
@click.option('--config', type=click.Path(), default=None, help='Configuration file of key=value lines')
@click.pass_context
def run(ctx, verbose, config):
    '''Standardise colloquial Persian text.

    The pipeline breaks standard text into synthetic colloquial text
    with rewrite rules, trains a transduction model on the resulting
    parallel corpus, and standardises and evaluates colloquial text
    with the model, the inverted rules, or no edits at all.'''
    level = logging.WARNING if verbose == 0 else (logging.INFO if verbose == 1 else logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr, format='%(levelname)s: %(message)s', force=True)
    ctx.ensure_object(dict)
    ctx.obj['config'] = config


@run.command()
@click.option('--in', 'input', type=click.Path(), default='-', help='Input text (default standard input)')
@click.option('--out', 'output', type=click.Path(), default='-', help='Output text (default standard output)')
@normOption
@click.pass_context
@failsCleanly
def normalize(ctx, input, output, norm):
    '''Normalise text, one sentence per line.'''
    ncfg = resolveConfig(ctx, norm).normalizationConfig()
    writeLines(output, [mohavere.normalizeText(l, ncfg) for l in readLines(input)])


@run.command()
@click.option('--in', 'input', type=click.Path(), default='-', help='Input text (default standard input)')
@click.option('--out', 'output', type=click.Path(), default='-', help='Output text (default standard output)')
@normOption
@click.pass_context
@failsCleanly
def tokenize(ctx, input, output, norm):
    '''Normalise and tokenise text, writing tokens separated by spaces.'''
    ncfg = resolveConfig(ctx, norm).normalizationConfig()
    writeLines(output, [' '.join(mohavere.prepare(l, ncfg)) for l in readLines(input)])


@run.command(name='break')
@click.option('--in', 'input', type=click.Path(), default='-', help='Standard text (default standard input)')
@click.option('--out', 'output', type=click.Path(), default='-', help='Colloquial text (default standard output)')
@click.option('--trace', type=click.Path(), default=None, help='File for the rule applications')
@generationOptions
@rulesOption
@normOption
@click.pass_context
@failsCleanly
def breakText(ctx, input, output, trace, seed, skip_probability, max_sentences, rule_file, norm):
    '''Break standard sentences into colloquial ones. Each line is broken
    as it would be by generate, so the same seed gives the same output.'''
    cfg = resolveConfig(ctx, norm, seed=seed, skip_probability=skip_probability,
                        max_sentences=max_sentences, rule_file=rule_file)
    gcfg = cfg.generatorConfig()
    rs = loadRules(cfg)
    ncfg = cfg.normalizationConfig()
    outs = []
    traces = []
    for (n, line) in enumerate(readLines(input)):
        if gcfg.maxSentences() is not None and len(outs) >= gcfg.maxSentences():
            break
        std = mohavere.prepare(line, ncfg)
        if len(std) == 0:
            logging.getLogger(mohavere.Logger).warning(f'Line {n + 1}: empty, skipped')
            continue
        pair = mohavere.breakSentence(std, rs, gcfg, mohavere.rngFor(gcfg.seed(), n))
        outs.append(' '.join(pair.colloquial()))
        traces.append(mohavere.formatTrace(pair.trace()))
    writeLines(output, outs)
    if trace is not None:
        writeLines(trace, traces)


@run.command()
@click.option('--in', 'input', type=click.Path(), required=True, help='Standard text')
@click.option('--prefix', type=click.Path(), required=True, help='Prefix of the corpus files')
@generationOptions
@rulesOption
@jobsOption
@normOption
@click.pass_context
@failsCleanly
def generate(ctx, input, prefix, seed, skip_probability, max_sentences, rule_file, jobs, norm):
    '''Generate a synthetic parallel corpus from standard text.'''
    cfg = resolveConfig(ctx, norm, seed=seed, skip_probability=skip_probability,
                        max_sentences=max_sentences, rule_file=rule_file, jobs=jobs)
    summary = mohavere.generateCorpus(input, prefix, cfg.generatorConfig(), loadRules(cfg),
                                      cfg.normalizationConfig(), cfg[mohavere.PipelineConfig.JOBS])
    for (k, v) in summary.asDict().items():
        click.echo(f'{k}={v}')


@run.command()
@click.option('--corpus', type=click.Path(), required=True, help='Prefix of the corpus to split')
@click.option('--held-out', type=int, required=True, help='Number of sentences to hold out')
@click.option('--train-prefix', type=click.Path(), required=True, help='Prefix for the training part')
@click.option('--test-prefix', type=click.Path(), required=True, help='Prefix for the held-out part')
@failsCleanly
def split(corpus, held_out, train_prefix, test_prefix):
    '''Split a corpus, holding out its last sentences.'''
    (n, m) = mohavere.splitCorpus(corpus, held_out, train_prefix, test_prefix)
    click.echo(f'train={n}')
    click.echo(f'test={m}')


@run.command()
@click.option('--corpus', type=click.Path(), required=True, help='Prefix of the training corpus')
@click.option('--model-file', type=click.Path(), required=True, help='Model file to write')
@click.option('--lm-order', type=int, default=None, help='Order of the language model')
@click.option('--alpha', type=float, default=None, help='Smoothing constant for phrase probabilities')
@click.option('--lm-weight', type=float, default=None, help='Language model weight stored in the model')
@rulesOption
@jobsOption
@click.pass_context
@failsCleanly
def train(ctx, corpus, model_file, lm_order, alpha, lm_weight, rule_file, jobs):
    '''Train a transduction model on a corpus. Traces are replayed
    against the rules the corpus was generated with when they are
    available, and otherwise just checked for consistency.'''
    cfg = resolveConfig(ctx, lm_order=lm_order, alpha=alpha, lm_weight=lm_weight, rule_file=rule_file, jobs=jobs)
    rs = loadRules(cfg)
    metaFile = corpus + '.meta'
    if os.path.exists(metaFile):
        h = readMeta(metaFile).get('rule_hash')
        if h is not None and h != rs.digest():
            logging.getLogger(mohavere.Logger).warning('Corpus was generated with different rules, traces not replayed')
            rs = None
    m = mohavere.train(mohavere.readCorpus(corpus), cfg.trainingConfig(), rs, cfg[mohavere.PipelineConfig.JOBS])
    meta = {f'config_{k}': v for (k, v) in cfg.asDict().items()}
    meta['corpus'] = corpus
    mohavere.saveModel(m, model_file, meta)


@run.command()
@click.option('--in', 'input', type=click.Path(), default='-', help='Colloquial text (default standard input)')
@click.option('--out', 'output', type=click.Path(), default='-', help='Standardised text (default standard output)')
@click.option('--system', type=click.Choice(['rules', 'model']), default='model', help='Standardiser to use')
@decodingOptions
@rulesOption
@jobsOption
@normOption
@click.pass_context
@failsCleanly
def standardize(ctx, input, output, system, model_file, mode, beam, lm_weight, freq_corpus, rule_file, jobs, norm):
    '''Standardise colloquial text, writing tokenised standard text that
    can be fed to other tools.'''
    cfg = resolveConfig(ctx, norm, mode=mode, beam=beam, lm_weight=lm_weight, rule_file=rule_file, jobs=jobs)
    s = buildSystem(system, cfg, model_file, freq_corpus)
    ncfg = cfg.normalizationConfig()
    sources = [mohavere.prepare(l, ncfg) for l in readLines(input)]
    hyps = mohavere.runSystem(s, sources, cfg[mohavere.PipelineConfig.JOBS])
    writeLines(output, [' '.join(h) for h in hyps])


@run.command()
@click.option('--hyp', type=click.Path(), required=True, help='Hypotheses, one tokenised sentence per line')
@click.option('--ref', type=click.Path(), required=True, help='References, one tokenised sentence per line')
@click.option('--smoothing', type=click.Choice(mohavere.BleuScore.smoothings()), default=mohavere.BleuScore.EXP,
              help='Smoothing method')
@failsCleanly
def bleu(hyp, ref, smoothing):
    '''Score tokenised hypotheses against references with corpus BLEU.'''
    hs = [l.split() for l in readLines(hyp)]
    rs = [l.split() for l in readLines(ref)]
    score = mohavere.corpusBleu(hs, rs, smoothing)
    click.echo(f'{score.score():.1f}')
    click.echo(str(score))


@run.command(name='eval')
@click.option('--data', type=click.Path(), required=True, help='Dataset directory or file')
@click.option('--split', 'splits', type=click.Choice([mohavere.EvalRecord.DEV, mohavere.EvalRecord.TEST]),
              multiple=True, help='Split to evaluate on (repeatable, default both)')
@click.option('--system', 'systems', default='identity', help='Comma-separated systems: identity, rules, model')
@click.option('--ref', type=click.Choice(mohavere.EvalRecord.referenceTypes()), default=mohavere.EvalRecord.WORD,
              help='Reference type')
@click.option('--report', type=click.Path(), default='-', help='Report file (default standard output)')
@click.option('--column', multiple=True, help='Column map entry canonical=name (repeatable)')
@decodingOptions
@rulesOption
@jobsOption
@normOption
@click.pass_context
@failsCleanly
def evaluateSystems(ctx, data, splits, systems, ref, report, column, model_file, mode, beam, lm_weight, freq_corpus,
                    rule_file, jobs, norm):
    '''Evaluate standardisers on the evaluation dataset. With one system
    and one split a full report is written, with per-genre scores;
    otherwise a table of all systems on all splits.'''
    cfg = resolveConfig(ctx, norm, mode=mode, beam=beam, lm_weight=lm_weight, rule_file=rule_file, jobs=jobs)
    names = [s.strip() for s in systems.split(',') if len(s.strip()) > 0]
    for n in names:
        if n not in SYSTEMS:
            raise click.BadParameter(f'Unknown system {n}', param_hint='--system')
    columnMap = dict()
    for kv in column:
        if '=' not in kv:
            raise click.BadParameter(f'{kv} is not canonical=name', param_hint='--column')
        (k, v) = kv.split('=', 1)
        columnMap[k] = v
    if len(splits) == 0:
        splits = (mohavere.EvalRecord.DEV, mohavere.EvalRecord.TEST) if os.path.isdir(data) else (None,)
    ncfg = cfg.normalizationConfig()
    records = {s: mohavere.loadDataset(data, columnMap or None, s, ncfg) for s in splits}
    jobs = cfg[mohavere.PipelineConfig.JOBS]

    meta = cfg.asDict()
    try:
        meta['rule_hash'] = loadRules(cfg).digest()
    except mohavere.RuleFileException:
        meta['rule_hash'] = '-'
    if model_file is not None:
        meta['model_file'] = model_file

    if len(names) == 1 and len(splits) == 1:
        s = splits[0]
        r = mohavere.evaluate(buildSystem(names[0], cfg, model_file, freq_corpus), records[s], ref, jobs,
                              name=names[0], split=s)
        text = r.format(meta)
    else:
        lab = mohavere.EvaluationLab(jobs)
        for n in names:
            if n != 'identity':
                lab.addSystem(n, buildSystem(n, cfg, model_file, freq_corpus))
        for s in splits:
            lab.addSplit('-' if s is None else s, records[s])
        lab.runAll()
        df = lab.dataframe()
        lines = [df.to_string(na_rep='-'), '']
        lines.extend([f'{k}={v}' for (k, v) in meta.items()])
        text = '\n'.join(lines) + '\n'
    with click.open_file(report, 'w', encoding='utf-8') as fh:
        fh.write(text)
