# Rewrite rules for breaking standard Persian into colloquial forms
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
import re
import hashlib
import logging
from mohavere import Logger, TokenSequence, Tagger, LexiconTagger
from typing import List, Dict, Tuple, Optional, Iterator, Iterable, Set, Any
if sys.version_info >= (3, 8):
    from typing import Final
else:
    from typing_extensions import Final


logger = logging.getLogger(Logger)


# Type aliases
Span = Tuple[int, int]                               #: Type of half-open token spans.
RuleMatch = Tuple['RewriteRule', TokenSequence, int]  #: Type of a rule firing: rule, output, tokens consumed.
AlignedSpan = Tuple[Optional[str], Span, Span]       #: Type of one step of a full alignment (rule id or None for a copy).


#: The rule file shipped with the package.
DefaultRuleFile: Final[str] = os.path.join(os.path.dirname(__file__), 'data', 'colloquial.rules')


# ---------- Exceptions ----------

class RuleFileException(Exception):
    '''An exception raised when a rule file can't be parsed.

    :param path: the rule file
    :param lineno: the line number (1-based, or 0 for the whole file)
    :param msg: the constraint that was violated'''

    def __init__(self, path: str, lineno: int, msg: str):
        super().__init__(f'{path}:{lineno}: {msg}')
        self._path = path
        self._lineno = lineno

    def path(self) -> str:
        '''Return the path of the rule file.

        :returns: the path'''
        return self._path

    def lineNumber(self) -> int:
        '''Return the offending line number.

        :returns: the line number'''
        return self._lineno


class DuplicateRuleException(RuleFileException):
    '''An exception raised when a rule identifier is used twice.

    :param path: the rule file
    :param lineno: the line of the second definition
    :param ruleId: the duplicated identifier'''

    def __init__(self, path: str, lineno: int, ruleId: str):
        super().__init__(path, lineno, f'Duplicate rule id {ruleId}')
        self._ruleId = ruleId

    def ruleId(self) -> str:
        '''Return the duplicated rule identifier.

        :returns: the identifier'''
        return self._ruleId


class TraceException(Exception):
    '''An exception raised when an alignment trace can't be parsed or
    doesn't replay against its sentence.

    :param lineno: the line of the trace file (or None)
    :param msg: the problem'''

    def __init__(self, lineno: Optional[int], msg: str):
        if lineno is None:
            super().__init__(f'Bad trace: {msg}')
        else:
            super().__init__(f'Bad trace at line {lineno}: {msg}')
        self._lineno = lineno

    def lineNumber(self) -> Optional[int]:
        '''Return the trace line, if known.

        :returns: the line number or None'''
        return self._lineno


# ---------- Patterns ----------

class GlobPattern(object):
    '''A pattern matching tokens of the form PREFIX STEM SUFFIX, where the
    stem is at least one character long. The final character of the stem
    may be constrained by a character class, written after the star as
    ``*[abc]`` (one of) or ``*[^abc]`` (none of).

    :param prefix: the literal prefix
    :param suffix: the literal suffix
    :param stemClass: characters constraining the last stem character (or None)
    :param negated: True if the class excludes rather than includes'''

    def __init__(self, prefix: str, suffix: str, stemClass: Optional[str] = None, negated: bool = False):
        self._prefix = prefix
        self._suffix = suffix
        self._class = stemClass
        self._negated = negated

    @staticmethod
    def parse(text: str) -> 'GlobPattern':
        '''Parse a pattern from its textual form.

        :param text: the pattern
        :returns: the pattern
        :raises ValueError: if the pattern is malformed'''
        if text.count('*') != 1:
            raise ValueError(f'Pattern {text} needs exactly one *')
        (prefix, rest) = text.split('*')
        stemClass = None
        negated = False
        if rest.startswith('['):
            close = rest.find(']')
            if close < 0:
                raise ValueError(f'Unterminated character class in {text}')
            stemClass = rest[1:close]
            rest = rest[close + 1:]
            if stemClass.startswith('^'):
                negated = True
                stemClass = stemClass[1:]
            if len(stemClass) == 0:
                raise ValueError(f'Empty character class in {text}')
        if '[' in prefix or '[' in rest or ']' in rest:
            raise ValueError(f'Misplaced character class in {text}')
        return GlobPattern(prefix, rest, stemClass, negated)

    def prefix(self) -> str:
        return self._prefix

    def suffix(self) -> str:
        return self._suffix

    def stemClass(self) -> Optional[str]:
        return self._class

    def isNegated(self) -> bool:
        return self._negated

    def classText(self) -> str:
        '''Return the character class as written, or an empty string.

        :returns: the class text'''
        if self._class is None:
            return ''
        else:
            return '[' + ('^' if self._negated else '') + self._class + ']'

    def literalLength(self) -> int:
        '''Return the number of literal characters, used to order patterns
        from most to least specific.

        :returns: the length of prefix and suffix together'''
        return len(self._prefix) + len(self._suffix)

    def match(self, token: str) -> Optional[str]:
        '''Match a token, returning the stem if it matches.

        :param token: the token
        :returns: the stem or None'''
        if len(token) <= self.literalLength():
            return None
        if not (token.startswith(self._prefix) and token.endswith(self._suffix)):
            return None
        stem = token[len(self._prefix):len(token) - len(self._suffix)]
        if self._class is not None:
            if (stem[-1] in self._class) == self._negated:
                return None
        return stem

    def expand(self, stem: str) -> str:
        '''Build a token from a stem.

        :param stem: the stem
        :returns: the token'''
        return self._prefix + stem + self._suffix

    def overlaps(self, other: 'GlobPattern') -> bool:
        '''Test whether some token could match both patterns. Character
        classes are ignored, so this may report overlaps that can't occur.

        :param other: the other pattern
        :returns: True if the patterns may both match a token'''
        p1, p2 = self._prefix, other._prefix
        s1, s2 = self._suffix, other._suffix
        return (p1.startswith(p2) or p2.startswith(p1)) and (s1.endswith(s2) or s2.endswith(s1))

    def __str__(self) -> str:
        return self._prefix + '*' + self.classText() + self._suffix

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, GlobPattern) and str(self) == str(other)

    def __hash__(self) -> int:
        return hash(str(self))


def _expand(template: str, stem: str) -> str:
    if '*' in template:
        return GlobPattern.parse(template).expand(stem)
    else:
        return template


# ---------- Rules ----------

class RewriteRule(object):
    '''A single conversion rule. A rule matches the token at the current
    position, optionally constrained by its part of speech and by the
    token that follows it, and replaces the token (and the following
    token, if a context was given) with one or more tokens built from
    its replacement template.

    The match is either an exact token, a :class:`GlobPattern` binding
    a stem, or membership of a named set of tokens (where the whole
    token is the stem). A star in a replacement template stands for
    the stem.

    :param ruleId: the unique identifier
    :param category: the rule family
    :param matchKind: one of EXACT, GLOB, or SET
    :param match: the token, pattern, or set name
    :param replacement: the output templates
    :param contextKind: one of NONE, EXACT, SET, or POS (default NONE)
    :param context: the next token, set name, or tag
    :param invertible: True if the rule can be read backwards (default True)
    :param pos: the tag required of the current token (or None)
    :param matchSet: the members of the match set, for SET rules
    :param contextSet: the members of the context set, for SET contexts
    :param ambiguityGroup: identifier of the group of inverse rules that may compete with this one
    :param inverts: identifier of the rule this rule inverts'''

    # Rule families
    AN_SUFFIX: Final[str] = 'an_suffix'               #: Vowel change in the "an" ending.
    VERB_SUFFIX: Final[str] = 'verb_suffix'           #: Contracted personal endings of verbs.
    VERB_FORM: Final[str] = 'verb_form'               #: Contracted verb stems.
    HA_SUFFIX: Final[str] = 'ha_suffix'               #: Contracted plural suffix.
    COMMON: Final[str] = 'common'                     #: Common word-level changes.
    CASE_MARKER: Final[str] = 'case_marker'           #: Object marker merged into its noun.
    ATTACH_PRONOUN: Final[str] = 'attach_pronoun'     #: Preposition and pronoun merged.
    AST_COPULA: Final[str] = 'ast_copula'             #: Contracted third-person copula.
    HAST_COPULA: Final[str] = 'hast_copula'           #: Contracted personal copulas.
    LEXICAL: Final[str] = 'lexical'                   #: Whole-word substitutions.

    # Match kinds
    EXACT: Final[str] = 'exact'     #: Match a literal token.
    GLOB: Final[str] = 'glob'       #: Match a pattern, binding a stem.
    SET: Final[str] = 'set'         #: Match a member of a named set.

    # Context kinds
    NONE: Final[str] = '-'          #: No context.
    POS: Final[str] = 'pos'         #: Next token has a given tag.

    _ID = re.compile(r'^[A-Za-z0-9_.\-~]+$')

    def __init__(self, ruleId: str, category: str, matchKind: str, match: str,
                       replacement: List[str],
                       contextKind: str = '-', context: Optional[str] = None,
                       invertible: bool = True, pos: Optional[str] = None,
                       matchSet: Optional[List[str]] = None, contextSet: Optional[List[str]] = None,
                       ambiguityGroup: Optional[str] = None, inverts: Optional[str] = None):
        if self._ID.match(ruleId) is None:
            raise ValueError(f'Bad rule id {ruleId}')
        if category not in self.categories():
            raise ValueError(f'Unknown category {category}')
        if matchKind not in [self.EXACT, self.GLOB, self.SET]:
            raise ValueError(f'Unknown match kind {matchKind}')
        if contextKind not in [self.NONE, self.EXACT, self.SET, self.POS]:
            raise ValueError(f'Unknown context kind {contextKind}')
        if pos is not None and pos not in Tagger.tags():
            raise ValueError(f'Unknown part of speech {pos}')
        if len(match) == 0:
            raise ValueError('Empty match')

        self._id = ruleId
        self._category = category
        self._matchKind = matchKind
        self._match = match
        self._contextKind = contextKind
        self._context = context
        self._replacement = list(replacement)
        self._invertible = invertible
        self._pos = pos
        self._ambiguityGroup = ambiguityGroup
        self._inverts = inverts

        # match
        self._pattern: Optional[GlobPattern] = None
        self._matchSet: List[str] = []
        self._matchMembers: Set[str] = set()
        if matchKind == self.GLOB:
            self._pattern = GlobPattern.parse(match)
        elif matchKind == self.SET:
            if matchSet is None or len(matchSet) == 0:
                raise ValueError(f'Set {match} is empty or undefined')
            self._matchSet = list(matchSet)
            self._matchMembers = set(matchSet)

        # context
        self._contextMembers: Set[str] = set()
        if contextKind == self.NONE:
            self._context = None
        else:
            if context is None or len(context) == 0:
                raise ValueError('Missing context')
            if contextKind == self.SET:
                if contextSet is None or len(contextSet) == 0:
                    raise ValueError(f'Set {context} is empty or undefined')
                self._contextMembers = set(contextSet)
            elif contextKind == self.POS and context not in Tagger.tags():
                raise ValueError(f'Unknown part of speech {context}')

        # replacement
        if len(self._replacement) == 0:
            raise ValueError('Empty replacement')
        if any(len(t) == 0 or len(t.split()) != 1 for t in self._replacement):
            raise ValueError('Replacement tokens must be non-empty and contain no whitespace')
        if sum([t.count('*') for t in self._replacement]) > 1:
            raise ValueError('Replacement may use the stem only once')
        for t in self._replacement:
            if '*' in t:
                GlobPattern.parse(t)
        if len(self._replacement) > 2 * self.arity():
            raise ValueError(f'Replacement of {len(self._replacement)} tokens is too long for {self.arity()} input tokens')
        if self._isIdentity():
            raise ValueError(f'Rule {ruleId} maps a token to itself')

    def _isIdentity(self) -> bool:
        if self._contextKind != self.NONE or len(self._replacement) != 1:
            return False
        r = self._replacement[0]
        if self._matchKind == self.EXACT:
            return _expand(r, self._match) == self._match
        elif self._matchKind == self.SET:
            return r == '*'
        else:
            if '*' not in r:
                return False
            p = GlobPattern.parse(r)
            return p.prefix() == self._pattern.prefix() and p.suffix() == self._pattern.suffix()

    @staticmethod
    def categories() -> List[str]:
        '''Return the rule families, in canonical order.

        :returns: a list of categories'''
        return [RewriteRule.AN_SUFFIX, RewriteRule.VERB_SUFFIX, RewriteRule.VERB_FORM,
                RewriteRule.HA_SUFFIX, RewriteRule.COMMON, RewriteRule.CASE_MARKER,
                RewriteRule.ATTACH_PRONOUN, RewriteRule.AST_COPULA, RewriteRule.HAST_COPULA,
                RewriteRule.LEXICAL]

    # ---------- Accessors ----------

    def ruleId(self) -> str:
        return self._id

    def category(self) -> str:
        return self._category

    def matchKind(self) -> str:
        return self._matchKind

    def match(self) -> str:
        return self._match

    def pattern(self) -> Optional[GlobPattern]:
        '''Return the pattern of a glob rule.

        :returns: the pattern, or None for other kinds of rule'''
        return self._pattern

    def matchSet(self) -> List[str]:
        '''Return the members of the match set of a set rule, in order.

        :returns: the members (empty for other kinds of rule)'''
        return self._matchSet

    def contextKind(self) -> str:
        return self._contextKind

    def context(self) -> Optional[str]:
        return self._context

    def replacement(self) -> List[str]:
        return self._replacement

    def invertible(self) -> bool:
        return self._invertible

    def posConstraint(self) -> Optional[str]:
        return self._pos

    def ambiguityGroup(self) -> Optional[str]:
        return self._ambiguityGroup

    def inverts(self) -> Optional[str]:
        return self._inverts

    def arity(self) -> int:
        '''Return the number of tokens the rule consumes.

        :returns: 1, or 2 for rules with a context'''
        return 1 if self._contextKind == self.NONE else 2

    def specificity(self) -> int:
        '''Return the number of literal characters in the match.

        :returns: the specificity'''
        if self._matchKind == self.GLOB:
            return self._pattern.literalLength()
        else:
            return len(self._match)

    def withAmbiguityGroup(self, group: Optional[str]) -> 'RewriteRule':
        '''Return a copy of this rule in the given ambiguity group.

        :param group: the group identifier
        :returns: a new rule'''
        return RewriteRule(self._id, self._category, self._matchKind, self._match, self._replacement,
                           contextKind=self._contextKind, context=self._context,
                           invertible=self._invertible, pos=self._pos,
                           matchSet=self._matchSet, contextSet=sorted(self._contextMembers),
                           ambiguityGroup=group, inverts=self._inverts)

    # ---------- Matching ----------

    def _matchToken(self, token: str) -> Optional[str]:
        if self._matchKind == self.EXACT:
            return token if token == self._match else None
        elif self._matchKind == self.SET:
            return token if token in self._matchMembers else None
        else:
            return self._pattern.match(token)

    def _matchContext(self, token: str, tagger: Tagger) -> bool:
        if self._contextKind == self.EXACT:
            return token == self._context
        elif self._contextKind == self.SET:
            return token in self._contextMembers
        else:
            return tagger.tag(token) == self._context

    def apply(self, tokens: TokenSequence, i: int, tagger: Tagger) -> Optional[Tuple[TokenSequence, int]]:
        '''Try to apply the rule at a position.

        :param tokens: the tokens
        :param i: the position
        :param tagger: the tagger used for part-of-speech constraints
        :returns: a pair of the output tokens and the number of tokens consumed, or None'''
        stem = self._matchToken(tokens[i])
        if stem is None:
            return None
        if self._pos is not None and tagger.tag(tokens[i]) != self._pos:
            return None
        if self._contextKind != self.NONE:
            if i + 1 >= len(tokens) or not self._matchContext(tokens[i + 1], tagger):
                return None
        return ([_expand(t, stem) for t in self._replacement], self.arity())

    def producesForm(self, span: TokenSequence) -> bool:
        '''Test whether a span of tokens already looks like the output of
        this rule. Character classes written into the replacement are
        honoured.

        :param span: the tokens
        :returns: True if each token matches the corresponding replacement template'''
        if len(span) != len(self._replacement):
            return False
        for (t, r) in zip(span, self._replacement):
            if '*' in r:
                if GlobPattern.parse(r).match(t) is None:
                    return False
            elif t != r:
                return False
        return True

    def __str__(self) -> str:
        ctx = '' if self._contextKind == self.NONE else f' + {self._contextKind}:{self._context}'
        return f'{self._id} [{self._category}] {self._matchKind}:{self._match}{ctx} -> {" ".join(self._replacement)}'

    def __repr__(self) -> str:
        return f'RewriteRule({self})'


class RuleApplication(object):
    '''A record of a rule firing, aligning a span of standard tokens
    with the span of colloquial tokens produced from it.

    :param ruleId: the rule that fired
    :param sourceSpan: the standard span [i, j)
    :param targetSpan: the colloquial span [p, q)'''

    def __init__(self, ruleId: str, sourceSpan: Span, targetSpan: Span):
        if sourceSpan[1] <= sourceSpan[0] or targetSpan[1] <= targetSpan[0]:
            raise ValueError(f'Empty span in application of {ruleId}')
        if sourceSpan[0] < 0 or targetSpan[0] < 0:
            raise ValueError(f'Negative span in application of {ruleId}')
        self._ruleId = ruleId
        self._source = (sourceSpan[0], sourceSpan[1])
        self._target = (targetSpan[0], targetSpan[1])

    def ruleId(self) -> str:
        return self._ruleId

    def sourceSpan(self) -> Span:
        return self._source

    def targetSpan(self) -> Span:
        return self._target

    def __str__(self) -> str:
        (i, j) = self._source
        (p, q) = self._target
        return f'{self._ruleId}:{i}-{j}:{p}-{q}'

    def __repr__(self) -> str:
        return f'RuleApplication({self})'

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, RuleApplication) and str(self) == str(other)

    def __hash__(self) -> int:
        return hash(str(self))


# ---------- Rule sets ----------

class RuleSet(object):
    '''An ordered collection of rules. At each position the first
    rule in order that matches is the one that fires.

    Candidate rules for a token are found through indices on exact
    tokens, set members, and the final characters of glob suffixes,
    so only rules that could match are tried; the candidates are
    always tried in rule order.

    :param rules: the rules
    :param lexicon: part-of-speech entries for the tagger
    :param sets: the named token sets
    :param path: the file the rules came from (or None)
    :param digest: SHA-256 of the rule file (or None)
    :param tagger: the tagger (defaults to a :class:`LexiconTagger` on the lexicon)'''

    def __init__(self, rules: List[RewriteRule],
                       lexicon: Optional[Dict[str, str]] = None,
                       sets: Optional[Dict[str, List[str]]] = None,
                       path: Optional[str] = None,
                       digest: Optional[str] = None,
                       tagger: Optional[Tagger] = None):
        self._rules = list(rules)
        self._lexicon = dict(lexicon) if lexicon is not None else dict()
        self._sets = dict(sets) if sets is not None else dict()
        self._path = path
        self._digest = digest
        self._tagger = tagger if tagger is not None else LexiconTagger(self._lexicon)

        self._byId: Dict[str, RewriteRule] = dict()
        for r in self._rules:
            if r.ruleId() in self._byId:
                raise ValueError(f'Duplicate rule id {r.ruleId()}')
            self._byId[r.ruleId()] = r
        self._buildIndex()

    def _buildIndex(self):
        self._byToken: Dict[str, List[int]] = dict()
        self._byLastChar: Dict[str, List[int]] = dict()
        self._unindexed: List[int] = []
        for (k, r) in enumerate(self._rules):
            if r.matchKind() == RewriteRule.EXACT:
                self._byToken.setdefault(r.match(), []).append(k)
            elif r.matchKind() == RewriteRule.SET:
                for w in r.matchSet():
                    self._byToken.setdefault(w, []).append(k)
            else:
                p = r.pattern()
                if len(p.suffix()) > 0:
                    self._byLastChar.setdefault(p.suffix()[-1], []).append(k)
                elif p.stemClass() is not None and not p.isNegated():
                    for c in p.stemClass():
                        self._byLastChar.setdefault(c, []).append(k)
                else:
                    self._unindexed.append(k)

    def rules(self) -> List[RewriteRule]:
        return self._rules

    def rule(self, ruleId: str) -> RewriteRule:
        '''Return the rule with the given identifier.

        :param ruleId: the identifier
        :returns: the rule
        :raises KeyError: if there's no such rule'''
        return self._byId[ruleId]

    def lexicon(self) -> Dict[str, str]:
        return self._lexicon

    def sets(self) -> Dict[str, List[str]]:
        return self._sets

    def tagger(self) -> Tagger:
        return self._tagger

    def path(self) -> Optional[str]:
        return self._path

    def digest(self) -> Optional[str]:
        '''Return the SHA-256 of the rule file this set was read from.

        :returns: the hex digest, or None for sets built in code'''
        return self._digest

    def categories(self) -> Set[str]:
        '''Return the categories that have at least one rule.

        :returns: a set of categories'''
        return set([r.category() for r in self._rules])

    def __len__(self) -> int:
        return len(self._rules)

    def __iter__(self) -> Iterator[RewriteRule]:
        return iter(self._rules)

    def candidates(self, token: str) -> List[RewriteRule]:
        '''Return the rules that might match a token, in rule order.

        :param token: the token
        :returns: a list of rules'''
        ks = self._byToken.get(token, []) + self._unindexed
        if len(token) > 0:
            ks = ks + self._byLastChar.get(token[-1], [])
        return [self._rules[k] for k in sorted(set(ks))]

    def matches(self, tokens: TokenSequence, i: int) -> Iterator[RuleMatch]:
        '''Generate all the rules that match at a position, in rule order.

        :param tokens: the tokens
        :param i: the position
        :returns: a generator of (rule, output, consumed) triples'''
        for r in self.candidates(tokens[i]):
            res = r.apply(tokens, i, self._tagger)
            if res is not None:
                yield (r, res[0], res[1])

    def firstMatch(self, tokens: TokenSequence, i: int) -> Optional[RuleMatch]:
        '''Return the rule that fires at a position.

        :param tokens: the tokens
        :param i: the position
        :returns: a (rule, output, consumed) triple, or None'''
        return next(self.matches(tokens, i), None)


# ---------- Parsing ----------

def parseRuleFile(path: Optional[str] = None) -> RuleSet:
    '''Read a rule file. Each non-blank line that isn't a ``#`` comment
    is either a directive or a rule. Directives are ``@pos <tag> tokens...``,
    adding tokens to the tagger's lexicon, and ``@set <name> tokens...``,
    defining a named set; sets must be defined before they are used.
    Rules have eight or nine tab-separated fields: identifier, category,
    match kind, match, context kind, context, replacement, invertibility
    (``yes`` or ``no``), and optionally a part-of-speech constraint,
    with ``-`` for an empty context or constraint.

    :param path: the rule file (defaults to the shipped rules)
    :returns: the rule set
    :raises RuleFileException: if the file is malformed
    :raises DuplicateRuleException: if an identifier is repeated'''
    if path is None:
        path = DefaultRuleFile
    try:
        with open(path, 'rb') as fh:
            data = fh.read()
    except OSError as e:
        raise RuleFileException(path, 0, f'Can\'t read rule file: {e.strerror}')
    digest = hashlib.sha256(data).hexdigest()
    try:
        text = data.decode('utf-8')
    except UnicodeDecodeError:
        raise RuleFileException(path, 0, 'Rule file is not UTF-8')

    rules: List[RewriteRule] = []
    seen: Set[str] = set()
    lexicon: Dict[str, str] = dict()
    sets: Dict[str, List[str]] = dict()
    for (n, line) in enumerate(text.split('\n')):
        lineno = n + 1
        line = line.rstrip('\r')
        if len(line.strip()) == 0 or line.lstrip().startswith('#'):
            continue

        # directives
        if line.startswith('@'):
            ws = line.split()
            if len(ws) < 3:
                raise RuleFileException(path, lineno, f'Directive {ws[0]} needs a name and at least one token')
            if ws[0] == '@pos':
                if ws[1] not in Tagger.tags():
                    raise RuleFileException(path, lineno, f'Unknown part of speech {ws[1]}')
                for w in ws[2:]:
                    lexicon[w] = ws[1]
            elif ws[0] == '@set':
                sets.setdefault(ws[1], [])
                sets[ws[1]].extend([w for w in ws[2:] if w not in sets[ws[1]]])
            else:
                raise RuleFileException(path, lineno, f'Unknown directive {ws[0]}')
            continue

        # rules
        fs = line.split('\t')
        if len(fs) not in [8, 9]:
            raise RuleFileException(path, lineno, f'Expected 8 or 9 tab-separated fields, got {len(fs)}')
        (ruleId, category, matchKind, match, contextKind, context, replacement, invertible) = fs[:8]
        pos = fs[8] if len(fs) == 9 else '-'
        if ruleId in seen:
            raise DuplicateRuleException(path, lineno, ruleId)
        if invertible not in ['yes', 'no']:
            raise RuleFileException(path, lineno, f'Invertibility must be yes or no, not {invertible}')
        if matchKind == RewriteRule.SET and match not in sets:
            raise RuleFileException(path, lineno, f'Set {match} used before it is defined')
        if contextKind == RewriteRule.SET and context not in sets:
            raise RuleFileException(path, lineno, f'Set {context} used before it is defined')
        try:
            r = RewriteRule(ruleId, category, matchKind, match, replacement.split(' '),
                            contextKind=contextKind,
                            context=None if context == '-' else context,
                            invertible=(invertible == 'yes'),
                            pos=None if pos == '-' else pos,
                            matchSet=sets.get(match) if matchKind == RewriteRule.SET else None,
                            contextSet=sets.get(context) if contextKind == RewriteRule.SET else None)
        except ValueError as e:
            raise RuleFileException(path, lineno, str(e))
        rules.append(r)
        seen.add(ruleId)

    rs = RuleSet(rules, lexicon=lexicon, sets=sets, path=path, digest=digest)
    logger.info(f'Read {len(rules)} rules in {len(rs.categories())} categories from {path}')
    return rs


# ---------- Application ----------

def applyRules(seq: TokenSequence, rs: RuleSet) -> Tuple[TokenSequence, List[RuleApplication]]:
    '''Apply a rule set to a sentence in a single left-to-right pass.
    At each position the first matching rule fires; tokens no rule
    matches are copied.

    :param seq: the standard tokens
    :param rs: the rules
    :returns: a pair of the colloquial tokens and the trace of rule applications'''
    out: TokenSequence = []
    trace: List[RuleApplication] = []
    i = 0
    while i < len(seq):
        m = rs.firstMatch(seq, i)
        if m is None:
            out.append(seq[i])
            i += 1
        else:
            (r, ts, consumed) = m
            trace.append(RuleApplication(r.ruleId(), (i, i + consumed), (len(out), len(out) + len(ts))))
            out.extend(ts)
            i += consumed
    return (out, trace)


def replayTrace(standard: TokenSequence, trace: List[RuleApplication], rs: RuleSet) -> TokenSequence:
    '''Rebuild the colloquial side of a pair from its standard side and
    its trace, checking that each recorded rule really does produce the
    recorded span. Tokens between rule spans are copied.

    :param standard: the standard tokens
    :param trace: the rule applications
    :param rs: the rules named in the trace
    :returns: the colloquial tokens
    :raises TraceException: if the trace doesn't replay'''
    out: TokenSequence = []
    i = 0
    for app in trace:
        (a, b) = app.sourceSpan()
        (p, q) = app.targetSpan()
        if a < i or b > len(standard):
            raise TraceException(None, f'Span {a}-{b} of {app.ruleId()} out of order or out of range')
        out.extend(standard[i:a])
        if len(out) != p:
            raise TraceException(None, f'Target span of {app.ruleId()} starts at {p}, expected {len(out)}')
        try:
            r = rs.rule(app.ruleId())
        except KeyError:
            raise TraceException(None, f'Unknown rule {app.ruleId()}')
        res = r.apply(standard, a, rs.tagger())
        if res is None or res[1] != b - a or len(res[0]) != q - p:
            raise TraceException(None, f'Rule {app.ruleId()} does not produce span {app}')
        out.extend(res[0])
        i = b
    out.extend(standard[i:])
    return out


def fullAlignment(trace: List[RuleApplication], n: int, m: int) -> List[AlignedSpan]:
    '''Expand a trace into a complete monotone alignment between a
    standard sentence of length n and a colloquial sentence of length m,
    with each copied token aligned to itself.

    :param trace: the rule applications
    :param n: the standard length
    :param m: the colloquial length
    :returns: a list of (rule id or None, source span, target span)
    :raises TraceException: if the trace is inconsistent with the lengths'''
    alignment: List[AlignedSpan] = []
    i = 0
    o = 0
    for app in trace:
        (a, b) = app.sourceSpan()
        (p, q) = app.targetSpan()
        if a < i or p - o != a - i:
            raise TraceException(None, f'Application {app} does not follow the previous span')
        while i < a:
            alignment.append((None, (i, i + 1), (o, o + 1)))
            i += 1
            o += 1
        alignment.append((app.ruleId(), (a, b), (p, q)))
        i = b
        o = q
    if n - i != m - o or i > n:
        raise TraceException(None, f'Trace does not cover sentences of lengths {n} and {m}')
    while i < n:
        alignment.append((None, (i, i + 1), (o, o + 1)))
        i += 1
        o += 1
    return alignment


# ---------- Inversion ----------

def invertRule(rule: RewriteRule) -> Tuple[List[RewriteRule], bool]:
    '''Read a rule backwards, giving colloquial-to-standard rules. A rule
    whose context is a set or a tag, or which loses its stem, can't be
    inverted; neither can a rule marked as non-invertible. A set rule
    inverts into one exact rule per member of its set.

    :param rule: the rule
    :returns: a pair of the inverse rules and a flag that's False if the rule isn't invertible'''
    if not rule.invertible():
        return ([], False)
    if rule.contextKind() in [RewriteRule.SET, RewriteRule.POS]:
        return ([], False)
    rep = rule.replacement()
    if len(rep) > 2:
        return ([], False)
    ctx = [rule.context()] if rule.contextKind() == RewriteRule.EXACT else []
    invId = rule.ruleId() + '~inv'

    def exactInverse(rid: str, stem: str, out: List[str]) -> RewriteRule:
        trigger = [_expand(t, stem) for t in rep]
        return RewriteRule(rid, rule.category(), RewriteRule.EXACT, trigger[0], out,
                           contextKind=RewriteRule.NONE if len(trigger) == 1 else RewriteRule.EXACT,
                           context=trigger[1] if len(trigger) == 2 else None,
                           inverts=rule.ruleId())

    try:
        if rule.matchKind() == RewriteRule.EXACT:
            return ([exactInverse(invId, rule.match(), [rule.match()] + ctx)], True)
        elif rule.matchKind() == RewriteRule.SET:
            return ([exactInverse(f'{invId}{k + 1}', w, [w] + ctx) for (k, w) in enumerate(rule.matchSet())], True)
        else:
            starred = [k for (k, t) in enumerate(rep) if '*' in t]
            if starred != [0]:
                return ([], False)
            p = GlobPattern.parse(rep[0])
            trigger = GlobPattern(p.prefix(), p.suffix(), rule.pattern().stemClass(), rule.pattern().isNegated())
            return ([RewriteRule(invId, rule.category(), RewriteRule.GLOB, str(trigger), [str(rule.pattern())] + ctx,
                                 contextKind=RewriteRule.NONE if len(rep) == 1 else RewriteRule.EXACT,
                                 context=rep[1] if len(rep) == 2 else None,
                                 pos=rule.posConstraint(),
                                 inverts=rule.ruleId())], True)
    except ValueError:
        # the inverse would be an identity or otherwise malformed
        return ([], False)


def _triggersOverlap(r1: RewriteRule, r2: RewriteRule) -> bool:
    if r1.arity() != r2.arity() or r1.context() != r2.context():
        return False
    if r1.matchKind() == RewriteRule.EXACT and r2.matchKind() == RewriteRule.EXACT:
        return r1.match() == r2.match()
    elif r1.matchKind() == RewriteRule.GLOB and r2.matchKind() == RewriteRule.GLOB:
        return r1.pattern().overlaps(r2.pattern())
    else:
        # exact and glob triggers are ordered by specificity
        return False


def invertRuleSet(rs: RuleSet) -> RuleSet:
    '''Invert a whole rule set for colloquial-to-standard conversion.

    The inverse rules are ordered most specific first: two-token
    triggers, then exact triggers, then patterns by decreasing
    number of literal characters, with ties kept in the order of
    the original rules. Inverse rules of equal specificity whose
    triggers may match the same token are placed in an ambiguity
    group, named after the first rule in the group.

    :param rs: the rules
    :returns: the inverted rules'''
    inverses: List[Tuple[int, int, RewriteRule]] = []
    dropped = 0
    for (k, r) in enumerate(rs.rules()):
        (inv, ok) = invertRule(r)
        if not ok:
            dropped += 1
            logger.debug(f'Rule {r.ruleId()} is not invertible')
        for (j, ir) in enumerate(inv):
            inverses.append((k, j, ir))
    inverses.sort(key=lambda e: (-e[2].arity(),
                                 0 if e[2].matchKind() == RewriteRule.EXACT else 1,
                                 -e[2].specificity(),
                                 e[0], e[1]))
    ordered = [e[2] for e in inverses]

    # group overlapping triggers of equal specificity
    parent = list(range(len(ordered)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(len(ordered)):
        for b in range(a + 1, len(ordered)):
            if ordered[a].specificity() == ordered[b].specificity() and _triggersOverlap(ordered[a], ordered[b]):
                (ra, rb) = (find(a), find(b))
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    members: Dict[int, List[int]] = dict()
    for a in range(len(ordered)):
        members.setdefault(find(a), []).append(a)
    grouped = list(ordered)
    for (root, ms) in members.items():
        if len(ms) > 1:
            for a in ms:
                grouped[a] = ordered[a].withAmbiguityGroup(ordered[root].ruleId())
    ngroups = len([ms for ms in members.values() if len(ms) > 1])

    logger.info(f'Inverted {len(rs)} rules into {len(grouped)} ({dropped} not invertible, {ngroups} ambiguity groups)')
    return RuleSet(grouped, lexicon=rs.lexicon(), sets=rs.sets(), path=rs.path(), digest=rs.digest(),
                   tagger=rs.tagger())
