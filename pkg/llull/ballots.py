# coding=utf-8
'''

LLULL: collective degrees of belief for voting
Copyright (C) 2021-2023 Nicolò Tampellini

This program is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.

This program is distributed in the hope that it will be useful,
but WITHOUT ANY WARRANTY; without even the implied warranty of
MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
GNU General Public License for more details.

'''
import ast
import json
import operator
import re
from fractions import Fraction

import numpy as np
from prettytable import PrettyTable

from llull.errors import ConfigurationError, ProfileParseError
from llull.utils import HALF, ZERO, fraction_str, parse_fraction

ABSTAIN = 'abstain'
TIES = 'ties'
# How pairs of options missing from a ballot are read

truncation_modes = {
    'abstain' : ABSTAIN,
    'ties' : TIES,
    'complete_as_ties' : TIES,
}

LISTED = 'listed'
UNLISTED = 'unlisted'
# Which options are placed last on a truncated ballot

_option_token = re.compile(r'[A-Za-z0-9_.\-]+')

class Ballot:
    '''
    A weighted ballot: ordered tie groups of approved options,
    then (after the divider, if any) ordered tie groups of
    disapproved options. Without divider the ballot is a plain,
    possibly truncated, ranking kept in approved_groups.

    '''
    def __init__(self, weight, approved_groups, disapproved_groups=(), has_divider=False):

        self.weight = parse_fraction(weight)
        self.approved_groups = tuple(tuple(g) for g in approved_groups)
        self.disapproved_groups = tuple(tuple(g) for g in disapproved_groups)
        self.has_divider = has_divider

        if self.weight < 0:
            raise ValueError(f'Ballot weight must be non-negative, got {self.weight}.')

        if not has_divider and self.disapproved_groups:
            raise ValueError('Only ballots with a divider can have disapproved options.')

        if not self.groups:
            raise ValueError('A ballot must list at least one option.')

        if any(len(g) == 0 for g in self.groups):
            raise ValueError('Empty tie group.')

        listed = [x for g in self.groups for x in g]
        if len(set(listed)) != len(listed):
            duplicates = sorted({x for x in listed if listed.count(x) > 1})
            raise ValueError(f'Option(s) {", ".join(duplicates)} listed more than once.')

        self.ranks = {x:i for i, g in enumerate(self.groups) for x in g}
        # position of the tie group of each listed option
        # in the induced ranking (approved above disapproved)

    @property
    def groups(self):
        return self.approved_groups + self.disapproved_groups

    @property
    def listed(self):
        return frozenset(self.ranks)

    @property
    def approved(self):
        return frozenset(x for g in self.approved_groups for x in g)

    @property
    def disapproved(self):
        return frozenset(x for g in self.disapproved_groups for x in g)

    def __eq__(self, other):
        return (isinstance(other, Ballot) and
                (self.weight, self.approved_groups, self.disapproved_groups, self.has_divider) ==
                (other.weight, other.approved_groups, other.disapproved_groups, other.has_divider))

    def __hash__(self):
        return hash((self.weight, self.approved_groups, self.disapproved_groups, self.has_divider))

    def __str__(self):
        def side(groups):
            return ' > '.join(' = '.join(g) for g in groups)

        expr = side(self.approved_groups)
        if self.has_divider:
            expr = f'{expr} | {side(self.disapproved_groups)}'.strip()
        return f'{fraction_str(self.weight)}: {expr}'

    def __repr__(self):
        return f'Ballot({self})'

class Profile:
    '''
    Options (in order) and the weighted ballots cast over them.
    '''
    def __init__(self, options, ballots):
        self.options = tuple(options)
        self.ballots = tuple(ballots)

        if not self.options:
            raise ConfigurationError('A profile needs at least one option.')

        known = set(self.options)
        for ballot in self.ballots:
            unknown = ballot.listed - known
            if unknown:
                raise ConfigurationError(f'Ballot {ballot} lists undeclared option(s) {", ".join(sorted(unknown))}.')

        if self.total_weight <= 0:
            raise ConfigurationError('The total weight of the ballots must be positive.')

    @property
    def total_weight(self):
        return sum((b.weight for b in self.ballots), ZERO)

    @property
    def has_approval_data(self):
        return any(b.has_divider for b in self.ballots)

    def __add__(self, other):
        options = self.options + tuple(x for x in other.options if x not in self.options)
        return Profile(options, self.ballots + other.ballots)

    def __len__(self):
        return len(self.ballots)

    def __repr__(self):
        return f'Profile({len(self.options)} options, {len(self.ballots)} ballots, weight {fraction_str(self.total_weight)})'

    def text(self):
        lines = [f'options: {" ".join(self.options)}']
        lines.extend(str(b) for b in self.ballots)
        return '\n'.join(lines) + '\n'

_operators = {
    ast.Add : operator.add,
    ast.Sub : operator.sub,
    ast.Mult : operator.mul,
    ast.Div : operator.truediv,
}

def _evaluate(node, source, params):
    if isinstance(node, ast.Expression):
        return _evaluate(node.body, source, params)

    if isinstance(node, ast.Constant) and type(node.value) in (int, float):
        return Fraction(ast.get_source_segment(source, node))
        # read back from the source text, so that decimals stay exact

    if isinstance(node, ast.Name):
        if node.id not in params:
            raise ValueError(f'unknown parameter "{node.id}" (set it with --param {node.id}=VALUE)')
        return params[node.id]

    if isinstance(node, ast.BinOp) and type(node.op) in _operators:
        return _operators[type(node.op)](_evaluate(node.left, source, params),
                                         _evaluate(node.right, source, params))

    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
        value = _evaluate(node.operand, source, params)
        return -value if isinstance(node.op, ast.USub) else value

    raise ValueError(f'unsupported syntax in weight "{source}"')

def evaluate_weight(text:str, params=None) -> Fraction:
    '''
    Exact value of a ballot weight: a rational ("3", "1/2",
    "4.75") or an arithmetic expression over rationals and
    named parameters, i.e. "(1-eps)/2".

    '''
    text = text.strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        pass

    try:
        tree = ast.parse(text, mode='eval')
    except SyntaxError:
        raise ValueError(f'malformed weight "{text}"')

    return Fraction(_evaluate(tree, text, params or {}))

def _parse_side(side:str):
    side = side.strip()
    if not side:
        return []

    groups = []
    for chunk in side.split('>'):
        group = [token.strip() for token in chunk.split('=')]
        for token in group:
            if not token:
                raise ValueError('empty option name (dangling ">" or "=")')
            if not _option_token.fullmatch(token):
                raise ValueError(f'malformed option name "{token}"')
        groups.append(group)
    return groups

def parse_ballot(expr:str, weight) -> Ballot:
    if expr.count('|') > 1:
        raise ValueError('more than one "|" divider')

    if '|' in expr:
        left, right = expr.split('|')
        return Ballot(weight, _parse_side(left), _parse_side(right), has_divider=True)

    return Ballot(weight, _parse_side(expr))

def parse_profile(text:str, params=None) -> Profile:
    '''
    Reads a ballot profile, one ballot per line:

        weight: a > b = c | d > e

    ">" is strict preference, "=" a tie, "|" the divider between
    approved (left) and disapproved (right) options. "#" starts
    a comment. A line "options: a b c d" declares the options and
    their order, otherwise they are taken in order of appearance.

    '''
    params = {k: parse_fraction(v) for k, v in (params or {}).items()}
    declared = None
    ballots = []
    seen = []

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue

        if ':' not in line:
            raise ProfileParseError('expected "weight: ballot"', line=number)

        head, expr = (s.strip() for s in line.split(':', 1))

        if head.lower() == 'options':
            if declared is not None:
                raise ProfileParseError('options declared twice', line=number)
            declared = expr.split()
            if not declared:
                raise ProfileParseError('empty options declaration', line=number)
            for token in declared:
                if not _option_token.fullmatch(token):
                    raise ProfileParseError(f'malformed option name "{token}"', line=number)
            if len(set(declared)) != len(declared):
                raise ProfileParseError('option declared twice', line=number)
            continue

        try:
            weight = evaluate_weight(head, params)
        except (ValueError, ZeroDivisionError, TypeError) as e:
            raise ProfileParseError(f'malformed weight "{head}" ({e})', line=number)

        if weight < 0:
            raise ProfileParseError(f'negative weight {fraction_str(weight)}', line=number)

        if not expr:
            raise ProfileParseError('empty ballot expression', line=number)

        try:
            ballot = parse_ballot(expr, weight)
        except ValueError as e:
            raise ProfileParseError(str(e), line=number)

        if declared is not None:
            unknown = sorted(ballot.listed - set(declared))
            if unknown:
                raise ProfileParseError(f'undeclared option(s) {", ".join(unknown)}', line=number)

        for g in ballot.groups:
            seen.extend(x for x in g if x not in seen)

        ballots.append(ballot)

    if not ballots:
        raise ProfileParseError('no ballots found')

    if sum(b.weight for b in ballots) == 0:
        raise ProfileParseError('the total weight of the ballots is zero')

    return Profile(declared if declared is not None else seen, ballots)

def read_profile(filename, params=None) -> Profile:
    with open(filename, 'r', encoding='utf-8') as f:
        return parse_profile(f.read(), params=params)

def _table_of(options, rows):
    n = len(options)
    table = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            table[i, j] = ZERO if i == j else parse_fraction(rows[i][j])
    return table

class LlullMatrix:
    '''
    Pairwise table of collective degrees of belief: table[i, j]
    is v(p_xy) for x, y the options i, j. Stored as a numpy object
    array of Fractions with a zero diagonal.

    With validate=True every entry must be in [0,1] and
    v(p_xy) + v(p_yx) <= 1 for every pair.

    '''
    def __init__(self, options, table, validate=True):
        self.options = tuple(options)
        self.table = _table_of(self.options, table)

        if validate:
            self._validate()

    def _validate(self):
        n = self.n
        for i in range(n):
            for j in range(n):
                if i != j and not ZERO <= self.table[i, j] <= 1:
                    raise ConfigurationError(f'v(p_{self.options[i]}{self.options[j]}) = {self.table[i, j]} is outside [0,1].')
        for i in range(n):
            for j in range(i+1, n):
                if self.table[i, j] + self.table[j, i] > 1:
                    raise ConfigurationError(f'v(p_{self.options[i]}{self.options[j]}) + v(p_{self.options[j]}{self.options[i]}) exceeds 1.')

    @property
    def n(self):
        return len(self.options)

    def v(self, x, y) -> Fraction:
        return self.table[self.position(x), self.position(y)]

    def position(self, x) -> int:
        try:
            return self.options.index(x)
        except ValueError:
            raise ConfigurationError(f'Unknown option {x}.')

    def is_complete(self):
        return all(self.table[i, j] + self.table[j, i] == 1
                   for i in range(self.n) for j in range(i+1, self.n))

    def restrict(self, options):
        '''
        Sub-matrix over some options, kept in the original order.
        '''
        keep = [i for i, x in enumerate(self.options) if x in set(options)]
        if len(keep) != len(set(options)):
            raise ConfigurationError('Cannot restrict to options that are not in the matrix.')
        return LlullMatrix([self.options[i] for i in keep],
                           [[self.table[i, j] for j in keep] for i in keep],
                           validate=False)

    def __eq__(self, other):
        return (isinstance(other, LlullMatrix) and
                self.options == other.options and
                all(a == b for a, b in zip(self.table.flat, other.table.flat)))

    def __repr__(self):
        return f'LlullMatrix({", ".join(self.options)})'

    def to_dict(self):
        return {
            'options' : list(self.options),
            'matrix' : [[None if i == j else fraction_str(self.table[i, j]) for j in range(self.n)]
                        for i in range(self.n)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data, validate=True):
        try:
            options = data['options']
            rows = data['matrix']
        except (KeyError, TypeError):
            raise ConfigurationError('A Llull matrix needs "options" and "matrix" entries.')

        if len(rows) != len(options) or any(len(row) != len(options) for row in rows):
            raise ConfigurationError('The Llull matrix must be square, with one row per option.')

        try:
            return cls(options, rows, validate=validate)
        except (ValueError, ZeroDivisionError, TypeError) as e:
            raise ConfigurationError(f'Malformed Llull matrix entry ({e}).')

    @classmethod
    def from_json(cls, text:str, validate=True):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigurationError(f'Malformed JSON ({e}).')
        return cls.from_dict(data, validate=validate)

    def text(self) -> str:
        table = PrettyTable()
        table.field_names = [''] + list(self.options)
        for i, x in enumerate(self.options):
            table.add_row([x] + ['-' if i == j else fraction_str(self.table[i, j]) for j in range(self.n)])
        return table.get_string()

def llull_matrix(profile:Profile, truncation_mode=ABSTAIN) -> LlullMatrix:
    '''
    Aggregated pairwise preferences of a profile. Each ballot gives
    1/0 to an option ranked above another, 1/2 each to tied options,
    1/0 to a listed option over an unlisted one, and for two unlisted
    options nothing (abstain) or 1/2 each (ties). Divided ballots prefer
    approved to disapproved options; in abstain mode the options they
    leave out do not count for them at all, in ties mode they are
    appended as a bottom tie group. Contributions are averaged with the
    ballot weights.

    '''
    try:
        mode = truncation_modes[truncation_mode]
    except KeyError:
        raise ConfigurationError(f'Unknown truncation mode {truncation_mode}. Use abstain or ties.')

    options = profile.options
    n = len(options)
    counts = [[ZERO]*n for _ in range(n)]

    for ballot in profile.ballots:
        w = ballot.weight
        ranks = ballot.ranks

        for i in range(n):
            for j in range(i+1, n):
                ri = ranks.get(options[i])
                rj = ranks.get(options[j])

                if ri is not None and rj is not None:
                    if ri < rj:
                        counts[i][j] += w
                    elif rj < ri:
                        counts[j][i] += w
                    else:
                        counts[i][j] += w*HALF
                        counts[j][i] += w*HALF

                elif ri is not None or rj is not None:
                    if ballot.has_divider and mode == ABSTAIN:
                        continue
                    if ri is not None:
                        counts[i][j] += w
                    else:
                        counts[j][i] += w

                elif mode == TIES:
                    counts[i][j] += w*HALF
                    counts[j][i] += w*HALF

    total = profile.total_weight
    return LlullMatrix(options, [[counts[i][j]/total for j in range(n)] for i in range(n)])

class ScoreVectors:
    '''
    Per-option fractions of the vote: plurality (f), antiplurality
    (sum of the others' f), last place, approval and disapproval.
    '''
    def __init__(self, options, plurality, last_place, approval, disapproval, has_approval_data=False):
        self.options = tuple(options)
        self.plurality = dict(plurality)
        self.last_place = dict(last_place)
        self.approval = dict(approval)
        self.disapproval = dict(disapproval)
        self.has_approval_data = has_approval_data

        total = sum(self.plurality.values(), ZERO)
        self.antiplurality = {x: total - self.plurality[x] for x in self.options}

    def to_dict(self):
        names = ('plurality', 'antiplurality', 'last_place', 'approval', 'disapproval')
        return {name: {x: fraction_str(getattr(self, name)[x]) for x in self.options} for name in names}

    def text(self) -> str:
        table = PrettyTable()
        table.field_names = ['option', 'plurality', 'antiplurality', 'last place', 'approval', 'disapproval']
        for x in self.options:
            table.add_row([x] + [fraction_str(d[x]) for d in (self.plurality, self.antiplurality,
                                                              self.last_place, self.approval,
                                                              self.disapproval)])
        return table.get_string()

def score_vectors(profile:Profile, last_place=LISTED) -> ScoreVectors:
    '''
    A top (bottom) tie group of k options gives 1/k of the ballot
    weight to each of its members' plurality (last place) score.
    Divided ballots are read through their induced ranking, and
    their two sides give the approval and disapproval scores.

    With last_place=LISTED the bottom group is the last listed one;
    with UNLISTED it is made of the options the ballot leaves out
    (tied), when there are any. The bound l_y <= v(p_xy), x != y,
    holds for LISTED when every ballot ranks all options, and for
    UNLISTED on every profile read in ties mode. On other truncated
    profiles it can fail: see last_place_violations.

    '''
    if last_place not in (LISTED, UNLISTED):
        raise ConfigurationError(f'Unknown last place mode {last_place}. Use listed or unlisted.')

    options = profile.options
    first = {x: ZERO for x in options}
    last = {x: ZERO for x in options}
    approval = {x: ZERO for x in options}
    disapproval = {x: ZERO for x in options}

    for ballot in profile.ballots:
        w = ballot.weight
        top = ballot.groups[0]
        for x in top:
            first[x] += w / len(top)

        bottom = ballot.groups[-1]
        if last_place == UNLISTED:
            missing = [x for x in options if x not in ballot.ranks]
            if missing:
                bottom = missing
        for x in bottom:
            last[x] += w / len(bottom)

        for x in ballot.approved if ballot.has_divider else ():
            approval[x] += w
        for x in ballot.disapproved:
            disapproval[x] += w

    total = profile.total_weight
    normalize = lambda d: {x: d[x]/total for x in options}

    return ScoreVectors(options,
                        normalize(first),
                        normalize(last),
                        normalize(approval),
                        normalize(disapproval),
                        has_approval_data=profile.has_approval_data)

def last_place_violations(llull:LlullMatrix, scores:ScoreVectors):
    '''
    Pairs (x, y) with l_y > v(p_xy). When there are none, the
    last place scores are a lower bound for every column of the
    Llull matrix, as the plurality-last initialization expects.

    '''
    return [(x, y) for y in llull.options for x in llull.options
            if x != y and scores.last_place[y] > llull.v(x, y)]
