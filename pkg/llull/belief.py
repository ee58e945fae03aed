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
import logging
from fractions import Fraction

from llull.errors import ConfigurationError, ConvergenceError, DoctrineError
from llull.utils import ZERO, fraction_str, parse_fraction

logger = logging.getLogger(__name__)

ACCEPTED = 'accepted'
REJECTED = 'rejected'
UNDECIDED = 'undecided'

def neg(lit:int) -> int:
    '''
    Negation of a literal id. Literals 2k and 2k+1
    are each other's negation.
    '''
    return lit ^ 1

class LiteralUniverse:
    '''
    Finite set of literals with their negation pairing.
    Built from a sequence of (label, negated_label) couples:
    the k-th couple becomes the literals 2k and 2k+1.

    '''
    def __init__(self, pairs):
        labels = []
        for positive, negative in pairs:
            labels.extend((positive, negative))

        if len(set(labels)) != len(labels):
            raise ValueError('Literal labels must be unique.')

        self.labels = tuple(labels)
        self.index = {label:i for i, label in enumerate(self.labels)}

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(range(len(self.labels)))

    def __contains__(self, key):
        if isinstance(key, str):
            return key in self.index
        return 0 <= key < len(self.labels)

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, LiteralUniverse) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        return f'LiteralUniverse({len(self)} literals)'

    def literal(self, key) -> int:
        '''
        Literal id from either an id or a label.
        '''
        if isinstance(key, str):
            try:
                return self.index[key]
            except KeyError:
                raise ConfigurationError(f'Literal {key} is not part of this universe.')

        if not 0 <= key < len(self.labels):
            raise ConfigurationError(f'Literal id {key} is out of range.')
        return key

    def label(self, lit:int) -> str:
        return self.labels[lit]

    def negate(self, key) -> int:
        return neg(self.literal(key))

    def pairs(self):
        return [(2*k, 2*k+1) for k in range(len(self.labels)//2)]

def _exact(value):
    if isinstance(value, float):
        raise TypeError(f'Degrees of belief must be exact rationals, got float {value}')
    return parse_fraction(value)

class Valuation:
    '''
    Immutable map from the literals of a universe to
    exact rationals in [0,1]. Revision never modifies a
    valuation, it returns a new one.

    '''
    __slots__ = ('universe', 'values')

    def __init__(self, universe, values):
        values = tuple(_exact(val) for val in values)

        if len(values) != len(universe):
            raise ConfigurationError(f'Valuation has {len(values)} values for {len(universe)} literals.')

        for lit, val in enumerate(values):
            if not ZERO <= val <= 1:
                raise ConfigurationError(f'Degree of belief of {universe.label(lit)} is {val}, outside [0,1].')

        object.__setattr__(self, 'universe', universe)
        object.__setattr__(self, 'values', values)

    def __setattr__(self, name, value):
        raise AttributeError('Valuation objects are immutable.')

    @classmethod
    def zeros(cls, universe):
        return cls(universe, [ZERO]*len(universe))

    @classmethod
    def from_mapping(cls, universe, mapping, default=ZERO):
        '''
        Builds a valuation from a {label or id: value} dict,
        literals left out get the default value.
        '''
        values = [default]*len(universe)
        for key, val in mapping.items():
            values[universe.literal(key)] = val
        return cls(universe, values)

    def __getitem__(self, key):
        return self.values[self.universe.literal(key)]

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        return (isinstance(other, Valuation) and
                self.universe == other.universe and
                self.values == other.values)

    def __hash__(self):
        return hash((self.universe, self.values))

    def __le__(self, other):
        self._check_comparable(other)
        return all(a <= b for a, b in zip(self.values, other.values))

    def __ge__(self, other):
        self._check_comparable(other)
        return all(a >= b for a, b in zip(self.values, other.values))

    def _check_comparable(self, other):
        if self.universe != other.universe:
            raise ConfigurationError('Cannot compare valuations over different universes.')

    def __repr__(self):
        inner = ', '.join(f'{self.universe.label(lit)}: {fraction_str(val)}' for lit, val in enumerate(self.values))
        return f'Valuation({inner})'

    def replace(self, changes:dict):
        '''
        New valuation with some literals changed.
        '''
        values = list(self.values)
        for key, val in changes.items():
            values[self.universe.literal(key)] = val
        return Valuation(self.universe, values)

    def image(self):
        return frozenset(self.values)

    def is_balanced(self):
        return all(self.values[a] + self.values[b] == 1 for a, b in self.universe.pairs())

    def project(self, universe):
        '''
        Same degrees of belief, read over another universe by label.
        Every literal of the target universe must be present here.
        '''
        if universe == self.universe:
            return self
        return Valuation(universe, [self[label] for label in universe.labels])

    def as_dict(self):
        return {self.universe.label(lit): val for lit, val in enumerate(self.values)}

def is_tertium_non_datur(clause) -> bool:
    if len(clause) != 2:
        return False
    a, b = clause
    return a == neg(b)

def is_tautological(clause) -> bool:
    return any(neg(lit) in clause for lit in clause)

def clause_key(clause):
    '''
    Deterministic clause ordering: shorter first,
    then by sorted literal ids.
    '''
    return (len(clause), tuple(sorted(clause)))

def clause_labels(clause, universe):
    return [universe.label(lit) for lit in sorted(clause)]

def clause_str(clause, universe) -> str:
    return ' '.join(clause_labels(clause, universe))

class Doctrine:
    '''
    A clause set (CNF) over a literal universe.

    Every {l, not l} clause is added on construction, so that the
    one-step revision never lowers a degree of belief. Unit clauses
    and clauses holding a literal together with its negation (other
    than the tertium non datur ones) are refused.

    '''
    def __init__(self, universe, clauses, name='doctrine'):
        self.universe = universe
        self.name = name

        proper = set()
        for clause in clauses:
            clause = frozenset(clause)
            self._check_clause(clause)
            if not is_tertium_non_datur(clause):
                proper.add(clause)

        tnd = {frozenset(pair) for pair in universe.pairs()}
        self._clauses = tuple(sorted(proper | tnd, key=clause_key))
        self._premises = None

    def _check_clause(self, clause):
        if not clause:
            raise DoctrineError(f'{self.name}: empty clause.')

        for lit in clause:
            if not (isinstance(lit, int) and 0 <= lit < len(self.universe)):
                raise DoctrineError(f'{self.name}: literal {lit!r} is not part of the universe.')

        if len(clause) == 1:
            raise DoctrineError(f'{self.name}: unit clause {clause_str(clause, self.universe)} is not allowed.')

        if is_tautological(clause) and not is_tertium_non_datur(clause):
            raise DoctrineError(f'{self.name}: clause {clause_str(clause, self.universe)} ' +
                                 'contains a literal and its negation.')

    @property
    def clauses(self):
        return self._clauses

    @property
    def proper_clauses(self):
        '''
        Clauses other than the tertium non datur ones.
        '''
        return tuple(c for c in self.clauses if not is_tertium_non_datur(c))

    def __len__(self):
        return len(self.clauses)

    def __iter__(self):
        return iter(self.clauses)

    def __contains__(self, clause):
        return frozenset(clause) in set(self.clauses)

    def __eq__(self, other):
        return (isinstance(other, Doctrine) and
                self.universe == other.universe and
                set(self.clauses) == set(other.clauses))

    def __hash__(self):
        return hash((self.universe, frozenset(self.clauses)))

    def __repr__(self):
        return f'Doctrine({self.name}, {len(self.clauses)} clauses)'

    def with_clauses(self, clauses, name=None):
        return Doctrine(self.universe, clauses, name=name or self.name)

    def premises(self):
        '''
        For each literal l, the list of premise tuples
        (not q for q in C, q != l) of the proper clauses C holding l.
        '''
        if self._premises is None:
            premises = [[] for _ in self.universe]
            for clause in self.proper_clauses:
                for lit in clause:
                    premises[lit].append(tuple(neg(q) for q in clause if q != lit))
            self._premises = premises
        return self._premises

    def derive(self, values) -> list:
        '''
        For every literal l, the max over the proper clauses C holding l
        of the min over q in C minus l of the belief in not q
        (0 when no clause holds l).

        '''
        derived = []
        for premises in self.premises():
            best = ZERO
            for premise in premises:
                weakest = min(values[q] for q in premise)
                if weakest > best:
                    best = weakest
            derived.append(best)
        return derived

    def dump(self) -> str:
        '''
        Sorted text rendering, one clause per line,
        literals separated by spaces.
        '''
        lines = sorted(clause_str(c, self.universe) for c in self.clauses)
        return '\n'.join(lines)

class Decision:
    '''
    Tri-state decision (accepted / rejected / undecided)
    on every literal of a universe.
    '''
    def __init__(self, universe, states, margin):
        self.universe = universe
        self.states = tuple(states)
        self.margin = margin

    def state(self, key) -> str:
        return self.states[self.universe.literal(key)]

    def accepted(self, key) -> bool:
        return self.state(key) == ACCEPTED

    def rejected(self, key) -> bool:
        return self.state(key) == REJECTED

    def undecided(self, key) -> bool:
        return self.state(key) == UNDECIDED

    def accepted_literals(self):
        return [lit for lit, state in enumerate(self.states) if state == ACCEPTED]

    def __eq__(self, other):
        return (isinstance(other, Decision) and
                self.universe == other.universe and
                self.states == other.states)

    def __hash__(self):
        return hash((self.universe, self.states))

    def __repr__(self):
        accepted = ', '.join(self.universe.label(lit) for lit in self.accepted_literals())
        return f'Decision(margin={fraction_str(self.margin)}, accepted: {accepted})'

def check_margin(margin) -> Fraction:
    try:
        margin = parse_fraction(margin)
    except (ValueError, ZeroDivisionError, TypeError):
        raise ConfigurationError(f'Margin {margin!r} is not a rational number.')

    if not ZERO <= margin <= 1:
        raise ConfigurationError(f'Margin {margin} is outside [0,1].')
    return margin

def acceptability(v:Valuation, key) -> Fraction:
    '''
    Belief in a literal minus belief in its negation.
    '''
    lit = v.universe.literal(key)
    return v.values[lit] - v.values[neg(lit)]

def decide(v:Valuation, margin=0) -> Decision:
    '''
    Decision of the given margin: l is accepted iff
    v(l) - v(not l) > margin, undecided iff |v(l) - v(not l)| <= margin.
    '''
    margin = check_margin(margin)

    states = []
    for lit, val in enumerate(v.values):
        diff = val - v.values[neg(lit)]
        if diff > margin:
            states.append(ACCEPTED)
        elif -diff > margin:
            states.append(REJECTED)
        else:
            states.append(UNDECIDED)

    return Decision(v.universe, states, margin)

def is_definitely_consistent(dec:Decision, d) -> bool:
    '''
    True iff every clause of d holds an accepted
    literal or at least two undecided ones.
    '''
    if dec.universe != d.universe:
        raise ConfigurationError('Decision and doctrine are over different universes.')

    states = dec.states
    for clause in d.clauses:
        undecided = 0
        for lit in clause:
            if states[lit] == ACCEPTED:
                break
            if states[lit] == UNDECIDED:
                undecided += 1
        else:
            if undecided < 2:
                return False
    return True

def _on_universe(v:Valuation, d) -> Valuation:
    if v.universe == d.universe:
        return v
    return v.project(d.universe)

def _iteration_cap(values) -> int:
    return max(1, len(values) * len(set(values)))

def one_step_revise(v:Valuation, d) -> Valuation:
    '''
    Believes every literal at least as much as the weakest
    premise of any clause that implies it.
    '''
    v = _on_universe(v, d)
    derived = d.derive(v.values)
    return Valuation(d.universe, [max(a, b) for a, b in zip(v.values, derived)])

def upper_revise(v:Valuation, d) -> Valuation:
    '''
    Least fixed point of one_step_revise above v.

    Iterates w -> max(v, derive(w)) starting from v, which
    reaches the same fixed point as repeated one-step revisions
    while keeping the original beliefs inside the outer max.
    All the iterates take values in the image of v, so the
    number of rounds is bounded.

    '''
    v = _on_universe(v, d)
    start = v.values
    current = start

    for iteration in range(1, _iteration_cap(start) + 1):
        derived = d.derive(current)
        following = tuple(max(a, b) for a, b in zip(start, derived))

        if following == current:
            logger.debug('%s: fixed point reached after %d iterations', d.name, iteration)
            return Valuation(d.universe, following)

        current = following

    raise ConvergenceError(f'{d.name}: no fixed point within {_iteration_cap(start)} iterations.')

def naive_upper_revise(v:Valuation, d) -> Valuation:
    '''
    Plain repetition of one_step_revise until nothing changes.
    Slower than upper_revise, used to cross-check it.
    '''
    v = _on_universe(v, d)
    cap = _iteration_cap(v.values)

    for _ in range(cap):
        following = one_step_revise(v, d)
        if following == v:
            return v
        v = following

    raise ConvergenceError(f'{d.name}: no fixed point within {cap} iterations.')
