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
from enum import Enum
from itertools import permutations

from llull.belief import (Doctrine, LiteralUniverse, Valuation, clause_key,
                          is_tertium_non_datur)
from llull.errors import CapExceededError, ConfigurationError
from llull.settings import COMPREHENSIVE_CAP
from llull.utils import ONE, ZERO


class DoctrineKind(Enum):
    TRANSITIVITY = 'transitivity'
    SUPREMACY = 'supremacy'
    PROMINENCE = 'prominence'
    SYMMETRIC_PROMINENCE = 'symmetric-prominence'
    COMPREHENSIVE_PROMINENCE = 'comprehensive-prominence'
    GOODNESS = 'goodness'

    @property
    def letter(self):
        '''
        Name of the unary proposition of this doctrine
        (s for supremacy, t for prominence, g for goodness).
        '''
        return _letters.get(self)

_letters = {
    DoctrineKind.SUPREMACY : 's',
    DoctrineKind.PROMINENCE : 't',
    DoctrineKind.SYMMETRIC_PROMINENCE : 't',
    DoctrineKind.COMPREHENSIVE_PROMINENCE : 't',
    DoctrineKind.GOODNESS : 'g',
}

class UnaryInit(Enum):
    ZERO = 'zero'
    PLURALITY = 'plurality'
    PLURALITY_AND_LAST = 'plurality-last'
    APPROVAL = 'approval'

def default_options(n:int):
    '''
    Option names used when doctrines are
    built from a bare option count.
    '''
    if n < 1:
        raise ConfigurationError('At least one option is needed.')
    if n <= 26:
        return tuple('abcdefghijklmnopqrstuvwxyz'[:n])
    return tuple(f'o{i+1}' for i in range(n))

def pref_label(x, y):
    return f'p({x},{y})'

def unary_label(letter, x, negated=False):
    return f'~{letter}({x})' if negated else f'{letter}({x})'

class PreferenceUniverse(LiteralUniverse):
    '''
    Literals p(x,y) for every ordered pair of different options, with
    p(y,x) as the negation of p(x,y), plus the unary literals u(x), ~u(x)
    when a letter is given.

    '''
    def __init__(self, options, letter=None):
        self.options = tuple(options)
        self.letter = letter
        n = len(self.options)

        if len(set(self.options)) != n:
            raise ConfigurationError('Option names must be unique.')

        pairs = [(pref_label(x, y), pref_label(y, x))
                 for i, x in enumerate(self.options)
                 for y in self.options[i+1:]]

        if letter is not None:
            pairs += [(unary_label(letter, x), unary_label(letter, x, negated=True)) for x in self.options]

        super().__init__(pairs)

        self._p = [[self.index[pref_label(x, y)] if x != y else None for y in self.options] for x in self.options]
        # _p[i][j] is the id of p(option i, option j)

        if letter is not None:
            self._u = [self.index[unary_label(letter, x)] for x in self.options]
            self._nu = [self.index[unary_label(letter, x, negated=True)] for x in self.options]

    @property
    def n(self):
        return len(self.options)

    def p(self, i:int, j:int) -> int:
        return self._p[i][j]

    def pos(self, i:int) -> int:
        return self._u[i]

    def neg(self, i:int) -> int:
        return self._nu[i]

    def position(self, x) -> int:
        try:
            return self.options.index(x)
        except ValueError:
            raise ConfigurationError(f'Unknown option {x}.')

def _resolve_options(options):
    if isinstance(options, int):
        return default_options(options)
    return tuple(options)

def preference_universe(options, kind:DoctrineKind):
    return PreferenceUniverse(_resolve_options(options), kind.letter)

def _subsets(n):
    '''
    Non-empty subsets of range(n), as (members, outsiders) tuples.
    '''
    for mask in range(1, 1 << n):
        members = tuple(i for i in range(n) if mask >> i & 1)
        outsiders = tuple(i for i in range(n) if not mask >> i & 1)
        yield members, outsiders

def transitivity_clauses(u):
    return {frozenset((u.p(x, y), u.p(y, z), u.p(z, x)))
            for x, y, z in permutations(range(u.n), 3)}

def supremacy_clauses(u):
    n = u.n
    clauses = set()
    for x in range(n):
        clauses.add(frozenset([u.pos(x)] + [u.p(y, x) for y in range(n) if y != x]))
        # s_x or some y is preferred to x

        for y in range(n):
            if y != x:
                clauses.add(frozenset((u.neg(x), u.p(x, y))))
                # supreme x is preferred to y

    clauses.add(frozenset(u.pos(x) for x in range(n)))
    # some option is supreme

    return clauses

def prominence_clauses(u, symmetric=False):
    n = u.n
    clauses = set()
    for x in range(n):
        clauses.add(frozenset([u.pos(x)] + [u.p(y, x) for y in range(n) if y != x]))
        # best implies prominent
        if symmetric:
            clauses.add(frozenset([u.neg(x)] + [u.p(x, y) for y in range(n) if y != x]))
            # worst implies not prominent
    return clauses

def comprehensive_clauses(u):
    n = u.n
    clauses = set()
    for members, outsiders in _subsets(n):
        rectangle = [u.p(s, r) for r in members for s in outsiders]
        clauses.add(frozenset([u.pos(r) for r in members] + rectangle))
        for y in outsiders:
            clauses.add(frozenset([u.neg(y)] + rectangle))

    for x in range(n):
        for y in range(x+1, n):
            clauses.add(frozenset((u.neg(x), u.neg(y))))
            # at most one prominent option

    return clauses

def goodness_clauses(u):
    return {frozenset((u.neg(x), u.p(x, y), u.pos(y)))
            for x, y in permutations(range(u.n), 2)}

class ComprehensiveProminenceDoctrine(Doctrine):
    '''
    Comprehensive prominence doctrine. Its clauses are indexed by
    all the non-empty subsets X of the options:

        t_r (r in X)  or  p_sr (r in X, s not in X)
        ~t_y  or  p_sr (r in X, s not in X)          for y not in X
        ~t_x  or  ~t_y

    The clauses are only materialized on request (dump, Blake form,
    consistency checks). The one-step revision goes through grouped
    formulas that visit every subset once per call.

    '''
    is_canonical = True
    # no resolvent of these clauses is prime

    def __init__(self, universe):
        self.universe = universe
        self.name = DoctrineKind.COMPREHENSIVE_PROMINENCE.value
        self._clauses = None
        self._premises = None

    @property
    def clauses(self):
        if self._clauses is None:
            generated = {c for c in comprehensive_clauses(self.universe) if len(c) > 1}
            tnd = {frozenset(pair) for pair in self.universe.pairs()}
            self._clauses = tuple(sorted(generated | tnd, key=clause_key))
        return self._clauses

    def materialize(self):
        '''
        Plain Doctrine with the same clauses.
        '''
        return Doctrine(self.universe, [c for c in self.clauses if not is_tertium_non_datur(c)], name=self.name)

    def derive(self, values):
        u = self.universe
        n = u.n
        derived = [ZERO]*len(values)

        if n < 2:
            return derived

        P = [[values[u.p(r, s)] if r != s else None for s in range(n)] for r in range(n)]
        T = [values[u.pos(x)] for x in range(n)]
        NT = [values[u.neg(x)] for x in range(n)]

        best_t = [ZERO]*n
        best_nt = [max(T[r] for r in range(n) if r != y) for y in range(n)]
        # uniqueness clauses
        best_p = [[ZERO]*n for _ in range(n)]
        # best_p[y][x] is the support of p_yx

        for members, outsiders in _subsets(n):

            low, low_at, second = ONE, None, ONE
            for r in members:
                for s in outsiders:
                    val = P[r][s]
                    if val < low:
                        low, low_at, second = val, (r, s), low
                    elif val < second:
                        second = val
            # weakest preference from X to its outside, where it
            # sits, and the weakest once that entry is left out

            nt_low, nt_at, nt_second = ONE, None, ONE
            for r in members:
                val = NT[r]
                if val < nt_low:
                    nt_low, nt_at, nt_second = val, r, nt_low
                elif val < nt_second:
                    nt_second = val

            for x in members:
                rest = nt_second if nt_at == x else nt_low
                candidate = min(rest, low)
                if candidate > best_t[x]:
                    best_t[x] = candidate

            if not outsiders:
                continue

            for y in outsiders:
                if low > best_nt[y]:
                    best_nt[y] = low

            gate = max(nt_low, max(T[s] for s in outsiders))
            for x in members:
                for y in outsiders:
                    rest = second if low_at == (x, y) else low
                    candidate = min(gate, rest)
                    if candidate > best_p[y][x]:
                        best_p[y][x] = candidate

        for x in range(n):
            derived[u.pos(x)] = best_t[x]
            derived[u.neg(x)] = best_nt[x]
            for y in range(n):
                if y != x:
                    derived[u.p(y, x)] = best_p[y][x]

        return derived

def build_doctrine(kind:DoctrineKind, options, cap=COMPREHENSIVE_CAP):
    '''
    Clause set of a doctrine over the given options (or option count).
    Tertium non datur clauses are always included. With a single
    option the unit clauses that would appear are dropped, leaving
    only the tertium non datur ones.

    '''
    kind = DoctrineKind(kind)
    u = preference_universe(options, kind)

    if kind is DoctrineKind.COMPREHENSIVE_PROMINENCE:
        if u.n > cap:
            raise CapExceededError(f'{kind.value}: {u.n} options exceed the cap of {cap}.')
        return ComprehensiveProminenceDoctrine(u)

    generators = {
        DoctrineKind.TRANSITIVITY : transitivity_clauses,
        DoctrineKind.SUPREMACY : supremacy_clauses,
        DoctrineKind.PROMINENCE : prominence_clauses,
        DoctrineKind.SYMMETRIC_PROMINENCE : lambda u: prominence_clauses(u, symmetric=True),
        DoctrineKind.GOODNESS : goodness_clauses,
    }

    clauses = [c for c in generators[kind](u) if len(c) > 1]
    return Doctrine(u, clauses, name=kind.value)

def initial_valuation(kind:DoctrineKind, llull, scores=None, unary_init=UnaryInit.ZERO):
    '''
    Valuation over the literals of the doctrine: preference
    literals from the Llull matrix, unary literals according
    to unary_init.

    '''
    kind = DoctrineKind(kind)
    unary_init = UnaryInit(unary_init)
    u = preference_universe(llull.options, kind)
    values = [ZERO]*len(u)

    for i in range(u.n):
        for j in range(u.n):
            if i != j:
                values[u.p(i, j)] = llull.table[i][j]

    if unary_init is UnaryInit.ZERO:
        return Valuation(u, values)

    if kind.letter is None:
        raise ConfigurationError(f'The {kind.value} doctrine has no unary literals to initialize with {unary_init.value}.')

    if unary_init is UnaryInit.APPROVAL and kind is not DoctrineKind.GOODNESS:
        raise ConfigurationError('Approval initialization only applies to the goodness doctrine.')

    if scores is None:
        raise ConfigurationError(f'{unary_init.value} initialization needs the score vectors of a ballot profile.')

    positive, negative = {
        UnaryInit.PLURALITY : (scores.plurality, scores.antiplurality),
        UnaryInit.PLURALITY_AND_LAST : (scores.plurality, scores.last_place),
        UnaryInit.APPROVAL : (scores.approval, scores.disapproval),
    }[unary_init]

    for i, x in enumerate(u.options):
        values[u.pos(i)] = positive[x]
        values[u.neg(i)] = negative[x]

    return Valuation(u, values)
