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
from itertools import permutations, product

from prettytable import PrettyTable

from llull.belief import (clause_key, clause_str, is_tautological, neg,
                          one_step_revise, upper_revise)
from llull.errors import CapExceededError, ResolutionError
from llull.settings import BLAKE_MAX_LITERALS
from llull.utils import fraction_str

logger = logging.getLogger(__name__)

class ResolutionTrace:
    '''
    One resolution step: the resolvent of two
    parent clauses on a pivot literal.
    '''
    def __init__(self, pivot, parents, resolvent):
        self.pivot = pivot
        self.parents = parents
        self.resolvent = resolvent

    def __repr__(self):
        return f'ResolutionTrace(pivot={self.pivot}, {sorted(self.parents[0])} x {sorted(self.parents[1])} -> {sorted(self.resolvent)})'

    def text(self, universe):
        c1, c2 = self.parents
        return (f'[{clause_str(c1, universe)}] x [{clause_str(c2, universe)}] ' +
                f'on {universe.label(self.pivot)} -> [{clause_str(self.resolvent, universe)}]')

def resolve(c1, c2, pivot):
    '''
    Resolvent of c1 and c2 on pivot (which must be in c1, with its
    negation in c2), or None when the resolvent is tautological.

    '''
    if pivot not in c1 or neg(pivot) not in c2:
        raise ResolutionError(f'Literal {pivot} must be in the first clause and its negation in the second.')

    resolvent = (frozenset(c1) - {pivot}) | (frozenset(c2) - {neg(pivot)})

    if is_tautological(resolvent):
        return None

    return resolvent

def _index(clauses, size):
    index = [set() for _ in range(size)]
    for clause in clauses:
        for lit in clause:
            index[lit].add(clause)
    return index

def _is_absorbed(clause, index):
    '''
    True if some other clause of the index is a strict subset of clause.
    '''
    for lit in clause:
        for other in index[lit]:
            if other < clause:
                return True
    return False

def _absorb(clauses, size):
    index = _index(clauses, size)
    return {c for c in clauses if not _is_absorbed(c, index)}

def blake_canonical_form(d, max_literals=BLAKE_MAX_LITERALS, traces=None):
    '''
    Saturates the clauses of a doctrine under resolution, in breadth-first
    rounds, removing absorbed clauses (strict supersets of other clauses)
    after each round. Returns the doctrine made of the prime clauses plus
    the tertium non datur ones.

    If a list is passed as traces, every resolvent kept during the
    saturation is appended to it as a ResolutionTrace.

    '''
    size = len(d.universe)
    if size > max_literals:
        raise CapExceededError(f'{d.name}: {size} literals exceed the Blake canonical form guard of {max_literals}.')

    clauses = _absorb(set(d.proper_clauses), size)
    index = _index(clauses, size)
    frontier = sorted(clauses, key=clause_key)
    rounds = 0

    while frontier:

        rounds += 1
        found = {}

        for c1 in frontier:
            for pivot in sorted(c1):
                for c2 in sorted(index[neg(pivot)], key=clause_key):

                    resolvent = resolve(c1, c2, pivot)

                    if resolvent is None or resolvent in clauses or resolvent in found:
                        continue

                    if _is_absorbed(resolvent, index):
                        continue

                    found[resolvent] = ResolutionTrace(pivot, (c1, c2), resolvent)

        merged = _absorb(clauses | set(found), size)
        new = [c for c in found if c in merged]

        if traces is not None:
            traces.extend(found[c] for c in sorted(new, key=clause_key))

        clauses = merged
        index = _index(clauses, size)
        frontier = sorted(new, key=clause_key)

        logger.debug('%s: resolution round %d, %d new clauses, %d total',
                     d.name, rounds, len(new), len(clauses))

    return d.with_clauses(clauses, name=d.name)

def transitivity_canonical(u):
    '''
    Cycles p(x0,x1) p(x1,x2) ... p(xn,x0) over pairwise different
    options, n >= 2. The two-option cycles are the tertium non
    datur clauses, always part of a doctrine.
    '''
    clauses = set()
    for length in range(3, u.n+1):
        for cycle in permutations(range(u.n), length):
            clauses.add(frozenset(u.p(cycle[i], cycle[(i+1) % length]) for i in range(length)))
    return clauses

def goodness_canonical(u):
    '''
    Chains ~g(x0) p(x0,x1) ... p(xn-1,xn) g(xn) over
    pairwise different options, n >= 1.
    '''
    clauses = set()
    for length in range(2, u.n+1):
        for chain in permutations(range(u.n), length):
            links = [u.p(chain[i], chain[i+1]) for i in range(length-1)]
            clauses.add(frozenset([u.neg(chain[0]), u.pos(chain[-1])] + links))
    return clauses

def supremacy_canonical(u):
    '''
    Supreme options are preferred to the others (~s(x) p(x,y)), at most
    one option is supreme (~s(x) ~s(y)), and for every subset X and map
    f of the outsiders to other options the clause made of s(x) for x
    in X and p(x,f(x)) for x outside X (tautological ones left out).

    '''
    n = u.n
    clauses = set()
    for x, y in permutations(range(n), 2):
        clauses.add(frozenset((u.neg(x), u.p(x, y))))
        clauses.add(frozenset((u.neg(x), u.neg(y))))

    for mask in range(1 << n):
        members = [x for x in range(n) if mask >> x & 1]
        outsiders = [x for x in range(n) if not mask >> x & 1]
        targets = [[y for y in range(n) if y != x] for x in outsiders]

        for image in product(*targets):
            clause = frozenset([u.pos(x) for x in members] +
                               [u.p(x, y) for x, y in zip(outsiders, image)])
            if len(clause) > 1 and not is_tautological(clause):
                clauses.add(clause)

    return clauses

def prominence_canonical(u, symmetric=False):
    '''
    Clauses t(x) p(z,x)... and their pairwise combinations
    t(x) t(y) p(z,x)... p(z,y)... (z other than x, y), plus
    the mirrored ones on ~t when symmetric.
    '''
    n = u.n
    clauses = set()
    for x in range(n):
        clauses.add(frozenset([u.pos(x)] + [u.p(z, x) for z in range(n) if z != x]))
        if symmetric:
            clauses.add(frozenset([u.neg(x)] + [u.p(x, z) for z in range(n) if z != x]))

    for x in range(n):
        for y in range(x+1, n):
            others = [z for z in range(n) if z not in (x, y)]
            clauses.add(frozenset([u.pos(x), u.pos(y)] +
                                  [u.p(z, x) for z in others] +
                                  [u.p(z, y) for z in others]))
            if symmetric:
                clauses.add(frozenset([u.neg(x), u.neg(y)] +
                                      [u.p(x, z) for z in others] +
                                      [u.p(y, z) for z in others]))
    return {c for c in clauses if len(c) > 1}

class UnquestionabilityReport:
    '''
    Per literal, the fixed point value and the one-step value
    computed on the canonical form. Equal values mean the revised
    belief in that literal needs no chaining of derived beliefs.
    '''
    def __init__(self, rows, canonical):
        self.rows = rows
        self.canonical = canonical

    def all_equal(self):
        return all(equal for _, _, _, equal in self.rows)

    def __getitem__(self, label):
        for row in self.rows:
            if row[0] == label:
                return row
        raise KeyError(label)

    def to_dict(self):
        return {
            'canonical_form' : self.canonical,
            'literals' : {label: {'revised': fraction_str(revised),
                                  'one_step': fraction_str(one_step),
                                  'equal': equal}
                          for label, revised, one_step, equal in self.rows},
        }

    def text(self):
        table = PrettyTable()
        table.field_names = ['literal', 'revised', 'one step', 'equal']
        for label, revised, one_step, equal in self.rows:
            table.add_row([label, fraction_str(revised), fraction_str(one_step), 'yes' if equal else 'NO'])
        return table.get_string()

def verify_unquestionability(v0, d, literals=None, canonical=None, max_literals=BLAKE_MAX_LITERALS):
    '''
    Compares the upper revised valuation of v0 under d with the one-step
    revision of v0 under the Blake canonical form of d, for the requested
    literals (labels or ids, all of them by default).

    The canonical form is computed unless given. Above the literal guard
    the doctrine itself is used, and the report says so.

    '''
    used_canonical = True
    if canonical is None:
        if getattr(d, 'is_canonical', False):
            canonical = d
        elif len(d.universe) <= max_literals:
            canonical = blake_canonical_form(d, max_literals=max_literals)
        else:
            canonical = d
            used_canonical = False

    revised = upper_revise(v0, d)
    one_step = one_step_revise(v0, canonical)

    if literals is None:
        literals = list(d.universe)

    rows = []
    for key in literals:
        lit = d.universe.literal(key)
        rows.append((d.universe.label(lit), revised.values[lit], one_step.values[lit],
                     revised.values[lit] == one_step.values[lit]))

    return UnquestionabilityReport(rows, used_canonical)
