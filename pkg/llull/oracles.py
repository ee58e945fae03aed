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

import numpy as np
from prettytable import PrettyTable

from llull import methods
from llull.ballots import Ballot, Profile, llull_matrix
from llull.belief import (decide, is_definitely_consistent, naive_upper_revise,
                          one_step_revise, upper_revise)
from llull.blake import (blake_canonical_form, goodness_canonical,
                         prominence_canonical, supremacy_canonical,
                         transitivity_canonical, verify_unquestionability)
from llull.doctrines import (DoctrineKind, UnaryInit, build_doctrine,
                             default_options, initial_valuation, pref_label,
                             unary_label)
from llull.settings import (BLAKE_MAX_LITERALS, COMPREHENSIVE_CAP,
                            CONJECTURE_MAX_BALLOTS, CONJECTURE_OPTIONS, SEED,
                            TRIALS)
from llull.utils import HALF, fraction_str

logger = logging.getLogger(__name__)

BLAKE_MAX_OPTIONS = 4
# Canonical forms are only saturated up to this many options

CONSISTENCY_MARGINS = (0, '1/4', '1/2')

PATHS_MAX_OPTIONS = 7
# Simple path enumeration limit

MATERIALIZE_MAX_OPTIONS = 6
# Comprehensive prominence clauses are only written out up to this many options

canonical_generators = {
    DoctrineKind.TRANSITIVITY : transitivity_canonical,
    DoctrineKind.SUPREMACY : supremacy_canonical,
    DoctrineKind.PROMINENCE : prominence_canonical,
    DoctrineKind.SYMMETRIC_PROMINENCE : lambda u: prominence_canonical(u, symmetric=True),
    DoctrineKind.GOODNESS : goodness_canonical,
}

class OracleCheck:
    '''
    Outcome of one cross-check. passed is None
    when the check did not apply.
    '''
    def __init__(self, name, passed, detail=''):
        self.name = name
        self.passed = passed
        self.detail = detail

    @property
    def status(self):
        return {True: 'agree', False: 'DISAGREE', None: 'skipped'}[self.passed]

class OracleReport:
    '''
    Closed forms against the generic engine, engine against
    brute force, and the statements that must hold on every
    Llull matrix. Unquestionability reports are attached for
    information only.

    '''
    def __init__(self, options):
        self.options = tuple(options)
        self.checks = []
        self.unquestionability = {}

    def add(self, name, passed, detail=''):
        self.checks.append(OracleCheck(name, passed, detail))
        if passed is False:
            logger.warning('oracle disagreement: %s (%s)', name, detail)

    def compare(self, name, expected:dict, computed):
        '''
        Checks that every entry of expected has the same value
        in computed (a dict or a Valuation).
        '''
        for key, val in expected.items():
            if computed[key] != val:
                self.add(name, False, f'{key}: expected {fraction_str(val)}, got {fraction_str(computed[key])}')
                return
        self.add(name, True)

    def same_sets(self, name, expected, computed):
        if set(expected) == set(computed):
            self.add(name, True)
        else:
            self.add(name, False, f'expected {sorted(expected)}, got {sorted(computed)}')

    @property
    def all_agree(self):
        return all(check.passed is not False for check in self.checks)

    def failures(self):
        return [check for check in self.checks if check.passed is False]

    def to_dict(self):
        return {
            'options' : list(self.options),
            'all_agree' : self.all_agree,
            'checks' : [{'name': c.name, 'status': c.status, 'detail': c.detail} for c in self.checks],
            'unquestionability' : {name: report.to_dict() for name, report in self.unquestionability.items()},
        }

    def text(self):
        table = PrettyTable()
        table.field_names = ['check', 'status', 'detail']
        table.align['check'] = 'l'
        table.align['detail'] = 'l'
        for c in self.checks:
            table.add_row([c.name, c.status, c.detail])

        lines = [table.get_string()]

        for name, report in self.unquestionability.items():
            form = 'canonical form' if report.canonical else 'doctrine as given'
            lines.append(f'\nUnquestionability ({name}, one step on the {form}):')
            lines.append(report.text())

        lines.append('\nAll oracles agree.' if self.all_agree else
                     f'\n{len(self.failures())} oracle(s) DISAGREE.')

        return '\n'.join(lines)

def _matrix_values(matrix):
    return {pref_label(x, y): matrix.table[i, j]
            for i, x in enumerate(matrix.options)
            for j, y in enumerate(matrix.options) if i != j}

def _check_paths(report, llull):
    closure = methods.paths_closure(llull)
    d = build_doctrine(DoctrineKind.TRANSITIVITY, llull.options)
    v0 = initial_valuation(DoctrineKind.TRANSITIVITY, llull)
    revised = upper_revise(v0, d)

    report.compare('paths closure = transitivity fixed point', _matrix_values(closure), revised)

    if llull.n <= PATHS_MAX_OPTIONS:
        report.compare('paths closure = simple path search',
                       _matrix_values(methods.simple_path_strengths(llull)), _matrix_values(closure))
    else:
        report.add('paths closure = simple path search', None, f'more than {PATHS_MAX_OPTIONS} options')

    report.add('fixed point = plain iteration (transitivity)', naive_upper_revise(v0, d) == revised)

    return revised

def _check_supremacy(report, llull, scores):
    kind = DoctrineKind.SUPREMACY
    _, _, revised = methods.engine_revision(kind, llull)
    report.compare('minimax closed form = supremacy fixed point', methods.supremacy_closed_form(llull), revised)
    report.same_sets('minimax winners = supremacy winners', methods.minimax_winners(llull),
                     methods.engine_winners(kind, revised))

    name = 'plurality closed form = supremacy fixed point'
    if scores is None:
        report.add(name, None, 'no ballots')
    elif scores.has_approval_data:
        report.add(name, None, 'divided ballots')
    else:
        _, _, revised = methods.engine_revision(kind, llull, scores, UnaryInit.PLURALITY)
        report.compare(name, methods.supremacy_closed_form(llull, scores), revised)
        report.same_sets('plurality winners = supremacy winners', methods.plurality_winners(scores),
                         methods.engine_winners(kind, revised))

def _check_prominence(report, llull):
    kind = DoctrineKind.PROMINENCE
    _, _, revised = methods.engine_revision(kind, llull)
    report.compare('maximin closed form = prominence fixed point', methods.prominence_closed_form(llull), revised)
    report.same_sets('maximin winners = prominence winners', methods.maximin_winners(llull),
                     methods.engine_winners(kind, revised))

    kind = DoctrineKind.SYMMETRIC_PROMINENCE
    _, _, revised = methods.engine_revision(kind, llull)
    report.compare('symmetric closed form = symmetric prominence fixed point',
                   methods.prominence_closed_form(llull, symmetric=True), revised)

    winners, _ = methods.symmetric_prominence_winners(llull)
    report.same_sets('symmetric prominence winners = engine winners', winners,
                     methods.engine_winners(kind, revised))

    u = revised.universe
    cond = methods.condorcet_diagnostics(llull)
    dec = decide(revised)

    if cond['winner'] is not None:
        report.add('Condorcet winner has t accepted', dec.accepted(u.pos(u.position(cond['winner']))))
    if cond['loser'] is not None:
        report.add('Condorcet loser has t rejected', dec.rejected(u.pos(u.position(cond['loser']))))

    for i, x in enumerate(u.options):
        if all(revised[u.p(i, j)] > revised[u.p(j, i)] for j in range(u.n) if j != i):
            report.add('revised margin winner has t accepted', dec.accepted(u.pos(i)), x)

def _check_comprehensive(report, llull, cap):
    kind = DoctrineKind.COMPREHENSIVE_PROMINENCE
    name = 'subset formula = comprehensive fixed point'

    if llull.n > cap:
        report.add(name, None, f'more than {cap} options')
        return

    d, v0, revised = methods.engine_revision(kind, llull, cap=cap)
    u = d.universe

    not_t = methods.comprehensive_not_t(llull, cap=cap)
    report.compare(name, {unary_label('t', x, negated=True): val for x, val in not_t.items()}, revised)

    winners = methods.comprehensive_prominence(llull, cap=cap).winners
    report.same_sets('comprehensive winners = least revised ~t', winners, methods.engine_winners(kind, revised))

    if llull.n <= MATERIALIZE_MAX_OPTIONS:
        plain = d.materialize()
        report.add('grouped one-step = clause by clause one-step',
                   one_step_revise(v0, d) == one_step_revise(v0, plain) and
                   one_step_revise(revised, d) == one_step_revise(revised, plain))

    smith = methods.smith_set(llull)
    report.add('comprehensive winners within the Smith set', winners <= smith)

    report.add('Smith set preferences settled',
               all(revised[u.p(j, i)] <= HALF
                   for i, x in enumerate(u.options) if x in smith
                   for j, y in enumerate(u.options) if y not in smith))

    sets, _ = methods.maximin_sets(llull, cap=cap)
    common = frozenset(llull.options).intersection(*sets)

    if winners != frozenset(llull.options):
        report.add('comprehensive winners within every maximin set', winners <= common)

    if len(winners) == 1:
        report.same_sets('unique comprehensive winner = maximin winner', winners, methods.maximin_winners(llull))

    if not common:
        report.add('disjoint maximin sets leave every option winning', winners == frozenset(llull.options))

def _check_goodness(report, llull, scores):
    init = UnaryInit.APPROVAL if scores is not None else UnaryInit.ZERO
    _, _, revised = methods.engine_revision(DoctrineKind.GOODNESS, llull, scores, init)
    report.compare('goodness closed form = goodness fixed point',
                   methods.goodness_closed_form(llull, scores), revised)

def _default_init(kind, scores):
    if kind is DoctrineKind.GOODNESS and scores is not None:
        return UnaryInit.APPROVAL
    return UnaryInit.ZERO

def _check_consistency(report, llull, scores, cap):
    for kind in DoctrineKind:
        if kind is DoctrineKind.COMPREHENSIVE_PROMINENCE and llull.n > MATERIALIZE_MAX_OPTIONS:
            report.add(f'definite consistency ({kind.value})', None, 'too many options')
            continue

        d, _, revised = methods.engine_revision(kind, llull, scores, _default_init(kind, scores), cap=cap)
        report.add(f'definite consistency ({kind.value})',
                   all(is_definitely_consistent(decide(revised, margin), d) for margin in CONSISTENCY_MARGINS))

def _check_blake(report, llull, scores, max_literals):
    for kind, generator in canonical_generators.items():
        name = f'canonical form ({kind.value})'

        if llull.n > BLAKE_MAX_OPTIONS:
            report.add(name, None, f'more than {BLAKE_MAX_OPTIONS} options')
            continue

        d = build_doctrine(kind, llull.options)
        canonical = blake_canonical_form(d, max_literals=max_literals)
        report.add(name + ' matches the closed form', set(canonical.proper_clauses) == generator(d.universe))

        v0 = initial_valuation(kind, llull, scores, _default_init(kind, scores))
        report.add(name + ' keeps the fixed point', upper_revise(v0, d) == upper_revise(v0, canonical))

def _unquestionability(report, llull, scores, cap, max_literals):
    '''
    Literals for which the fixed point is claimed to equal
    one revision step on the canonical form.
    '''
    claims = {
        DoctrineKind.TRANSITIVITY : lambda u, dec: [u.p(i, j) for i in range(u.n) for j in range(u.n) if i != j],
        DoctrineKind.SUPREMACY : lambda u, dec: ([u.neg(i) for i in range(u.n)] +
                                                 [u.pos(i) for i in range(u.n) if dec.accepted(u.pos(i))]),
        DoctrineKind.PROMINENCE : lambda u, dec: [u.pos(i) for i in range(u.n)],
        DoctrineKind.COMPREHENSIVE_PROMINENCE : lambda u, dec: ([u.neg(i) for i in range(u.n)] +
                                                                [u.pos(i) for i in range(u.n) if dec.accepted(u.pos(i))]),
        DoctrineKind.GOODNESS : lambda u, dec: [l for i in range(u.n) for l in (u.pos(i), u.neg(i))],
    }

    for kind, claimed in claims.items():
        if kind is not DoctrineKind.COMPREHENSIVE_PROMINENCE and llull.n > BLAKE_MAX_OPTIONS:
            continue

        d, v0, revised = methods.engine_revision(kind, llull, scores, _default_init(kind, scores), cap=cap)
        literals = claimed(d.universe, decide(revised))
        report.unquestionability[kind.value] = verify_unquestionability(v0, d, literals, max_literals=max_literals)

def run_oracles(llull, scores=None, cap=COMPREHENSIVE_CAP, max_literals=BLAKE_MAX_LITERALS):
    '''
    Runs every cross-check that applies to the Llull matrix (and to the
    score vectors of its profile, if given).

    '''
    report = OracleReport(llull.options)

    if llull.n < 2:
        report.add('single option', None, 'nothing to compare')
        return report

    _check_paths(report, llull)
    _check_supremacy(report, llull, scores)
    _check_prominence(report, llull)
    _check_comprehensive(report, llull, cap)
    _check_goodness(report, llull, scores)
    _check_consistency(report, llull, scores, cap)
    _check_blake(report, llull, scores, max_literals)
    _unquestionability(report, llull, scores, cap, max_literals)

    return report

def random_profile(rng, options, max_ballots=CONJECTURE_MAX_BALLOTS, complete=True, max_weight=5):
    '''
    Random profile of strict rankings with small integer weights.
    Rankings are truncated at a random length unless complete.
    '''
    n = len(options)
    ballots = []
    for _ in range(int(rng.integers(1, max_ballots+1))):
        order = rng.permutation(n)
        length = n if complete else int(rng.integers(1, n+1))
        weight = int(rng.integers(1, max_weight+1))
        ballots.append(Ballot(weight, [[options[i]] for i in order[:length]]))
    return Profile(options, ballots)

class ConjectureReport:
    '''
    Counts of random profiles where the transitivity winners
    are not all refined comprehensive prominence winners, and
    (complete matrices only) not all in the MinMax set.
    '''
    def __init__(self, trials, n_options, complete, seed):
        self.trials = trials
        self.n_options = n_options
        self.complete = complete
        self.seed = seed
        self.counterexamples = []
        self.minmax_violations = 0
        self.complete_matrices = 0

    def to_dict(self, examples=3):
        return {
            'trials' : self.trials,
            'options' : self.n_options,
            'complete' : self.complete,
            'seed' : self.seed,
            'counterexamples' : len(self.counterexamples),
            'complete_matrices' : self.complete_matrices,
            'minmax_violations' : self.minmax_violations,
            'examples' : [profile.text() for profile in self.counterexamples[:examples]],
        }

    def text(self, examples=3):
        lines = [f'Transitivity winners vs refined comprehensive prominence winners '
                 f'({self.trials} random profiles, {self.n_options} options, '
                 f'{"complete" if self.complete else "truncated"} ballots, seed {self.seed})',
                 f'    counterexamples   : {len(self.counterexamples)}',
                 f'    complete matrices : {self.complete_matrices}',
                 f'    MinMax violations : {self.minmax_violations}']

        for profile in self.counterexamples[:examples]:
            lines.append('\n--> Counterexample:\n' + profile.text())

        return '\n'.join(lines)

def conjecture_experiment(trials=TRIALS, n_options=CONJECTURE_OPTIONS, complete=True, seed=SEED,
                          max_ballots=CONJECTURE_MAX_BALLOTS, cap=COMPREHENSIVE_CAP, progress=None):
    '''
    Checks on random profiles whether the transitivity winners are
    among the refined comprehensive prominence winners. Reports, never
    asserts. progress, if given, is called as progress(done, total).

    '''
    rng = np.random.default_rng(seed)
    options = default_options(n_options)
    report = ConjectureReport(trials, n_options, complete, seed)

    for trial in range(trials):
        if progress is not None:
            progress(trial, trials)

        profile = random_profile(rng, options, max_ballots, complete)
        llull = llull_matrix(profile)

        paths = methods.transitivity(llull).winners
        refined = methods.refined_comprehensive_prominence(llull, cap=cap).winners

        if not paths <= refined:
            report.counterexamples.append(profile)
            logger.info('counterexample at trial %d', trial)

        if llull.is_complete():
            report.complete_matrices += 1
            if not paths <= methods.minmax_set(llull, cap=cap):
                report.minmax_violations += 1

    if progress is not None:
        progress(trials, trials)

    return report
