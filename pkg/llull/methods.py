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
from itertools import permutations

import networkx as nx
import numpy as np
from prettytable import PrettyTable

from llull.ballots import LlullMatrix, last_place_violations
from llull.belief import (acceptability, decide, one_step_revise,
                          upper_revise)
from llull.doctrines import (DoctrineKind, UnaryInit, build_doctrine,
                             initial_valuation, pref_label, unary_label)
from llull.errors import CapExceededError, ConfigurationError, ConsistencyError
from llull.settings import COMPREHENSIVE_CAP
from llull.utils import HALF, ONE, ZERO, argmax, argmin, fraction_str

logger = logging.getLogger(__name__)

methods_list = (
    'transitivity',                      # method of paths, ranking by decided pairwise preferences
    'minimax',                           # supremacy doctrine, zero unary beliefs
    'plurality',                         # supremacy doctrine, plurality unary beliefs
    'maximin',                           # prominence doctrine
    'symmetric-prominence',              # prominence doctrine, symmetric under negation
    'comprehensive-prominence',          # subset dominance prominence doctrine
    'refined-comprehensive-prominence',  # the above, repeated on the winners
    'goodness',                          # goodness doctrine, approval unary beliefs
    'cav',                               # goodness without preferences: approval minus disapproval
    'approval',                          # most approved option
    'pav',                               # approval first, then pairwise preferences
)

method_doctrines = {
    'transitivity' : DoctrineKind.TRANSITIVITY,
    'minimax' : DoctrineKind.SUPREMACY,
    'plurality' : DoctrineKind.SUPREMACY,
    'maximin' : DoctrineKind.PROMINENCE,
    'symmetric-prominence' : DoctrineKind.SYMMETRIC_PROMINENCE,
    'comprehensive-prominence' : DoctrineKind.COMPREHENSIVE_PROMINENCE,
    'refined-comprehensive-prominence' : DoctrineKind.COMPREHENSIVE_PROMINENCE,
    'goodness' : DoctrineKind.GOODNESS,
    'cav' : DoctrineKind.GOODNESS,
}

_prominence_inits = (UnaryInit.ZERO, UnaryInit.PLURALITY, UnaryInit.PLURALITY_AND_LAST)

allowed_inits = {
    'transitivity' : (UnaryInit.ZERO,),
    'minimax' : (UnaryInit.ZERO, UnaryInit.PLURALITY),
    'plurality' : (UnaryInit.PLURALITY, UnaryInit.ZERO),
    'maximin' : _prominence_inits,
    'symmetric-prominence' : _prominence_inits,
    'comprehensive-prominence' : _prominence_inits,
    'refined-comprehensive-prominence' : (UnaryInit.ZERO,),
    'goodness' : (UnaryInit.APPROVAL, UnaryInit.ZERO),
    'cav' : (UnaryInit.APPROVAL,),
    'approval' : (),
    'pav' : (),
}
# the first entry is the default one

ballot_methods = ('plurality', 'cav', 'approval', 'pav')
# methods that need the score vectors of a ballot profile

def check_method_config(method, unary_init=None, has_ballots=True):
    '''
    Returns the unary initialization to be used for the method,
    raising ConfigurationError for unknown methods, incompatible
    initializations and ballot methods run without ballots.

    '''
    if method not in methods_list:
        raise ConfigurationError(f'Unknown method {method}. Choose one of: {", ".join(methods_list)}.')

    if method in ballot_methods and not has_ballots:
        raise ConfigurationError(f'The {method} method needs a ballot profile, not a Llull matrix.')

    allowed = allowed_inits[method]

    if unary_init is None:
        if not allowed:
            return None
        if allowed[0] is UnaryInit.APPROVAL and not has_ballots:
            return UnaryInit.ZERO
        return allowed[0]

    try:
        unary_init = UnaryInit(unary_init)
    except ValueError:
        raise ConfigurationError(f'Unknown initialization {unary_init}. Use zero, plurality, plurality-last or approval.')

    if unary_init not in allowed:
        names = ', '.join(i.value for i in allowed) or 'none'
        raise ConfigurationError(f'The {method} method does not accept the {unary_init.value} initialization (allowed: {names}).')

    if unary_init is not UnaryInit.ZERO and not has_ballots:
        raise ConfigurationError(f'The {unary_init.value} initialization needs a ballot profile.')

    return unary_init

class RowColStats:
    '''
    Row and column extrema of a Llull matrix:

        minrow  m_x   = min over y of v(p_xy)
        maxcol  M_x   = max over y of v(p_yx)
        mincol  m'_x  = min over y of v(p_yx)
        minrw   m_xy  = min over z other than x, y of v(p_xz)

    The last one is 1 when there is no such z.

    '''
    def __init__(self, llull):
        if llull.n < 2:
            raise ConfigurationError('Row and column statistics need at least two options.')

        T = llull.table
        n = llull.n
        self.options = llull.options

        self.minrow = {x: min(T[i, j] for j in range(n) if j != i) for i, x in enumerate(self.options)}
        self.maxcol = {x: max(T[j, i] for j in range(n) if j != i) for i, x in enumerate(self.options)}
        self.mincol = {x: min(T[j, i] for j in range(n) if j != i) for i, x in enumerate(self.options)}
        self.minrw = {(x, y): min((T[i, k] for k in range(n) if k not in (i, j)), default=ONE)
                      for i, x in enumerate(self.options)
                      for j, y in enumerate(self.options) if i != j}

class MethodResult:
    '''
    Outcome of a voting method: the winner set (never tie-broken),
    the acceptabilities it was read from, the revised valuation and
    its pairwise decision when a doctrine was involved, and the
    set-theoretic diagnostics of the Llull matrix.

    '''
    def __init__(self, method, options, winners, revised=None, acceptabilities=None,
                 pairwise_decision=None, ranking=None, diagnostics=None):

        self.method = method
        self.options = tuple(options)
        self.winners = frozenset(winners)
        self.revised = revised
        self.acceptabilities = dict(acceptabilities or {})
        self.pairwise_decision = pairwise_decision
        self.ranking = ranking
        self.diagnostics = dict(diagnostics or {})

        if not self.winners:
            raise ConsistencyError(f'{method}: empty winner set.')

        if not self.winners <= set(self.options):
            raise ConsistencyError(f'{method}: winners outside of the options.')

    def ordered(self, options):
        return [x for x in self.options if x in options]

    def accepted_preferences(self):
        if self.pairwise_decision is None:
            return None
        u = self.pairwise_decision.universe
        return [u.label(lit) for lit in self.pairwise_decision.accepted_literals()
                if u.label(lit).startswith('p(')]

    def to_dict(self):
        return {
            'method' : self.method,
            'options' : list(self.options),
            'winners' : self.ordered(self.winners),
            'acceptabilities' : {label: fraction_str(val) for label, val in self.acceptabilities.items()},
            'ranking' : [self.ordered(layer) for layer in self.ranking] if self.ranking is not None else None,
            'accepted_preferences' : self.accepted_preferences(),
            'revised' : ({label: fraction_str(val) for label, val in self.revised.as_dict().items()}
                         if self.revised is not None else None),
            'diagnostics' : self._jsonable(self.diagnostics),
        }

    def _jsonable(self, obj):
        if isinstance(obj, dict):
            return {str(k): self._jsonable(v) for k, v in obj.items()}
        if isinstance(obj, (set, frozenset)):
            if all(isinstance(x, str) for x in obj):
                return self.ordered(obj)
            return [self._jsonable(x) for x in obj]
        if isinstance(obj, (list, tuple)):
            return [self._jsonable(x) for x in obj]
        if isinstance(obj, (int, bool)) or obj is None or isinstance(obj, str):
            return obj
        return fraction_str(obj)

    def text(self):
        lines = [f'Method: {self.method}',
                 f'Winner(s): {", ".join(self.ordered(self.winners))}']

        if self.ranking is not None:
            lines.append('Ranking: ' + ' > '.join('[' + ' '.join(self.ordered(layer)) + ']' for layer in self.ranking))

        if self.acceptabilities:
            table = PrettyTable()
            table.field_names = ['literal', 'acceptability']
            for label, val in self.acceptabilities.items():
                table.add_row([label, fraction_str(val)])
            lines.append(table.get_string())

        accepted = self.accepted_preferences()
        if accepted is not None:
            lines.append('Accepted preferences: ' + (' '.join(accepted) or 'none'))

        for name, value in self._jsonable(self.diagnostics).items():
            lines.append(f'{name}: {value}')

        return '\n'.join(lines)

def paths_closure(llull):
    '''
    Strength of the strongest path between every two options: the max,
    over the paths x -> ... -> y, of the weakest v(p) along the path.
    Computed as a max-min Floyd-Warshall over the object array of the
    matrix (the optimum over walks is reached on a simple path).

    '''
    P = llull.table.copy()

    for k in range(llull.n):
        P = np.maximum(P, np.minimum.outer(P[:, k], P[k, :]))

    np.fill_diagonal(P, ZERO)

    return LlullMatrix(llull.options, P, validate=False)

def simple_path_strengths(llull):
    '''
    Same as paths_closure, by enumerating all the
    simple paths. Exponential, used as an oracle.
    '''
    n = llull.n
    T = llull.table
    rows = [[ZERO]*n for _ in range(n)]

    for x in range(n):
        for y in range(n):
            if x == y:
                continue

            others = [z for z in range(n) if z not in (x, y)]
            best = T[x, y]

            for length in range(1, len(others)+1):
                for middle in permutations(others, length):
                    nodes = (x,) + middle + (y,)
                    strength = min(T[a, b] for a, b in zip(nodes, nodes[1:]))
                    if strength > best:
                        best = strength

            rows[x][y] = best

    return LlullMatrix(llull.options, rows, validate=False)

def transitivity_valuation(llull, closure=None):
    '''
    Upper revised valuation of the transitivity doctrine, read off the paths closure.
    '''
    d = build_doctrine(DoctrineKind.TRANSITIVITY, llull.options)
    v0 = initial_valuation(DoctrineKind.TRANSITIVITY, llull)
    closure = closure or paths_closure(llull)

    u = v0.universe
    return v0.replace({u.p(i, j): closure.table[i, j]
                       for i in range(u.n) for j in range(u.n) if i != j}), d

def ranking_from_decision(dec):
    '''
    Ordered partition of the options: topological layers of the
    accepted strict preferences of the decision. Options that no
    accepted preference separates share a layer.

    '''
    u = dec.universe
    graph = nx.DiGraph()
    graph.add_nodes_from(range(u.n))

    for i in range(u.n):
        for j in range(u.n):
            if i != j and dec.accepted(u.p(i, j)):
                graph.add_edge(i, j)

    if not nx.is_directed_acyclic_graph(graph):
        cycle = nx.find_cycle(graph)
        names = ' > '.join(u.options[i] for i, _ in cycle)
        raise ConsistencyError(f'Accepted preferences contain the cycle {names}.')

    return [frozenset(u.options[i] for i in layer) for layer in nx.topological_generations(graph)]

def minimax_winners(llull):
    return argmin(RowColStats(llull).maxcol)

def plurality_winners(scores):
    return argmax(scores.plurality)

def maximin_winners(llull):
    return argmax(RowColStats(llull).minrow)

def symmetric_prominence_acceptabilities(llull):
    stats = RowColStats(llull)
    return {x: stats.minrow[x] - stats.mincol[x] for x in llull.options}

def symmetric_prominence_winners(llull):
    '''
    Options maximizing m_x - m'_x, and the acceptabilities of all t_x.
    '''
    acceptabilities = symmetric_prominence_acceptabilities(llull)
    return argmax(acceptabilities), acceptabilities

def supremacy_closed_form(llull, scores=None):
    '''
    Upper revised beliefs in s_x and ~s_x under the supremacy doctrine.
    With zero unary beliefs they are min over z != x of M_z and M_x;
    with plurality beliefs (scores given) the antiplurality scores
    take the place of M.

    '''
    if scores is None:
        top = RowColStats(llull).maxcol
    else:
        top = scores.antiplurality

    values = {}
    for x in llull.options:
        values[unary_label('s', x)] = min(top[z] for z in llull.options if z != x)
        values[unary_label('s', x, negated=True)] = top[x]
    return values

def prominence_closed_form(llull, symmetric=False):
    '''
    Upper revised beliefs in t_x and ~t_x under the prominence
    doctrine with zero unary beliefs: m_x, and m'_x or 0.
    '''
    stats = RowColStats(llull)
    values = {}
    for x in llull.options:
        values[unary_label('t', x)] = stats.minrow[x]
        values[unary_label('t', x, negated=True)] = stats.mincol[x] if symmetric else ZERO
    return values

def _check_cap(llull, cap, what):
    if llull.n > cap:
        raise CapExceededError(f'{what}: {llull.n} options exceed the cap of {cap}.')

def _subset_strengths(llull):
    '''
    Yields (mask, sigma) for every proper non-empty subset X of the
    options, sigma being the weakest v(p_rs) with r in X and s outside.
    '''
    n = llull.n
    T = llull.table
    full = (1 << n) - 1

    for mask in range(1, full):
        members = [r for r in range(n) if mask >> r & 1]
        outsiders = [s for s in range(n) if not mask >> s & 1]
        yield mask, min(T[r, s] for r in members for s in outsiders)

def _from_mask(options, mask):
    return frozenset(x for i, x in enumerate(options) if mask >> i & 1)

def comprehensive_not_t(llull, cap=COMPREHENSIVE_CAP):
    '''
    Upper revised belief in ~t_y under comprehensive prominence with zero
    unary beliefs: the max over the non-empty subsets X not holding y of
    the weakest v(p_rs), r in X, s outside X.

    '''
    _check_cap(llull, cap, DoctrineKind.COMPREHENSIVE_PROMINENCE.value)
    best = {x: ZERO for x in llull.options}

    for mask, sigma in _subset_strengths(llull):
        for i, y in enumerate(llull.options):
            if not mask >> i & 1 and sigma > best[y]:
                best[y] = sigma

    return best

def maximin_sets(llull, cap=COMPREHENSIVE_CAP):
    '''
    Proper non-empty subsets X maximizing the weakest v(p_rs),
    r in X, s outside X, and that maximum value.
    '''
    _check_cap(llull, cap, 'maximin sets')
    if llull.n < 2:
        return [], ONE

    strengths = list(_subset_strengths(llull))
    top = max(sigma for _, sigma in strengths)
    sets = [_from_mask(llull.options, mask) for mask, sigma in strengths if sigma == top]

    return sets, top

def minmax_set(llull, cap=COMPREHENSIVE_CAP):
    '''
    Union of all the maximin sets.
    '''
    sets, _ = maximin_sets(llull, cap=cap)
    return frozenset().union(*sets)

def smith_set(llull):
    '''
    Smallest set of options whose members each get more than 1/2
    against every outsider. For each x, the options that x does
    not majority-beat must be in any such set along with x: the
    smallest of these closures is the answer.

    '''
    n = llull.n
    graph = nx.DiGraph()
    graph.add_nodes_from(range(n))
    for i in range(n):
        for j in range(n):
            if i != j and llull.table[i, j] <= HALF:
                graph.add_edge(i, j)

    closures = [nx.descendants(graph, i) | {i} for i in range(n)]
    smallest = min(closures, key=len)

    return frozenset(llull.options[i] for i in smallest)

def condorcet_diagnostics(llull):
    '''
    Condorcet winner and loser, both in the majority sense
    (v(p_xy) > 1/2) and in the margin sense (v(p_xy) > v(p_yx)).
    '''
    n = llull.n
    T = llull.table
    report = {'winner': None, 'margin_winner': None, 'loser': None, 'margin_loser': None}

    if n < 2:
        return report

    for i, x in enumerate(llull.options):
        others = [j for j in range(n) if j != i]

        if all(T[i, j] > HALF for j in others):
            report['winner'] = x
        if all(T[i, j] > T[j, i] for j in others):
            report['margin_winner'] = x
        if all(T[j, i] > HALF for j in others):
            report['loser'] = x
        if all(T[j, i] > T[i, j] for j in others):
            report['margin_loser'] = x

    return report

def goodness_closed_form(llull, scores=None):
    '''
    Upper revised valuation of the goodness doctrine, from the
    strongest paths P* of the Llull matrix and the approval
    (a) and disapproval (d) scores, zero if not given:

        g_x   = max(a_x, max over y of min(P*_xy, a_y))
        ~g_x  = max(d_x, max over y of min(P*_yx, d_y))
        p_xy  = max(v(p_xy), min(g_x, ~g_y))

    '''
    options = llull.options
    n = llull.n
    P = paths_closure(llull).table
    T = llull.table

    a = [scores.approval[x] if scores is not None else ZERO for x in options]
    d = [scores.disapproval[x] if scores is not None else ZERO for x in options]

    g = [max([a[i]] + [min(P[i, j], a[j]) for j in range(n) if j != i]) for i in range(n)]
    ng = [max([d[i]] + [min(P[j, i], d[j]) for j in range(n) if j != i]) for i in range(n)]

    values = {}
    for i, x in enumerate(options):
        values[unary_label('g', x)] = g[i]
        values[unary_label('g', x, negated=True)] = ng[i]
        for j, y in enumerate(options):
            if i != j:
                values[pref_label(x, y)] = max(T[i, j], min(g[i], ng[j]))
    return values

def _unary_acceptabilities(letter, options, values):
    return {unary_label(letter, x): values[unary_label(letter, x)] - values[unary_label(letter, x, negated=True)]
            for x in options}

def _option_scores(letter, options, acceptabilities):
    return {x: acceptabilities[unary_label(letter, x)] for x in options}

def matrix_diagnostics(llull, cap=COMPREHENSIVE_CAP):
    '''
    Smith set and Condorcet report, plus maximin sets, their
    strength and the MinMax set when the subsets can be scanned.
    '''
    diagnostics = {
        'smith_set' : smith_set(llull),
        'condorcet' : condorcet_diagnostics(llull),
    }

    if 2 <= llull.n <= cap:
        sets, sigma = maximin_sets(llull, cap=cap)
        diagnostics['maximin_sets'] = sets
        diagnostics['maximin_strength'] = sigma
        diagnostics['minmax_set'] = frozenset().union(*sets)

    return diagnostics

def engine_revision(kind, llull, scores=None, unary_init=UnaryInit.ZERO, cap=COMPREHENSIVE_CAP):
    '''
    Doctrine, initial valuation and upper revised valuation
    computed by the generic fixed point engine.
    '''
    d = build_doctrine(kind, llull.options, cap=cap)
    v0 = initial_valuation(kind, llull, scores, unary_init)
    return d, v0, upper_revise(v0, d)

def engine_winners(kind, revised):
    '''
    Winners read off an upper revised valuation: the options with the
    most acceptable unary literal, or the least believed ~t_x for
    comprehensive prominence, or the top layer of the decided
    ranking for transitivity.

    '''
    kind = DoctrineKind(kind)
    u = revised.universe

    if kind is DoctrineKind.TRANSITIVITY:
        return ranking_from_decision(decide(revised))[0]

    if kind is DoctrineKind.COMPREHENSIVE_PROMINENCE:
        return argmin({x: revised[u.neg(i)] for i, x in enumerate(u.options)})

    return argmax({x: acceptability(revised, u.pos(i)) for i, x in enumerate(u.options)})

def _comprehensive_round(llull, scores, unary_init, cap):
    kind = DoctrineKind.COMPREHENSIVE_PROMINENCE
    d = build_doctrine(kind, llull.options, cap=cap)
    v0 = initial_valuation(kind, llull, scores, unary_init)
    u = d.universe

    first = one_step_revise(v0, d)
    unique = [x for i, x in enumerate(u.options) if first[u.pos(i)] > first[u.neg(i)]]
    revised = upper_revise(v0, d)

    if unique:
        winners = frozenset(unique[:1])
        logger.debug('comprehensive prominence: %s accepted after one step', unique[0])

    elif unary_init is UnaryInit.ZERO:
        winners = argmin(comprehensive_not_t(llull, cap=cap))

    else:
        winners = engine_winners(kind, revised)

    return winners, revised, bool(unique)

def comprehensive_prominence(llull, scores=None, unary_init=UnaryInit.ZERO, margin=0, cap=COMPREHENSIVE_CAP):
    '''
    Winners are the options with the least revised belief in ~t_x,
    from the subset formula with zero unary beliefs. An option whose
    t_x is already above ~t_x after one revision step is the unique
    winner.

    '''
    method = 'comprehensive-prominence'
    winners, revised, shortcut = _comprehensive_round(llull, scores, unary_init, cap)
    u = revised.universe

    diagnostics = matrix_diagnostics(llull, cap=cap)
    diagnostics['uniqueness_shortcut'] = shortcut

    return MethodResult(method, llull.options, winners,
                        revised=revised,
                        acceptabilities={u.label(u.pos(i)): acceptability(revised, u.pos(i)) for i in range(u.n)},
                        pairwise_decision=decide(revised, margin),
                        diagnostics=diagnostics)

def refined_comprehensive_prominence(llull, margin=0, cap=COMPREHENSIVE_CAP):
    '''
    Comprehensive prominence repeated on the Llull matrix restricted to
    the previous winners, while they are at least two and fewer than
    the options of the round.

    '''
    rounds = []
    current = llull
    first = None

    while True:
        winners, revised, _ = _comprehensive_round(current, None, UnaryInit.ZERO, cap)
        first = first or revised
        rounds.append({'options': frozenset(current.options), 'winners': winners})

        logger.debug('refinement round %d: %s -> %s', len(rounds), current.options, sorted(winners))

        if len(winners) < 2 or len(winners) == current.n:
            break

        current = current.restrict(winners)

    u = first.universe
    diagnostics = matrix_diagnostics(llull, cap=cap)
    diagnostics['refinement_rounds'] = rounds

    return MethodResult('refined-comprehensive-prominence', llull.options, winners,
                        revised=first,
                        acceptabilities={u.label(u.pos(i)): acceptability(first, u.pos(i)) for i in range(u.n)},
                        pairwise_decision=decide(first, margin),
                        diagnostics=diagnostics)

def goodness_method(llull, scores=None, unary_init=UnaryInit.APPROVAL, margin=0, method='goodness'):
    '''
    Goodness winners: the options with the most acceptable g_x.
    '''
    kind = DoctrineKind.GOODNESS
    unary_init = UnaryInit(unary_init)
    if scores is None:
        unary_init = UnaryInit.ZERO

    _, _, revised = engine_revision(kind, llull, scores, unary_init)
    closed = goodness_closed_form(llull, scores if unary_init is UnaryInit.APPROVAL else None)

    acceptabilities = _unary_acceptabilities('g', llull.options, closed)
    winners = argmax(_option_scores('g', llull.options, acceptabilities))

    return MethodResult(method, llull.options, winners,
                        revised=revised,
                        acceptabilities=acceptabilities,
                        pairwise_decision=decide(revised, margin),
                        diagnostics=matrix_diagnostics(llull))

def _no_preferences(llull):
    n = llull.n
    return LlullMatrix(llull.options, [[ZERO]*n for _ in range(n)])

def cav(llull, scores, margin=0):
    '''
    Goodness with every preference belief set to 0,
    i.e. the most approved minus disapproved options.
    '''
    return goodness_method(_no_preferences(llull), scores, UnaryInit.APPROVAL, margin, method='cav')

def approval(llull, scores):
    acceptabilities = {unary_label('g', x): scores.approval[x] for x in llull.options}
    return MethodResult('approval', llull.options, argmax(scores.approval),
                        acceptabilities=acceptabilities,
                        diagnostics=matrix_diagnostics(llull))

def pav_winner(llull, scores):
    '''
    Approval first: with at most one majority-approved option, the
    most approved options win. Otherwise, among the majority-approved
    options, their Condorcet winner if there is one, else the most
    approved options of their Smith set.

    Returns the winners and the stage that decided them.

    '''
    approved = [x for x in llull.options if scores.approval[x] > HALF]

    if len(approved) <= 1:
        return argmax(scores.approval), 'approval'

    restricted = llull.restrict(approved)
    winner = condorcet_diagnostics(restricted)['winner']
    if winner is not None:
        return frozenset((winner,)), 'condorcet'

    smith = smith_set(restricted)
    return argmax({x: scores.approval[x] for x in smith}), 'smith'

def pav(llull, scores):
    winners, stage = pav_winner(llull, scores)
    diagnostics = matrix_diagnostics(llull)
    diagnostics['majority_approved'] = frozenset(x for x in llull.options if scores.approval[x] > HALF)
    diagnostics['pav_stage'] = stage

    return MethodResult('pav', llull.options, winners,
                        acceptabilities={unary_label('g', x): scores.approval[x] for x in llull.options},
                        diagnostics=diagnostics)

def transitivity(llull, margin=0):
    revised, _ = transitivity_valuation(llull)
    dec = decide(revised, margin)
    ranking = ranking_from_decision(dec)
    u = revised.universe

    return MethodResult('transitivity', llull.options, ranking[0],
                        revised=revised,
                        acceptabilities={u.label(u.p(i, j)): acceptability(revised, u.p(i, j))
                                         for i in range(u.n) for j in range(u.n) if i != j},
                        pairwise_decision=dec,
                        ranking=ranking,
                        diagnostics=matrix_diagnostics(llull))

def _doctrine_method(method, llull, scores, unary_init, margin, cap):
    '''
    Supremacy and prominence methods: the engine provides the revised
    valuation, the closed forms the winners when the default unary
    beliefs are used.

    '''
    kind = method_doctrines[method]
    _, _, revised = engine_revision(kind, llull, scores, unary_init, cap=cap)
    letter = kind.letter
    u = revised.universe

    acceptabilities = {u.label(u.pos(i)): acceptability(revised, u.pos(i)) for i in range(u.n)}

    if method == 'minimax' and unary_init is UnaryInit.ZERO:
        winners = minimax_winners(llull)
        acceptabilities = _unary_acceptabilities(letter, llull.options, supremacy_closed_form(llull))

    elif method == 'plurality' and unary_init is UnaryInit.PLURALITY:
        winners = plurality_winners(scores)

    elif method == 'maximin' and unary_init is UnaryInit.ZERO:
        winners = maximin_winners(llull)

    elif method == 'symmetric-prominence' and unary_init is UnaryInit.ZERO:
        winners, closed = symmetric_prominence_winners(llull)
        acceptabilities = {unary_label(letter, x): val for x, val in closed.items()}

    else:
        winners = engine_winners(kind, revised)

    return MethodResult(method, llull.options, winners,
                        revised=revised,
                        acceptabilities=acceptabilities,
                        pairwise_decision=decide(revised, margin),
                        diagnostics=matrix_diagnostics(llull, cap=cap))

def run_method(method, llull, scores=None, margin=0, unary_init=None, cap=COMPREHENSIVE_CAP):
    '''
    Runs one of the methods of methods_list on a Llull matrix, with the
    score vectors of the ballot profile when there is one.

    '''
    unary_init = check_method_config(method, unary_init, has_ballots=scores is not None)

    if unary_init is UnaryInit.PLURALITY_AND_LAST:
        violations = last_place_violations(llull, scores)
        if violations:
            x, y = violations[0]
            logger.warning('Last place scores exceed the Llull matrix on %d pair(s) (i.e. l_%s > v(p_%s%s)): '
                           'plurality-last may move the winners away from the zero initialization. '
                           'Use --truncation ties --last-place unlisted on truncated profiles.',
                           len(violations), y, x, y)

    if llull.n == 1:
        return MethodResult(method, llull.options, llull.options,
                            diagnostics={'single_option': True})

    if method == 'transitivity':
        return transitivity(llull, margin)

    if method in ('minimax', 'plurality', 'maximin', 'symmetric-prominence'):
        return _doctrine_method(method, llull, scores, unary_init, margin, cap)

    if method == 'comprehensive-prominence':
        return comprehensive_prominence(llull, scores, unary_init, margin, cap)

    if method == 'refined-comprehensive-prominence':
        return refined_comprehensive_prominence(llull, margin, cap)

    if method == 'goodness':
        return goodness_method(llull, scores, unary_init, margin)

    if method == 'cav':
        return cav(llull, scores, margin)

    if method == 'approval':
        return approval(llull, scores)

    return pav(llull, scores)
