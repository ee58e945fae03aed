from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import llull_matrices, profiles
from llull.ballots import TIES, UNLISTED, llull_matrix, score_vectors
from llull.belief import Valuation, one_step_revise, upper_revise
from llull.doctrines import (ComprehensiveProminenceDoctrine, DoctrineKind,
                             PreferenceUniverse, UnaryInit, build_doctrine,
                             default_options, initial_valuation)
from llull.errors import CapExceededError, ConfigurationError


class TestClauses:

    @pytest.mark.parametrize('kind, proper, total', [
        (DoctrineKind.TRANSITIVITY, 2, 5),
        (DoctrineKind.SUPREMACY, 10, 16),
        (DoctrineKind.PROMINENCE, 3, 9),
        (DoctrineKind.SYMMETRIC_PROMINENCE, 6, 12),
        (DoctrineKind.GOODNESS, 6, 12),
    ])
    def test_three_options(self, kind, proper, total):
        d = build_doctrine(kind, 3)
        assert len(d.proper_clauses) == proper
        assert len(d) == total

    def test_comprehensive_two_options(self):
        d = build_doctrine(DoctrineKind.COMPREHENSIVE_PROMINENCE, 2)
        assert isinstance(d, ComprehensiveProminenceDoctrine)
        assert sorted(d.dump().splitlines()) == sorted([
            'p(a,b) p(b,a)', 't(a) ~t(a)', 't(b) ~t(b)',
            'p(b,a) t(a)', 'p(b,a) ~t(b)',
            'p(a,b) t(b)', 'p(a,b) ~t(a)',
            't(a) t(b)', '~t(a) ~t(b)',
        ])

    def test_transitivity_cycles(self):
        d = build_doctrine(DoctrineKind.TRANSITIVITY, 'xyz')
        u = d.universe
        assert frozenset((u.p(0, 1), u.p(1, 2), u.p(2, 0))) in d
        assert frozenset((u.p(1, 0), u.p(0, 2), u.p(2, 1))) in d

    def test_single_option(self):
        d = build_doctrine(DoctrineKind.SUPREMACY, 1)
        assert d.proper_clauses == ()
        assert d.dump() == 's(a) ~s(a)'

    def test_cap(self):
        with pytest.raises(CapExceededError):
            build_doctrine(DoctrineKind.COMPREHENSIVE_PROMINENCE, 5, cap=4)

    def test_option_names(self):
        assert default_options(3) == ('a', 'b', 'c')
        assert default_options(27)[-1] == 'o27'
        with pytest.raises(ConfigurationError):
            default_options(0)
        with pytest.raises(ConfigurationError):
            PreferenceUniverse(['a', 'a'])

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            build_doctrine('dominance', 3)


class TestInitialValuation:

    def test_preferences_copied(self, load_profile):
        llull = llull_matrix(load_profile('sym_prominence.txt'))
        v = initial_valuation(DoctrineKind.PROMINENCE, llull)
        assert v['p(a,b)'] == F(3, 5)
        assert v['p(c,b)'] == 0
        assert v['t(a)'] == v['~t(a)'] == 0

    def test_plurality_beliefs(self, load_profile):
        profile = load_profile('sym_prominence.txt')
        llull, scores = llull_matrix(profile), score_vectors(profile)

        v = initial_valuation(DoctrineKind.SUPREMACY, llull, scores, UnaryInit.PLURALITY)
        assert (v['s(a)'], v['~s(a)']) == (F(3, 5), F(2, 5))

        v = initial_valuation(DoctrineKind.PROMINENCE, llull, scores, 'plurality-last')
        assert (v['t(c)'], v['~t(c)']) == (0, F(3, 5))

    def test_approval_beliefs(self, load_profile):
        profile = load_profile('goodness_two.txt')
        v = initial_valuation(DoctrineKind.GOODNESS, llull_matrix(profile), score_vectors(profile), 'approval')
        assert (v['g(c)'], v['~g(c)']) == (F(8, 13), F(5, 13))

    def test_incompatible(self, load_profile):
        profile = load_profile('sym_prominence.txt')
        llull, scores = llull_matrix(profile), score_vectors(profile)

        with pytest.raises(ConfigurationError):
            initial_valuation(DoctrineKind.PROMINENCE, llull, scores, UnaryInit.APPROVAL)
        with pytest.raises(ConfigurationError):
            initial_valuation(DoctrineKind.TRANSITIVITY, llull, scores, UnaryInit.PLURALITY)
        with pytest.raises(ConfigurationError):
            initial_valuation(DoctrineKind.SUPREMACY, llull, None, UnaryInit.PLURALITY)


@st.composite
def comprehensive_valuations(draw):
    llull = draw(llull_matrices())
    d = build_doctrine(DoctrineKind.COMPREHENSIVE_PROMINENCE, llull.options)
    values = [draw(st.fractions(0, 1, max_denominator=6)) for _ in d.universe]
    return d, Valuation(d.universe, values)


class TestComprehensive:

    @settings(deadline=None)
    @given(case=comprehensive_valuations())
    def test_grouped_derive_matches_clauses(self, case):
        d, v = case
        plain = d.materialize()
        assert d.derive(v.values) == plain.derive(v.values)
        assert one_step_revise(v, d) == one_step_revise(v, plain)

    def test_materialized_clauses(self):
        d = build_doctrine(DoctrineKind.COMPREHENSIVE_PROMINENCE, 3)
        assert set(d.materialize().clauses) == set(d.clauses)
        assert len(d.proper_clauses) == 7 + 9 + 3
        # subsets, (subset, outsider) couples, pairs


@st.composite
def last_place_cases(draw):
    '''
    Profiles whose last place scores bound every column of the Llull
    matrix: complete ones read as they are, truncated and divided ones
    read in ties mode with the unlisted options placed last.
    '''
    if draw(st.booleans()):
        profile = draw(profiles(complete=True))
        return llull_matrix(profile), score_vectors(profile)

    profile = draw(profiles(divided=True))
    return llull_matrix(profile, TIES), score_vectors(profile, UNLISTED)


class TestUnaryInitializations:

    @settings(deadline=None)
    @given(case=last_place_cases())
    def test_plurality_and_last_symmetric(self, case):
        llull, scores = case
        kind = DoctrineKind.SYMMETRIC_PROMINENCE
        d = build_doctrine(kind, llull.options)

        zero = upper_revise(initial_valuation(kind, llull), d)
        last = upper_revise(initial_valuation(kind, llull, scores, UnaryInit.PLURALITY_AND_LAST), d)
        assert zero == last

    @settings(deadline=None)
    @given(case=last_place_cases())
    def test_plurality_and_last_prominence(self, case):
        llull, scores = case
        kind = DoctrineKind.PROMINENCE
        d = build_doctrine(kind, llull.options)
        u = d.universe

        zero = upper_revise(initial_valuation(kind, llull), d)
        last = upper_revise(initial_valuation(kind, llull, scores, UnaryInit.PLURALITY_AND_LAST), d)
        assert all(zero[u.pos(i)] == last[u.pos(i)] for i in range(u.n))
        assert all(last[u.neg(i)] == scores.last_place[x] for i, x in enumerate(u.options))
