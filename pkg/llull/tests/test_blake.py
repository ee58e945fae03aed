from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import llull_matrices
from llull.ballots import llull_matrix
from llull.belief import upper_revise
from llull.blake import (blake_canonical_form, goodness_canonical,
                         prominence_canonical, resolve, supremacy_canonical,
                         transitivity_canonical, verify_unquestionability)
from llull.doctrines import DoctrineKind, build_doctrine, initial_valuation
from llull.errors import CapExceededError, ResolutionError

generators = {
    DoctrineKind.TRANSITIVITY : transitivity_canonical,
    DoctrineKind.SUPREMACY : supremacy_canonical,
    DoctrineKind.PROMINENCE : prominence_canonical,
    DoctrineKind.SYMMETRIC_PROMINENCE : lambda u: prominence_canonical(u, symmetric=True),
    DoctrineKind.GOODNESS : goodness_canonical,
}


@lru_cache(maxsize=None)
def canonical(kind, n):
    return blake_canonical_form(build_doctrine(kind, n))


@st.composite
def doctrine_cases(draw):
    kind = draw(st.sampled_from(list(generators)))
    max_options = 3 if kind is DoctrineKind.SUPREMACY else 4
    return kind, draw(llull_matrices(max_options=max_options))


class TestResolve:

    def test_resolvent(self):
        assert resolve(frozenset((0, 2)), frozenset((1, 4)), 0) == frozenset((2, 4))

    def test_tautological_resolvent(self):
        assert resolve(frozenset((0, 2)), frozenset((1, 3)), 0) is None

    def test_missing_pivot(self):
        with pytest.raises(ResolutionError):
            resolve(frozenset((0, 2)), frozenset((1, 4)), 2)
        with pytest.raises(ResolutionError):
            resolve(frozenset((0, 2)), frozenset((3, 4)), 0)


class TestCanonicalForms:

    @pytest.mark.parametrize('n', [2, 3, 4])
    @pytest.mark.parametrize('kind', list(generators))
    def test_closed_forms(self, kind, n):
        d = canonical(kind, n)
        assert set(d.proper_clauses) == generators[kind](d.universe)

    def test_transitivity_four_options(self):
        d = canonical(DoctrineKind.TRANSITIVITY, 4)
        assert len(d.proper_clauses) == 8 + 6
        # two 3-cycles per triple, six 4-cycles

    @pytest.mark.parametrize('n', [2, 3, 4])
    def test_comprehensive_is_canonical(self, n):
        d = build_doctrine(DoctrineKind.COMPREHENSIVE_PROMINENCE, n).materialize()
        assert blake_canonical_form(d) == d

    def test_idempotent(self):
        d = canonical(DoctrineKind.GOODNESS, 3)
        assert blake_canonical_form(d) == d

    def test_guard(self):
        d = build_doctrine(DoctrineKind.TRANSITIVITY, 7)
        with pytest.raises(CapExceededError):
            blake_canonical_form(d, max_literals=30)

    def test_traces(self):
        d = build_doctrine(DoctrineKind.TRANSITIVITY, 4)
        traces = []
        result = blake_canonical_form(d, traces=traces)

        assert traces
        for trace in traces:
            assert resolve(*trace.parents, trace.pivot) == trace.resolvent
            assert trace.resolvent in result
            assert '->' in trace.text(d.universe)

    @settings(deadline=None)
    @given(case=doctrine_cases())
    def test_same_fixed_point(self, case):
        kind, llull = case
        d = build_doctrine(kind, llull.options)
        v0 = initial_valuation(kind, llull)
        assert upper_revise(v0, d) == upper_revise(v0, canonical(kind, llull.n))


class TestUnquestionability:

    def test_prominence(self, load_profile):
        llull = llull_matrix(load_profile('sym_prominence.txt'))
        kind = DoctrineKind.PROMINENCE
        d, v0 = build_doctrine(kind, llull.options), initial_valuation(kind, llull)

        report = verify_unquestionability(v0, d, ['t(a)', 't(b)', 't(c)'])
        assert report.canonical
        assert report.all_equal()
        assert report['t(b)'][1] == llull.v('b', 'a')
        with pytest.raises(KeyError):
            report['t(d)']

    def test_comprehensive_uses_doctrine(self, load_profile):
        llull = llull_matrix(load_profile('dilemma.txt'))
        kind = DoctrineKind.COMPREHENSIVE_PROMINENCE
        d, v0 = build_doctrine(kind, llull.options), initial_valuation(kind, llull)

        report = verify_unquestionability(v0, d, ['~t(a)', '~t(d)'], max_literals=4)
        assert report.canonical
        assert report.all_equal()

    def test_above_guard(self, load_profile):
        llull = llull_matrix(load_profile('sym_prominence.txt'))
        kind = DoctrineKind.TRANSITIVITY
        d, v0 = build_doctrine(kind, llull.options), initial_valuation(kind, llull)

        report = verify_unquestionability(v0, d, max_literals=2)
        assert not report.canonical
        assert len(report.rows) == len(d.universe)
        assert report.to_dict()['canonical_form'] is False
