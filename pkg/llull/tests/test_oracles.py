import numpy as np
import pytest

from conftest import fixture_path
from llull import methods
from llull.ballots import LlullMatrix, llull_matrix, score_vectors
from llull.oracles import (OracleReport, conjecture_experiment, random_profile,
                           run_oracles)

profile_fixtures = ['sym_prominence.txt', 'goodness_two.txt', 'goodness_epsilon.txt',
                    'truncated.txt', 'dilemma.txt', 'perturbed.txt']


def oracles_on(load_profile, name):
    profile = load_profile(name, eps='1/10')
    return run_oracles(llull_matrix(profile), score_vectors(profile))


@pytest.mark.parametrize('name', profile_fixtures)
def test_fixtures_agree(load_profile, name):
    report = oracles_on(load_profile, name)
    assert report.all_agree, report.text()
    assert any(check.passed for check in report.checks)


def test_matrix_input_agrees():
    with open(fixture_path('refined_matrix.json'), encoding='utf-8') as f:
        report = run_oracles(LlullMatrix.from_json(f.read()))

    assert report.all_agree, report.text()
    skipped = {c.name for c in report.checks if c.passed is None}
    assert 'plurality closed form = supremacy fixed point' in skipped


def test_divided_ballots_skip_plurality(load_profile):
    report = oracles_on(load_profile, 'goodness_two.txt')
    check = next(c for c in report.checks if c.name == 'plurality closed form = supremacy fixed point')
    assert check.status == 'skipped'
    assert check.detail == 'divided ballots'


def test_unquestionability_attached(load_profile):
    report = oracles_on(load_profile, 'truncated.txt')
    assert 'prominence' in report.unquestionability
    assert report.unquestionability['prominence'].all_equal()
    assert 'Unquestionability' in report.text()


def test_fault_detected(load_profile, monkeypatch):
    monkeypatch.setattr(methods, 'paths_closure', lambda llull: llull)
    report = oracles_on(load_profile, 'dilemma.txt')

    assert not report.all_agree
    names = {c.name for c in report.failures()}
    assert 'paths closure = transitivity fixed point' in names
    assert 'DISAGREE' in report.text()
    assert report.to_dict()['all_agree'] is False


def test_single_option():
    report = run_oracles(LlullMatrix(['a'], [[0]]))
    assert report.all_agree
    assert [c.status for c in report.checks] == ['skipped']


def test_report_compare():
    report = OracleReport('ab')
    report.compare('same', {'x': 1}, {'x': 1})
    report.compare('different', {'x': 1}, {'x': 0})
    report.same_sets('sets', {'a'}, frozenset('a'))

    assert [c.status for c in report.checks] == ['agree', 'DISAGREE', 'agree']
    assert report.failures()[0].detail == 'x: expected 1/1, got 0/1'


def test_random_profile():
    rng = np.random.default_rng(3)
    options = ('a', 'b', 'c', 'd')

    complete = random_profile(rng, options, max_ballots=6)
    assert 1 <= len(complete) <= 6
    assert all(ballot.listed == set(options) for ballot in complete.ballots)
    assert all(1 <= ballot.weight <= 5 for ballot in complete.ballots)

    truncated = random_profile(rng, options, max_ballots=6, complete=False)
    assert all(ballot.listed <= set(options) for ballot in truncated.ballots)


class TestConjecture:

    def test_complete_profiles(self):
        report = conjecture_experiment(trials=20, n_options=4, complete=True, seed=11)
        assert report.trials == 20
        assert report.complete_matrices == 20
        assert 0 <= report.minmax_violations <= report.complete_matrices
        assert 'counterexamples' in report.text()

    def test_deterministic(self):
        first = conjecture_experiment(trials=15, n_options=3, complete=False, seed=5).to_dict()
        second = conjecture_experiment(trials=15, n_options=3, complete=False, seed=5).to_dict()
        assert first == second

    def test_progress(self):
        calls = []
        conjecture_experiment(trials=3, n_options=3, seed=1, progress=lambda i, total: calls.append((i, total)))
        assert calls == [(0, 3), (1, 3), (2, 3), (3, 3)]
