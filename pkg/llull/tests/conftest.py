import os
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from llull.ballots import Ballot, LlullMatrix, Profile, read_profile
from llull.doctrines import default_options

FIXTURES = Path(__file__).parent

DENOMINATOR = 12
# random Llull matrices take values in multiples of 1/12

settings.register_profile('ci', max_examples=500, deadline=None)
settings.register_profile('dev', max_examples=50, deadline=None)
settings.load_profile(os.environ.get('HYPOTHESIS_PROFILE', 'ci'))
# HYPOTHESIS_PROFILE=dev for quick local runs


def fixture_path(name):
    return str(FIXTURES / name)


@pytest.fixture
def fixtures():
    return FIXTURES


@pytest.fixture
def load_profile():
    def _load(name, **params):
        return read_profile(fixture_path(name), params=params)
    return _load


@st.composite
def llull_matrices(draw, min_options=2, max_options=4, complete=False):
    '''
    Llull matrices with v(p_xy) + v(p_yx) <= 1
    (= 1 when complete).
    '''
    n = draw(st.integers(min_value=min_options, max_value=max_options))
    rows = [[Fraction(0)]*n for _ in range(n)]

    for i in range(n):
        for j in range(i+1, n):
            total = DENOMINATOR if complete else draw(st.integers(0, DENOMINATOR))
            share = draw(st.integers(0, total))
            rows[i][j] = Fraction(share, DENOMINATOR)
            rows[j][i] = Fraction(total - share, DENOMINATOR)

    return LlullMatrix(default_options(n), rows)


@st.composite
def profiles(draw, min_options=2, max_options=4, max_ballots=8, complete=False, divided=False):
    '''
    Profiles of strict rankings with small integer weights,
    truncated at a random length unless complete. With divided,
    some ballots also carry an approval divider.
    '''
    n = draw(st.integers(min_value=min_options, max_value=max_options))
    options = default_options(n)
    ballots = []

    for _ in range(draw(st.integers(1, max_ballots))):
        order = draw(st.permutations(options))
        length = n if complete else draw(st.integers(1, n))
        weight = draw(st.integers(1, 5))

        if divided and draw(st.booleans()):
            ballots.append(divided_ballot(weight, order[:length], draw(st.integers(0, length))))
        else:
            ballots.append(Ballot(weight, [[x] for x in order[:length]]))

    return Profile(options, ballots)


@st.composite
def divided_rankings(draw, options):
    '''
    A full strict ranking of the options and the number
    of approved options at its top.
    '''
    order = draw(st.permutations(options))
    approved = draw(st.integers(0, len(options)))
    return list(order), approved


def divided_ballot(weight, order, approved):
    return Ballot(weight, [[x] for x in order[:approved]], [[x] for x in order[approved:]], has_divider=True)
