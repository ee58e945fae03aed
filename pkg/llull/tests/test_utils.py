import sys
from fractions import Fraction as F
from subprocess import CalledProcessError

import pytest

from llull.utils import (argmax, argmin, fraction_str, parse_fraction,
                         run_command, time_to_string)


class TestRunCommand:

    def test_argv_with_spaces(self, tmp_path):
        folder = tmp_path / 'ballots with spaces'
        folder.mkdir()
        path = folder / 'my profile.txt'
        path.write_text('1: a > b\n')

        result = run_command([sys.executable, '-c', 'import sys; print(open(sys.argv[1]).read())', str(path)])
        assert result.stdout.decode('utf-8').startswith('1: a > b')

    def test_failure(self):
        with pytest.raises(CalledProcessError):
            run_command([sys.executable, '-c', 'raise SystemExit(4)'])


def test_fractions():
    assert fraction_str(0) == '0/1'
    assert fraction_str(F(2, 4)) == '1/2'
    assert parse_fraction('4.75') == F(19, 4)
    assert parse_fraction(3) == 3
    with pytest.raises(ValueError):
        parse_fraction(0.5)
    with pytest.raises(ValueError):
        parse_fraction(True)


def test_argmax_argmin():
    scores = {'a': F(1, 3), 'b': F(2, 3), 'c': F(2, 3)}
    assert argmax(scores) == {'b', 'c'}
    assert argmin(scores) == {'a'}
    assert argmax({}) == frozenset()


def test_time_to_string():
    assert time_to_string(5.25) == '5.2 s'
    assert time_to_string(3725.0, verbose=True) == '1 hours 2 minutes 5.0 seconds'
    assert time_to_string(90061.5) == '1 d 1 h 1 m 1.5 s'
