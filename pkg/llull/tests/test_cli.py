import json
from fractions import Fraction as F

import pytest

from conftest import fixture_path
from llull import methods
from llull import tally as tally_module
from llull.__main__ import main
from llull.ballots import LlullMatrix, llull_matrix
from llull.doctrines import UnaryInit
from llull.errors import ConfigurationError
from llull.options import Options, environment_settings, load_options
from llull.tally import Tally


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestTally:

    def test_symmetric_prominence(self, capsys):
        code, out, _ = run(capsys, 'tally', fixture_path('sym_prominence.txt'), '--method', 'symmetric-prominence')
        assert code == 0
        assert 'Winner(s): b' in out

    def test_goodness(self, capsys):
        code, out, _ = run(capsys, 'tally', fixture_path('goodness_two.txt'), '--method', 'goodness')
        assert code == 0
        assert 'Winner(s): a' in out

    def test_json_matches_text(self, capsys):
        path = fixture_path('dilemma.txt')
        _, text, _ = run(capsys, 'tally', path)
        _, out, _ = run(capsys, 'tally', path, '--format', 'json')

        document = json.loads(out)
        assert document['winners'] == ['a', 'b', 'c']
        assert f'Winner(s): {", ".join(document["winners"])}' in text
        assert document['revised']['~t(d)'] == '5/9'

    def test_deterministic(self, capsys):
        argv = ('tally', fixture_path('truncated.txt'), '--method', 'transitivity', '--format', 'json')
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second
        assert json.loads(first)['ranking'] == [['a'], ['b'], ['c']]

    def test_parameters(self, capsys):
        code, out, _ = run(capsys, 'tally', fixture_path('goodness_epsilon.txt'), '--method', 'pav',
                           '--param', 'eps=1/10', '--format', 'json')
        assert code == 0
        assert json.loads(out)['winners'] == ['a']

    def test_matrix_input(self, capsys):
        code, out, _ = run(capsys, 'tally', fixture_path('refined_matrix.json'),
                           '--method', 'refined-comprehensive-prominence')
        assert code == 0
        assert 'Winner(s): a' in out

    def test_ballot_method_on_matrix(self, capsys):
        code, _, err = run(capsys, 'tally', fixture_path('refined_matrix.json'), '--method', 'approval')
        assert code == 2
        assert err.startswith('llull: error:')

    def test_empty_file(self, capsys, tmp_path):
        path = tmp_path / 'empty.txt'
        path.write_text('')
        code, _, err = run(capsys, 'tally', str(path))
        assert code == 2
        assert 'no ballots' in err

    def test_parse_error_line(self, capsys, tmp_path):
        path = tmp_path / 'broken.txt'
        path.write_text('1: a > b\n2: a >> b\n')
        code, _, err = run(capsys, 'tally', str(path))
        assert code == 2
        assert 'line 2' in err

    def test_missing_file(self, capsys):
        code, _, _ = run(capsys, 'tally', fixture_path('nowhere.txt'))
        assert code == 2

    def test_cap(self, capsys):
        code, _, err = run(capsys, 'tally', fixture_path('dilemma.txt'), '--cap', '3')
        assert code == 3
        assert err.startswith('llull: size limit:')

    def test_incompatible_init(self, capsys):
        code, _, _ = run(capsys, 'tally', fixture_path('dilemma.txt'), '--method', 'maximin', '--init', 'approval')
        assert code == 2

    def test_environment(self, capsys, monkeypatch):
        monkeypatch.setenv('LLULL_METHOD', 'maximin')
        monkeypatch.setenv('LLULL_FORMAT', 'json')
        _, out, _ = run(capsys, 'tally', fixture_path('sym_prominence.txt'))
        assert json.loads(out)['method'] == 'maximin'

        _, out, _ = run(capsys, 'tally', fixture_path('sym_prominence.txt'), '--method', 'symmetric-prominence')
        assert json.loads(out)['winners'] == ['b']

    def test_logfile(self, capsys, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        code, _, _ = run(capsys, 'tally', fixture_path('truncated.txt'), '--log', '-n', 'run1')
        assert code == 0
        log = (tmp_path / 'llull_run1.log').read_text()
        assert 'Winner(s): b' in log
        assert 'llull termination' in log

    def test_logfile_closed_on_bad_input(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        opened = []

        def spy(*args, **kwargs):
            f = open(*args, **kwargs)
            opened.append(f)
            return f

        monkeypatch.setattr(tally_module, 'open', spy, raising=False)
        with pytest.raises(ConfigurationError):
            Tally(fixture_path('nowhere.txt'), stamp='run2', logging_on=True)

        assert opened and all(f.closed for f in opened)
        assert 'ConfigurationError' in (tmp_path / 'llull_run2.log').read_text()


class TestMatrix:

    def test_text(self, capsys):
        code, out, _ = run(capsys, 'matrix', fixture_path('sym_prominence.txt'))
        assert code == 0
        assert 'complete: yes' in out
        assert 'antiplurality' in out

    def test_json_round_trip(self, capsys, load_profile):
        _, out, _ = run(capsys, 'matrix', fixture_path('goodness_two.txt'), '--format', 'json')
        document = json.loads(out)
        assert LlullMatrix.from_dict(document) == llull_matrix(load_profile('goodness_two.txt'))
        assert document['scores']['approval'] == {'a': '6/13', 'b': '4/13', 'c': '8/13'}

    def test_ties_mode(self, capsys):
        _, out, _ = run(capsys, 'matrix', fixture_path('truncated.txt'), '--truncation', 'ties', '--format', 'json')
        assert json.loads(out)['matrix'][1][2] == '9/14'


class TestBlake:

    def test_transitivity(self, capsys):
        code, out, _ = run(capsys, 'blake', 'transitivity', '3')
        assert code == 0
        assert set(out.split('\n')) - {''} == {
            'p(a,b) p(b,a)', 'p(a,c) p(c,a)', 'p(b,c) p(c,b)',
            'p(a,b) p(c,a) p(b,c)', 'p(b,a) p(a,c) p(c,b)',
        }

    def test_comprehensive_echoed(self, capsys):
        _, canonical, _ = run(capsys, 'blake', 'comprehensive-prominence', '3')
        _, raw, _ = run(capsys, 'blake', 'comprehensive-prominence', '3', '--raw')
        assert canonical == raw

    def test_json(self, capsys):
        _, out, _ = run(capsys, 'blake', 'goodness', '2', '--format', 'json')
        document = json.loads(out)
        assert document['canonical'] is True
        assert ['p(a,b)', '~g(a)', 'g(b)'] in document['clauses']

    def test_guard(self, capsys):
        code, _, err = run(capsys, 'blake', 'transitivity', '7')
        assert code == 3
        assert 'guard' in err

    def test_raw_above_guard(self, capsys):
        code, _, _ = run(capsys, 'blake', 'transitivity', '7', '--raw')
        assert code == 0

    def test_unknown_doctrine(self, capsys):
        code, _, _ = run(capsys, 'blake', 'dominance', '3')
        assert code == 2


class TestVerify:

    def test_agree(self, capsys):
        code, out, _ = run(capsys, 'verify', fixture_path('sym_prominence.txt'))
        assert code == 0
        assert 'All oracles agree.' in out

    def test_fault(self, capsys, monkeypatch):
        monkeypatch.setattr(methods, 'paths_closure', lambda llull: llull)
        code, out, _ = run(capsys, 'verify', fixture_path('dilemma.txt'))
        assert code == 1
        assert 'DISAGREE' in out

    def test_conjecture(self, capsys):
        code, out, _ = run(capsys, 'verify', '--conjecture', '--trials', '5', '--options', '3',
                           '--seed', '7', '--complete', '--format', 'json')
        assert code == 0
        document = json.loads(out)
        assert document['trials'] == 5
        assert document['complete'] is True
        assert document['seed'] == 7

    def test_needs_input(self, capsys):
        with pytest.raises(SystemExit):
            main(['verify'])

    def test_needs_command(self, capsys):
        with pytest.raises(SystemExit):
            main([])


class TestOptions:

    def test_defaults(self):
        options = Options()
        assert options.method == 'comprehensive-prominence'
        assert options.margin == 0
        assert options.unary_init is None
        assert 'method default' in repr(options)

    def test_precedence(self):
        environ = {'LLULL_MARGIN': '1/4', 'LLULL_METHOD': 'maximin', 'HOME': '/root'}
        assert environment_settings(environ) == {'MARGIN': '1/4', 'METHOD': 'maximin'}

        options = load_options({'MARGIN': '1/2'}, environ=environ)
        assert options.margin == F(1, 2)
        assert options.method == 'maximin'

        options = load_options({}, environ=environ)
        assert options.margin == F(1, 4)

    def test_parsing(self):
        options = load_options({'INIT': 'plurality-last', 'TRUNCATION': 'complete_as_ties', 'CAP': '8',
                                'PARAM': ['eps=1/10', 'delta=0.5']}, environ={})
        assert options.unary_init is UnaryInit.PLURALITY_AND_LAST
        assert options.truncation == 'ties'
        assert options.cap == 8
        assert options.params == {'eps': F(1, 10), 'delta': F(1, 2)}

        options = load_options(environ={'LLULL_PARAM': 'eps=1/3,k=2'})
        assert options.params == {'eps': F(1, 3), 'k': 2}

    @pytest.mark.parametrize('settings', [
        {'MARGIN': '2'},
        {'METHOD': 'borda'},
        {'CAP': '0'},
        {'CAP': 'many'},
        {'FORMAT': 'xml'},
        {'INIT': 'random'},
        {'PARAM': ['eps']},
        {'PARAM': ['eps=x']},
        {'SEED': 'abc'},
        {'COLOR': 'blue'},
    ])
    def test_rejected(self, settings):
        with pytest.raises(ConfigurationError):
            load_options(settings, environ={})

    def test_bad_environment(self):
        with pytest.raises(ConfigurationError):
            load_options(environ={'LLULL_TRUNCATION': 'sometimes'})
