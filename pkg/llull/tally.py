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
import json
import logging
import os
import time

from llull.ballots import (LlullMatrix, llull_matrix, read_profile,
                           score_vectors)
from llull.belief import clause_labels
from llull.blake import blake_canonical_form
from llull.doctrines import DoctrineKind, build_doctrine
from llull.errors import CapExceededError, ConfigurationError, InputError
from llull.methods import check_method_config, run_method
from llull.options import Options
from llull.oracles import conjecture_experiment, run_oracles
from llull.utils import loadbar, time_to_string


class Tally:
    '''
    Tally class: reads the input (a ballot profile or a Llull matrix
    in JSON), holds the run options and runs the tally, matrix,
    blake and verify commands.
    '''

    def __init__(self, filename=None, options=None, stamp=None, logging_on=False):
        '''
        Reads the input file, if any. A logfile llull_<stamp>.log is
        written when logging_on is True.

        '''
        self.t_start_run = time.perf_counter()
        self.options = options or Options()
        self.logfile = None

        if stamp is None:
            self.stamp = time.ctime().replace(' ','_').replace(':','-')[4:-8]
            # replaced ctime yields 'Sun_May_23_18-53-47_2021', only keeping 'May_23_18-53'

        else:
            self.stamp = stamp

        if logging_on:
            log_filename = f'llull_{self.stamp}.log'
            self.logfile = open(log_filename, 'a', buffering=1, encoding="utf-8")
            logging.basicConfig(filename=log_filename, filemode='a', level=logging.INFO)

        self.profile = None
        self.llull = None
        self.scores = None

        try:
            if filename is not None:
                self._read_input(filename)

        except (InputError, CapExceededError) as e:
            self.log(f'--> {type(e).__name__}: {e}', p=False)
            self.close_logfile()
            raise

        except Exception as e:
            logging.exception(e)
            self.close_logfile()
            raise e

    def close_logfile(self):
        if self.logfile is not None:
            self.logfile.close()
            self.logfile = None

    @property
    def json_mode(self):
        return self.options.output_format == 'json'

    def log(self, string='', p=True):
        '''
        Prints (unless p is False or the output is JSON)
        and writes to the logfile, if there is one.
        '''
        if p and not self.json_mode:
            print(string)
        if self.logfile is not None:
            self.logfile.write(string + '\n')

    def emit(self, document:dict):
        '''
        Writes a JSON document to stdout (and to the logfile).
        '''
        text = json.dumps(document, indent=2)
        print(text)
        if self.logfile is not None:
            self.logfile.write(text + '\n')

    def _read_input(self, filename):
        if not os.path.isfile(filename):
            raise ConfigurationError(f'Input file {filename} not found.')

        with open(filename, 'r', encoding='utf-8') as f:
            head = f.read(1024).lstrip()

        if filename.endswith('.json') or head.startswith('{'):
            with open(filename, 'r', encoding='utf-8') as f:
                self.llull = LlullMatrix.from_json(f.read())
            self.log(f'--> Read a Llull matrix over {self.llull.n} options from {filename}', p=False)
            return

        self.profile = read_profile(filename, params=self.options.params)
        self.llull = llull_matrix(self.profile, self.options.truncation)
        self.scores = score_vectors(self.profile, self.options.last_place)

        self.log(f'--> Read {len(self.profile)} ballots over {len(self.profile.options)} options from {filename}', p=False)

    def _need_input(self):
        if self.llull is None:
            raise ConfigurationError('This command needs a ballot file or a Llull matrix.')

    def tally(self):
        '''
        Runs the voting method of the options and reports the result.
        '''
        self._need_input()
        options = self.options

        check_method_config(options.method, options.unary_init, has_ballots=self.scores is not None)
        result = run_method(options.method, self.llull, self.scores,
                            margin=options.margin, unary_init=options.unary_init, cap=options.cap)

        if self.json_mode:
            self.emit(result.to_dict())
        else:
            self.log(result.text())

        return 0

    def matrix(self):
        '''
        Reports the Llull matrix and, for ballot input, the score vectors.
        '''
        self._need_input()

        if self.json_mode:
            document = self.llull.to_dict()
            if self.scores is not None:
                document['scores'] = self.scores.to_dict()
            self.emit(document)
            return 0

        self.log('Llull matrix:')
        self.log(self.llull.text())
        self.log(f'complete: {"yes" if self.llull.is_complete() else "no"}')

        if self.scores is not None:
            self.log('\nScore vectors:')
            self.log(self.scores.text())

        return 0

    def blake(self, kind, n, raw=False):
        '''
        Dumps a doctrine over n options, as generated (raw)
        or as its Blake canonical form.
        '''
        try:
            kind = DoctrineKind(kind)
        except ValueError:
            names = ', '.join(k.value for k in DoctrineKind)
            raise ConfigurationError(f'Unknown doctrine {kind}. Choose one of: {names}.')

        d = build_doctrine(kind, n, cap=self.options.cap)

        if not raw:
            if len(d.universe) > self.options.max_literals:
                raise CapExceededError(f'{kind.value}: {len(d.universe)} literals exceed ' +
                                       f'the Blake canonical form guard of {self.options.max_literals}.')

            if not getattr(d, 'is_canonical', False):
                d = blake_canonical_form(d, max_literals=self.options.max_literals)

        if self.json_mode:
            self.emit({'doctrine': kind.value,
                       'options': list(d.universe.options),
                       'canonical': not raw,
                       'clauses': sorted(clause_labels(c, d.universe) for c in d.clauses)})
        else:
            self.log(d.dump())

        return 0

    def verify(self, conjecture=False, complete=False):
        '''
        Runs the oracle suite on the input, or the random conjecture
        experiment. Returns 1 when some oracle disagrees.

        '''
        options = self.options

        if conjecture:
            progress = None if self.json_mode else (lambda i, total: loadbar(i, total, 'Random profiles: '))
            report = conjecture_experiment(trials=options.trials, n_options=options.n_options,
                                           complete=complete, seed=options.seed,
                                           max_ballots=options.max_ballots, cap=options.cap,
                                           progress=progress)
            if self.json_mode:
                self.emit(report.to_dict())
            else:
                self.log(report.text())
            return 0

        self._need_input()
        report = run_oracles(self.llull, self.scores, cap=options.cap, max_literals=options.max_literals)

        if self.json_mode:
            self.emit(report.to_dict())
        else:
            self.log(report.text())

        return 0 if report.all_agree else 1

    def run(self, command, **kwargs):
        '''
        Run one command, returning its exit code.
        '''
        try:
            self.log(f'--> llull {command}\n{self.options}\n', p=False)
            return getattr(self, command)(**kwargs)

        except (InputError, CapExceededError) as e:
            self.log(f'--> {type(e).__name__}: {e}', p=False)
            raise

        except Exception as _e:
            logging.exception(_e)
            raise _e

        finally:
            self.normal_termination()

    def normal_termination(self):
        '''
        Terminate the run, logging the total time.
        '''
        self.log(f'\n--> llull termination: total time {time_to_string(time.perf_counter() - self.t_start_run, verbose=True)}.', p=False)
        self.close_logfile()
