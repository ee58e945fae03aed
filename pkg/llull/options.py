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
import os

from llull.ballots import LISTED, UNLISTED, truncation_modes
from llull.belief import check_margin
from llull.doctrines import UnaryInit
from llull.errors import ConfigurationError
from llull.settings import (BLAKE_MAX_LITERALS, COMPREHENSIVE_CAP,
                            CONJECTURE_MAX_BALLOTS, CONJECTURE_OPTIONS,
                            DEFAULT_METHOD, LAST_PLACE, MARGIN, OUTPUT_FORMAT,
                            SEED, TRIALS, TRUNCATION, UNARY_INIT)
from llull.utils import parse_fraction

ENV_PREFIX = 'LLULL_'

keywords_list = [
            'METHOD',         # Voting method, one of methods.methods_list

            'MARGIN',         # Decision margin, a rational in [0,1]. Syntax: `MARGIN=1/10`

            'TRUNCATION',     # How two options left out of a ballot are read:
                                # abstain (no contribution) or ties (1/2 each)

            'INIT',           # Unary beliefs initialization: zero, plurality,
                                # plurality-last or approval. Defaults depend on the method.

            'LAST_PLACE',     # Which options are last on a truncated ballot:
                                # listed (bottom listed group) or unlisted (the missing ones)

            'FORMAT',         # Output format, text or json

            'CAP',            # Maximum number of options for comprehensive prominence

            'MAX_LITERALS',   # Maximum number of literals for Blake canonical forms

            'SEED',           # Random seed of the conjecture experiment

            'TRIALS',         # Number of random profiles of the conjecture experiment

            'OPTIONS',        # Number of options of the conjecture experiment

            'MAX_BALLOTS',    # Maximum number of ballots per random profile

            'PARAM',          # Weight parameters, "name=value" strings. Syntax: `PARAM=eps=1/10`
]

output_formats = ('text', 'json')

class Options:

    def __init__(self):

        self.method = DEFAULT_METHOD
        self.margin = check_margin(MARGIN)
        self.truncation = TRUNCATION
        self.unary_init = UNARY_INIT
        # None means the default of the method

        self.last_place = LAST_PLACE
        self.output_format = OUTPUT_FORMAT

        self.cap = COMPREHENSIVE_CAP
        self.max_literals = BLAKE_MAX_LITERALS

        self.seed = SEED
        self.trials = TRIALS
        self.n_options = CONJECTURE_OPTIONS
        self.max_ballots = CONJECTURE_MAX_BALLOTS

        self.params = {}
        # weight parameters, name -> Fraction

    def __repr__(self):
        d = {var:self.__getattribute__(var) for var in dir(self) if var[0:2] != '__'}

        if d['unary_init'] is None:
            d['unary_init'] = 'method default'

        if not d['params']:
            d.pop('params')

        padding = 1 + max([len(var) for var in d])

        return '\n'.join([f'{var}{" "*(padding-len(var))}: {d[var]}' for var in d])

def _positive_int(keyword, value):
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise ConfigurationError(f'{keyword} must be an integer, got {value!r}.')
    if number < 1:
        raise ConfigurationError(f'{keyword} must be positive, got {number}.')
    return number

class OptionSetter:
    '''
    Sets the attributes of an Options object from {KEYWORD: value}
    pairs, one method per keyword. Values may be strings (environment)
    or already parsed objects (command line).

    '''
    def __init__(self, options, source='command line'):
        self.target = options
        self.source = source

    def method(self, options, value):
        from llull.methods import methods_list
        if value not in methods_list:
            raise ConfigurationError(f'Unknown method {value} ({self.source}). Choose one of: {", ".join(methods_list)}.')
        options.method = value

    def margin(self, options, value):
        options.margin = check_margin(value)

    def truncation(self, options, value):
        if value not in truncation_modes:
            raise ConfigurationError(f'Unknown truncation mode {value} ({self.source}). Use abstain or ties.')
        options.truncation = truncation_modes[value]

    def init(self, options, value):
        try:
            options.unary_init = UnaryInit(value)
        except ValueError:
            raise ConfigurationError(f'Unknown initialization {value} ({self.source}). ' +
                                      'Use zero, plurality, plurality-last or approval.')

    def last_place(self, options, value):
        if value not in (LISTED, UNLISTED):
            raise ConfigurationError(f'Unknown last place mode {value} ({self.source}). Use listed or unlisted.')
        options.last_place = value

    def format(self, options, value):
        if value not in output_formats:
            raise ConfigurationError(f'Unknown output format {value} ({self.source}). Use text or json.')
        options.output_format = value

    def cap(self, options, value):
        options.cap = _positive_int('CAP', value)

    def max_literals(self, options, value):
        options.max_literals = _positive_int('MAX_LITERALS', value)

    def seed(self, options, value):
        try:
            options.seed = int(value)
        except (TypeError, ValueError):
            raise ConfigurationError(f'SEED must be an integer, got {value!r}.')

    def trials(self, options, value):
        options.trials = _positive_int('TRIALS', value)

    def options(self, options, value):
        options.n_options = _positive_int('OPTIONS', value)

    def max_ballots(self, options, value):
        options.max_ballots = _positive_int('MAX_BALLOTS', value)

    def param(self, options, value):
        if isinstance(value, str):
            value = value.split(',')

        for item in value:
            name, sep, number = item.partition('=')
            name = name.strip()
            if not sep or not name.isidentifier():
                raise ConfigurationError(f'Parameters are set as name=value, got {item!r}.')
            try:
                options.params[name] = parse_fraction(number)
            except (ValueError, ZeroDivisionError):
                raise ConfigurationError(f'Parameter {name} must be a rational number, got {number!r}.')

    def set_options(self, settings:dict):
        '''
        Applies the settings in keywords_list order, skipping None values.
        '''
        for kw in keywords_list:
            value = settings.get(kw)
            if value is None:
                continue
            setter_function = getattr(self, kw.lower())
            setter_function(self.target, value)

        unknown = [kw for kw in settings if kw not in keywords_list]
        if unknown:
            raise ConfigurationError(f'Keyword(s) {", ".join(unknown)} not understood ({self.source}).')

def environment_settings(environ=None):
    '''
    Settings found in LLULL_<KEYWORD> environment variables.
    '''
    environ = os.environ if environ is None else environ
    return {kw: environ[ENV_PREFIX + kw] for kw in keywords_list if ENV_PREFIX + kw in environ}

def load_options(flags=None, environ=None):
    '''
    Options from the defaults, updated with the environment
    and then with the command line flags.
    '''
    options = Options()
    OptionSetter(options, source='environment').set_options(environment_settings(environ))
    OptionSetter(options, source='command line').set_options(flags or {})
    return options
