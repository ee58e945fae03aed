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
import argparse
import sys

__version__ = '0.1.0'

usage = '''python -m llull [-h] [-t] [--version] {tally,matrix,blake,verify} ...

        commands:
          tally FILE              Tally a ballot file (or a Llull matrix JSON file) with a voting method.
          matrix FILE             Print the Llull matrix and the score vectors of a ballot file.
          blake DOCTRINE N        Print the Blake canonical form of a doctrine over N options.
          verify [FILE]           Cross-check closed forms against the fixed point engine on FILE,
                                  or run the random conjecture experiment with --conjecture.

        optional arguments:
          -h, --help              Show this help message and exit.
          -t, --test              Run the ballot fixtures through every command.
          --version               Print the version number.

        run options (defaults from llull/settings.py, then LLULL_<KEYWORD> variables):
          --method METHOD         Voting method (default comprehensive-prominence).
          --margin Q              Decision margin, a rational in [0,1].
          --truncation MODE       abstain or ties: reading of two options missing from a ballot.
          --init INIT             zero, plurality, plurality-last or approval unary beliefs.
          --last-place MODE       listed or unlisted: last options of truncated ballots.
          --format FORMAT         text or json.
          --cap N                 Maximum number of options for comprehensive prominence.
          --max-literals N        Maximum number of literals for Blake canonical forms.
          --param NAME=VALUE      Weight parameter, can be repeated (i.e. --param eps=1/10).
          --log                   Write a llull_<stamp>.log logfile.
          -n, --name NAME         Custom stamp for the logfile.
          '''

def _parser():

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--method", help="Voting method.", action='store', default=None)
    common.add_argument("--margin", help="Decision margin, a rational in [0,1].", action='store', default=None)
    common.add_argument("--truncation", help="Reading of two options missing from a ballot.",
                        choices=('abstain', 'ties', 'complete_as_ties'), default=None)
    common.add_argument("--init", help="Unary beliefs initialization.",
                        choices=('zero', 'plurality', 'plurality-last', 'approval'), default=None)
    common.add_argument("--last-place", help="Last options of truncated ballots.", choices=('listed', 'unlisted'), default=None)
    common.add_argument("--format", help="Output format.", choices=('text', 'json'), default=None)
    common.add_argument("--cap", help="Maximum number of options for comprehensive prominence.", action='store', default=None)
    common.add_argument("--max-literals", help="Maximum number of literals for Blake canonical forms.", action='store', default=None)
    common.add_argument("--param", help="Weight parameter NAME=VALUE, can be repeated.", action='append', default=None)
    common.add_argument("--log", help="Write a logfile.", action='store_true')
    common.add_argument("-n", "--name", help="Custom stamp for the logfile.", action='store', default=None)

    parser = argparse.ArgumentParser(prog='llull', usage=usage)
    parser.add_argument("-t", "--test", help="Run the ballot fixtures through every command.", action="store_true")
    parser.add_argument("--version", action='version', version=f'llull {__version__}')

    commands = parser.add_subparsers(dest='command')

    tally = commands.add_parser('tally', parents=[common], help='Tally a ballot file with a voting method.')
    tally.add_argument("inputfile", help="Ballot file or Llull matrix JSON file.")

    matrix = commands.add_parser('matrix', parents=[common], help='Print the Llull matrix and score vectors.')
    matrix.add_argument("inputfile", help="Ballot file or Llull matrix JSON file.")

    blake = commands.add_parser('blake', parents=[common], help='Print the Blake canonical form of a doctrine.')
    blake.add_argument("doctrine", help="transitivity, supremacy, prominence, symmetric-prominence, " +
                       "comprehensive-prominence or goodness.")
    blake.add_argument("options", help="Number of options.", type=int)
    blake.add_argument("--raw", help="Print the doctrine as generated, without saturating it.", action='store_true')

    verify = commands.add_parser('verify', parents=[common], help='Cross-check closed forms against the engine.')
    verify.add_argument("inputfile", help="Ballot file or Llull matrix JSON file.", nargs='?', default=None)
    verify.add_argument("--conjecture", help="Run the random conjecture experiment.", action='store_true')
    verify.add_argument("--trials", help="Number of random profiles.", action='store', default=None)
    verify.add_argument("--options", help="Number of options of the random profiles.", action='store', default=None, dest='n_options')
    verify.add_argument("--max-ballots", help="Maximum number of ballots per random profile.", action='store', default=None)
    verify.add_argument("--complete", help="Only complete rankings in the random profiles.", action='store_true')
    verify.add_argument("--seed", help="Random seed.", action='store', default=None)

    return parser

def _flags(args):
    '''
    Command line values as {KEYWORD: value}, None when not given.
    '''
    return {
        'METHOD' : args.method,
        'MARGIN' : args.margin,
        'TRUNCATION' : args.truncation,
        'INIT' : args.init,
        'LAST_PLACE' : args.last_place,
        'FORMAT' : args.format,
        'CAP' : args.cap,
        'MAX_LITERALS' : args.max_literals,
        'PARAM' : args.param,
        'SEED' : getattr(args, 'seed', None),
        'TRIALS' : getattr(args, 'trials', None),
        'OPTIONS' : getattr(args, 'n_options', None),
        'MAX_BALLOTS' : getattr(args, 'max_ballots', None),
    }

def main(argv=None):

    parser = _parser()
    args = parser.parse_args(argv)

    if args.test:
        from llull.tests import run_tests
        run_tests()
        return 0

    if args.command is None:
        parser.error("A command is required: tally, matrix, blake or verify (or -t).")

    if args.command == 'verify' and args.inputfile is None and not args.conjecture:
        parser.error("verify needs an input file, unless --conjecture is given.")

    from llull.errors import CapExceededError, InputError
    from llull.options import load_options
    from llull.tally import Tally

    try:
        options = load_options(_flags(args))

        tally = Tally(getattr(args, 'inputfile', None), options=options, stamp=args.name, logging_on=args.log)
        # read the input and set up the run

        if args.command == 'blake':
            return tally.run('blake', kind=args.doctrine, n=args.options, raw=args.raw)

        if args.command == 'verify':
            return tally.run('verify', conjecture=args.conjecture, complete=args.complete)

        return tally.run(args.command)

    except InputError as e:
        print(f'llull: error: {e}', file=sys.stderr)
        return 2

    except CapExceededError as e:
        print(f'llull: size limit: {e}', file=sys.stderr)
        return 3

if __name__ == '__main__':
    sys.exit(main())
