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

import sys

def run_tests():

    import os
    import time
    from subprocess import CalledProcessError

    os.chdir(os.path.dirname(os.path.realpath(__file__)))

    from llull.ballots import read_profile
    from llull.methods import ballot_methods, methods_list
    from llull.settings import COMPREHENSIVE_CAP
    from llull.utils import HiddenPrints, loadbar, run_command, time_to_string

    os.chdir('tests')

    t_start_run = time.perf_counter()

    params = ['--param', 'eps=1/10']
    # the epsilon profiles are tallied at eps = 1/10

    print('\nRunning tests for llull.')
    print(f'{COMPREHENSIVE_CAP=}')

    ##########################################################################

    tests = []
    for f in sorted(os.listdir()):
        if f.endswith('.txt'):
            tests.append(os.path.realpath(f))

    llull = [sys.executable, '-m', 'llull']
    commands = []
    for f in tests:
        name = os.path.basename(f)[:-4]
        profile = read_profile(f, params={'eps': '1/10'})
        for method in methods_list:
            if method in ballot_methods or len(profile.options) <= COMPREHENSIVE_CAP:
                commands.append((name, [*llull, 'tally', f, '--method', method, *params]))
        commands.append((name, [*llull, 'matrix', f, *params]))
        commands.append((name, [*llull, 'verify', f, *params]))

    times = {}
    for i, (name, command) in enumerate(commands):
        loadbar(i, len(commands), f'Running llull tests ({name}): ')

        t_start = time.perf_counter()
        try:
            with HiddenPrints():
                run_command(command)

        except CalledProcessError as error:
            print('\n\n--> An error occurred:\n')
            print(' '.join(command))
            print(error.stderr.decode("utf-8"))
            sys.exit(1)

        times[name] = times.get(name, 0) + time.perf_counter() - t_start

    loadbar(len(commands), len(commands), 'Running llull tests: ')

    print()
    for name, elapsed in times.items():
        print('    {:25s}{} s'.format(name, round(elapsed, 3)))

    print(f'\nllull tests completed with no errors. ({time_to_string(time.perf_counter() - t_start_run)})\n')
