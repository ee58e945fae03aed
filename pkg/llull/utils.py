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
import sys
from fractions import Fraction
from subprocess import CalledProcessError, run

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)

class HiddenPrints:
    def __enter__(self):
        self._original_stdout = sys.stdout
        sys.stdout = open(os.devnull, 'w')

    def __exit__(self, exc_type, exc_val, exc_tb):
        sys.stdout.close()
        sys.stdout = self._original_stdout

def run_command(command, p=False):
    '''
    Runs a command, given as an argv list (or as a string,
    split on whitespace), raising CalledProcessError on failure.
    '''
    argv = command.split() if isinstance(command, str) else list(command)
    if p:
        print("Command: {}".format(' '.join(argv)))
    result = run(argv, shell=False, capture_output=True)
    if result.returncode != 0:
        raise CalledProcessError(
                returncode = result.returncode,
                cmd = result.args,
                stderr = result.stderr
                )
    if p and result.stdout:
        print("Command Result: {}".format(result.stdout.decode('utf-8')))
    return result

def fraction_str(q) -> str:
    '''
    Renders a rational as "num/den", always
    with the denominator (i.e. "0/1", "1/1").
    '''
    q = Fraction(q)
    return f'{q.numerator}/{q.denominator}'

def parse_fraction(text) -> Fraction:
    '''
    Reads "3", "1/2", "4.75" (or an int/Fraction) as an exact rational.
    Raises ValueError on anything else, floats included.

    '''
    if isinstance(text, bool) or isinstance(text, float):
        raise ValueError(f'{text!r} is not an exact rational')
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    return Fraction(str(text).strip())

def time_to_string(total_time: float, verbose=False, digits=1):
    '''
    Converts total_time (seconds) to a string
    with days, hours, minutes and seconds.
    '''
    names = ('days', 'hours', 'minutes', 'seconds') if verbose else ('d', 'h', 'm', 's')
    timestring = ''

    for name, size in zip(names, (24*3600, 3600, 60)):
        if total_time > size:
            count, total_time = divmod(total_time, size)
            timestring += f'{int(count)} {name} '

    timestring += f'{round(total_time, digits):{2+digits}} {names[3]}'

    return timestring

def loadbar(iteration, total, prefix='', suffix='', decimals=1, length=50, fill='#'):
    percent = ('{0:.' + str(decimals) + 'f}').format(100 * (iteration/float(total)))
    filledLength = int(length * iteration // total)
    bar = fill * filledLength + '-' * (length - filledLength)
    print(f'\r{prefix} |{bar}| {percent}% {suffix}', end='\r')
    if iteration == total:
        print()

def argmax(scores:dict):
    '''
    Returns the set of keys holding the maximum value
    (all of them when tied, no tie-breaking).
    '''
    if not scores:
        return frozenset()
    best = max(scores.values())
    return frozenset(k for k, val in scores.items() if val == best)

def argmin(scores:dict):
    if not scores:
        return frozenset()
    best = min(scores.values())
    return frozenset(k for k, val in scores.items() if val == best)
