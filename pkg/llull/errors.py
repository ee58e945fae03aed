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
class InputError(Exception):
    '''
    Raised when reading the user input if
    something is wrong.
    '''

class ProfileParseError(InputError):
    '''
    Raised when a ballot file cannot be parsed.
    Carries the (1-based) line number of the
    offending line, or None for whole-file problems.
    '''
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f'line {line}: {message}'
        super().__init__(message)

class ConfigurationError(InputError):
    '''
    Raised when run options are out of range, incompatible
    with each other, or refer to literals that do not exist.
    '''

class CapExceededError(Exception):
    '''
    Raised when a size guard is exceeded (comprehensive
    prominence option cap, Blake canonical form literal guard).
    '''

class DoctrineError(Exception):
    '''
    Raised when a clause set is not a valid doctrine
    (unit clauses, complementary literals in a clause).
    '''

class ResolutionError(Exception):
    '''
    Thrown by resolve when the pivot is not where it should be.
    '''

class ConvergenceError(Exception):
    '''
    Thrown when the fixed point iteration does not settle within
    its iteration cap. Should never happen.
    '''

class ConsistencyError(Exception):
    '''
    Thrown when an accepted preference relation contains a cycle.
    Signals an engine bug, since revised decisions are always
    definitely consistent.
    '''
