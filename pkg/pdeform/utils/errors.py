#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Exception hierarchy shared by every pdeform module.

Each error names the failing condition; commands in
:mod:`pdeform.experiments.run_command` map them onto exit codes.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function


class PdeformError(Exception):
    """Base class of all errors raised by pdeform."""


class ContextMismatch(PdeformError, ValueError):
    """Two polynomials or multivectors live in different variable contexts."""


class WindowOverflow(PdeformError, ArithmeticError):
    """A strict context produced an exponent outside its window."""


class WindowInsufficient(PdeformError):
    """Cohomology dimensions changed when the exponent window was enlarged."""


class NotInSpace(PdeformError, ValueError):
    """A vector is not contained in the ambient space of a quotient."""


class ChartMismatch(PdeformError, ValueError):
    """Operands are attached to different charts or frames."""


class ArityMismatch(PdeformError, ValueError):
    """A multivector was evaluated on the wrong number of functions."""


class NoInverse(PdeformError, ArithmeticError):
    """A polynomial or chart map has no formal inverse in its ring."""


class TransportFailure(PdeformError):
    """A cochain value cannot be moved between two charts."""


class NotACocycle(PdeformError, ValueError):
    """A cochain that must be closed has a nonzero differential."""


class HypothesisFailed(PdeformError):
    """A rank hypothesis of a lift does not hold.

    Attributes:
        name (str): name of the hypothesis, for example ``H1F surjective``.
        rank (int): rank that was computed.
        required (int): rank the hypothesis asks for.
    """

    def __init__(self, name, rank, required, detail=''):
        self.name = name
        self.rank = rank
        self.required = required
        message = '{0}: rank {1} < required {2}'.format(name, rank, required)
        if detail:
            message += ' ({0})'.format(detail)
        super(HypothesisFailed, self).__init__(message)


class WrongRing(PdeformError, ValueError):
    """A datum is defined over a ring the operation does not accept."""


class InvalidDatum(PdeformError, ValueError):
    """A deformation datum fails one of its defining identities."""


class ExtensionMismatch(PdeformError, ValueError):
    """A small extension does not fit the datum or is not small."""


class CompositionMismatch(PdeformError, ValueError):
    """Two maps cannot be composed."""


class InvalidSubmanifold(PdeformError, ValueError):
    """Submanifold data are inconsistent or the ambient bivector is not tangent."""


class ScenarioSyntaxError(PdeformError):
    """A scenario file cannot be parsed.

    Attributes:
        line (int): 1-based line number.
        column (int): 1-based column number.
    """

    def __init__(self, message, line=0, column=0):
        self.line = line
        self.column = column
        super(ScenarioSyntaxError, self).__init__(
            'line {0}, column {1}: {2}'.format(line, column, message))


class UnresolvedReference(PdeformError, KeyError):
    """A scenario refers to an undefined name."""

    def __init__(self, kind, name, line=0):
        self.kind = kind
        self.name = name
        self.line = line
        super(UnresolvedReference, self).__init__(
            'line {0}: undefined {1} {2!r}'.format(line, kind, name))

    def __str__(self):
        return self.args[0]


class InvariantViolation(PdeformError):
    """A structural identity that must hold failed."""
