#!/usr/bin/env python3

"""
Kraupy - Python Random-Unitary Channel Package
Errors Module
"""


class RepresentationError(ValueError):
    """A Kraus family, Choi operator, state or POVM breaks its invariants"""


class DimensionError(ValueError):
    """Operand dimensions do not match"""


class UnsupportedChannelError(ValueError):
    """Operation needs equal input and output dimensions"""


class PreconditionError(ValueError):
    """Input is valid but outside the domain of the operation"""


class InconsistentDecompositionError(ValueError):
    """A decomposition does not reproduce the channel it is paired with"""


class NumericalFailure(ArithmeticError):
    """Numerical breakdown in an iterative or recursive procedure"""
