"""Backend-generic operator helpers.

Every backend represents operators as objects composing with ``@`` (both
``op @ op`` and ``op @ vector``), adding with ``+`` and scaling by complex
numbers.  What cannot be derived from those operations (identity, norms,
square roots, inverses) is dispatched on the operator type here; the
application backends register their own types.
"""

from functools import singledispatch

import numpy as np

from .errors import SquareRootUnavailableError


@singledispatch
def identity_like(op):
    """Identity operator acting on the same space as ``op``."""
    raise TypeError(f"no identity registered for {type(op).__name__}")


@identity_like.register
def _(op: np.ndarray):
    return np.eye(op.shape[0], dtype=complex)


def zero_like(op):
    return 0 * op


@singledispatch
def norm(x) -> float:
    """Size of an operator or vector, used for relative error scales."""
    raise TypeError(f"no norm registered for {type(x).__name__}")


@norm.register
def _(x: np.ndarray) -> float:
    return float(np.max(np.abs(x))) if x.size else 0.0


@norm.register(complex)
@norm.register(float)
@norm.register(int)
def _(x) -> float:
    return abs(x)


@singledispatch
def operator_sqrt(op):
    """Principal square root, or :class:`SquareRootUnavailableError`."""
    raise SquareRootUnavailableError(f"no square root for {type(op).__name__} operators")


@singledispatch
def operator_inverse(op):
    raise TypeError(f"no inverse registered for {type(op).__name__}")


def commutator_norm(a, b) -> float:
    return norm(a @ b - b @ a)
