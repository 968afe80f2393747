"""Perron eigenvalue and eigenvectors of primitive matrices."""
import dataclasses
import logging

import numpy

from .error import NoConvergence, NotPrimitive
from .matrix import Primitive, SubstMatrix, is_primitive
from .settings import DEFAULT_SETTINGS

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class PerronData:
    """The Perron eigenvalue with positive eigenvectors summing to one.

    The true eigenvalue lies within ``error`` of ``eigenvalue``;
    ``residual`` is ``max |S v - eigenvalue v|`` for the right vector.
    """

    eigenvalue: float
    error: float
    residual: float
    right: numpy.ndarray
    left: numpy.ndarray
    iterations: int


def _power_iteration(matrix, tol, max_iterations):
    """Iterate ``S + I`` from the uniform vector.

    The Collatz-Wielandt quotients ``min (S v)_i / v_i`` and ``max (S v)_i
    / v_i`` bracket the Perron root for every positive ``v``; iteration
    stops when the bracket is narrower than ``2 tol``.
    """
    size = matrix.shape[0]
    shifted = matrix + numpy.eye(size)
    v = numpy.full(size, 1.0 / size)
    for iteration in range(1, max_iterations + 1):
        v = shifted @ v
        v /= v.sum()
        quotients = (matrix @ v) / v
        lower, upper = quotients.min(), quotients.max()
        if upper - lower <= 2 * tol:
            return (upper + lower) / 2, (upper - lower) / 2, v, iteration
    raise NoConvergence(
        "Power iteration did not reach %.3g in %d steps (bracket %.3g)"
        % (tol, max_iterations, upper - lower)
    )


def perron_data(matrix, tol=1e-12, max_iterations=None):
    """Perron data of a primitive substitution matrix.

    :raises NotPrimitive: unless primitivity is certified.
    :raises NoConvergence: if ``max_iterations`` steps do not suffice.
    """
    s = SubstMatrix.coerce(matrix)
    if not isinstance(is_primitive(s), Primitive):
        raise NotPrimitive("Matrix %r is not primitive" % (s.tolist(),))
    if max_iterations is None:
        max_iterations = DEFAULT_SETTINGS.power_iteration_cap
    array = s.array()
    eigenvalue, error, right, iterations = _power_iteration(
        array, tol, max_iterations
    )
    _, _, left, _ = _power_iteration(array.T, tol, max_iterations)
    residual = float(numpy.max(numpy.abs(array @ right - eigenvalue * right)))
    logger.debug(
        "Perron root %.15g +- %.3g after %d iterations", eigenvalue, error, iterations
    )
    return PerronData(
        float(eigenvalue), float(error), residual, right, left, iterations
    )
