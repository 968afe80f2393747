"""Substitution matrices, primitivity and Weyl matrices.

Entry ``(k, l)`` of a substitution matrix counts the children of type
``k`` of prototile ``l``. Matrix powers use Python integers, so they
are exact at any level.
"""
import dataclasses
import math
from collections import namedtuple

import numpy

from .error import OverflowGuard
from .sentinel import INCONCLUSIVE, NOT_PRIMITIVE

Primitive = namedtuple("Primitive", ["k"])
"""``S^k`` is entrywise positive and ``k`` is minimal."""

MAX_ENTRY_BITS = 1 << 20


def matmul(a, b):
    """Product of integer matrices given as lists of rows."""
    return [[sum(u * v for u, v in zip(row, col)) for col in zip(*b)] for row in a]


def matpow(a, exponent):
    n = len(a)
    result = [[int(i == j) for j in range(n)] for i in range(n)]
    while exponent:
        if exponent & 1:
            result = matmul(result, a)
        a = matmul(a, a)
        exponent >>= 1
    return result


class SubstMatrix:
    """Square matrix of nonnegative integers."""

    def __init__(self, rows):
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        if any(len(row) != len(rows) for row in rows):
            raise ValueError("Substitution matrix must be square")
        if any(v < 0 for row in rows for v in row):
            raise ValueError("Substitution matrix must be nonnegative")
        self.rows = rows

    @classmethod
    def coerce(cls, value):
        if isinstance(value, SubstMatrix):
            return value
        return cls(value)

    @property
    def size(self):
        return len(self.rows)

    def __getitem__(self, index):
        k, l = index
        return self.rows[k][l]

    def __eq__(self, other):
        if isinstance(other, SubstMatrix):
            return self.rows == other.rows
        try:
            return self.rows == SubstMatrix(other).rows
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "SubstMatrix(%r)" % (self.tolist(),)

    def tolist(self):
        return [list(row) for row in self.rows]

    def array(self, dtype=float):
        return numpy.array(self.rows, dtype=dtype)

    def column_sums(self):
        return [sum(column) for column in zip(*self.rows)]

    def power(self, n):
        """Exact ``S^n``.

        :raises OverflowGuard: if entries would exceed the memory cap.
        """
        if n > 0 and self.size:
            growth = max(1, max(self.column_sums()))
            if n * math.log2(growth + 1) > MAX_ENTRY_BITS:
                raise OverflowGuard(
                    "S^%d exceeds %d bit entries" % (n, MAX_ENTRY_BITS)
                )
        return SubstMatrix(matpow([list(row) for row in self.rows], n))

    def __matmul__(self, other):
        return SubstMatrix(matmul(self.rows, SubstMatrix.coerce(other).rows))

    def column(self, l):
        return [row[l] for row in self.rows]


def substitution_matrix(rule):
    """Count the children of each prototile by type."""
    m = len(rule.prototiles)
    rows = [[0] * m for _ in range(m)]
    for l, children in enumerate(rule.children):
        for child in children:
            rows[child.prototile][l] += 1
    return SubstMatrix(rows)


def _reachable(adjacency, start):
    seen = {start}
    stack = [start]
    while stack:
        node = stack.pop()
        for other in adjacency[node]:
            if other not in seen:
                seen.add(other)
                stack.append(other)
    return seen


def period(matrix):
    """Period of the graph of an irreducible matrix, ``None`` if reducible."""
    s = SubstMatrix.coerce(matrix)
    m = s.size
    adjacency = [[k for k in range(m) if s[k, l] > 0] for l in range(m)]
    reverse = [[l for l in range(m) if s[k, l] > 0] for k in range(m)]
    if len(_reachable(adjacency, 0)) != m or len(_reachable(reverse, 0)) != m:
        return None
    level = {0: 0}
    queue = [0]
    for node in queue:
        for other in adjacency[node]:
            if other not in level:
                level[other] = level[node] + 1
                queue.append(other)
    result = 0
    for l in range(m):
        for k in adjacency[l]:
            result = math.gcd(result, level[l] + 1 - level[k])
    return result


def is_primitive(matrix, k_max=None):
    """Decide primitivity.

    Reducible or periodic matrices are certified :data:`NOT_PRIMITIVE`.
    Otherwise boolean powers are taken up to ``k_max`` (by default
    ``(m - 1) m + 1``, which always suffices).

    :return: :class:`Primitive` with the minimal exponent,
      :data:`NOT_PRIMITIVE` or :data:`INCONCLUSIVE`.
    """
    s = SubstMatrix.coerce(matrix)
    m = s.size
    if m == 0:
        return NOT_PRIMITIVE
    if k_max is None:
        k_max = (m - 1) * m + 1
    p = period(s)
    if p is None or p > 1:
        return NOT_PRIMITIVE
    base = [[int(v > 0) for v in row] for row in s.rows]
    current = base
    for k in range(1, k_max + 1):
        if all(all(row) for row in current):
            return Primitive(k)
        current = [[int(v > 0) for v in row] for row in matmul(current, base)]
    return INCONCLUSIVE


@dataclasses.dataclass
class WeylMatrix:
    """Complex refinement ``M(t)`` of a substitution matrix."""

    t: int
    entries: numpy.ndarray

    def __getitem__(self, index):
        return self.entries[index]

    def power(self, r):
        return numpy.linalg.matrix_power(self.entries, r)


def child_angles(rule):
    """Numeric child angles, per parent then in child order."""
    return [
        [child.orientation.angle.radians(rule.registry) for child in children]
        for children in rule.children
    ]


def weyl_matrix(rule, t):
    """Entry ``(k, l)`` sums ``e^{i t alpha}`` over the type ``k`` children
    of prototile ``l``."""
    m = len(rule.prototiles)
    entries = numpy.zeros((m, m), dtype=complex)
    for l, (children, angles) in enumerate(zip(rule.children, child_angles(rule))):
        for child, alpha in zip(children, angles):
            entries[child.prototile, l] += numpy.exp(1j * t * alpha)
    return WeylMatrix(t, entries)


def chiral_transfer_matrix(rule, t):
    """Transfer matrix on states ``(type, chirality)``.

    State ``2 l`` is a direct tile of type ``l``, ``2 l + 1`` a reflected
    one. A reflected parent negates the angles of its children, so the
    powers of this matrix carry the exact orientation sums of supertile
    tiles.
    """
    m = len(rule.prototiles)
    entries = numpy.zeros((2 * m, 2 * m), dtype=complex)
    for l, (children, angles) in enumerate(zip(rule.children, child_angles(rule))):
        for child, alpha in zip(children, angles):
            k = child.prototile
            flip = int(child.orientation.reflect)
            for s in (0, 1):
                sign = -1 if s else 1
                entries[2 * k + (s ^ flip), 2 * l + s] += numpy.exp(
                    1j * t * sign * alpha
                )
    return entries


def orientation_sums(rule, t, r):
    """``(k, l)`` sums ``e^{i t alpha(T)}`` over type ``k`` tiles ``T`` of
    the level ``r`` supertile of prototile ``l``."""
    power = numpy.linalg.matrix_power(chiral_transfer_matrix(rule, t), r)
    direct = power[0::2, 0::2]
    reflected = power[1::2, 0::2]
    return direct + reflected


def weyl_ratio(rule, t, r):
    """Largest ``|sum e^{i t alpha}| / count`` over entries of level ``r``.

    The counts come from the exact integer power of the substitution
    matrix; entries with no tiles are skipped.

    :raises OverflowGuard: if ``S^r`` is too large to hold.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    if t == 0:
        raise ValueError("t must be nonzero")
    counts = substitution_matrix(rule).power(r)
    sums = orientation_sums(rule, t, r)
    ratio = 0.0
    for k in range(counts.size):
        for l in range(counts.size):
            count = counts[k, l]
            if count:
                ratio = max(ratio, abs(sums[k, l]) / float(count))
    return ratio
