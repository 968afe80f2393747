"""Exact real algebraic numbers.

An :class:`AlgReal` is an irreducible monic polynomial over ``QQ``
(a :class:`sympy.Poly`) together with a rational interval ``(lo, hi)``
that contains exactly one of its real roots. Rational numbers are the
degenerate case ``lo == hi`` with a linear polynomial.

An irrational number also knows a generator ``g`` of a number field it
lies in and its coordinates, a polynomial ``c`` with the number equal
to ``c(g)``. Numbers of one field are added, multiplied and compared
by polynomial arithmetic modulo the minimal polynomial of ``g``; only
numbers of different fields go through resultants and factorization.
"""
import logging
import math
import threading
from collections import namedtuple
from fractions import Fraction

from sympy import expand, resultant

from .error import (
    DegreeCapExceeded,
    DivisionByZero,
    NoDominantRoot,
    PrecisionExhausted,
)
from .polynomial import (
    as_fraction,
    as_rational,
    chebyshev,
    cosine_polynomial,
    cyclotomic,
    euler_phi,
    poly,
    x,
    y,
)
from .sentinel import NOT_RATIONAL
from .settings import DEFAULT_SETTINGS

logger = logging.getLogger(__name__)

RationalCosine = namedtuple("RationalCosine", ["n", "k"])
"""Witness that a number equals ``cos(k*pi/n)``."""

FieldElement = namedtuple("FieldElement", ["generator", "coords"])


def irreducible_factors(p):
    """Monic irreducible factors of ``p`` of positive degree."""
    _, factors = p.factor_list()
    return [factor.monic() for factor, _ in factors if factor.degree() > 0]


class AlgReal:
    """A real algebraic number.

    Do not call the constructor directly unless ``minpoly`` is monic,
    irreducible of degree two or more and has exactly one root in
    ``(lo, hi)``; use :meth:`rational`, :meth:`from_interval` or
    :func:`isolate_dominant_root` instead.

    Refinement narrows the interval in place under a lock; the number
    it denotes never changes.
    """

    def __init__(self, minpoly, lo, hi, refine_cap=None, field=None):
        self._lock = threading.RLock()
        self.minpoly = minpoly
        self.lo = as_fraction(lo)
        self.hi = as_fraction(hi)
        if refine_cap is None:
            refine_cap = DEFAULT_SETTINGS.refine_cap
        self.refine_cap = refine_cap
        self._field = field
        self._approx = None

    @classmethod
    def rational(cls, value, refine_cap=None):
        value = as_fraction(value)
        return cls(poly(x - as_rational(value)), value, value, refine_cap)

    @classmethod
    def coerce(cls, value):
        if isinstance(value, AlgReal):
            return value
        return cls.rational(value)

    @classmethod
    def from_interval(cls, p, lo, hi, refine_cap=None):
        """The unique real root of ``p`` in ``[lo, hi]``.

        :raises ValueError: if the interval holds no root or several.
        """
        lo, hi = as_fraction(lo), as_fraction(hi)
        inf, sup = as_rational(lo), as_rational(hi)
        if lo > hi or p.sqf_part().count_roots(inf, sup) != 1:
            raise ValueError(
                "[%s, %s] does not isolate a single root of %s"
                % (lo, hi, p.as_expr())
            )
        for factor in irreducible_factors(p):
            if factor.count_roots(inf, sup) != 1:
                continue
            if factor.degree() == 1:
                return cls.rational(-factor.TC(), refine_cap)
            (a, b), _ = factor.intervals(inf=inf, sup=sup)[0]
            return cls(factor, a, b, refine_cap)
        raise AssertionError("no factor holds the root")

    @property
    def is_rational(self):
        return self.lo == self.hi

    @property
    def value(self):
        """The exact value if rational, otherwise ``None``."""
        if self.is_rational:
            return self.lo
        return None

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def degree(self):
        return self.minpoly.degree()

    @property
    def field(self):
        """The :class:`FieldElement` of an irrational number."""
        if self.is_rational:
            return None
        if self._field is None:
            self._field = FieldElement(self, poly(x))
        return self._field

    def refine(self, width):
        """Narrow the interval to at most ``width``.

        :raises PrecisionExhausted: if ``width`` is below the current
          width by more than ``2^refine_cap``.
        """
        width = as_fraction(width)
        with self._lock:
            if self.hi - self.lo <= width:
                return self
            if width <= 0 or (self.hi - self.lo) / width > 2 ** self.refine_cap:
                raise PrecisionExhausted(
                    "Could not refine %r below %s in %d bisections"
                    % (self, float(width), self.refine_cap)
                )
            if self.lo < 0 < self.hi:
                # refine_root needs an interval on one side of zero
                if self.minpoly.count_roots(as_rational(self.lo), 0):
                    self.hi = Fraction(0)
                else:
                    self.lo = Fraction(0)
            lo, hi = self.minpoly.refine_root(
                as_rational(self.lo), as_rational(self.hi), eps=as_rational(width)
            )
            self.lo, self.hi = as_fraction(lo), as_fraction(hi)
        return self

    def bisect(self):
        """Halve the isolating interval at least once."""
        if not self.is_rational:
            self.refine(self.width / 2)

    def interval(self, width):
        """A snapshot ``(lo, hi)`` of width at most ``width``."""
        with self._lock:
            self.refine(width)
            return self.lo, self.hi

    def approx(self):
        """Float approximation, correct to double precision."""
        if self._approx is None:
            scale = max(Fraction(1), abs(self.lo), abs(self.hi))
            lo, hi = self.interval(scale / 2 ** 60)
            self._approx = float((lo + hi) / 2)
        return self._approx

    def __float__(self):
        return self.approx()

    def __repr__(self):
        if self.is_rational:
            return "AlgReal(%s)" % self.lo
        return "AlgReal(root of %s in (%s, %s) ~ %.12g)" % (
            self.minpoly.as_expr(),
            self.lo,
            self.hi,
            self.approx(),
        )

    def sign(self):
        return compare(self, 0)

    def __neg__(self):
        return self * -1

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __add__(self, other):
        return _binary(self, AlgReal.coerce(other), add=True)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-AlgReal.coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        return _binary(self, AlgReal.coerce(other), add=False)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_rational:
            if self.lo == 0:
                raise DivisionByZero("Inverse of zero")
            return AlgReal.rational(1 / self.lo, self.refine_cap)
        generator, coords = self.field
        return from_field(generator, coords.invert(generator.minpoly))

    def __truediv__(self, other):
        return self * AlgReal.coerce(other).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def sqrt(self):
        """Nonnegative square root of a nonnegative number."""
        sign = self.sign()
        if sign < 0:
            raise ValueError("Square root of negative %r" % self)
        if sign == 0:
            return AlgReal.rational(0, self.refine_cap)
        if self.is_rational:
            root = _exact_sqrt(self.lo)
            if root is not None:
                return AlgReal.rational(root, self.refine_cap)

        def enclose(width):
            lo, hi = self.interval(width)
            return (
                _sqrt_bounds(max(lo, Fraction(0)), width)[0],
                _sqrt_bounds(hi, width)[1],
            )

        candidates = irreducible_factors(self.minpoly.compose(poly(x ** 2)))
        return _isolate(candidates, enclose, self.refine_cap)

    def __pow__(self, exponent):
        exponent = as_fraction(exponent)
        if exponent.denominator == 2:
            return self.sqrt() ** exponent.numerator
        if exponent.denominator != 1:
            raise ValueError("Only integer and half-integer powers: %s" % exponent)
        n = exponent.numerator
        if n < 0:
            return self.inverse() ** -n
        if self.is_rational:
            return AlgReal.rational(self.lo ** n, self.refine_cap)
        if n == 1:
            return self
        generator, coords = self.field
        return from_field(generator, coords.pow(n).rem(generator.minpoly))

    def __eq__(self, other):
        if not isinstance(other, (AlgReal, int, Fraction)):
            return NotImplemented
        return compare(self, other) == 0

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0

    __hash__ = None


def _exact_sqrt(q):
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _sqrt_bounds(q, width):
    """Rationals ``lower <= sqrt(q) < upper`` with ``upper - lower`` small."""
    bits = max(8, width.denominator.bit_length())
    n, d = q.numerator, q.denominator
    s = math.isqrt(n * d * 4 ** bits)
    return Fraction(s, d * 2 ** bits), Fraction(s + 1, d * 2 ** bits)


def _interval_product(a, b):
    products = [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
    return min(products), max(products)


def _interval_horner(p, lo, hi):
    """Rational interval enclosing ``p`` over ``[lo, hi]``."""
    acc = (Fraction(0), Fraction(0))
    for c in p.all_coeffs():
        c = as_fraction(c)
        low, high = _interval_product(acc, (lo, hi))
        acc = (low + c, high + c)
    return acc


def _isolate(candidates, enclose, refine_cap):
    """The root one of ``candidates`` has inside ``enclose(width)``.

    ``enclose(width)`` returns a closed rational interval around the
    target, computed from operands refined to ``width``; it shrinks as
    ``width`` does. The candidates are monic and irreducible.
    """
    bits = 16
    while bits <= refine_cap:
        lo, hi = enclose(Fraction(1, 2 ** bits))
        inf, sup = as_rational(lo), as_rational(hi)
        hits = [(p, p.count_roots(inf, sup)) for p in candidates]
        hits = [(p, n) for p, n in hits if n]
        if len(hits) == 1 and hits[0][1] == 1:
            p = hits[0][0]
            if p.degree() == 1:
                return AlgReal.rational(-p.TC(), refine_cap)
            return AlgReal(p, lo, hi, refine_cap)
        bits *= 2
    raise PrecisionExhausted("Could not isolate a root of %s" % candidates)


def from_field(generator, coords):
    """The number ``coords(generator)``.

    Its minimal polynomial is the squarefree part of the resultant
    ``res_y(g(y), x - c(y))``, a power of it since ``g`` is irreducible.
    """
    coords = coords.rem(generator.minpoly)
    if coords.degree() <= 0:
        return AlgReal.rational(coords.TC(), generator.refine_cap)
    g = generator.minpoly.as_expr().subs(x, y)
    c = coords.as_expr().subs(x, y)
    minpoly = poly(resultant(g, x - c, y)).sqf_part().monic()

    def enclose(width):
        return _interval_horner(coords, *generator.interval(width))

    result = _isolate([minpoly], enclose, generator.refine_cap)
    result._field = FieldElement(generator, coords)
    return result


def _common_field(a, b):
    """Coordinates of ``a`` and ``b`` in one field, or ``None``."""
    if a.is_rational and b.is_rational:
        return None
    if a.is_rational:
        generator = b.field.generator
        return generator, poly(as_rational(a.lo)), b.field.coords
    if b.is_rational:
        generator = a.field.generator
        return generator, a.field.coords, poly(as_rational(b.lo))
    if a.field.generator is b.field.generator:
        return a.field.generator, a.field.coords, b.field.coords
    return None


def _binary(a, b, add):
    if a.is_rational and b.is_rational:
        value = a.lo + b.lo if add else a.lo * b.lo
        return AlgReal.rational(value, a.refine_cap)
    common = _common_field(a, b)
    if common is not None:
        generator, ca, cb = common
        coords = ca + cb if add else (ca * cb).rem(generator.minpoly)
        return from_field(generator, coords)
    return _combine(a, b, add)


def _combine(a, b, add):
    """Sum or product of numbers from different fields.

    The result is a root of ``res_y(p(y), q(x - y))`` or of
    ``res_y(p(y), y^e q(x / y))`` for the minimal polynomials ``p`` and
    ``q``; the factor it is a root of is picked by interval arithmetic.
    """
    p = a.minpoly.as_expr().subs(x, y)
    if add:
        q = b.minpoly.as_expr().subs(x, x - y)
    else:
        q = expand(y ** b.degree * b.minpoly.as_expr().subs(x, x / y))
    candidates = irreducible_factors(poly(resultant(p, q, y)))

    def enclose(width):
        xl, xh = a.interval(width)
        yl, yh = b.interval(width)
        if add:
            return xl + yl, xh + yh
        return _interval_product((xl, xh), (yl, yh))

    return _isolate(candidates, enclose, max(a.refine_cap, b.refine_cap))


def _separate(x_, y_):
    """Sign of ``x_ - y_`` for numbers known to differ."""
    for _ in range(max(x_.refine_cap, y_.refine_cap) + 1):
        if x_.hi < y_.lo:
            return -1
        if y_.hi < x_.lo:
            return 1
        x_.bisect()
        y_.bisect()
    raise PrecisionExhausted("Cannot compare %r with %r" % (x_, y_))


def compare(a, b):
    """Exact comparison: -1, 0 or 1.

    Numbers of one field are equal when their coordinates are. Otherwise
    equal numbers share their minimal polynomial and the root it has
    where their intervals overlap; unequal ones are told apart by
    refining until the intervals separate.
    """
    a, b = AlgReal.coerce(a), AlgReal.coerce(b)
    if a.is_rational and b.is_rational:
        return (a.lo > b.lo) - (a.lo < b.lo)
    common = _common_field(a, b)
    if common is not None:
        if common[1] == common[2]:
            return 0
        return _separate(a, b)
    if a.is_rational or b.is_rational or a.minpoly != b.minpoly:
        return _separate(a, b)
    for _ in range(max(a.refine_cap, b.refine_cap) + 1):
        if a.hi < b.lo:
            return -1
        if b.hi < a.lo:
            return 1
        hull = as_rational(min(a.lo, b.lo)), as_rational(max(a.hi, b.hi))
        if a.minpoly.count_roots(*hull) == 1:
            return 0
        a.bisect()
        b.bisect()
    raise PrecisionExhausted("Cannot compare %r with %r" % (a, b))


def isolate_dominant_root(p, refine_cap=None):
    """The largest real root of ``p``, which must exceed one.

    :raises NoDominantRoot: if ``p`` has no real root above one.
    """
    p = p.sqf_part()
    roots = p.intervals() if p.degree() >= 1 else []
    if not roots:
        raise NoDominantRoot("%s has no real roots" % p.as_expr())
    (lo, hi), _ = max(roots, key=lambda root: root[0][1])
    result = AlgReal.from_interval(p, lo, hi, refine_cap)
    if result <= 1:
        raise NoDominantRoot(
            "%s has no real root above one, largest %r" % (p.as_expr(), result)
        )
    logger.debug("Dominant root of %s: %r", p.as_expr(), result)
    return result


def alg_arith(a, b=None, op="add", precision=Fraction(1, 10 ** 12)):
    """Apply ``op`` to algebraic numbers.

    ``op`` is one of ``add``, ``sub``, ``mul``, ``div``, ``pow``, ``inv``
    or ``compare``. ``pow`` takes an integer or half-integer ``b``. The
    result is refined to an interval no wider than ``precision``;
    ``compare`` returns -1, 0 or 1.
    """
    a = AlgReal.coerce(a)
    if op == "compare":
        return compare(a, b)
    if op == "add":
        result = a + b
    elif op == "sub":
        result = a - b
    elif op == "mul":
        result = a * b
    elif op == "div":
        result = a / b
    elif op == "inv":
        result = a.inverse()
    elif op == "pow":
        result = a ** b
    else:
        raise ValueError("Unknown operation: %s" % op)
    return result.refine(precision)


def cos_rational_pi(k, n, refine_cap=None):
    """``cos(k*pi/n)`` as a root of ``T_n(x) - (-1)^k``."""
    k %= 2 * n
    if k == 0:
        return AlgReal.rational(1, refine_cap)
    if k == n:
        return AlgReal.rational(-1, refine_cap)
    p = chebyshev(n) - (-1) ** k
    value = Fraction(math.cos(k * math.pi / n))
    # roots of T_n -+ 1 are at least about 4.9 / n^2 apart
    margin = Fraction(1, 10 * n * n)
    return AlgReal.from_interval(p, value - margin, value + margin, refine_cap)


def _cosine_index(c, order):
    """The ``k`` with ``c == cos(2 pi k / order)``, given that ``c`` is
    such a cosine.

    The cosines ``cos(2 pi k / order)`` with ``k`` prime to ``order``
    are the roots of the minimal polynomial of ``c`` and lie more than
    ``1 / order^2`` apart, so the isolating interval, narrowed below
    that, contains exactly one of them.
    """
    width = Fraction(1, 10 * order * order)
    lo, hi = (c.lo, c.hi) if c.is_rational else c.interval(width)
    lo, hi = float(lo) - 1e-12, float(hi) + 1e-12
    for k in range(order // 2 + 1):
        if math.gcd(k, order) == 1 and lo <= math.cos(2 * math.pi * k / order) <= hi:
            return k
    raise AssertionError("no cosine of order %d in (%s, %s)" % (order, lo, hi))


def is_rational_cosine(c, n_cap=None):
    """Decide whether ``c`` equals ``cos(k*pi/n)`` for integers ``k, n``.

    ``c = cos(t)`` with ``t`` a rational multiple of pi exactly when
    ``e^{i t}`` is a root of unity of some order ``N``. Those are roots
    of the cosine polynomial of the minimal polynomial of ``c``, so the
    cyclotomic polynomial of order ``N`` divides it; since
    ``phi(N) >= sqrt(N/2)`` only ``N <= 2 (2d)^2`` need to be tried.

    :return: :class:`RationalCosine` with ``k/n`` in lowest terms and
      ``0 <= k/n <= 1``, or :data:`NOT_RATIONAL`.
    :raises DegreeCapExceeded: if the search bound exceeds ``n_cap``.
    """
    c = AlgReal.coerce(c)
    if n_cap is None:
        n_cap = DEFAULT_SETTINGS.cosine_n_cap
    if c > 1 or c < -1:
        return NOT_RATIONAL
    d = c.degree
    bound = 2 * (2 * d) ** 2
    if bound > n_cap:
        raise DegreeCapExceeded(
            "Cyclotomic search up to %d exceeds cap %d" % (bound, n_cap)
        )
    q = cosine_polynomial(c.minpoly)
    for order in range(1, bound + 1):
        if euler_phi(order) > 2 * d or not q.rem(cyclotomic(order)).is_zero:
            continue
        angle = Fraction(2 * _cosine_index(c, order), order)
        logger.debug("%r is cos(%s pi)", c, angle)
        return RationalCosine(angle.denominator, angle.numerator)
    return NOT_RATIONAL
