"""Polynomials over the rationals.

Every polynomial in the package is a :class:`sympy.Poly` in the symbol
:data:`x` over ``QQ``. This module builds them and converts between
sympy rationals and :class:`fractions.Fraction`, which the rest of the
package uses for interval endpoints.
"""
import functools
from fractions import Fraction

from sympy import (
    QQ,
    Poly,
    Rational,
    Symbol,
    chebyshevt_poly,
    cyclotomic_poly,
    totient,
)

x = Symbol("x")
y = Symbol("y")


def as_fraction(value):
    """A :class:`Fraction` from an int, a Fraction, a string or a sympy
    rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


def as_rational(value):
    value = as_fraction(value)
    return Rational(value.numerator, value.denominator)


def poly(expr):
    """``expr`` (an expression in :data:`x`) as a polynomial over ``QQ``."""
    return Poly(expr, x, domain=QQ)


def from_coefficients(coeffs):
    """Polynomial from coefficients in *descending* degree.

    ``from_coefficients([1, 0, -1, -1])`` is ``x^3 - x - 1``.
    """
    return Poly([as_rational(c) for c in coeffs], x, domain=QQ)


def to_strings(p):
    """Coefficients in ascending degree, as fraction strings."""
    return [str(as_fraction(c)) for c in reversed(p.all_coeffs())]


def from_strings(strings):
    return from_coefficients(list(reversed([Fraction(s) for s in strings])))


@functools.lru_cache(maxsize=None)
def cyclotomic(n):
    """The n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive, got %r" % n)
    return poly(cyclotomic_poly(n, x))


@functools.lru_cache(maxsize=None)
def chebyshev(n):
    """Chebyshev polynomial of the first kind, ``T_n(cos t) = cos(n t)``."""
    return poly(chebyshevt_poly(n, x))


def euler_phi(n):
    return int(totient(n))


def cosine_polynomial(p):
    """``(2x)^d p((x^2 + 1) / 2x)``.

    Its roots are ``e^{+-i t}`` for the roots ``cos t`` of ``p``, so a
    root of ``p`` is the cosine of a rational multiple of pi exactly
    when a cyclotomic polynomial divides this one.
    """
    d = p.degree()
    square = poly(x ** 2 + 1)
    double = poly(2 * x)
    result = poly(0)
    for i, c in enumerate(reversed(p.all_coeffs())):
        result += square ** i * double ** (d - i) * c
    return result


def companion(p):
    """Companion matrix (list of integer rows) of a monic polynomial.

    Column ``m-1`` holds the negated lower coefficients, so for
    ``x^m - x^j - 1`` entries ``(0, m-1)`` and ``(j, m-1)`` are one and
    the subdiagonal is one: exactly the substitution matrix layout.

    :raises ValueError: unless the polynomial is monic with integer
      coefficients.
    """
    coeffs = [as_fraction(c) for c in reversed(p.all_coeffs())]
    if coeffs[-1] != 1 or any(c.denominator != 1 for c in coeffs):
        raise ValueError("Not a monic integer polynomial: %s" % p.as_expr())
    n = len(coeffs) - 1
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = -int(coeffs[i])
    return rows
