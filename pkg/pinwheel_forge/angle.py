"""Exact orientations in O(2).

An :class:`Angle` is a rational multiple of pi plus an integer
combination of named generator angles. The generators live in a
:class:`GeneratorRegistry` together with their numeric values and,
where available, a certificate that they are not rational multiples of
pi. An :class:`Orientation` adds a reflection flag; it acts on the
complex plane as ``z -> e^{i alpha} z`` or ``z -> e^{i alpha} conj(z)``.
"""
import cmath
import dataclasses
import functools
import logging
import math
from collections import namedtuple
from fractions import Fraction

from .algebraic import is_rational_cosine
from .error import PrecisionExhausted, RegistryMismatch
from .sentinel import NOT_RATIONAL, Sentinel
from .settings import DEFAULT_SETTINGS

logger = logging.getLogger(__name__)

TWO_PI = 2 * math.pi

IrrationalPi = namedtuple("IrrationalPi", ["proof"])
"""Certificate that a generator is not a rational multiple of pi."""

UNVERIFIED = Sentinel("UNVERIFIED")

RationalPi = namedtuple("RationalPi", ["q"])
IrrationalPiCertified = namedtuple("IrrationalPiCertified", ["generator"])
UnknownNumeric = namedtuple("UnknownNumeric", ["report"])

ContinuedFractionReport = namedtuple(
    "ContinuedFractionReport", ["value", "convergents", "best", "error", "match"]
)
"""Numeric evidence about ``value`` (an angle divided by pi).

``convergents`` are the continued fraction convergents with
denominators up to the bound, ``best`` the last of them and ``error``
its distance to ``value``. ``match`` is ``best`` if that distance is
below numerical noise, otherwise ``None``.
"""


@dataclasses.dataclass(frozen=True)
class Generator:
    """A named angle in ``[0, 2 pi)``.

    ``error`` bounds the distance of ``value`` from the true angle.
    ``cosine`` optionally holds the cosine as an exact
    :class:`pinwheel_forge.algebraic.AlgReal`.
    """

    name: str
    value: float
    error: float = 1e-15
    certificate: object = UNVERIFIED
    cosine: object = dataclasses.field(default=None, compare=False)


def certify(cosine, n_cap=None):
    """Certificate for the angle whose cosine is the exact ``cosine``."""
    if is_rational_cosine(cosine, n_cap) is NOT_RATIONAL:
        return IrrationalPi("cosine is not cos(k pi / n)")
    return UNVERIFIED


def make_generator(name, value, cosine=None, error=1e-15, n_cap=None):
    """Create a generator, certifying it if an exact cosine is given.

    ``n_cap`` bounds the cyclotomic search of the certificate.
    """
    certificate = UNVERIFIED if cosine is None else certify(cosine, n_cap)
    logger.debug("Generator %s = %.15g: %r", name, value, certificate)
    return Generator(name, value % TWO_PI, error, certificate, cosine)


class GeneratorRegistry:
    """The generator angles a rule is expressed in."""

    def __init__(self, generators=()):
        self._generators = {}
        for generator in generators:
            if generator.name in self._generators:
                raise ValueError("Duplicate generator: %s" % generator.name)
            self._generators[generator.name] = generator

    @property
    def entries(self):
        return list(self._generators.values())

    @property
    def key(self):
        return tuple(sorted(self._generators))

    def __getitem__(self, name):
        return self._generators[name]

    def __contains__(self, name):
        return name in self._generators

    def __len__(self):
        return len(self._generators)

    def __eq__(self, other):
        if not isinstance(other, GeneratorRegistry):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return "GeneratorRegistry(%s)" % ", ".join(self._generators)


EMPTY_REGISTRY = GeneratorRegistry()


@dataclasses.dataclass(frozen=True)
class Angle:
    """``pi_part * pi + sum(coeff * generator)``, modulo ``2 pi``.

    ``gens`` is a sorted tuple of ``(name, coeff)`` with nonzero
    integer coefficients; ``pi_part`` is normalized into ``[0, 2)``.
    """

    pi_part: Fraction = Fraction(0)
    gens: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "pi_part", Fraction(self.pi_part) % 2)
        combined = {}
        for name, coeff in self.gens:
            combined[name] = combined.get(name, 0) + int(coeff)
        object.__setattr__(
            self,
            "gens",
            tuple(sorted((n, c) for n, c in combined.items() if c != 0)),
        )

    @classmethod
    def pi(cls, q):
        """The angle ``q * pi``."""
        return cls(Fraction(q))

    @classmethod
    def generator(cls, name, coeff=1):
        return cls(Fraction(0), ((name, coeff),))

    def __add__(self, other):
        return Angle(self.pi_part + other.pi_part, self.gens + other.gens)

    def __neg__(self):
        return Angle(-self.pi_part, tuple((n, -c) for n, c in self.gens))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        return Angle(self.pi_part * k, tuple((n, c * k) for n, c in self.gens))

    __rmul__ = __mul__

    @property
    def is_rational_pi(self):
        return not self.gens

    def coeff(self, name):
        return dict(self.gens).get(name, 0)

    def radians(self, registry):
        """Numeric value in ``[0, 2 pi)``."""
        return _radians(self, registry.key, registry)

    def to_json(self):
        return {
            "pi_num": self.pi_part.numerator,
            "pi_den": self.pi_part.denominator,
            "gens": dict(self.gens),
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            Fraction(int(data["pi_num"]), int(data["pi_den"])),
            tuple((name, int(c)) for name, c in data.get("gens", {}).items()),
        )

    def __str__(self):
        parts = []
        if self.pi_part:
            parts.append("%s*pi" % self.pi_part)
        for name, coeff in self.gens:
            parts.append("%d*%s" % (coeff, name))
        return " + ".join(parts) or "0"


ZERO = Angle()


@functools.lru_cache(maxsize=65536)
def _radians(angle, key, registry):
    value = float(angle.pi_part) * math.pi
    for name, coeff in angle.gens:
        value += coeff * registry[name].value
    return value % TWO_PI


def angle_value(angle, registry, precision=1e-10):
    """Numeric value of ``angle`` in ``[0, 2 pi)`` within ``precision``.

    :raises PrecisionExhausted: if the generator error bounds (or double
      precision) do not allow ``precision``.
    """
    if precision <= 0:
        raise ValueError("precision must be positive")
    error = 4e-16 * (1 + abs(float(angle.pi_part)) * math.pi)
    for name, coeff in angle.gens:
        generator = registry[name]
        error += abs(coeff) * (generator.error + 4e-16 * generator.value)
    if error > precision:
        raise PrecisionExhausted(
            "Angle %s is only known to within %.3g" % (angle, error)
        )
    return angle.radians(registry)


def continued_fraction_report(value, max_denominator, noise=1e-12):
    """Continued fraction convergents of ``value`` up to ``max_denominator``."""
    convergents = []
    h0, h1 = 0, 1
    k0, k1 = 1, 0
    x = value
    for _ in range(64):
        a = math.floor(x)
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        if k1 > max_denominator:
            break
        convergents.append(Fraction(h1, k1))
        fractional = x - a
        if fractional < 1e-15:
            break
        x = 1 / fractional
    best = convergents[-1]
    error = abs(value - float(best))
    match = best if error <= noise * max(1.0, abs(value)) else None
    return ContinuedFractionReport(value, convergents, best, error, match)


def classify_pi_rationality(angle, registry, max_denominator=None):
    """Decide whether ``angle`` is a rational multiple of pi.

    :return: :class:`RationalPi` if no generator occurs,
      :class:`IrrationalPiCertified` if exactly one certified generator
      occurs, otherwise :class:`UnknownNumeric` with a continued
      fraction report of ``angle / pi``.
    """
    if max_denominator is None:
        max_denominator = DEFAULT_SETTINGS.cf_denominator
    if angle.is_rational_pi:
        return RationalPi(angle.pi_part)
    if len(angle.gens) == 1:
        name = angle.gens[0][0]
        if isinstance(registry[name].certificate, IrrationalPi):
            return IrrationalPiCertified(name)
    value = angle.radians(registry) / math.pi
    return UnknownNumeric(continued_fraction_report(value, max_denominator))


@dataclasses.dataclass(frozen=True)
class Orientation:
    """Element ``(s, alpha)`` of O(2); ``reflect`` means ``s = -1``.

    ``registry`` is not part of equality or hashing; it only guards
    against mixing orientations of different rules.
    """

    reflect: bool = False
    angle: Angle = ZERO
    registry: object = dataclasses.field(default=None, compare=False)

    @property
    def sign(self):
        return -1 if self.reflect else 1

    def compose(self, other):
        return compose(self, other)

    __matmul__ = compose

    def inverse(self):
        if self.reflect:
            return self
        return Orientation(False, -self.angle, self.registry)

    def with_registry(self, registry):
        return Orientation(self.reflect, self.angle, registry)

    def rotation(self, registry=None):
        """``e^{i alpha}`` as a complex number."""
        registry = registry or self.registry or EMPTY_REGISTRY
        return _unit(self.angle, registry.key, registry)

    def apply(self, z, registry=None):
        """Act on a complex number or a numpy array of them."""
        if self.reflect:
            z = z.conjugate()
        return self.rotation(registry) * z

    def __str__(self):
        return "(%s, %s)" % ("-" if self.reflect else "+", self.angle)


IDENTITY = Orientation()


@functools.lru_cache(maxsize=65536)
def _unit(angle, key, registry):
    return cmath.exp(1j * _radians(angle, key, registry))


def _check_registries(o1, o2):
    r1, r2 = o1.registry, o2.registry
    # generators of equal name may still differ in value
    if r1 is not None and r2 is not None and r1 is not r2 and r1 != r2:
        raise RegistryMismatch(
            "Cannot combine orientations of %r and %r" % (r1, r2)
        )
    return r1 if r1 is not None else r2


@functools.lru_cache(maxsize=65536)
def _compose(s1, a1, s2, a2):
    return s1 != s2, a1 + (-a2 if s1 else a2)


def compose(o1, o2):
    """``(s1, a1) o (s2, a2) = (s1 s2, a1 + s1 a2)``.

    :raises RegistryMismatch: if the orientations belong to different
      generator registries.
    """
    registry = _check_registries(o1, o2)
    reflect, angle = _compose(o1.reflect, o1.angle, o2.reflect, o2.angle)
    return Orientation(reflect, angle, registry)
