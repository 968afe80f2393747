import math
from fractions import Fraction

import pytest

from ..algebraic import AlgReal
from ..angle import (
    IDENTITY,
    UNVERIFIED,
    Angle,
    GeneratorRegistry,
    IrrationalPi,
    IrrationalPiCertified,
    Orientation,
    RationalPi,
    UnknownNumeric,
    angle_value,
    classify_pi_rationality,
    compose,
    continued_fraction_report,
    make_generator,
)
from ..error import PrecisionExhausted, RegistryMismatch
from ..families import build_family
from ..polynomial import from_coefficients

GAMMA = math.atan(0.5)


def pinwheel_registry():
    cosine = AlgReal.from_interval(
        from_coefficients([5, 0, -4]), Fraction(8, 10), Fraction(9, 10)
    )
    return GeneratorRegistry([make_generator("gamma", GAMMA, cosine)])


def test_angle_normalizes():
    assert Angle.pi(Fraction(5, 2)) == Angle.pi(Fraction(1, 2))
    assert Angle.pi(-1) == Angle.pi(1)
    a = Angle(0, (("g", 1), ("g", -1)))
    assert a.gens == ()
    assert a.is_rational_pi


def test_angle_arithmetic():
    g = Angle.generator("g")
    a = Angle.pi(Fraction(1, 2)) + 2 * g
    assert a.coeff("g") == 2
    assert (a - a) == Angle()
    assert -a == Angle.pi(Fraction(3, 2)) + g * -2
    assert str(a) == "1/2*pi + 2*g"
    assert str(Angle()) == "0"


def test_angle_json():
    a = Angle.pi(Fraction(3, 4)) + Angle.generator("psi", -3)
    assert Angle.from_json(a.to_json()) == a


def test_generator_certified_by_exact_cosine():
    registry = pinwheel_registry()
    assert isinstance(registry["gamma"].certificate, IrrationalPi)


def test_generator_with_rational_cosine_not_certified():
    generator = make_generator("third", math.pi / 3, AlgReal.rational(Fraction(1, 2)))
    assert generator.certificate is UNVERIFIED


def test_registry_rejects_duplicates():
    g = make_generator("g", 1.0)
    with pytest.raises(ValueError):
        GeneratorRegistry([g, g])


def test_radians():
    registry = pinwheel_registry()
    a = Angle.pi(1) + Angle.generator("gamma")
    assert a.radians(registry) == pytest.approx(math.pi + GAMMA)
    assert (-Angle.generator("gamma")).radians(registry) == pytest.approx(
        2 * math.pi - GAMMA
    )


def test_angle_value_precision():
    registry = GeneratorRegistry([make_generator("g", 1.0, error=1e-6)])
    assert angle_value(Angle.generator("g"), registry, 1e-3) == pytest.approx(1.0)
    with pytest.raises(PrecisionExhausted):
        angle_value(Angle.generator("g"), registry, 1e-10)
    with pytest.raises(ValueError):
        angle_value(Angle(), registry, 0)


def test_classify():
    registry = pinwheel_registry()
    assert classify_pi_rationality(Angle.pi(Fraction(1, 3)), registry) == (
        RationalPi(Fraction(1, 3))
    )
    result = classify_pi_rationality(Angle.generator("gamma", 4), registry)
    assert result == IrrationalPiCertified("gamma")


def test_classify_unverified_is_numeric():
    registry = GeneratorRegistry([make_generator("g", math.pi / 7)])
    result = classify_pi_rationality(Angle.generator("g"), registry)
    assert isinstance(result, UnknownNumeric)
    assert result.report.match == Fraction(1, 7)


def test_continued_fraction_of_irrational():
    report = continued_fraction_report(GAMMA / math.pi, 1000)
    assert report.match is None
    assert report.best.denominator <= 1000
    assert report.error < 1e-4


def test_compose_rule():
    g = Angle.generator("g")
    r = Orientation(True, g)
    s = Orientation(False, Angle.pi(Fraction(1, 2)))
    assert compose(r, s) == Orientation(True, g - Angle.pi(Fraction(1, 2)))
    assert compose(s, r) == Orientation(True, g + Angle.pi(Fraction(1, 2)))
    assert r @ r == IDENTITY
    assert compose(s, s.inverse()) == IDENTITY


def test_compose_is_associative():
    a = Orientation(True, Angle.generator("g", 2))
    b = Orientation(False, Angle.pi(Fraction(1, 3)) + Angle.generator("g"))
    c = Orientation(True, Angle.pi(Fraction(5, 4)))
    assert (a @ b) @ c == a @ (b @ c)


def test_apply_matches_compose():
    registry = pinwheel_registry()
    a = Orientation(True, Angle.generator("gamma"), registry)
    b = Orientation(False, Angle.pi(Fraction(1, 2)), registry)
    z = 0.3 + 0.7j
    assert (a @ b).apply(z) == pytest.approx(a.apply(b.apply(z)))
    assert IDENTITY.apply(z) == z


def test_registry_mismatch():
    first = pinwheel_registry()
    second = GeneratorRegistry([make_generator("other", 1.0)])
    with pytest.raises(RegistryMismatch):
        compose(IDENTITY.with_registry(first), IDENTITY.with_registry(second))
    assert compose(IDENTITY.with_registry(first), IDENTITY).registry is first


def test_registries_of_equal_names_differ():
    first = build_family("pythagoras:3,1").registry
    second = build_family("pythagoras:4,1").registry
    assert first.key == second.key
    psi = Angle.generator("psi")
    with pytest.raises(RegistryMismatch):
        compose(Orientation(False, psi, first), Orientation(False, psi, second))
    same = GeneratorRegistry(first.entries)
    assert same is not first
    composed = compose(Orientation(False, psi, first), Orientation(True, psi, same))
    assert composed.registry is first


def test_str():
    assert str(Orientation(True, Angle.pi(1))) == "(-, 1*pi)"
