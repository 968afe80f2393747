import logging
import math

import pytest

from ..algebraic import isolate_dominant_root
from ..angle import IDENTITY, IrrationalPi
from ..error import SpecViolation, VerifyFailed
from ..families import (
    TIPI_SCALES,
    FamilySpec,
    _build_tipi,
    build_family,
    build_pinwheel,
    build_pythagoras,
    build_pythia,
    build_tipi,
    check_tipi_params,
    committed,
    flip_tile,
    gate,
    parse_family_spec,
    pythagoras_constants,
    pythagoras_matrix,
    tipi_candidate,
    tipi_polynomial,
)
from ..matrix import SubstMatrix
from ..perron import perron_data
from ..polynomial import companion
from ..settings import Settings
from ..tiling import PlacedTile, make_rule, supertile, verify_rule

COPRIME = [(3, 1), (3, 2), (4, 1), (4, 3), (5, 2), (5, 3)]
TIPI = [(3, 1), (5, 1), (5, 2), (7, 3)]


def test_parse_family_spec():
    assert parse_family_spec("pythia:3,1") == FamilySpec("pythia", (3, 1))
    assert parse_family_spec("pinwheel") == FamilySpec("pinwheel")
    assert str(FamilySpec("tipi", (5, 2))) == "tipi:5,2"
    assert str(FamilySpec("pinwheel")) == "pinwheel"


@pytest.mark.parametrize(
    "text", ["hat:3,1", "pythia:3", "pythia:3,1,2", "pythia:a,b", "pinwheel:1"]
)
def test_parse_family_spec_errors(text):
    with pytest.raises(SpecViolation):
        parse_family_spec(text)


@pytest.mark.parametrize("m,j", [(4, 2), (2, 1), (3, 3), (6, 3)])
def test_bad_pythagoras_params(m, j):
    with pytest.raises(SpecViolation):
        build_pythagoras(m, j)
    with pytest.raises(SpecViolation):
        build_pythia(m, j)


@pytest.mark.parametrize("m,j", [(4, 2), (3, 2), (2, 1)])
def test_bad_tipi_params(m, j):
    with pytest.raises(SpecViolation):
        check_tipi_params(m, j)


def test_pythagoras_constants():
    constants = pythagoras_constants(3, 1)
    assert float(constants.eta) == pytest.approx(1.3247179572, abs=1e-9)
    assert float(constants.a) == pytest.approx(0.655857, abs=1e-6)
    assert float(constants.b) == pytest.approx(0.754878, abs=1e-6)


@pytest.mark.parametrize("m,j", COPRIME)
def test_pythagoras_identities(m, j):
    constants = pythagoras_constants(m, j)
    lam = constants.factor
    assert lam ** m == lam ** (2 * j - m) + lam ** -m
    # the first prototile has hypotenuse one
    assert constants.a ** 2 + constants.b ** 2 == 1


@pytest.mark.parametrize("m,j", COPRIME)
def test_pythagoras(m, j):
    rule = build_pythagoras(m, j)
    assert rule.verify_report
    assert rule.size == m
    assert rule.matrix() == pythagoras_matrix(m, j)
    generator = rule.registry["psi"]
    assert isinstance(generator.certificate, IrrationalPi)
    assert rule.factor ** 2 == pythagoras_constants(m, j).eta


@pytest.mark.parametrize("m,j", COPRIME)
def test_pythia(m, j):
    rule = build_pythia(m, j)
    assert rule.verify_report
    assert rule.size == m
    s = pythagoras_matrix(m, j)
    assert rule.matrix() == s.power(2 * m)
    assert rule.metadata["iterate"] == 2 * m
    assert rule.factor == pythagoras_constants(m, j).eta ** m
    eigenvalue = perron_data(rule.matrix()).eigenvalue
    assert eigenvalue == pytest.approx(rule.factor_value ** 2, rel=1e-9)


def test_pythia_matrix():
    rule = build_pythia(3, 1)
    assert rule.matrix() == [[1, 1, 2], [2, 2, 3], [1, 2, 2]]


def test_pythia_flips_a_rectangle():
    rule = build_pythia(3, 1)
    pythagoras = build_pythagoras(3, 1)
    first, second = rule.metadata["rectangle"]
    flipped = rule.children[0]
    reflects = [child.orientation.reflect for child in flipped]
    for k in (first, second):
        assert flipped[k].prototile == 1
    # outside the rectangle the children are the Pythagoras supertile
    original = supertile(pythagoras, 0, 6)
    for k, tile in enumerate(original.tiles):
        if k in (first, second):
            assert tile.orientation.reflect != reflects[k]
        else:
            assert tile.orientation.reflect == reflects[k]


def test_flip_tile_is_involution():
    rule = build_pythagoras(3, 1)
    tile = rule.children[2][1]
    center = 0.3 - 0.2j
    tile = PlacedTile(*tile)
    twice = flip_tile(flip_tile(tile, center, rule.registry), center, rule.registry)
    assert twice.orientation == tile.orientation
    assert twice.translation == pytest.approx(tile.translation)


@pytest.mark.parametrize("m,j", TIPI)
def test_tipi(m, j):
    rule = build_tipi(m, j)
    assert rule.verify_report
    assert rule.size == m
    assert rule.matrix() == SubstMatrix(companion(tipi_polynomial(m, j)))
    assert rule.metadata["scale"] in ("literal", "root")
    assert rule.metadata["rotation"] in ("radians", "turns")
    eigenvalue = perron_data(rule.matrix()).eigenvalue
    assert eigenvalue == pytest.approx(rule.factor_value ** 2, rel=1e-9)


@pytest.mark.parametrize("m,j", TIPI)
def test_tipi_polynomial_identity(m, j):
    eta = isolate_dominant_root(tipi_polynomial(m, j))
    assert eta ** m == (eta ** j + 1) ** 2


def test_tipi_convention():
    rule = build_tipi(3, 1)
    assert rule.metadata["eta"] == pytest.approx(2.1478990357, abs=1e-9)
    assert rule.factor_value == pytest.approx(math.sqrt(2.1478990357), abs=1e-9)


def test_pinwheel():
    rule = build_pinwheel()
    assert rule.verify_report
    assert rule.matrix() == [[5]]
    assert rule.factor ** 2 == 5
    reflected = [child.orientation.reflect for child in rule.children[0]]
    assert reflected.count(True) == 3
    assert reflected.count(False) == 2
    assert rule.registry["gamma"].value == pytest.approx(math.atan(0.5))


def test_build_family_by_text():
    assert build_family("pythia:3,1") is build_pythia(3, 1)
    assert build_family(FamilySpec("pinwheel")) is build_pinwheel()


def test_gate_raises_with_report():
    square = [0, 1, 1 + 1j, 1j]
    rule = make_rule([square], [[(0, IDENTITY, 0)]], 2)
    with pytest.raises(VerifyFailed) as info:
        gate(rule)
    assert info.value.report is rule.verify_report
    assert not info.value.report


def test_tipi_falls_back_to_root_scale(caplog):
    _build_tipi.cache_clear()
    with caplog.at_level(logging.WARNING, logger="pinwheel_forge.families"):
        rule = build_tipi(3, 1)
    assert rule.metadata["scale"] == "root"
    warnings = [r for r in caplog.records if r.levelno == logging.WARNING]
    assert len(warnings) == 1
    assert "falling back to the root scale" in warnings[0].getMessage()


def test_tipi_literal_scale_is_tried_first():
    rule = tipi_candidate(3, 1, "literal", "radians")
    assert rule.metadata["scale"] == TIPI_SCALES[0] == "literal"
    assert rule.factor_value == pytest.approx(2.1478990357, abs=1e-9)
    assert not verify_rule(rule)


def test_builders_carry_settings():
    settings = Settings(tol_geo=1e-8)
    rule = build_pythagoras(3, 1, settings=settings)
    assert rule.settings is settings
    assert build_pythagoras(3, 1, tol_geo=1e-8).settings == settings
    assert build_pythagoras(3, 1).settings is committed().config.settings
