import math

import pytest

from .. import geometry
from ..angle import IDENTITY, Angle, Orientation
from ..error import (
    BadIndex,
    FactorNotGreaterThanOne,
    MemoryCap,
    NotCentered,
    PrototileMismatch,
)
from ..families import build_family
from ..tiling import (
    Patch,
    PlacedTile,
    Prototile,
    apply,
    find_occurrences,
    make_rule,
    patch_distance,
    projected_count,
    recover_orientation,
    supertile,
    verify_rule,
)

SQUARE = [0, 1, 1 + 1j, 1j]


def square_rule():
    """The unit square split into four."""
    children = [(0, IDENTITY, t) for t in (0, 1, 1j, 1 + 1j)]
    return make_rule([SQUARE], [children], 2, name="square")


def test_prototile_made_counterclockwise():
    tile = Prototile(0, [0, 1j, 1 + 1j, 1])
    assert tile.vertices[0] == 0
    assert tile.area == pytest.approx(1.0)
    with pytest.raises(ValueError):
        Prototile(0, [0, 1])


def test_make_rule_checks():
    with pytest.raises(BadIndex):
        make_rule([SQUARE], [[(1, IDENTITY, 0)]], 2)
    with pytest.raises(BadIndex):
        make_rule([SQUARE], [], 2)
    with pytest.raises(FactorNotGreaterThanOne):
        make_rule([SQUARE], [[(0, IDENTITY, 0)]], 1)


def test_verify_square_rule():
    report = verify_rule(square_rule())
    assert report
    assert report.area_defect == pytest.approx(0.0)
    assert report.overlap_defect == 0.0


def test_verify_detects_overlap():
    children = [(0, IDENTITY, t) for t in (0, 1, 1j, 0.5 + 0.5j)]
    report = verify_rule(make_rule([SQUARE], [children], 2))
    assert not report
    assert report.overlap_defect > 0.4
    assert report.containment_defect == 0.0


def test_verify_detects_missing_child():
    children = [(0, IDENTITY, t) for t in (0, 1, 1j)]
    report = verify_rule(make_rule([SQUARE], [children], 2))
    assert not report
    assert report.area_defect == pytest.approx(0.25)


def test_verify_detects_child_outside():
    children = [(0, IDENTITY, t) for t in (0, 1, 1j, 1.5 + 1j)]
    report = verify_rule(make_rule([SQUARE], [children], 2))
    assert report.containment_defect == pytest.approx(0.5)


def test_supertile_counts_match_matrix_powers():
    for name in ("pythagoras:3,1", "pythia:3,1", "tipi:3,1"):
        rule = build_family(name)
        for root in range(rule.size):
            for level in range(4):
                counts = supertile(rule, root, level).type_counts()
                assert counts == rule.matrix().power(level).column(root)


@pytest.mark.parametrize(
    "name,deepest",
    [("pythagoras:3,1", 8), ("pythagoras:5,2", 8), ("tipi:3,1", 8), ("pythia:3,1", 4)],
)
def test_supertile_counts_up_to_level(name, deepest):
    rule = build_family(name)
    for level in range(deepest + 1):
        power = rule.matrix().power(level)
        for root in range(rule.size):
            patch = supertile(rule, root, level)
            assert patch.type_counts() == power.column(root)
            assert len(patch) == projected_count(rule, root, level)


def test_supertile_area():
    rule = build_family("pinwheel")
    patch = supertile(rule, 0, 3)
    assert len(patch) == 125
    assert patch.provenance == (0, 3)
    assert patch.total_area() == pytest.approx(125 * rule.prototiles[0].area)


def test_supertile_arguments():
    rule = square_rule()
    with pytest.raises(BadIndex):
        supertile(rule, 1, 2)
    with pytest.raises(ValueError):
        supertile(rule, 0, -1)
    with pytest.raises(MemoryCap):
        supertile(rule, 0, 6, tile_cap=1000)
    assert projected_count(rule, 0, 6) == 4096


def test_apply_is_independent_of_threads():
    rule = build_family("pinwheel")
    patch = supertile(rule, 0, 3)
    assert apply(rule, patch, threads=4) == apply(rule, patch, threads=1)
    assert apply(rule, patch, threads=4).provenance == (0, 4)


def test_apply_rejects_unknown_prototile():
    rule = square_rule()
    with pytest.raises(PrototileMismatch):
        apply(rule, Patch([PlacedTile(3, IDENTITY, 0j)], rule))


def test_children_lie_inside_parent():
    rule = build_family("pythia:3,1")
    patch = supertile(rule, 2, 2)
    big = rule.prototiles[2].points * rule.factor_value ** 2
    for polygon in patch.vertices():
        for z in polygon:
            assert geometry.distance_outside(z, big) < 1e-7


def test_recover_orientation():
    rule = build_family("pinwheel")
    patch = supertile(rule, 0, 2)
    for tile, polygon in zip(patch.tiles, patch.vertices()):
        reflect, angle = recover_orientation(rule, tile.prototile, polygon)
        assert reflect == tile.orientation.reflect
        expected = tile.orientation.angle.radians(rule.registry)
        difference = (angle - expected + math.pi) % (2 * math.pi) - math.pi
        assert abs(difference) < 1e-9


def test_transformed():
    rule = square_rule()
    patch = Patch([PlacedTile(0, IDENTITY, 1 + 0j)], rule)
    quarter = Orientation(False, Angle.pi(0.5))
    moved = patch.transformed(quarter, 1j)
    assert moved[0].translation == pytest.approx(2j)
    assert moved[0].orientation == quarter
    assert moved.contains_point(-0.5 + 2.5j)
    assert not moved.contains_point(0.5 + 2.5j)


def test_find_single_tile():
    rule = square_rule()
    haystack = supertile(rule, 0, 2)
    probe = Patch([PlacedTile(0, IDENTITY, 0j)], rule)
    assert len(find_occurrences(haystack, probe, 0.1)) == 16
    # the square matches itself under four rotations
    assert len(find_occurrences(haystack, probe, math.pi)) == 64


def test_find_domino():
    rule = square_rule()
    haystack = supertile(rule, 0, 2)
    probe = Patch([PlacedTile(0, IDENTITY, 0j), PlacedTile(0, IDENTITY, 1)], rule)
    found = find_occurrences(haystack, probe, 0.1)
    assert len(found) == 12
    assert all(abs(isometry.angle) < 1e-9 for isometry in found)


def test_find_in_pinwheel():
    rule = build_family("pinwheel")
    haystack = supertile(rule, 0, 3)
    first = supertile(rule, 0, 1)
    found = find_occurrences(haystack, first, math.pi, allow_reflection=True)
    # level 3 is made of 25 level 1 supertiles
    assert len(found) >= 25


def test_find_empty_probe():
    rule = square_rule()
    with pytest.raises(ValueError):
        find_occurrences(supertile(rule, 0, 1), Patch([], rule), 0.1)


def test_patch_distance():
    rule = square_rule()
    patch = supertile(rule, 0, 3).transformed(IDENTITY, -4 - 4j)
    assert patch_distance(patch, patch) == 0.0
    assert patch_distance(patch, patch[: len(patch) // 2]) > 0.0


def test_patch_distance_needs_center():
    rule = square_rule()
    patch = supertile(rule, 0, 2)
    away = patch.transformed(IDENTITY, 10 + 10j)
    with pytest.raises(NotCentered):
        patch_distance(away, away)
