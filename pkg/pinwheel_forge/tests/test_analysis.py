import collections
import math

import numpy
import pytest

from ..analysis import (
    OrientationStats,
    UpfEstimate,
    detect_pinwheel_like,
    empirical_frequencies,
    orientation_census,
    orientation_classes,
    orientation_stats,
    star_discrepancy,
    tile_frequencies,
    upf_probe,
    weyl_sums,
)
from ..angle import IDENTITY, IrrationalPiCertified
from ..error import NoProvenance, NotPrimitive, ProbeTooLarge
from ..families import build_family
from ..sentinel import NOT_FOUND
from ..tiling import Patch, PlacedTile, make_rule, supertile


def test_census_matches_supertile():
    rule = build_family("pinwheel")
    census = orientation_census(rule, 0, 3)
    patch = supertile(rule, 0, 3)
    counted = collections.Counter((t.prototile, t.orientation) for t in patch)
    assert len(census) == 125
    assert census.counts == dict(counted)


def test_census_of_level_zero():
    rule = build_family("pythia:3,1")
    census = orientation_census(rule, 2, 0)
    assert census.counts == {(2, IDENTITY): 1}


def test_detect_pythia():
    verdict = detect_pinwheel_like(build_family("pythia:3,1"), 4)
    assert verdict
    assert verdict.depth <= 2
    assert isinstance(verdict.classification, IrrationalPiCertified)
    w = verdict.witness
    assert w.orientations[0].reflect == w.orientations[1].reflect
    assert w.delta.coeff("psi") != 0


def test_detect_pinwheel():
    rule = build_family("pinwheel")
    verdict = detect_pinwheel_like(rule, 4)
    assert verdict
    w = verdict.witness
    assert w.tiles is not None
    patch = supertile(rule, w.root, w.depth)
    first, second = (patch.tiles[k] for k in w.tiles)
    assert first.orientation == w.orientations[0]
    assert second.orientation == w.orientations[1]


def test_detect_pythagoras_not_found():
    verdict = detect_pinwheel_like(build_family("pythagoras:3,1"), 10)
    assert not verdict
    assert verdict.depth == 10
    assert all(delta.is_rational_pi for delta in verdict.classes)


def test_detect_needs_depth():
    with pytest.raises(ValueError):
        detect_pinwheel_like(build_family("pinwheel"), 0)


COPRIME = [(3, 1), (3, 2), (4, 1), (4, 3), (5, 2), (5, 3)]


@pytest.mark.parametrize("m,j", COPRIME)
def test_detect_over_parameters(m, j):
    pythia = detect_pinwheel_like(build_family("pythia:%d,%d" % (m, j)), 4)
    assert pythia
    assert isinstance(pythia.classification, IrrationalPiCertified)
    pythagoras = detect_pinwheel_like(build_family("pythagoras:%d,%d" % (m, j)), 6)
    assert not pythagoras


def test_orientation_classes():
    classes = orientation_classes(build_family("pythagoras:3,1"), 3)
    assert sorted(classes) == [1, 2, 3]
    assert all(d.is_rational_pi for level in classes.values() for d in level)


def test_star_discrepancy():
    n = 10
    angles = 2 * math.pi * numpy.arange(n) / n
    assert star_discrepancy(angles) == pytest.approx(1 / n)
    assert star_discrepancy([0.0]) == pytest.approx(1.0)
    assert star_discrepancy([]) == 0.0
    assert star_discrepancy([1.0, 1.0, 2.0]) == pytest.approx(
        star_discrepancy([1.0, 2.0], [2, 1])
    )


def test_weyl_sums():
    angles = 2 * math.pi * numpy.arange(6) / 6
    sums = weyl_sums(angles, 6)
    assert sums[:5] == pytest.approx([0.0] * 5, abs=1e-12)
    assert sums[5] == pytest.approx(1.0)
    assert weyl_sums([], 2) == [0.0, 0.0]


def test_stats_from_patch_and_census_agree():
    rule = build_family("pinwheel")
    from_patch = orientation_stats(supertile(rule, 0, 4), t_max=3)
    from_census = orientation_stats(orientation_census(rule, 0, 4), t_max=3)
    assert from_patch.n == from_census.n == 625
    assert from_patch.level == from_census.level == 4
    assert from_patch.star_discrepancy == pytest.approx(from_census.star_discrepancy)
    assert from_patch.weyl == pytest.approx(from_census.weyl)
    assert from_patch.histogram.sum() == 625
    direct = from_patch.chirality["direct"]
    reflected = from_patch.chirality["reflected"]
    assert direct.n + reflected.n == 625


def test_pinwheel_angles_spread_out():
    rule = build_family("pinwheel")
    early = orientation_stats(orientation_census(rule, 0, 2))
    late = orientation_stats(orientation_census(rule, 0, 8))
    assert late.n == 5 ** 8
    assert late.star_discrepancy < early.star_discrepancy


def test_pythia_angles_spread_out():
    rule = build_family("pythia:3,1")
    stats = [
        orientation_stats(orientation_census(rule, 0, level)) for level in (6, 8, 10)
    ]
    discrepancies = [s.star_discrepancy for s in stats]
    assert discrepancies[0] > discrepancies[1] > discrepancies[2]
    assert discrepancies[0] == pytest.approx(0.0987, abs=5e-3)
    assert stats[2].weyl[0] < 0.1


def test_pinwheel_first_weyl_sum_vanishes():
    rule = build_family("pinwheel")
    stats = orientation_stats(orientation_census(rule, 0, 8))
    assert stats.weyl[0] < 0.05
    # slowly mixing higher frequencies keep the discrepancy near 0.09
    assert stats.star_discrepancy < 0.1


def test_stats_row():
    stats = OrientationStats(4, None, None, 0.25, [0.5, 0.125], {}, level=2)
    assert stats.row() == [2, 4, 0.25, 0.5, 0.125]


def test_stats_need_provenance():
    rule = build_family("pinwheel")
    with pytest.raises(NoProvenance):
        orientation_stats(Patch(supertile(rule, 0, 1).tiles, rule))


@pytest.mark.parametrize("name", ["pythagoras:3,1", "pythia:4,1", "tipi:5,2"])
def test_frequencies(name):
    rule = build_family(name)
    f = tile_frequencies(rule)
    assert f.sum() == pytest.approx(1.0)
    assert (f > 0).all()
    empirical = empirical_frequencies(rule, 0, 40)
    assert numpy.abs(empirical - f).max() < 0.02


@pytest.mark.parametrize("name,level", [("pythia:3,1", 4), ("tipi:3,1", 8)])
def test_frequencies_of_generated_patch(name, level):
    rule = build_family(name)
    patch = supertile(rule, 0, level)
    counts = numpy.array(patch.type_counts(), dtype=float)
    assert numpy.abs(counts / len(patch) - tile_frequencies(rule)).max() < 0.01


def two_squares():
    """Two unit squares that both split into four of the first."""
    square = [0, 1, 1 + 1j, 1j]
    return make_rule(
        [square, square],
        [[(0, IDENTITY, t) for t in (0, 1, 1j, 1 + 1j)]] * 2,
        2,
    )


def test_frequencies_need_primitive_matrix():
    rule = two_squares()
    with pytest.raises(NotPrimitive):
        tile_frequencies(rule)


def test_upf_probe():
    rule = build_family("pinwheel")
    probe = Patch([PlacedTile(0, IDENTITY.with_registry(rule.registry), 0j)], rule)
    estimate = upf_probe(rule, probe, math.pi, 4, grid=8)
    assert isinstance(estimate, UpfEstimate)
    assert estimate.occurrences > 0
    assert estimate.centers > 0
    assert 0 < estimate.radius < 25


def test_upf_probe_too_large():
    rule = build_family("pinwheel")
    with pytest.raises(ProbeTooLarge):
        upf_probe(rule, supertile(rule, 0, 3), math.pi, 3)


def test_upf_not_found():
    rule = two_squares()
    probe = Patch([PlacedTile(1, IDENTITY, 0j)], rule)
    assert upf_probe(rule, probe, math.pi, 3) is NOT_FOUND


def pythia_single_tile():
    rule = build_family("pythia:3,1")
    tile = PlacedTile(0, IDENTITY.with_registry(rule.registry), 0j)
    return rule, Patch([tile], rule)


def test_upf_radius_of_pythia():
    rule, pattern = pythia_single_tile()
    estimate = upf_probe(rule, pattern, math.pi / 4, 6)
    assert isinstance(estimate, UpfEstimate)
    assert estimate.centers == 32
    assert 0 < estimate.radius <= 6.1


def test_upf_radius_never_grows_with_eps():
    rule, pattern = pythia_single_tile()
    radii = []
    for eps in (math.pi / 8, math.pi / 4, math.pi / 2, math.pi):
        estimate = upf_probe(rule, pattern, eps, 5, grid=12)
        radii.append(math.inf if estimate is NOT_FOUND else estimate.radius)
    assert radii == sorted(radii, reverse=True)
    assert radii[-1] < math.inf


def test_upf_needs_enough_centers():
    rule, pattern = pythia_single_tile()
    assert upf_probe(rule, pattern, math.pi, 4, grid=4, min_centers=100) is NOT_FOUND
