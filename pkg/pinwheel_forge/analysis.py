"""Pinwheel-likeness, orientation statistics, frequencies and probes.

Large supertiles are summarized by an :class:`OrientationCensus` that
counts tiles per ``(type, orientation)`` without placing them; the
statistics only depend on that multiset.
"""
import cmath
import collections
import dataclasses
import logging
import math

import numpy

from . import geometry
from .angle import (
    IDENTITY,
    IrrationalPiCertified,
    UnknownNumeric,
    classify_pi_rationality,
)
from .error import NoProvenance, ProbeTooLarge
from .perron import perron_data
from .sentinel import NOT_FOUND
from .tiling import (
    Patch,
    find_occurrences,
    projected_count,
    supertile,
)

logger = logging.getLogger(__name__)

TWO_PI = 2 * math.pi


class OrientationCensus:
    """Tile counts of a supertile keyed by ``(type, orientation)``."""

    def __init__(self, rule, root, level, counts):
        self.rule = rule
        self.root = root
        self.level = level
        self.counts = counts

    def __len__(self):
        return sum(self.counts.values())

    def __repr__(self):
        return "<OrientationCensus %s root %d level %d: %d classes>" % (
            self.rule.name,
            self.root,
            self.level,
            len(self.counts),
        )

    def samples(self):
        """Angles, reflection flags and weights as numpy arrays."""
        registry = self.rule.registry
        keys = list(self.counts)
        angles = numpy.array([o.angle.radians(registry) for _, o in keys])
        reflects = numpy.array([o.reflect for _, o in keys], dtype=bool)
        weights = numpy.array([self.counts[key] for key in keys], dtype=float)
        return angles, reflects, weights

    def groups(self):
        """Orientations per ``(type, reflect)``, in first seen order."""
        result = {}
        for k, o in self.counts:
            result.setdefault((k, o.reflect), []).append(o)
        return result


def orientation_census(rule, root, level):
    """Count the tiles of the level ``level`` supertile of ``root`` per
    ``(type, orientation)``."""
    current = {(root, IDENTITY.with_registry(rule.registry)): 1}
    for _ in range(level):
        following = collections.defaultdict(int)
        for (k, o), count in current.items():
            for child in rule.children[k]:
                following[(child.prototile, o.compose(child.orientation))] += count
        current = dict(following)
    return OrientationCensus(rule, root, level, current)


Witness = collections.namedtuple(
    "Witness", ["depth", "root", "prototile", "orientations", "delta", "tiles"]
)
"""Two same type, same chirality tiles of a supertile.

``delta`` is the angle between them and ``tiles`` their indices in the
supertile, or ``None`` if the supertile was too large to place.
"""


@dataclasses.dataclass
class PinwheelVerdict:
    """Outcome of :func:`detect_pinwheel_like`.

    ``classes`` holds every relative angle seen between tiles of equal
    type and chirality when no witness was found.
    """

    found: bool
    depth: int
    witness: Witness = None
    classification: object = None
    classes: frozenset = frozenset()

    def __bool__(self):
        return self.found


def _deltas(census):
    """Relative angles against the first tile of each type and chirality.

    All pairwise angle differences are rational multiples of pi iff these
    are.
    """
    for (k, reflect), orientations in census.groups().items():
        reference = orientations[0]
        for o in orientations[1:]:
            yield k, reference, o, o.angle - reference.angle


def orientation_classes(rule, depth):
    """Relative angles between same type, same chirality tiles per level.

    :return: dict mapping each level ``1..depth`` to a frozenset of
      :class:`pinwheel_forge.angle.Angle`.
    """
    result = {}
    for n in range(1, depth + 1):
        seen = set()
        for root in range(rule.size):
            census = orientation_census(rule, root, n)
            seen.update(delta for *_, delta in _deltas(census))
        result[n] = frozenset(seen)
    return result


def _locate(rule, root, depth, prototile, pair, tile_cap):
    if projected_count(rule, root, depth) > tile_cap:
        return None
    patch = supertile(rule, root, depth, tile_cap)
    found = []
    for wanted in pair:
        for index, tile in enumerate(patch.tiles):
            if (
                tile.prototile == prototile
                and tile.orientation == wanted
                and index not in found
            ):
                found.append(index)
                break
    return tuple(found)


def detect_pinwheel_like(
    rule, max_depth, accept_numeric=False, max_denominator=None, tile_cap=None
):
    """Search supertiles for two tiles of equal type and chirality whose
    relative angle is not a rational multiple of pi.

    Certified answers need a generator with an irrationality certificate.
    With ``accept_numeric`` a relative angle whose continued fraction has
    no good approximation with a denominator up to ``max_denominator`` is
    accepted as well.
    """
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    settings = rule.settings
    tile_cap = settings.tile_cap if tile_cap is None else tile_cap
    if max_denominator is None:
        max_denominator = settings.cf_denominator
    registry = rule.registry
    classes = set()
    checked = {}
    for depth in range(1, max_depth + 1):
        for root in range(rule.size):
            census = orientation_census(rule, root, depth)
            for k, first, second, delta in _deltas(census):
                classes.add(delta)
                if delta not in checked:
                    checked[delta] = classify_pi_rationality(
                        delta, registry, max_denominator
                    )
                classification = checked[delta]
                certified = isinstance(classification, IrrationalPiCertified)
                numeric = (
                    accept_numeric
                    and isinstance(classification, UnknownNumeric)
                    and classification.report.match is None
                )
                if certified or numeric:
                    pair = (first, second)
                    tiles = _locate(rule, root, depth, k, pair, tile_cap)
                    witness = Witness(depth, root, k, pair, delta, tiles)
                    logger.debug("%s is pinwheel-like: %r", rule.name, witness)
                    return PinwheelVerdict(True, depth, witness, classification)
    return PinwheelVerdict(False, max_depth, classes=frozenset(classes))


def star_discrepancy(angles, weights=None):
    """Star discrepancy of angles in ``[0, 2 pi)`` scaled to ``[0, 1)``.

    Equal angles are merged and ``weights`` count multiplicities; for
    unit weights this is the sorted sample formula ``max_i max(i/n -
    x_i, x_i - (i-1)/n)``.
    """
    x = numpy.mod(numpy.asarray(angles, dtype=float), TWO_PI) / TWO_PI
    if weights is None:
        weights = numpy.ones_like(x)
    weights = numpy.asarray(weights, dtype=float)
    if not len(x):
        return 0.0
    values, inverse = numpy.unique(x, return_inverse=True)
    mass = numpy.bincount(inverse, weights=weights) / weights.sum()
    above = numpy.cumsum(mass)
    below = above - mass
    return float(max(numpy.max(above - values), numpy.max(values - below)))


def weyl_sums(angles, t_max, weights=None):
    """``|sum w e^{i t alpha}| / sum w`` for ``t = 1..t_max``."""
    angles = numpy.asarray(angles, dtype=float)
    if weights is None:
        weights = numpy.ones_like(angles)
    weights = numpy.asarray(weights, dtype=float)
    total = weights.sum()
    if not total:
        return [0.0] * t_max
    return [
        float(abs(numpy.sum(weights * numpy.exp(1j * t * angles))) / total)
        for t in range(1, t_max + 1)
    ]


ChiralityStats = collections.namedtuple(
    "ChiralityStats", ["n", "star_discrepancy", "weyl"]
)


@dataclasses.dataclass
class OrientationStats:
    """Distribution of the tile angles of a supertile.

    ``weyl[t - 1]`` is the normalized Weyl sum for frequency ``t``;
    ``chirality`` maps ``"direct"`` and ``"reflected"`` to
    :class:`ChiralityStats`.
    """

    n: int
    histogram: numpy.ndarray
    bin_edges: numpy.ndarray
    star_discrepancy: float
    weyl: list
    chirality: dict
    level: int = None

    def row(self):
        """CSV row: level, n, D*, W_1, ..., W_tmax."""
        return [self.level, self.n, self.star_discrepancy] + list(self.weyl)


def _patch_samples(patch):
    registry = patch.rule.registry
    angles = numpy.array([t.orientation.angle.radians(registry) for t in patch])
    reflects = numpy.array([t.orientation.reflect for t in patch], dtype=bool)
    return angles, reflects, numpy.ones(len(angles))


def orientation_stats(source, t_max=5, bins=360):
    """Histogram, star discrepancy and Weyl sums of tile angles.

    ``source`` is a supertile :class:`pinwheel_forge.tiling.Patch` or an
    :class:`OrientationCensus`.

    :raises NoProvenance: for a patch that was not made as a supertile.
    """
    if isinstance(source, Patch):
        if source.provenance is None:
            raise NoProvenance("Orientation statistics need a supertile")
        angles, reflects, weights = _patch_samples(source)
        level = source.provenance.level
    else:
        angles, reflects, weights = source.samples()
        level = source.level
    histogram, edges = numpy.histogram(
        angles, bins=bins, range=(0, TWO_PI), weights=weights
    )
    chirality = {}
    for name, mask in (("direct", ~reflects), ("reflected", reflects)):
        chirality[name] = ChiralityStats(
            int(weights[mask].sum()),
            star_discrepancy(angles[mask], weights[mask]),
            weyl_sums(angles[mask], t_max, weights[mask]),
        )
    return OrientationStats(
        int(weights.sum()),
        histogram,
        edges,
        star_discrepancy(angles, weights),
        weyl_sums(angles, t_max, weights),
        chirality,
        level,
    )


def tile_frequencies(rule):
    """Relative frequencies of the prototiles: the right Perron vector.

    :raises NotPrimitive: if the substitution matrix is not primitive.
    """
    return perron_data(
        rule.matrix(), max_iterations=rule.settings.power_iteration_cap
    ).right


def empirical_frequencies(rule, root, level):
    """Type frequencies of the level ``level`` supertile of ``root``."""
    column = numpy.array(rule.matrix().power(level).column(root), dtype=float)
    return column / column.sum()


@dataclasses.dataclass
class UpfEstimate:
    """Radius found by :func:`upf_probe`.

    Every tested ball of radius ``radius`` holds a whole probe copy.
    ``centers`` is the number of tested ball centres, ``occurrences``
    the number of probe copies found.
    """

    radius: float
    centers: int
    occurrences: int
    grid: int


def _image(occurrence, points):
    if occurrence.reflect:
        points = points.conjugate()
    return cmath.exp(1j * occurrence.angle) * points + occurrence.translation


def _grid_centers(big, grid):
    low = numpy.min(big.real), numpy.min(big.imag)
    high = numpy.max(big.real), numpy.max(big.imag)
    xs = numpy.linspace(low[0], high[0], grid + 2)[1:-1]
    ys = numpy.linspace(low[1], high[1], grid + 2)[1:-1]
    centers = numpy.array([complex(x, y) for y in ys for x in xs])
    depths = numpy.array([geometry.depth_inside(c, big) for c in centers])
    inside = depths > 0
    return centers[inside], depths[inside]


def upf_probe(
    rule, probe, eps_rot, level, root=0, grid=16, min_centers=None, tile_cap=None
):
    """Estimate the radius within which every ball meets a copy of ``probe``.

    Copies are found in the level ``level`` supertile of ``root``, up to
    rotations by at most ``eps_rot``. Ball centres are the ``min_centers``
    deepest points of a ``grid`` by ``grid`` lattice over the supertile,
    by default an eighth of the lattice. The radius is the least one for
    which each of those balls holds a whole copy; it is found only if
    the balls then still lie inside the supertile.

    The centres do not depend on ``eps_rot`` and a larger ``eps_rot``
    only adds copies, so the radius never grows with ``eps_rot``.

    :return: :class:`UpfEstimate` or :data:`NOT_FOUND`.
    :raises ProbeTooLarge: if the probe is wider than the supertile's
      inradius.
    """
    if tile_cap is None:
        tile_cap = rule.settings.tile_cap
    if min_centers is None:
        min_centers = max(1, grid * grid // 8)
    big = rule.prototiles[root].points * rule.factor_value ** level
    inradius = geometry.inradius(big)
    probe_points = numpy.concatenate(probe.vertices())
    if geometry.diameter(probe_points) > inradius:
        raise ProbeTooLarge(
            "Probe diameter exceeds inradius %.6g of level %d" % (inradius, level)
        )
    centers, depths = _grid_centers(big, grid)
    if len(centers) < min_centers:
        logger.debug(
            "%s level %d: only %d of %d centres inside",
            rule.name,
            level,
            len(centers),
            min_centers,
        )
        return NOT_FOUND
    deepest = numpy.argsort(-depths, kind="stable")[:min_centers]
    centers, depths = centers[deepest], depths[deepest]
    haystack = supertile(rule, root, level, tile_cap)
    occurrences = find_occurrences(haystack, probe, eps_rot)
    if not occurrences:
        return NOT_FOUND
    circles = [
        geometry.bounding_circle(_image(o, probe_points)) for o in occurrences
    ]
    occurrence_centers = numpy.array([c for c, _ in circles])
    occurrence_radii = numpy.array([r for _, r in circles])
    # smallest ball around each centre holding a whole copy
    reach = (
        numpy.abs(centers[:, None] - occurrence_centers[None, :])
        + occurrence_radii[None, :]
    ).min(axis=1)
    radius = float(reach.max())
    if radius > depths.min():
        logger.debug(
            "%s level %d: radius %.6g leaves the supertile", rule.name, level, radius
        )
        return NOT_FOUND
    logger.debug(
        "%s level %d: every ball of radius %.6g meets the probe",
        rule.name,
        level,
        radius,
    )
    return UpfEstimate(radius, len(centers), len(occurrences), grid)
