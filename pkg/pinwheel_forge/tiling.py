"""Prototiles, substitution rules and patches.

A placed tile is a prototile index, an exact :class:`Orientation` and a
float translation; its points are ``orientation(prototile) +
translation``. Applying a rule replaces every tile ``(i, o, t)`` by the
children ``(j, o * o_c, o(t_c) + lambda t)`` of prototile ``i`` in
declaration order, so patches stay at inflated scale and their tile
order exhausts supertiles.
"""
import cmath
import concurrent.futures
import dataclasses
import logging
import math
from collections import namedtuple

import numpy

from . import geometry
from .algebraic import AlgReal
from .angle import EMPTY_REGISTRY, IDENTITY
from .error import (
    BadIndex,
    FactorNotGreaterThanOne,
    MemoryCap,
    NotCentered,
    PrototileMismatch,
)
from .matrix import substitution_matrix
from .settings import DEFAULT_SETTINGS

logger = logging.getLogger(__name__)

Child = namedtuple("Child", ["prototile", "orientation", "translation"])
Provenance = namedtuple("Provenance", ["root", "level"])
Isometry = namedtuple("Isometry", ["angle", "reflect", "translation"])
"""``z -> e^{i angle} z + translation`` (with ``conj(z)`` if reflected)."""


@dataclasses.dataclass(frozen=True)
class Prototile:
    """A polygon given by complex vertices, stored counterclockwise."""

    index: int
    vertices: tuple

    def __post_init__(self):
        vertices = tuple(complex(v) for v in self.vertices)
        if len(vertices) < 3:
            raise ValueError("A prototile needs at least three vertices")
        if geometry.signed_area(vertices) < 0:
            vertices = vertices[:1] + vertices[:0:-1]
        object.__setattr__(self, "vertices", vertices)

    @property
    def area(self):
        return geometry.area(self.vertices)

    @property
    def points(self):
        return numpy.array(self.vertices, dtype=complex)


class PlacedTile(
    namedtuple("PlacedTile", ["prototile", "orientation", "translation"])
):
    __slots__ = ()

    def vertices(self, rule):
        """Realized vertices as a complex array."""
        points = rule.prototiles[self.prototile].points
        return self.orientation.apply(points, rule.registry) + self.translation


class SubstitutionRule:
    """Prototiles with the placements of their children.

    Build rules with :func:`make_rule`. ``metadata`` holds free-form
    construction details (conventions chosen by a family builder);
    ``settings`` supplies the default tolerances and caps of operations
    on the rule.
    """

    def __init__(
        self, prototiles, children, factor, registry, name, metadata, settings
    ):
        self.prototiles = prototiles
        self.children = children
        self.factor = factor
        self.registry = registry
        self.name = name
        self.metadata = metadata
        self.settings = settings
        self.factor_value = float(factor)
        self.verify_report = None

    def __repr__(self):
        return "<SubstitutionRule %s: %d prototiles, factor %.10g>" % (
            self.name,
            len(self.prototiles),
            self.factor_value,
        )

    @property
    def size(self):
        return len(self.prototiles)

    def matrix(self):
        return substitution_matrix(self)


def make_rule(
    prototiles,
    children,
    factor,
    registry=None,
    name="rule",
    metadata=None,
    settings=None,
):
    """Assemble a :class:`SubstitutionRule` without checking geometry.

    :param prototiles: :class:`Prototile` objects or vertex sequences.
    :param children: per prototile, a list of ``(index, orientation,
      translation)``.
    :param factor: an :class:`AlgReal` or rational larger than one.
    :param settings: a :class:`Settings`, by default the built-in one.
    :raises BadIndex: on a child index out of range or a children list
      per prototile missing.
    :raises FactorNotGreaterThanOne: if the factor is at most one.
    """
    registry = EMPTY_REGISTRY if registry is None else registry
    tiles = []
    for i, prototile in enumerate(prototiles):
        if isinstance(prototile, Prototile):
            prototile = prototile.vertices
        tiles.append(Prototile(i, prototile))
    if len(children) != len(tiles):
        raise BadIndex(
            "%d children lists for %d prototiles" % (len(children), len(tiles))
        )
    rule_children = []
    for i, placements in enumerate(children):
        result = []
        for j, orientation, translation in placements:
            if not 0 <= j < len(tiles):
                raise BadIndex("Prototile %d has a child of type %r" % (i, j))
            result.append(
                Child(j, orientation.with_registry(registry), complex(translation))
            )
        rule_children.append(tuple(result))
    factor = AlgReal.coerce(factor)
    if factor <= 1:
        raise FactorNotGreaterThanOne("Substitution factor %r" % factor)
    return SubstitutionRule(
        tuple(tiles),
        tuple(rule_children),
        factor,
        registry,
        name,
        dict(metadata or {}),
        DEFAULT_SETTINGS if settings is None else settings,
    )


@dataclasses.dataclass
class VerifyReport:
    """Worst defects over all prototiles; ``passed`` if all are within
    tolerance."""

    area_defect: float
    containment_defect: float
    overlap_defect: float
    passed: bool
    tol: float

    def __bool__(self):
        return self.passed


def child_vertices(rule, child):
    points = rule.prototiles[child.prototile].points
    return child.orientation.apply(points, rule.registry) + child.translation


def verify_rule(rule, tol_geo=None):
    """Check that every inflated prototile is exactly covered by its
    children.

    Compares total child area with ``lambda^2 area`` (relative), measures
    how far child vertices stick out of the inflated prototile and how
    deep children overlap. Containment and overlap tolerances scale with
    the size of the inflated prototile.
    """
    tol = rule.settings.tol_geo if tol_geo is None else tol_geo
    factor = rule.factor_value
    area_defect = containment_defect = overlap_defect = 0.0
    passed = True
    for prototile, children in zip(rule.prototiles, rule.children):
        big = prototile.points * factor
        target = factor ** 2 * prototile.area
        polygons = [child_vertices(rule, child) for child in children]
        covered = sum(geometry.area(p) for p in polygons)
        area = abs(covered - target) / target
        containment = 0.0
        for polygon in polygons:
            for p in polygon:
                containment = max(containment, geometry.distance_outside(p, big))
        circles = [geometry.bounding_circle(p) for p in polygons]
        overlap = 0.0
        for a in range(len(polygons)):
            for b in range(a + 1, len(polygons)):
                (ca, ra), (cb, rb) = circles[a], circles[b]
                if abs(ca - cb) >= ra + rb:
                    continue
                overlap = max(
                    overlap, geometry.overlap_depth(polygons[a], polygons[b], tol)
                )
        scale = max(1.0, geometry.diameter(big))
        ok = area <= tol and containment <= tol * scale and overlap <= tol * scale
        passed = passed and ok
        area_defect = max(area_defect, area)
        containment_defect = max(containment_defect, containment)
        overlap_defect = max(overlap_defect, overlap)
        if not ok:
            logger.debug(
                "%s prototile %d: area %.3g containment %.3g overlap %.3g",
                rule.name,
                prototile.index,
                area,
                containment,
                overlap,
            )
    report = VerifyReport(
        area_defect, containment_defect, overlap_defect, passed, tol
    )
    logger.debug("Verified %s: %r", rule.name, report)
    return report


class Patch:
    """An ordered list of placed tiles of one rule.

    ``provenance`` is set when the patch was generated as a supertile.
    """

    def __init__(self, tiles, rule=None, provenance=None):
        self.tiles = list(tiles)
        self.rule = rule
        self.provenance = provenance
        self._vertices = None

    def __len__(self):
        return len(self.tiles)

    def __iter__(self):
        return iter(self.tiles)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return Patch(self.tiles[index], self.rule)
        return self.tiles[index]

    def __eq__(self, other):
        if not isinstance(other, Patch):
            return NotImplemented
        return self.tiles == other.tiles

    def __repr__(self):
        return "<Patch of %d tiles %r>" % (len(self.tiles), self.provenance)

    def type_counts(self):
        counts = [0] * self.rule.size
        for tile in self.tiles:
            counts[tile.prototile] += 1
        return counts

    def vertices(self):
        """Realized vertices of every tile, in order."""
        if self._vertices is None:
            self._vertices = [tile.vertices(self.rule) for tile in self.tiles]
        return self._vertices

    def total_area(self):
        return sum(self.rule.prototiles[t.prototile].area for t in self.tiles)

    def transformed(self, orientation, translation):
        """Image under ``z -> orientation(z) + translation``."""
        registry = self.rule.registry if self.rule is not None else None
        orientation = orientation.with_registry(registry)
        return Patch(
            [
                PlacedTile(
                    t.prototile,
                    orientation.compose(t.orientation),
                    orientation.apply(t.translation, registry) + translation,
                )
                for t in self.tiles
            ],
            self.rule,
        )

    def contains_point(self, point, tol=1e-9):
        return any(
            geometry.distance_outside(point, polygon) <= tol
            for polygon in self.vertices()
        )


def _apply_chunk(rule, tiles):
    factor = rule.factor_value
    registry = rule.registry
    result = []
    for tile in tiles:
        i, o, t = tile
        if not 0 <= i < rule.size:
            raise PrototileMismatch("Tile of unknown prototile %r" % (i,))
        u = o.rotation(registry)
        scaled = factor * t
        for j, oc, tc in rule.children[i]:
            if o.reflect:
                tc = tc.conjugate()
            result.append(PlacedTile(j, o.compose(oc), u * tc + scaled))
    return result


def apply(rule, patch, threads=1):
    """Substitute every tile of ``patch`` once.

    With ``threads > 1`` contiguous chunks are substituted in a thread
    pool and concatenated in order, so the result does not depend on the
    thread count.

    :raises PrototileMismatch: if a tile references an unknown prototile.
    """
    tiles = patch.tiles
    if threads > 1 and len(tiles) >= 2 * threads:
        size = math.ceil(len(tiles) / threads)
        chunks = [tiles[i : i + size] for i in range(0, len(tiles), size)]
        with concurrent.futures.ThreadPoolExecutor(threads) as executor:
            parts = executor.map(lambda chunk: _apply_chunk(rule, chunk), chunks)
            result = [tile for part in parts for tile in part]
    else:
        result = _apply_chunk(rule, tiles)
    provenance = None
    if patch.provenance is not None:
        provenance = Provenance(patch.provenance.root, patch.provenance.level + 1)
    return Patch(result, rule, provenance)


def projected_count(rule, root, n):
    """Exact number of tiles in the level ``n`` supertile of ``root``."""
    return sum(substitution_matrix(rule).power(n).column(root))


def supertile(rule, root, n, tile_cap=None, threads=None):
    """The level ``n`` supertile of prototile ``root``, at scale
    ``lambda^n``.

    ``tile_cap`` and ``threads`` default to the rule's settings.

    :raises MemoryCap: if it would have more than ``tile_cap`` tiles.
    """
    if not 0 <= root < rule.size:
        raise BadIndex("No prototile %r" % (root,))
    if n < 0:
        raise ValueError("Level must be nonnegative")
    tile_cap = rule.settings.tile_cap if tile_cap is None else tile_cap
    threads = rule.settings.threads if threads is None else threads
    count = projected_count(rule, root, n)
    if count > tile_cap:
        raise MemoryCap(
            "Level %d supertile of %s has %d tiles, cap is %d"
            % (n, rule.name, count, tile_cap)
        )
    patch = Patch(
        [PlacedTile(root, IDENTITY.with_registry(rule.registry), 0j)],
        rule,
        Provenance(root, 0),
    )
    for _ in range(n):
        patch = apply(rule, patch, threads)
    logger.debug(
        "Supertile %s root %d level %d: %d tiles", rule.name, root, n, len(patch)
    )
    return patch


def recover_orientation(rule, tile_index, vertices):
    """Read ``(reflect, angle)`` back from realized vertices."""
    prototile = rule.prototiles[tile_index].points
    vertices = numpy.asarray(vertices, dtype=complex)
    reflect = geometry.signed_area(vertices) < 0
    source = prototile.conjugate() if reflect else prototile
    rotation = (vertices[1] - vertices[0]) / (source[1] - source[0])
    return reflect, cmath.phase(rotation) % (2 * math.pi)


class SpatialIndex:
    """Grid hash of polygon centroids."""

    def __init__(self, polygons, cell=None):
        self.polygons = polygons
        self.centroids = [p.mean() for p in polygons]
        if cell is None:
            radii = [
                numpy.abs(p - c).max() for p, c in zip(polygons, self.centroids)
            ]
            cell = 2 * float(max(radii, default=0.5))
        self.cell = cell or 1.0
        self.cells = {}
        for index, c in enumerate(self.centroids):
            self.cells.setdefault(self._key(c), []).append(index)

    def _key(self, z):
        return (math.floor(z.real / self.cell), math.floor(z.imag / self.cell))

    def near(self, point, radius=0.0):
        """Indices of polygons whose centroid may lie within ``radius`` of
        ``point``."""
        reach = int(math.ceil(radius / self.cell)) + 1
        kx, ky = self._key(point)
        result = []
        for dx in range(-reach, reach + 1):
            for dy in range(-reach, reach + 1):
                result.extend(self.cells.get((kx + dx, ky + dy), ()))
        return result

    def find(self, tiles, prototile, polygon, tol):
        """Whether a tile of type ``prototile`` has the vertices
        ``polygon``."""
        for k in self.near(polygon.mean(), tol):
            if tiles[k].prototile == prototile and _vertex_sets_match(
                polygon, self.polygons[k], tol
            ):
                return True
        return False


def _vertex_sets_match(a, b, tol):
    if len(a) != len(b):
        return False
    distances = numpy.abs(a[:, None] - b[None, :])
    return bool(
        distances.min(axis=1).max() <= tol and distances.min(axis=0).max() <= tol
    )


def _candidate_isometries(source, target, tol):
    """Isometries ``(reflect, u, c)`` mapping vertices ``source`` onto
    ``target`` as sets."""
    n = len(source)
    result = []
    for reflect in (False, True):
        s = source.conjugate() if reflect else source
        d = s[1] - s[0]
        if d == 0:
            continue
        for shift in range(n):
            for step in (1, -1):
                t = numpy.array([target[(shift + step * i) % n] for i in range(n)])
                u = (t[1] - t[0]) / d
                if abs(abs(u) - 1) > tol:
                    continue
                u /= abs(u)
                c = t[0] - u * s[0]
                if numpy.abs(u * s + c - t).max() <= tol:
                    result.append((reflect, u, c))
    return result


def _map_points(isometry, points):
    reflect, u, c = isometry
    if reflect:
        points = points.conjugate()
    return u * points + c


def _wrapped(angle):
    return (angle + math.pi) % (2 * math.pi) - math.pi


def find_occurrences(
    haystack, probe, eps_rot, eps_trans=1e-6, allow_reflection=False, index=None
):
    """Find copies of ``probe`` in ``haystack``.

    The first probe tile is aligned with every haystack tile of the same
    type, trying all vertex correspondences, so symmetric prototiles give
    several candidates. A candidate is kept if its rotation is within
    ``eps_rot`` of the identity (any rotation when ``eps_rot >= pi``),
    it is direct unless ``allow_reflection`` is set, and every other
    probe tile then lands on a haystack tile of the same type, vertices
    matched as sets within ``eps_trans``.

    :return: list of :class:`Isometry`, in haystack order.
    """
    if not len(probe):
        raise ValueError("Empty probe")
    polygons = haystack.vertices()
    index = index or SpatialIndex(polygons)
    anchor = probe.tiles[0]
    probe_polygons = probe.vertices()
    result = []
    seen = set()
    for k, tile in enumerate(haystack.tiles):
        if tile.prototile != anchor.prototile:
            continue
        for isometry in _candidate_isometries(
            probe_polygons[0], polygons[k], eps_trans
        ):
            reflect, u, c = isometry
            if reflect and not allow_reflection:
                continue
            angle = _wrapped(cmath.phase(u))
            if eps_rot < math.pi and abs(angle) > eps_rot:
                continue
            key = (reflect, round(angle, 9), round(c.real, 6), round(c.imag, 6))
            if key in seen:
                continue
            if all(
                index.find(
                    haystack.tiles,
                    t.prototile,
                    _map_points(isometry, p),
                    eps_trans,
                )
                for t, p in zip(probe.tiles, probe_polygons)
            ):
                seen.add(key)
                result.append(Isometry(angle, reflect, c))
    return result


def default_search_grid():
    return numpy.geomspace(1e-6, 1 / math.sqrt(2), 96)


def _centered_tile(patch, tol):
    for k, polygon in enumerate(patch.vertices()):
        if geometry.distance_outside(0j, polygon) <= tol:
            return k
    raise NotCentered("%r does not contain the origin" % patch)


def patch_distance(p1, p2, search_grid=None, tol=1e-7):
    """Upper bound on the tiling distance of two centered patches.

    Candidate isometries ``g`` come from aligning the tile of ``p2``
    covering the origin with tiles of ``p1`` near the origin. The result
    is the smallest grid value ``eps`` for which some direct ``g`` with
    rotation and translation at most ``eps`` makes ``g(p2)`` cover every
    tile of ``p1`` meeting the ball of radius ``1/eps``; it is 0 when a
    trivial ``g`` matches all of ``p1`` and ``1/sqrt(2)`` when nothing
    matches.

    :raises NotCentered: if a patch does not contain the origin.
    """
    cap = 1 / math.sqrt(2)
    grid = sorted(default_search_grid() if search_grid is None else search_grid)
    _centered_tile(p1, tol)
    anchor = _centered_tile(p2, tol)
    anchor_type = p2.tiles[anchor].prototile
    anchor_vertices = p2.vertices()[anchor]
    polygons1 = p1.vertices()
    index1 = SpatialIndex(polygons1)
    radius = 2 * geometry.bounding_circle(anchor_vertices)[1] + cap
    candidates = []
    for k in index1.near(0j, radius):
        if p1.tiles[k].prototile != anchor_type:
            continue
        for isometry in _candidate_isometries(anchor_vertices, polygons1[k], tol):
            reflect, u, c = isometry
            size = max(abs(_wrapped(cmath.phase(u))), abs(c))
            if not reflect and size <= cap:
                candidates.append((size, isometry))
    candidates.sort(key=lambda item: item[0])
    reach = numpy.array([numpy.abs(p).min() for p in polygons1])
    images = {}

    def covers(position, radius):
        if position not in images:
            isometry = candidates[position][1]
            images[position] = SpatialIndex(
                [_map_points(isometry, p) for p in p2.vertices()]
            )
        image = images[position]
        return all(
            image.find(p2.tiles, tile.prototile, polygon, tol)
            for tile, polygon, distance in zip(p1.tiles, polygons1, reach)
            if distance <= radius
        )

    for position, (size, _) in enumerate(candidates):
        if size <= 1e-12 and covers(position, numpy.inf):
            return 0.0
    for eps in grid:
        if eps > cap:
            break
        for position, (size, _) in enumerate(candidates):
            if size > eps:
                break
            if covers(position, 1 / eps):
                return float(eps)
    return cap
