"""The built-in substitution families.

Every builder is registered on :class:`pinwheel_forge.registry.Forge`
with the ``family`` directive and gated by
:func:`pinwheel_forge.tiling.verify_rule`. Prototiles are numbered from
0, so the last prototile of an ``m`` prototile family is ``m - 1``.
"""
import dataclasses
import functools
import logging
import math
from fractions import Fraction

from .algebraic import AlgReal, isolate_dominant_root
from .angle import (
    IDENTITY,
    Angle,
    GeneratorRegistry,
    Orientation,
    make_generator,
)
from .error import (
    ConventionUnresolved,
    RectangleNotFound,
    SpecViolation,
    VerifyFailed,
)
from .matrix import SubstMatrix
from .polynomial import companion, from_coefficients, poly, x
from .registry import Forge, commit
from .tiling import Patch, PlacedTile, apply, make_rule, supertile, verify_rule

logger = logging.getLogger(__name__)

PYTHAGORAS_ANGLE = "psi"
TIPI_ANGLE = "theta"
PINWHEEL_ANGLE = "gamma"


@dataclasses.dataclass(frozen=True)
class FamilySpec:
    """A family name with its integer parameters."""

    family: str
    params: tuple = ()

    def __str__(self):
        if not self.params:
            return self.family
        return "%s:%s" % (self.family, ",".join(str(p) for p in self.params))


def parse_family_spec(text, app=None):
    """Parse ``pythia:3,1`` or ``pinwheel`` into a :class:`FamilySpec`.

    :raises SpecViolation: on an unknown family or a wrong parameter count.
    """
    name, _, rest = text.partition(":")
    name = name.strip()
    try:
        params = tuple(int(p) for p in rest.split(",")) if rest.strip() else ()
    except ValueError:
        raise SpecViolation("Bad family parameters: %r" % text)
    families = committed(app).config.families
    if name not in families:
        raise SpecViolation(
            "Unknown family %r, known: %s" % (name, ", ".join(sorted(families)))
        )
    expected = families[name].params
    if len(params) != len(expected):
        raise SpecViolation(
            "Family %s takes %d parameters (%s)"
            % (name, len(expected), ", ".join(expected))
        )
    return FamilySpec(name, params)


def committed(app=None):
    """``app`` (by default :class:`Forge`), committed on first use."""
    app = Forge if app is None else app
    if not app.is_committed():
        commit(app)
    return app


def build_family(spec, tol_geo=None, app=None):
    """Build the rule a :class:`FamilySpec` (or its text form) names.

    The family and the settings the rule carries come from ``app``, by
    default :class:`Forge`.
    """
    app = committed(app)
    if isinstance(spec, str):
        spec = parse_family_spec(spec, app)
    entry = app.config.families[spec.family]
    return entry.builder(*spec.params, tol_geo=tol_geo, settings=app.config.settings)


def resolve_settings(settings, tol_geo):
    """The committed :class:`Forge` settings unless ``settings`` is given,
    with ``tol_geo`` overriding the geometric tolerance."""
    if settings is None:
        settings = committed().config.settings
    if tol_geo is not None and tol_geo != settings.tol_geo:
        settings = settings.replace(tol_geo=tol_geo)
    return settings


def gate(rule):
    """Verify ``rule`` at its settings' tolerance, attach the report,
    raise if it fails."""
    report = verify_rule(rule)
    rule.verify_report = report
    if not report:
        raise VerifyFailed(
            "%s does not pass verification: %r" % (rule.name, report), report
        )
    return rule


def check_coprime_params(m, j):
    if m < 3 or not 1 <= j < m:
        raise SpecViolation("Need m >= 3 and 1 <= j < m, got m=%d j=%d" % (m, j))
    if math.gcd(m, j) != 1:
        raise SpecViolation("Need gcd(m, j) = 1, got m=%d j=%d" % (m, j))


def pythagoras_polynomial(m, j):
    """``x^m - x^j - 1``."""
    return poly(x ** m - x ** j - 1)


def pythagoras_matrix(m, j):
    """Companion matrix of ``x^m - x^j - 1``, for any parameters."""
    return SubstMatrix(companion(pythagoras_polynomial(m, j)))


@dataclasses.dataclass(frozen=True)
class PythagorasConstants:
    """Exact and numeric constants of a Pythagoras family.

    ``eta`` is the dominant root of ``x^m - x^j - 1``, ``factor`` its
    square root, ``a = factor^-m`` and ``b = factor^(j-m)`` are the legs
    of the first prototile, whose hypotenuse has length one. ``factor``
    generates the number field ``a`` and ``b`` are expressed in.
    """

    m: int
    j: int
    eta: AlgReal
    factor: AlgReal
    a: AlgReal
    b: AlgReal

    @property
    def psi(self):
        return math.atan2(float(self.b), -float(self.a))


@functools.lru_cache(maxsize=None)
def pythagoras_constants(m, j, refine_cap=None):
    eta = isolate_dominant_root(pythagoras_polynomial(m, j), refine_cap)
    factor = eta.sqrt()
    return PythagorasConstants(m, j, eta, factor, factor ** -m, factor ** (j - m))


@Forge.family("pythagoras", params=("m", "j"))
def build_pythagoras(m, j, tol_geo=None, settings=None):
    """The Pythagoras substitution.

    Prototile ``i`` is ``lambda^i`` times the right triangle
    ``(0, 0), (-a, b), (-a, 0)``. Each prototile but the last grows into
    the next one; the last one is cut along the altitude on its
    hypotenuse into a copy of prototile 0 and a copy of prototile ``j``,
    both mirrored.
    """
    check_coprime_params(m, j)
    return _build_pythagoras(m, j, resolve_settings(settings, tol_geo))


@functools.lru_cache(maxsize=None)
def _build_pythagoras(m, j, settings):
    constants = pythagoras_constants(m, j, settings.refine_cap)
    lam = float(constants.factor)
    a, b = float(constants.a), float(constants.b)
    psi = constants.psi
    registry = GeneratorRegistry(
        [
            make_generator(
                PYTHAGORAS_ANGLE,
                psi,
                cosine=-constants.a,
                n_cap=settings.cosine_n_cap,
            )
        ]
    )
    base = [0j, complex(-a, b), complex(-a, 0)]
    prototiles = [[lam ** i * z for z in base] for i in range(m)]
    children = [[(i + 1, IDENTITY, 0j)] for i in range(m - 1)]
    psi_angle = Angle.generator(PYTHAGORAS_ANGLE)
    children.append(
        [
            (0, Orientation(True, Angle.pi(1) + psi_angle), 0j),
            (j, Orientation(True, Angle.pi(Fraction(1, 2)) + psi_angle), -1 + 0j),
        ]
    )
    rule = make_rule(
        prototiles,
        children,
        constants.factor,
        registry,
        name="pythagoras:%d,%d" % (m, j),
        metadata={"m": m, "j": j},
        settings=settings,
    )
    return gate(rule)


def find_altitude_rectangle(sigma, patch, j, scale):
    """The two type ``j`` tiles forming the rectangle on the altitude.

    They share their hypotenuse, their right angle vertices are mirror
    images through its midpoint and the hypotenuse lies on the altitude
    of the inflated prototile 0. A single rectangle elsewhere is
    accepted when none lies on the altitude.

    :raises RectangleNotFound: unless exactly one such pair is found.
    """
    constants = pythagoras_constants(
        sigma.metadata["m"], sigma.metadata["j"], sigma.settings.refine_cap
    )
    a, b = float(constants.a), float(constants.b)
    corner = scale * complex(-a, 0)
    apex = scale * complex(-a, b)
    tol = 1e-7 * scale

    def on_altitude(z):
        return abs(((z - corner) * apex.conjugate()).real) / abs(apex) <= tol

    # vertices 0 and 1 end the hypotenuse, vertex 2 is the right angle
    polygons = patch.vertices()
    candidates = [
        (k,) + tuple(polygons[k][:3])
        for k, tile in enumerate(patch.tiles)
        if tile.prototile == j
    ]
    pairs = []
    for x_ in range(len(candidates)):
        for y_ in range(x_ + 1, len(candidates)):
            k1, a0, a1, r1 = candidates[x_]
            k2, b0, b1, r2 = candidates[y_]
            same = (abs(a0 - b0) <= tol and abs(a1 - b1) <= tol) or (
                abs(a0 - b1) <= tol and abs(a1 - b0) <= tol
            )
            if same and abs(r1 + r2 - a0 - a1) <= tol:
                pairs.append((k1, k2, on_altitude(a0) and on_altitude(a1)))
    altitude = [pair[:2] for pair in pairs if pair[2]]
    if len(altitude) == 1:
        return altitude[0]
    if not altitude and len(pairs) == 1:
        return pairs[0][:2]
    raise RectangleNotFound(
        "Found %d rectangles, %d on the altitude, in %s level %d"
        % (len(pairs), len(altitude), sigma.name, patch.provenance.level)
    )


def flip_tile(tile, center, registry):
    """Mirror a rectangle tile across the rectangle axis through
    ``center`` parallel to the tile's leg from vertex 0 to vertex 2.

    The angle is kept, the chirality toggles.
    """
    o = tile.orientation
    u = o.rotation(registry)
    translation = center + u * u * (tile.translation - center).conjugate()
    flipped = Orientation(not o.reflect, o.angle, registry)
    return PlacedTile(tile.prototile, flipped, translation)


@Forge.family("pythia", params=("m", "j"))
def build_pythia(m, j, tol_geo=None, settings=None):
    """The Pythia substitution.

    Prototile 0 is inflated by ``lambda^(2m)`` and dissected as the
    level ``2m`` Pythagoras supertile, except that the rectangle made by
    two type ``j`` tiles on the altitude is cut along its other
    diagonal. Prototile ``i`` uses ``i`` more Pythagoras steps on that
    patch.
    """
    check_coprime_params(m, j)
    return _build_pythia(m, j, resolve_settings(settings, tol_geo))


@functools.lru_cache(maxsize=None)
def _build_pythia(m, j, settings):
    sigma = _build_pythagoras(m, j, settings)
    constants = pythagoras_constants(m, j, settings.refine_cap)
    level = 2 * m
    scale = sigma.factor_value ** level
    patch = supertile(sigma, 0, level)
    first, second = find_altitude_rectangle(sigma, patch, j, scale)
    polygons = patch.vertices()
    center = (polygons[first][0] + polygons[first][1]) / 2
    tiles = list(patch.tiles)
    for k in (first, second):
        tiles[k] = flip_tile(tiles[k], center, sigma.registry)
    logger.debug(
        "%s: flipped tiles %d and %d of level %d", sigma.name, first, second, level
    )
    current = Patch(tiles, sigma)
    children = []
    for _ in range(m):
        children.append([tuple(tile) for tile in current.tiles])
        current = apply(sigma, current)
    rule = make_rule(
        sigma.prototiles,
        children,
        constants.eta ** m,
        sigma.registry,
        name="pythia:%d,%d" % (m, j),
        metadata={"m": m, "j": j, "iterate": level, "rectangle": [first, second]},
        settings=settings,
    )
    return gate(rule)


def check_tipi_params(m, j):
    if m < 3 or j < 1 or 2 * j >= m:
        raise SpecViolation("Need m >= 3 and 1 <= j < m/2, got m=%d j=%d" % (m, j))


def tipi_polynomial(m, j):
    """``x^m - x^(2j) - 2 x^j - 1``."""
    return poly(x ** m - x ** (2 * j) - 2 * x ** j - 1)


# the first scale is the default reading, the second a fallback
TIPI_SCALES = ("literal", "root")
TIPI_ROTATIONS = ("radians", "turns")


def tipi_candidate(m, j, scale, rotation, settings=None):
    """The tipi rule under one reading of its conventions.

    ``scale`` is ``literal`` for prototile ratio ``eta`` and ``a = eta^j``,
    ``root`` for ratio ``sqrt(eta)`` and ``a = sqrt(eta)^j``.
    ``rotation`` is ``radians`` for the rotation ``e^{i theta}`` and
    ``turns`` for ``e^{2 pi i theta}`` with ``theta`` still the angle
    ``arccos(1 / 2a)``.
    """
    settings = resolve_settings(settings, None)
    eta = isolate_dominant_root(tipi_polynomial(m, j), settings.refine_cap)
    factor = eta if scale == "literal" else eta.sqrt()
    a_exact = factor ** j
    cosine = (a_exact * 2).inverse()
    a = float(a_exact)
    lam = float(factor)
    theta = math.acos(1 / (2 * a))
    if rotation == "radians":
        generator = make_generator(
            TIPI_ANGLE, theta, cosine=cosine, n_cap=settings.cosine_n_cap
        )
    else:
        generator = make_generator(TIPI_ANGLE, 2 * math.pi * theta)
    registry = GeneratorRegistry([generator])
    apex = complex(0.5, math.sqrt(a * a - 0.25))
    prototiles = [[lam ** i * z for z in (0j, 1 + 0j, apex)] for i in range(m)]
    children = [[(i + 1, IDENTITY, 0j)] for i in range(m - 1)]
    turn = Angle.generator(TIPI_ANGLE)
    children.append(
        [
            (0, IDENTITY, a * a),
            (j, Orientation(False, turn), a * a),
            (j, Orientation(True, turn), 0j),
            (2 * j, IDENTITY, apex),
        ]
    )
    return make_rule(
        prototiles,
        children,
        factor,
        registry,
        name="tipi:%d,%d" % (m, j),
        metadata={
            "m": m,
            "j": j,
            "scale": scale,
            "rotation": rotation,
            "eta": float(eta),
            "theta": theta,
        },
        settings=settings,
    )


@Forge.family("tipi", params=("m", "j"))
def build_tipi(m, j, tol_geo=None, settings=None):
    """The tipi substitution.

    Prototiles are isosceles triangles on the base ``[0, 1]`` with legs
    ``a``; the last one is cut into four pieces, one of them mirrored.
    The literal scale is tried first, with either rotation reading; the
    root scale is the fallback and logs a warning. The choice is
    recorded in ``rule.metadata``.

    :raises ConventionUnresolved: if no combination verifies.
    """
    check_tipi_params(m, j)
    return _build_tipi(m, j, resolve_settings(settings, tol_geo))


@functools.lru_cache(maxsize=None)
def _build_tipi(m, j, settings):
    for scale in TIPI_SCALES:
        for rotation in TIPI_ROTATIONS:
            rule = tipi_candidate(m, j, scale, rotation, settings)
            report = verify_rule(rule)
            if not report:
                logger.debug(
                    "tipi:%d,%d %s/%s rejected: %r", m, j, scale, rotation, report
                )
                continue
            rule.verify_report = report
            if scale == TIPI_SCALES[0]:
                logger.info("tipi:%d,%d uses %s scale with %s", m, j, scale, rotation)
            else:
                logger.warning(
                    "tipi:%d,%d: the %s scale does not verify, falling back "
                    "to the %s scale with %s (theta %.6g)",
                    m,
                    j,
                    TIPI_SCALES[0],
                    scale,
                    rotation,
                    rule.metadata["theta"],
                )
            return rule
    raise ConventionUnresolved("No tipi convention verifies for m=%d j=%d" % (m, j))


@Forge.family("pinwheel")
def build_pinwheel(tol_geo=None, settings=None):
    """The pinwheel substitution of Conway and Radin.

    The right triangle with legs 2 and 1 is inflated by ``sqrt 5``. The
    altitude on the hypotenuse splits off one tile; the rest, a copy at
    twice the size, holds a rectangle of two tiles and two corner tiles.
    Two of the five children keep the chirality of the parent.
    """
    return _build_pinwheel(resolve_settings(settings, tol_geo))


@functools.lru_cache(maxsize=None)
def _build_pinwheel(settings):
    root5 = math.sqrt(5)
    cosine = AlgReal.from_interval(
        from_coefficients([5, 0, -4]),
        Fraction(8, 10),
        Fraction(9, 10),
        settings.refine_cap,
    )
    registry = GeneratorRegistry(
        [
            make_generator(
                PINWHEEL_ANGLE,
                math.atan(0.5),
                cosine=cosine,
                n_cap=settings.cosine_n_cap,
            )
        ]
    )
    gamma = Angle.generator(PINWHEEL_ANGLE)
    half = Angle.pi(Fraction(1, 2))
    children = [
        (0, Orientation(True, gamma + half), 2 * root5),
        (0, Orientation(True, gamma), 0j),
        (0, Orientation(True, gamma), root5),
        (0, Orientation(False, gamma - Angle.pi(1)), (8 + 4j) / root5),
        (0, Orientation(False, gamma), root5),
    ]
    rule = make_rule(
        [[0j, 2 + 0j, 2 + 1j]],
        [children],
        AlgReal.rational(5, settings.refine_cap).sqrt(),
        registry,
        name="pinwheel",
        settings=settings,
    )
    return gate(rule)
