"""SVG output, rule and patch files, CSV tables.

Rule files are JSON objects with ``"schema": "v1"``. Coordinates and
floats are decimal strings with 17 significant digits, exact numbers
are written as fractions (``"-3/2"``). Patch files are JSON lines: a
header object carrying the rule, then one object per tile.
"""
import colorsys
import csv
import json
import logging
import math
from fractions import Fraction

import svgwrite

from .algebraic import AlgReal
from .angle import (
    UNVERIFIED,
    Angle,
    GeneratorRegistry,
    Generator,
    IrrationalPi,
    Orientation,
)
from .error import (
    EmptyPatch,
    SchemaError,
    TilingError,
    VerifyFailed,
)
from .families import resolve_settings
from .polynomial import from_strings, to_strings
from .tiling import Patch, PlacedTile, Provenance, make_rule, verify_rule

logger = logging.getLogger(__name__)

SCHEMA = "v1"

TYPE_COLORS = [
    "#4e79a7",
    "#f28e2b",
    "#e15759",
    "#76b7b2",
    "#59a14f",
    "#edc948",
    "#b07aa1",
    "#ff9da7",
    "#9c755f",
    "#bab0ac",
]
CHIRALITY_COLORS = {False: "#f2f2f2", True: "#4d4d4d"}
COLOR_MODES = ("type", "orientation", "chirality")


def decimal(value):
    return "%.17g" % value


def point(z):
    return [decimal(z.real), decimal(z.imag)]


def parse_point(value):
    x, y = value
    return complex(float(x), float(y))


def hue_color(angle, turn):
    """Map an angle in ``[0, turn)`` linearly to a hue."""
    r, g, b = colorsys.hls_to_rgb((angle / turn) % 1.0, 0.55, 0.65)
    return "#%02x%02x%02x" % (round(r * 255), round(g * 255), round(b * 255))


def tile_color(tile, registry, color_by):
    if color_by == "type":
        return TYPE_COLORS[tile.prototile % len(TYPE_COLORS)]
    if color_by == "orientation":
        return hue_color(tile.orientation.angle.radians(registry), math.tau)
    if color_by == "chirality":
        return CHIRALITY_COLORS[tile.orientation.reflect]
    raise ValueError("Unknown color mode: %s" % color_by)


def render_svg(patch, color_by="type", allow_empty=False, size=800):
    """Draw every tile of ``patch`` as a closed polygon.

    The y axis points up. Orientation colors come from the exact tile
    angle.

    :return: an ``svgwrite.Drawing``.
    :raises EmptyPatch: for an empty patch unless ``allow_empty``.
    """
    if color_by not in COLOR_MODES:
        raise ValueError("Unknown color mode: %s" % color_by)
    if not len(patch) and not allow_empty:
        raise EmptyPatch("Nothing to render")
    drawing = svgwrite.Drawing(size=(size, size), profile="full", debug=False)
    polygons = patch.vertices() if len(patch) else []
    if polygons:
        xs = [z.real for p in polygons for z in p]
        ys = [-z.imag for p in polygons for z in p]
        width = max(max(xs) - min(xs), 1e-12)
        height = max(max(ys) - min(ys), 1e-12)
        margin = 0.02 * max(width, height)
        drawing.viewbox(
            min(xs) - margin,
            min(ys) - margin,
            width + 2 * margin,
            height + 2 * margin,
        )
        stroke = 0.002 * max(width, height)
    else:
        drawing.viewbox(0, 0, 1, 1)
        stroke = 0.002
    group = drawing.g(stroke="#000000", stroke_width=stroke, stroke_linejoin="round")
    registry = patch.rule.registry if patch.rule is not None else None
    for tile, polygon in zip(patch.tiles, polygons):
        group.add(
            drawing.polygon(
                points=[(z.real, -z.imag) for z in polygon],
                fill=tile_color(tile, registry, color_by),
            )
        )
    drawing.add(group)
    return drawing


def write_svg(patch, stream, **kw):
    render_svg(patch, **kw).write(stream, pretty=True)


def encode_algreal(x):
    if x.is_rational:
        return {"value": str(x.value)}
    return {
        "minpoly": to_strings(x.minpoly),
        "lo": str(x.lo),
        "hi": str(x.hi),
        "decimal": decimal(float(x)),
    }


def decode_algreal(data):
    if "value" in data:
        return AlgReal.rational(Fraction(data["value"]))
    try:
        return AlgReal.from_interval(
            from_strings(data["minpoly"]),
            Fraction(data["lo"]),
            Fraction(data["hi"]),
        )
    except ValueError as e:
        raise SchemaError("Bad algebraic number: %s" % e)


def encode_generator(generator):
    certificate = None
    if isinstance(generator.certificate, IrrationalPi):
        certificate = generator.certificate.proof
    return {
        "name": generator.name,
        "value": decimal(generator.value),
        "error": decimal(generator.error),
        "irrational_pi": certificate,
        "cosine": None
        if generator.cosine is None
        else encode_algreal(generator.cosine),
    }


def decode_generator(data):
    certificate = UNVERIFIED
    if data.get("irrational_pi") is not None:
        certificate = IrrationalPi(data["irrational_pi"])
    cosine = data.get("cosine")
    return Generator(
        data["name"],
        float(data["value"]),
        float(data["error"]),
        certificate,
        None if cosine is None else decode_algreal(cosine),
    )


def encode_orientation(orientation):
    return {"reflect": orientation.reflect, "angle": orientation.angle.to_json()}


def decode_orientation(data, registry=None):
    return Orientation(bool(data["reflect"]), Angle.from_json(data["angle"]), registry)


def _json_safe(metadata):
    result = {}
    for key, value in sorted(metadata.items()):
        try:
            json.dumps(value)
        except TypeError:
            continue
        result[key] = value
    return result


def export_rule(rule):
    """The rule as a JSON compatible dict."""
    return {
        "schema": SCHEMA,
        "name": rule.name,
        "factor": encode_algreal(rule.factor),
        "generators": [encode_generator(g) for g in rule.registry.entries],
        "prototiles": [[point(z) for z in p.vertices] for p in rule.prototiles],
        "children": [
            [
                {
                    "prototile": child.prototile,
                    "orientation": encode_orientation(child.orientation),
                    "translation": point(child.translation),
                }
                for child in children
            ]
            for children in rule.children
        ],
        "metadata": _json_safe(rule.metadata),
    }


def import_rule(data, allow_unverified=False, tol_geo=None, settings=None):
    """Rebuild a rule from :func:`export_rule` output and verify it.

    The rule carries ``settings``, by default those of the committed
    :class:`pinwheel_forge.registry.Forge`.

    A rule failing verification is logged as a warning; it is returned
    only with ``allow_unverified``.

    :raises SchemaError: if ``data`` does not follow the schema.
    :raises VerifyFailed: if verification fails and unverified rules
      are not allowed.
    """
    if not isinstance(data, dict) or data.get("schema") != SCHEMA:
        raise SchemaError("Not a %s rule file" % SCHEMA)
    try:
        registry = GeneratorRegistry(
            [decode_generator(g) for g in data["generators"]]
        )
        prototiles = [
            [parse_point(v) for v in vertices] for vertices in data["prototiles"]
        ]
        children = [
            [
                (
                    int(child["prototile"]),
                    decode_orientation(child["orientation"]),
                    parse_point(child["translation"]),
                )
                for child in placements
            ]
            for placements in data["children"]
        ]
        factor = decode_algreal(data["factor"])
        rule = make_rule(
            prototiles,
            children,
            factor,
            registry,
            name=data.get("name", "rule"),
            metadata=data.get("metadata"),
            settings=resolve_settings(settings, tol_geo),
        )
    except TilingError as e:
        raise SchemaError("Inconsistent rule file: %s" % e)
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError("Malformed rule file: %r" % (e,))
    report = verify_rule(rule)
    rule.verify_report = report
    if not report:
        logger.warning("Imported rule %s fails verification: %r", rule.name, report)
        if not allow_unverified:
            raise VerifyFailed(
                "Imported rule %s fails verification" % rule.name, report
            )
    return rule


def write_rule(rule, stream):
    json.dump(export_rule(rule), stream, indent=2, sort_keys=True)
    stream.write("\n")


def read_rule(stream, **kw):
    try:
        data = json.load(stream)
    except json.JSONDecodeError as e:
        raise SchemaError("Rule file is not JSON: %s" % e)
    return import_rule(data, **kw)


def encode_tile(tile):
    """One flat patch file record."""
    angle = tile.orientation.angle
    return {
        "type": tile.prototile,
        "reflect": tile.orientation.reflect,
        "pi_num": angle.pi_part.numerator,
        "pi_den": angle.pi_part.denominator,
        "gen_coeffs": dict(angle.gens),
        "tx": decimal(tile.translation.real),
        "ty": decimal(tile.translation.imag),
    }


def decode_tile(record, registry):
    angle = Angle(
        Fraction(int(record["pi_num"]), int(record["pi_den"])),
        tuple((name, int(c)) for name, c in record["gen_coeffs"].items()),
    )
    return PlacedTile(
        int(record["type"]),
        Orientation(bool(record["reflect"]), angle, registry),
        complex(float(record["tx"]), float(record["ty"])),
    )


def write_patch(patch, stream):
    """Write a patch as JSON lines: a header, then one record per tile.

    The header embeds the rule and the ``root`` and ``level`` the patch
    was generated from, ``None`` for patches of other origin.
    """
    provenance = patch.provenance
    header = {
        "schema": SCHEMA,
        "kind": "patch",
        "count": len(patch),
        "root": None if provenance is None else provenance.root,
        "level": None if provenance is None else provenance.level,
        "rule": export_rule(patch.rule),
    }
    stream.write(json.dumps(header, sort_keys=True) + "\n")
    for tile in patch.tiles:
        stream.write(json.dumps(encode_tile(tile), sort_keys=True) + "\n")


def read_patch(stream, **kw):
    """Read a patch written by :func:`write_patch`.

    :raises SchemaError: on a bad header or tile line.
    """
    lines = iter(stream)
    try:
        header = json.loads(next(lines))
    except (StopIteration, json.JSONDecodeError):
        raise SchemaError("Missing patch header")
    if header.get("schema") != SCHEMA or header.get("kind") != "patch":
        raise SchemaError("Not a %s patch file" % SCHEMA)
    rule = import_rule(header["rule"], **kw)
    tiles = []
    for number, line in enumerate(lines, 2):
        if not line.strip():
            continue
        try:
            tiles.append(decode_tile(json.loads(line), rule.registry))
        except (AttributeError, KeyError, TypeError, ValueError) as e:
            raise SchemaError("Bad tile on line %d: %r" % (number, e))
    if len(tiles) != header.get("count", len(tiles)):
        raise SchemaError(
            "Header announces %d tiles, found %d" % (header["count"], len(tiles))
        )
    provenance = None
    if header.get("root") is not None and header.get("level") is not None:
        provenance = Provenance(int(header["root"]), int(header["level"]))
    return Patch(tiles, rule, provenance)


def write_csv(stream, header, rows):
    """Comma separated, header row first, LF line endings."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(
            [decimal(v) if isinstance(v, float) else v for v in row]
        )


def stats_header(t_max):
    weyl = ["W_%d" % t for t in range(1, t_max + 1)]
    return ["level", "n", "star_discrepancy"] + weyl


def write_stats_csv(stream, stats, t_max):
    """One row per :class:`pinwheel_forge.analysis.OrientationStats`."""
    write_csv(stream, stats_header(t_max), [s.row() for s in stats])
