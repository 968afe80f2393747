# flake8: noqa
from .sentinel import Sentinel, NOT_FOUND, INCONCLUSIVE, NOT_RATIONAL, NOT_PRIMITIVE
from .settings import Settings
from .registry import App, Forge, commit, directive
from .polynomial import companion, cyclotomic, from_coefficients, poly
from .algebraic import (
    AlgReal,
    FieldElement,
    RationalCosine,
    alg_arith,
    compare,
    cos_rational_pi,
    isolate_dominant_root,
    is_rational_cosine,
)
from .perron import PerronData, perron_data
from .angle import (
    Angle,
    Generator,
    GeneratorRegistry,
    Orientation,
    IDENTITY,
    RationalPi,
    IrrationalPiCertified,
    UnknownNumeric,
    angle_value,
    classify_pi_rationality,
    compose,
)
from .matrix import (
    Primitive,
    SubstMatrix,
    WeylMatrix,
    is_primitive,
    substitution_matrix,
    weyl_matrix,
    weyl_ratio,
)
from .tiling import (
    Patch,
    PlacedTile,
    Prototile,
    SubstitutionRule,
    VerifyReport,
    apply,
    find_occurrences,
    make_rule,
    patch_distance,
    supertile,
    verify_rule,
)
from .families import (
    FamilySpec,
    build_family,
    build_pinwheel,
    build_pythagoras,
    build_pythia,
    build_tipi,
    parse_family_spec,
)
from .analysis import (
    OrientationStats,
    PinwheelVerdict,
    detect_pinwheel_like,
    orientation_census,
    orientation_stats,
    star_discrepancy,
    tile_frequencies,
    upf_probe,
)
from .render import export_rule, import_rule, render_svg
from .error import (
    ForgeError,
    ConfigError,
    ConflictError,
    DirectiveError,
    DirectiveReportError,
    TopologicalSortError,
    AlgebraError,
    AngleError,
    TilingError,
    FamilyError,
    RenderError,
)
