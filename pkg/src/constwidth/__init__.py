"""Constant-diameter curves, rotor curves and numerical certificates for them."""

from .config import ConfigError, ParseError, SchemaError, build_curve, load_config
from .curves import (
    ArcSegment,
    Circle,
    ConstantDiameterCurve,
    Curve,
    Ellipse,
    PiecewiseArcCurve,
    RotorCurve,
    Transformed,
    TrigTerm,
    differentiate_midpoint,
    evaluate,
    integrate_profile,
    make_constant_diameter,
    make_reuleaux,
    make_rotor,
    make_rounded_reuleaux,
)
from .errors import (
    AmplitudeViolation,
    BadOrder,
    BadRadius,
    ConstructionError,
    ConstwidthError,
    EvenOrder,
    FrequencyViolation,
    GuardViolation,
    HarmonicViolation,
    NonConvergence,
    NonMonotoneAngle,
    NormalMiss,
    SingularPoint,
)
from .geometry import chord, curvature, nearest_point, perimeter, width
from .probe import ProbeFamily, counterexample_search, penalty, probe_c2n
from .verify import (
    VerificationOptions,
    check_cn,
    check_constant_diameter,
    check_square_center_property,
    detect_corners,
    find_inscribed_ngons,
    find_points_at_distance,
    recover_midpoint_curve,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
