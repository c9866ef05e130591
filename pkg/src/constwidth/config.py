"""JSON curve configurations: loading, schema validation and construction."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from . import curves
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
)


class ConfigError(ConstwidthError):
    """Base class for configuration problems."""


class ParseError(ConfigError):
    """The file is missing or is not valid JSON."""


class SchemaError(ConfigError):
    """The JSON does not match the configuration schema."""

    def __init__(self, message: str, path: str):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class ConfigConstructionError(ConfigError, ConstructionError):
    """A schema-valid config describes a curve that cannot be built."""

    def __init__(self, message: str, path: str, cause: ConstructionError):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.cause = cause


@lru_cache(maxsize=None)
def load_schema(name: str = "config") -> dict[str, Any]:
    text = resources.files("constwidth").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def _pointer(parts) -> str:
    return "/" + "/".join(str(p) for p in parts)


def validate_config(data: Any) -> dict[str, Any]:
    """Check ``data`` against the schema of its ``kind``; return it unchanged."""
    schema = load_schema("config")
    if not isinstance(data, dict):
        raise SchemaError("config must be a JSON object", "/")
    kind = data.get("kind")
    allowed = schema["properties"]["kind"]["enum"]
    if kind not in allowed:
        raise SchemaError(f"kind must be one of {allowed}, got {kind!r}", "/kind")
    # validate against the one variant so error paths point at the real field
    sub = {"$defs": schema["$defs"], "$ref": f"#/$defs/{kind}"}
    validator = jsonschema.Draft202012Validator(sub)
    error = jsonschema.exceptions.best_match(validator.iter_errors(data))
    if error is not None:
        raise SchemaError(error.message, _pointer(error.absolute_path))
    return data


def parse_config(text: str) -> dict[str, Any]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return validate_config(data)


def load_config(path: str | Path) -> dict[str, Any]:
    """Read and validate a config file, then check that it builds."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    cfg = parse_config(text)
    build_curve(cfg)
    return cfg


_FIELD_OF_ERROR = {
    HarmonicViolation: "/terms",
    AmplitudeViolation: "/terms",
    BadOrder: "/n",
    EvenOrder: "/n",
    GuardViolation: "/gx",
    BadRadius: "/b",
}


def _field_path(cfg: dict[str, Any], exc: ConstructionError) -> str:
    if isinstance(exc, FrequencyViolation):
        return "/gy" if str(exc).startswith("gy") else "/gx"
    for cls, path in _FIELD_OF_ERROR.items():
        if isinstance(exc, cls):
            return path
    if cfg["kind"] == "ellipse":
        return "/semiAxes"
    return "/D"


def build_curve(cfg: dict[str, Any]) -> curves.Curve:
    """Construct the curve a validated config describes."""
    kind = cfg["kind"]
    try:
        if kind == "trig":
            return curves.make_constant_diameter(float(cfg["D"]), [dict(t) for t in cfg.get("terms", [])])
        if kind == "rotor":
            return curves.make_rotor(cfg["n"], float(cfg["D"]), cfg.get("gx", []), cfg.get("gy", []))
        if kind == "reuleaux":
            return curves.make_reuleaux(cfg["n"], float(cfg["D"]))
        if kind == "rounded_reuleaux":
            return curves.make_rounded_reuleaux(cfg["n"], float(cfg["D"]), float(cfg["b"]))
        if kind == "circle":
            return curves.Circle(0.5 * float(cfg["D"]), tuple(map(float, cfg.get("center", (0.0, 0.0)))))
        if kind == "ellipse":
            a, b = cfg["semiAxes"]
            return curves.Ellipse(float(a), float(b))
    except ConstructionError as exc:
        raise ConfigConstructionError(str(exc), _field_path(cfg, exc), exc) from exc
    raise SchemaError(f"unknown kind {kind!r}", "/kind")


def nominal_diameter(cfg: dict[str, Any]) -> float:
    """The diameter a config is meant to have (ellipses: the major axis)."""
    if "D" in cfg:
        return float(cfg["D"])
    return 2.0 * max(cfg["semiAxes"])


def describe(cfg: dict[str, Any], curve: curves.Curve) -> dict[str, Any]:
    """JSON summary of a constructed curve, used by ``generate``."""
    from .geometry import perimeter

    out: dict[str, Any] = {"kind": cfg["kind"], "scale": curve.scale, "period": curve.period}
    if isinstance(curve, curves.ConstantDiameterCurve):
        out["D"] = curve.D
        out["profile"] = [{"m": t.m, "a": t.a, "b": t.b} for t in curve.terms]
        out["midpoint"] = {
            "x": [{"freq": f, "a": a, "b": b} for f, (a, b) in curve.gx.as_dict().items()],
            "y": [{"freq": f, "a": a, "b": b} for f, (a, b) in curve.gy.as_dict().items()],
        }
        out["max_abs_r"] = curves.max_abs_profile(curve.profile)[1]
    elif isinstance(curve, curves.RotorCurve):
        out.update(n=curve.n, D=curve.D, R=curve.R, guard_measure=curve.guard_measure())
        out["guard_bound"] = curves.ROTOR_GUARD * curve.R
    elif isinstance(curve, curves.PiecewiseArcCurve):
        out["width"] = curve.width
        out["arcs"] = [
            {"center": list(a.center), "radius": a.radius, "start": a.start, "end": a.end} for a in curve.arcs
        ]
    elif isinstance(curve, curves.Circle):
        out.update(radius=curve.radius, center=list(curve.center))
    elif isinstance(curve, curves.Ellipse):
        out["semiAxes"] = [curve.a, curve.b]
    out["perimeter"] = perimeter(curve)
    return out
