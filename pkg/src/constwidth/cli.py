"""``constwidth`` command line: generate, verify, render, export, probe.

Exit codes: 0 success or PASS, 1 verification FAIL, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Any, Sequence

from .config import ConfigError, build_curve, describe, load_config, nominal_diameter
from .curves import RotorCurve
from .probe import ProbeFamily, counterexample_search
from .render import RenderOptions, export_csv, render_svg
from .verify import VerificationOptions, check_cn, check_constant_diameter

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _json_safe(obj: Any) -> Any:
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(_json_safe(obj), indent=2, allow_nan=False) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _positive_int(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def _load(args: argparse.Namespace):
    cfg = load_config(args.config)
    return cfg, build_curve(cfg)


# ---------------------------------------------------------------------------
# subcommands


def cmd_generate(args: argparse.Namespace) -> int:
    cfg, curve = _load(args)
    _emit(dumps(describe(cfg, curve)), args.out)
    return EXIT_PASS


def cmd_verify(args: argparse.Namespace) -> int:
    cfg, curve = _load(args)
    opts = VerificationOptions(theta_samples=args.bases, phi_samples=args.phi_samples)
    if args.check == "cd":
        D = args.D if args.D is not None else nominal_diameter(cfg)
        report = check_constant_diameter(curve, D, opts, require_unique=not args.allow_plateau)
    else:
        if args.n is None or args.n < 2:
            raise UsageError("--check cn requires --n >= 2")
        if args.D is not None:
            D = args.D
        elif isinstance(curve, RotorCurve) and curve.n == args.n:
            D = curve.D
        else:
            D = nominal_diameter(cfg) * math.sin(math.pi / args.n)
        report = check_cn(curve, args.n, D, opts)
    _emit(dumps(report.to_dict(with_witnesses=args.witnesses)), args.out)
    print(f"{report.property} D={D:.12g}: {'PASS' if report.passed else 'FAIL'}", file=sys.stderr)
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_render(args: argparse.Namespace) -> int:
    _, curve = _load(args)
    try:
        opts = RenderOptions(
            samples=args.samples,
            chords=args.chords,
            ngon=args.ngon,
            side=args.side,
            show_centers=args.show_centers,
            show_midpoint=not args.no_midpoint,
            stroke_width=args.stroke_width,
            dot_radius=args.dot_radius,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(render_svg(curve, opts), args.out)
    return EXIT_PASS


def cmd_export(args: argparse.Namespace) -> int:
    _, curve = _load(args)
    _emit(export_csv(curve, args.samples), args.out)
    return EXIT_PASS


def parse_family(text: str, D: float, n: int, delta: float | None) -> ProbeFamily:
    """``trig:3,5`` or ``rotor:8,16`` (frequencies; multiples of ``n``)."""
    kind, _, rest = text.partition(":")
    if kind not in ("trig", "rotor") or not rest:
        raise UsageError(f"bad --family {text!r}; expected trig:M[,M...] or rotor:F[,F...]")
    try:
        harmonics = tuple(int(h) for h in rest.split(","))
        return ProbeFamily(kind, D, harmonics, n=n if kind == "rotor" else None, delta=delta)
    except ValueError as exc:
        raise UsageError(f"bad --family {text!r}: {exc}") from exc


def cmd_probe(args: argparse.Namespace) -> int:
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    family = parse_family(args.family, args.D, args.n, args.delta)
    side = args.side if args.side is not None else args.D * math.sin(math.pi / args.n)
    result = counterexample_search(family, args.n, side, args.iters, args.restarts, args.seed)
    _emit(dumps(result.to_dict()), args.out)
    if args.trace:
        Path(args.trace).write_text(result.trace_csv())
    return EXIT_PASS


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="constwidth", description="Constant-diameter and rotor curve toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_config(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--config", required=True, help="curve config JSON file")
        sp.add_argument("--out", help="output file (default: stdout)")

    g = sub.add_parser("generate", help="build a curve and print its summary as JSON")
    with_config(g)
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="certify C(D) or C_n(D); exit 0 on PASS, 1 on FAIL")
    with_config(v)
    v.add_argument("--check", choices=("cd", "cn"), required=True)
    v.add_argument("--n", type=int, help="polygon order for --check cn")
    v.add_argument("--D", type=_positive_float, help="diameter (cd) or polygon side (cn)")
    v.add_argument("--bases", type=_positive_int, default=512, help="number of base points")
    v.add_argument("--phi-samples", type=_positive_int, default=2048)
    v.add_argument("--allow-plateau", action="store_true", help="do not require a unique farthest point")
    v.add_argument("--witnesses", action="store_true", help="include n-gon witnesses in the report")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("render", help="draw the curve as SVG")
    with_config(r)
    r.add_argument("--samples", type=int, default=720)
    r.add_argument("--chords", type=int, default=0, help="diametral chords to overlay")
    r.add_argument("--ngon", type=int, help="overlay one inscribed n-gon at parameter 0")
    r.add_argument("--side", type=_positive_float, help="side of the overlaid n-gon")
    r.add_argument("--show-centers", action="store_true", help="mark arc centers with dots")
    r.add_argument("--no-midpoint", action="store_true", help="omit the midpoint curve of trig curves")
    r.add_argument("--stroke-width", type=_positive_float, default=0.005, help="fraction of D")
    r.add_argument("--dot-radius", type=_positive_float, default=0.01, help="fraction of D")
    r.set_defaults(func=cmd_render)

    e = sub.add_parser("export", help="write theta, x, y, kappa samples as CSV")
    with_config(e)
    e.add_argument("--samples", type=_positive_int, default=1024)
    e.set_defaults(func=cmd_export)

    pr = sub.add_parser("probe", help="search for non-circular curves with both properties")
    pr.add_argument("--family", required=True, help="trig:3,5 or rotor:8 (frequencies)")
    pr.add_argument("--D", type=_positive_float, required=True, help="diameter")
    pr.add_argument("--n", type=int, required=True, help="polygon order")
    pr.add_argument("--side", type=_positive_float, help="polygon side (default D sin(pi/n))")
    pr.add_argument("--delta", type=_positive_float, help="coefficient sphere radius (default 0.05 D)")
    pr.add_argument("--iters", type=_positive_int, default=200, help="evaluations per restart")
    pr.add_argument("--restarts", type=_positive_int, default=1)
    pr.add_argument("--seed", type=int, default=0)
    pr.add_argument("--out", help="result JSON file (default: stdout)")
    pr.add_argument("--trace", help="trace CSV file")
    pr.set_defaults(func=cmd_probe)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ConfigError, OSError) as exc:
        print(f"constwidth {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
