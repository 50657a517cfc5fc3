"""Command-line interface: peel, certify, render, growth.

Exit codes: 0 success, 2 usage error or size cap, 3 malformed input,
4 internal inconsistency (a computed result failed its own invariants).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from .core import (
    DomainError,
    Grid,
    InternalInconsistencyError,
    ParseError,
    PointSet,
    SizeLimitError,
    materialize,
    materialize_box,
    max_points_cap,
)
from .certify import (
    build_chain_certificate,
    build_norm_certificate,
    certificate_to_text,
    lower_bound,
    upper_bound,
    verify,
)
from .peel import LayerAssignment, peel, peel_2d
from .render import render_step
from .symmetry import peel_orbits

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_INTERNAL = 4

ENGINES = ("auto", "generic", "orbit", "2d")


@dataclass
class RunConfig:
    """Resolved invocation: exactly one command over one point source."""

    command: str
    d: Optional[int] = None
    n: Optional[int] = None
    side: Optional[int] = None
    input_path: Optional[str] = None
    output: Optional[str] = None
    engine: str = "auto"
    fmt: str = "json"
    max_points: Optional[int] = None
    cross_check: bool = False
    steps: Optional[List[int]] = None
    sides: Optional[List[int]] = None


def load_point_file(path: str) -> PointSet:
    """Whitespace-separated integer rows -> PointSet. ParseError if malformed."""
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}")
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append(tuple(int(tok) for tok in line.split()))
        except ValueError:
            raise ParseError(f"{path}:{lineno}: non-integer token in {line!r}")
    if not rows:
        raise ParseError(f"{path}: no points")
    arity = len(rows[0])
    for lineno_row, r in enumerate(rows):
        if len(r) != arity:
            raise ParseError(
                f"{path}: row with {len(r)} coordinates, expected {arity}"
            )
    return PointSet(rows, arity)


def _resolve_source(cfg: RunConfig) -> Tuple[PointSet, Optional[Grid]]:
    """The point set to peel, plus its Grid when it is a centered grid."""
    cap = max_points_cap(cfg.max_points)
    if cfg.input_path is not None:
        s = load_point_file(cfg.input_path)
        if len(s) > cap:
            raise SizeLimitError(
                f"{len(s)} input points exceed the cap of {cap}"
            )
        return s, None
    if cfg.d is None:
        raise DomainError("need --d with --n/--side, or --input FILE")
    if cfg.side is not None:
        if cfg.side < 1:
            raise DomainError(f"side must be >= 1, got {cfg.side}")
        if cfg.side % 2 == 0:
            # even side: no centered integer grid exists; peel the raw box
            return materialize_box(cfg.d, 0, cfg.side - 1, cap), None
        n = (cfg.side - 1) // 2
    elif cfg.n is not None:
        n = cfg.n
    else:
        raise DomainError("need one of --n or --side (or --input FILE)")
    g = Grid(cfg.d, n)
    return materialize(g, cap), g


def _run_engine(
    engine: str, s: PointSet, g: Optional[Grid]
) -> LayerAssignment:
    if engine == "orbit":
        if g is None:
            raise DomainError(
                "engine 'orbit' requires centered-grid input (--n or odd --side)"
            )
        return peel_orbits(g)
    if engine == "2d":
        return peel_2d(s)  # raises DomainError unless d == 2
    if engine == "generic":
        return peel(s, force_generic=True)
    # auto: fastest applicable
    if s.dimension == 2:
        return peel_2d(s)
    if g is not None:
        return peel_orbits(g)
    return peel(s, force_generic=True)


def _cross_check(
    engine: str, a: LayerAssignment, s: PointSet, g: Optional[Grid]
) -> str:
    actual = engine
    if engine == "auto":
        actual = (
            "2d"
            if s.dimension == 2
            else ("orbit" if g is not None else "generic")
        )
    if actual == "generic":
        alt = "2d" if s.dimension == 2 else ("orbit" if g is not None else "")
    else:
        alt = "generic"
    if not alt:
        return "cross-check skipped: no second engine applies"
    b = _run_engine(alt, s, g)
    if a != b:
        raise InternalInconsistencyError(
            f"engines disagree: {engine} vs {alt}"
        )
    return f"cross-check ok ({engine} vs {alt})"


def assignment_to_json(a: LayerAssignment, g: Optional[Grid]) -> str:
    doc = {
        "d": a.source.dimension,
        "n": g.n if g is not None else None,
        "num_layers": a.num_layers,
        "layers": [
            [list(p) for p in layer] for layer in a.layers()
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def assignment_to_csv(a: LayerAssignment) -> str:
    lines = [
        ",".join(str(c) for c in p) + f",{lab}" for p, lab in a
    ]
    return "\n".join(lines) + "\n"


def _default_stem(cfg: RunConfig, g: Optional[Grid]) -> str:
    if cfg.input_path is not None:
        return f"{cfg.command}_{Path(cfg.input_path).stem}"
    if g is not None:
        return f"{cfg.command}_d{g.d}_n{g.n}"
    return f"{cfg.command}_d{cfg.d}_side{cfg.side}"


def cmd_peel(cfg: RunConfig) -> int:
    s, g = _resolve_source(cfg)
    a = _run_engine(cfg.engine, s, g)
    if cfg.cross_check:
        print(_cross_check(cfg.engine, a, s, g))
    text = (
        assignment_to_json(a, g) if cfg.fmt == "json" else assignment_to_csv(a)
    )
    out = Path(cfg.output or f"{_default_stem(cfg, g)}.{cfg.fmt}")
    out.write_text(text)
    sizes = " ".join(str(v) for v in a.layer_sizes())
    print(f"layers: {a.num_layers}; sizes: {sizes}")
    print(f"wrote {out}")
    return EXIT_OK


def cmd_certify(cfg: RunConfig) -> int:
    if cfg.side is not None and cfg.side % 2 == 0:
        raise DomainError(
            "certificates require an odd side (a centered grid); "
            f"got side {cfg.side}"
        )
    s, g = _resolve_source(cfg)
    if g is None:
        raise DomainError("certificates require grid input (--n or odd --side)")
    a = _run_engine(cfg.engine, s, g)
    if cfg.cross_check:
        print(_cross_check(cfg.engine, a, s, g))
    norm_cert = build_norm_certificate(g, a)
    chain_cert = build_chain_certificate(g, a)
    for cert, label in ((norm_cert, "norm-descent"), (chain_cert, "chain")):
        res = verify(cert)
        if not res:
            raise InternalInconsistencyError(
                f"{label} certificate failed verification: {res.reason}"
            )
    prefix = cfg.output or _default_stem(cfg, g)
    norm_path = Path(f"{prefix}.norm.cert")
    chain_path = Path(f"{prefix}.chain.cert")
    norm_path.write_text(certificate_to_text(norm_cert))
    chain_path.write_text(certificate_to_text(chain_cert))
    lo, hi = lower_bound(g.d, g.n), upper_bound(g.d, g.n)
    print(f"{lo} <= {a.num_layers} <= {hi}")
    print(f"wrote {norm_path}")
    print(f"wrote {chain_path}")
    return EXIT_OK


def cmd_render(cfg: RunConfig) -> int:
    s, g = _resolve_source(cfg)
    if s.dimension != 2:
        raise DomainError(f"render requires d = 2, got {s.dimension}")
    a = _run_engine(cfg.engine, s, g)
    steps = cfg.steps or [1]
    for step in steps:
        if not 1 <= step <= a.num_layers:
            raise DomainError(
                f"step {step} out of range 1..{a.num_layers}"
            )
    prefix = cfg.output or _default_stem(cfg, g)
    for step in steps:
        path = Path(f"{prefix}_step{step}.svg")
        path.write_text(render_step(a, step))
        print(f"wrote {path}")
    return EXIT_OK


def growth_slope(sides: Sequence[int], counts: Sequence[int]) -> float:
    """Least-squares slope of log(layer count) against log(side)."""
    xs = [math.log(v) for v in sides]
    ys = [math.log(v) for v in counts]
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return sxy / sxx


def cmd_growth(cfg: RunConfig) -> int:
    sides = cfg.sides or []
    if len(set(sides)) < 2:
        raise DomainError("need >= 2 distinct sizes to fit a slope")
    if any(v < 1 for v in sides):
        raise DomainError("side lengths must be >= 1")
    cap = max_points_cap(cfg.max_points)
    counts = []
    for side in sorted(set(sides)):
        if side % 2:
            s = materialize(Grid(2, (side - 1) // 2), cap)
        else:
            s = materialize_box(2, 0, side - 1, cap)
        a = peel_2d(s)
        counts.append((side, a.num_layers))
        print(f"{side} {a.num_layers}")
    if min(side for side, _ in counts) < 51:
        print("warning: pre-asymptotic sizes (side < 51); slope is unreliable")
    slope = growth_slope(
        [side for side, _ in counts], [c for _, c in counts]
    )
    print(f"slope: {slope:.4f}")
    return EXIT_OK


def _parse_int_list(raw: str, what: str) -> List[int]:
    try:
        return [int(tok) for tok in raw.split(",") if tok.strip()]
    except ValueError:
        raise DomainError(f"{what} must be comma-separated integers, got {raw!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="onionpeel",
        description=(
            "Exact convex-layer peeling of integer point sets, with "
            "verifiable bound certificates for centered grids."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_source_args(p, with_input=True):
        p.add_argument("--d", type=int, help="dimension of the grid")
        p.add_argument("--n", type=int, help="grid radius: the set [-n, n]^d")
        p.add_argument(
            "--side",
            type=int,
            help="grid side length (odd side s means n = (s-1)/2)",
        )
        if with_input:
            p.add_argument(
                "--input",
                help="point-set file: one point per row, whitespace-separated",
            )
        p.add_argument(
            "--engine",
            choices=ENGINES,
            default="auto",
            help="peeling engine (auto picks the fastest applicable)",
        )
        p.add_argument(
            "--max-points",
            type=int,
            help="override the point-count cap (env ONIONPEEL_MAX_POINTS)",
        )
        p.add_argument(
            "--cross-check",
            action="store_true",
            help="run a second engine and fail on any disagreement",
        )

    p_peel = sub.add_parser("peel", help="peel a grid or point file into layers")
    add_source_args(p_peel)
    p_peel.add_argument("--format", choices=("json", "csv"), default="json")
    p_peel.add_argument("--output", help="output path (default: derived name)")

    p_cert = sub.add_parser(
        "certify", help="build and verify both bound certificates for a grid"
    )
    add_source_args(p_cert, with_input=False)
    p_cert.add_argument(
        "--output", help="output path prefix for the two .cert files"
    )

    p_render = sub.add_parser("render", help="render 2D peeling steps as SVG")
    add_source_args(p_render)
    p_render.add_argument(
        "--steps", default="1", help="comma-separated 1-based steps, e.g. 3,4,5"
    )
    p_render.add_argument("--output", help="output path prefix for SVG files")

    p_growth = sub.add_parser(
        "growth", help="fit the 2D layer-count growth exponent"
    )
    p_growth.add_argument(
        "--sides", required=True, help="comma-separated side lengths"
    )
    p_growth.add_argument("--max-points", type=int)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for field in ("d", "n", "side", "output"):
        if hasattr(args, field):
            setattr(cfg, field, getattr(args, field))
    cfg.input_path = getattr(args, "input", None)
    cfg.engine = getattr(args, "engine", "auto")
    cfg.fmt = getattr(args, "format", "json")
    cfg.max_points = getattr(args, "max_points", None)
    cfg.cross_check = getattr(args, "cross_check", False)
    if hasattr(args, "steps"):
        cfg.steps = _parse_int_list(args.steps, "--steps")
    if hasattr(args, "sides"):
        cfg.sides = _parse_int_list(args.sides, "--sides")
    if cfg.n is not None and cfg.side is not None:
        raise DomainError("--n and --side are mutually exclusive")
    if cfg.input_path is not None and (
        cfg.n is not None or cfg.side is not None or cfg.d is not None
    ):
        raise DomainError("--input excludes --d/--n/--side")
    if cfg.n is not None and cfg.n < 0:
        raise DomainError(f"--n must be >= 0, got {cfg.n}")
    return cfg


_COMMANDS = {
    "peel": cmd_peel,
    "certify": cmd_certify,
    "render": cmd_render,
    "growth": cmd_growth,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return _COMMANDS[args.command](cfg)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except SizeLimitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InternalInconsistencyError as e:
        print(f"internal inconsistency: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
