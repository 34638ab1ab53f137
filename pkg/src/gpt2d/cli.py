"""Command-line interface: compute, benchmark, import, serve."""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .curve import Contour, Disk, Ellipse, ShapeError, load_shape, shape_to_dict
from .ingest import MaskError, load_mask, trace_contour
from .oracle import ZeroTensorError
from .pipeline import (
    ComputeRequest,
    RequestError,
    compute,
    pairs_from_polynomial_count,
)
from .solve import IllConditionedError

IMAGE_SUFFIXES = (".png", ".bmp", ".gif", ".tif", ".tiff", ".ppm", ".pgm", ".jpg", ".jpeg")


def _parse_center(text: str) -> tuple[float, float]:
    try:
        x, y = (float(v) for v in text.split(","))
    except ValueError as exc:
        raise RequestError(f"cannot parse center {text!r}; expected 'x,y'") from exc
    return (x, y)


def _shape_from_args(args) -> tuple:
    """Resolve --shape into (spec, pre-traced curve or None)."""
    value = args.shape
    center = _parse_center(args.center)
    if value == "disk":
        if args.radius is None:
            raise RequestError("disk shape needs --radius")
        return Disk(center=center, radius=args.radius), None
    if value == "ellipse":
        if args.a is None or args.b is None:
            raise RequestError("ellipse shape needs --a and --b")
        return Ellipse(center=center, semiaxis_a=args.a, semiaxis_b=args.b, tilt=args.tilt), None
    if os.path.exists(value):
        if value.lower().endswith(IMAGE_SUFFIXES):
            with open(value, "rb") as fh:
                mask = load_mask(fh.read())
            curve = trace_contour(mask, args.points)
            spec = Contour(points=tuple(map(tuple, curve.nodes)))
            return spec, curve
        return load_shape(value), None
    raise RequestError(
        f"--shape must be 'disk', 'ellipse', or a path to a shape JSON or image "
        f"(got {value!r})"
    )


def _tensor_csv(doc: dict) -> str:
    t = doc["tensor"]
    lines = [f"# version={doc['version']}"]
    for key in ("order", "contrast", "scale", "points", "basis_count", "polynomial_count"):
        lines.append(f"# {key}={t[key]}")
    lines.append(f"# center={t['center'][0]},{t['center'][1]}")
    if "error_report" in doc and doc["error_report"].get("epsilon") is not None:
        lines.append(f"# epsilon={doc['error_report']['epsilon']}")
    lines.append(f"# cond_estimate={doc['diagnostics']['cond_estimate']}")
    for row in t["entries"]:
        lines.append(",".join(f"{v:.17g}" for v in row))
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_compute(args) -> int:
    spec, curve = _shape_from_args(args)
    pairs = args.basis_pairs
    if pairs is None and args.polynomials is not None:
        pairs = pairs_from_polynomial_count(args.polynomials)
    request = ComputeRequest(
        shape=spec,
        contrast=args.contrast,
        order=args.order,
        points=args.points,
        basis_pairs=pairs,
        kappa=args.kappa,
        dump_matrix=args.dump_matrix,
    )
    doc = compute(request, curve=curve)
    if args.format == "csv":
        _emit(_tensor_csv(doc), args.out)
    else:
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return 0


def _cmd_benchmark(args) -> int:
    from .bench import benchmark

    rows = benchmark(args.suite)
    _emit("\n".join(rows) + "\n", args.out)
    return 0


def _cmd_import(args) -> int:
    with open(args.image, "rb") as fh:
        mask = load_mask(fh.read())
    curve = trace_contour(mask, args.points)
    doc = shape_to_dict(Contour(points=tuple(map(tuple, curve.nodes))))
    doc["centroid"] = curve.centroid.tolist()
    doc["perimeter"] = curve.perimeter
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gpt2d",
        description="Contracted generalized polarization tensors of 2-D inclusions",
    )
    parser.add_argument("--version", action="version", version=f"gpt2d {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("compute", help="compute the tensor of one shape")
    pc.add_argument("--shape", required=True,
                    help="'disk', 'ellipse', or a path to a shape JSON / bitmap image")
    pc.add_argument("--center", default="0,0", help="shape center as 'x,y'")
    pc.add_argument("--radius", type=float, help="disk radius")
    pc.add_argument("--a", type=float, help="ellipse semiaxis along x (before tilt)")
    pc.add_argument("--b", type=float, help="ellipse semiaxis along y (before tilt)")
    pc.add_argument("--tilt", type=float, default=0.0, help="ellipse tilt in radians")
    pc.add_argument("--contrast", type=float, required=True,
                    help="conductivity ratio inclusion/background")
    pc.add_argument("--order", type=int, required=True, help="tensor order n (2n x 2n)")
    pc.add_argument("--points", type=int, default=256, help="boundary points")
    pc.add_argument("--basis-pairs", type=int, default=None,
                    help="polynomial pairs per family (default order+1)")
    pc.add_argument("--polynomials", type=int, default=None,
                    help="polynomial count; odd values round up to pairs")
    pc.add_argument("--kappa", type=float, default=0.5,
                    help="normalization target: perimeter scaled to 2*kappa")
    pc.add_argument("--dump-matrix", default=None,
                    help="debug: write the assembled system to this CSV path")
    pc.add_argument("--out", default=None, help="output path (default stdout)")
    pc.add_argument("--format", choices=("json", "csv"), default="json")
    pc.set_defaults(func=_cmd_compute)

    pb = sub.add_parser("benchmark", help="run a benchmark suite, emit CSV")
    pb.add_argument("--suite", required=True,
                    choices=("fig1", "fig2", "fig3", "fig4", "timing"))
    pb.add_argument("--out", default=None, help="output path (default stdout)")
    pb.set_defaults(func=_cmd_benchmark)

    pi = sub.add_parser("import", help="trace a bitmap into a contour shape JSON")
    pi.add_argument("image", help="bitmap file (PNG/BMP/TIFF/PPM/...)")
    pi.add_argument("--points", type=int, default=256, help="contour points")
    pi.add_argument("--out", default=None, help="output path (default stdout)")
    pi.set_defaults(func=_cmd_import)

    ps = sub.add_parser("serve", help="run the local HTTP JSON service")
    ps.add_argument("--host", default="127.0.0.1")
    ps.add_argument("--port", type=int, default=8421)
    ps.set_defaults(func=_cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (RequestError, ShapeError, MaskError, ZeroTensorError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except IllConditionedError as exc:
        print(
            f"error: computation failed (cond_estimate={exc.cond_estimate:.3g}): {exc}",
            file=sys.stderr,
        )
        return 3


if __name__ == "__main__":
    sys.exit(main())
