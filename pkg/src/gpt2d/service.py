"""Local HTTP JSON service consumed by the companion UI.

Endpoints:
    GET  /health            liveness probe
    POST /compute           ComputeRequest JSON -> tensor document
    POST /import            raw image bytes -> traced contour shape + preview
    GET  /oracle            analytic disk/ellipse tensor from query params

Every response carries a version field.  Errors are structured:
{"version": ..., "error": {"code": ..., "message": ..., ...}} with 4xx
status for bad requests and 422 for failed computations.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import __version__
from .curve import ShapeError, shape_from_dict, shape_to_dict, Contour, Disk, Ellipse
from .ingest import MaskError, load_mask, trace_contour
from .oracle import ZeroTensorError, exact_disk_gpt, exact_ellipse_gpt
from .pipeline import ComputeRequest, RequestError, compute
from .solve import IllConditionedError

MAX_CONCURRENT_JOBS = 4


def _error(status: int, code: str, message: str, **extra) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"version": __version__, "error": {"code": code, "message": message, **extra}},
    )


def create_app() -> FastAPI:
    app = FastAPI(title="gpt2d", version=__version__)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    # bounded job slots; computation is CPU-bound and runs in the threadpool
    slots = threading.BoundedSemaphore(MAX_CONCURRENT_JOBS)

    @app.get("/health")
    def health():
        return {"version": __version__, "status": "ok"}

    @app.post("/compute")
    def compute_endpoint(body: dict):
        try:
            shape = shape_from_dict(body["shape"])
            request = ComputeRequest(
                shape=shape,
                contrast=float(body["contrast"]),
                order=int(body["order"]),
                points=int(body.get("points", 256)),
                basis_pairs=int(body["basis_pairs"]) if "basis_pairs" in body else None,
                kappa=float(body.get("kappa", 0.5)),
            )
        except (KeyError, TypeError, ValueError, ShapeError) as exc:
            return _error(400, "bad_request", f"malformed compute request: {exc}")
        try:
            with slots:
                doc = compute(request)
        except (RequestError, ShapeError) as exc:
            return _error(400, "bad_request", str(exc))
        except IllConditionedError as exc:
            return _error(
                422, "ill_conditioned", str(exc), cond_estimate=exc.cond_estimate
            )
        except ValueError as exc:
            return _error(422, "compute_failed", str(exc))
        doc["version"] = __version__
        return doc

    @app.post("/import")
    async def import_endpoint(request: Request, points: int = 256):
        data = await request.body()
        if not data:
            return _error(400, "bad_request", "empty request body; send image bytes")
        try:
            mask = load_mask(data)
            curve = trace_contour(mask, points)
        except MaskError as exc:
            return _error(422, "import_failed", str(exc))
        shape = Contour(points=tuple(map(tuple, curve.nodes)))
        return {
            "version": __version__,
            "shape": shape_to_dict(shape),
            "preview": curve.nodes.tolist(),
            "centroid": curve.centroid.tolist(),
            "perimeter": curve.perimeter,
        }

    @app.get("/oracle")
    def oracle_endpoint(
        shape: str,
        contrast: float,
        order: int,
        radius: float | None = None,
        a: float | None = None,
        b: float | None = None,
        tilt: float = 0.0,
    ):
        try:
            if shape == "disk":
                if radius is None:
                    return _error(400, "bad_request", "disk oracle needs radius")
                tensor = exact_disk_gpt(radius, contrast, order)
                spec = shape_to_dict(Disk(center=(0.0, 0.0), radius=radius))
            elif shape == "ellipse":
                if a is None or b is None:
                    return _error(400, "bad_request", "ellipse oracle needs a and b")
                tensor = exact_ellipse_gpt(a, b, contrast, order, tilt=tilt)
                spec = shape_to_dict(
                    Ellipse(center=(0.0, 0.0), semiaxis_a=a, semiaxis_b=b, tilt=tilt)
                )
            else:
                return _error(400, "bad_request", f"no oracle for shape {shape!r}")
        except (ValueError, ZeroTensorError) as exc:
            return _error(422, "oracle_failed", str(exc))
        return {
            "version": __version__,
            "shape": spec,
            "tensor": {
                "order": tensor.order,
                "contrast": tensor.contrast,
                "entries": tensor.entries.tolist(),
            },
        }

    ui_dist = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    if ui_dist.is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_dist), html=True), name="ui")

    return app
