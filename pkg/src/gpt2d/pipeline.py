"""Shared compute pipeline behind the CLI and the HTTP service.

discretize -> normalize -> assemble -> solve -> extract -> unscale, with an
oracle comparison whenever the shape has an analytic reference (disk or
ellipse).  Documents are plain dicts with a version field, deterministic up
to the timing section.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from ._accel import backend_name
from .assembly import assemble_system, dump_system
from .curve import BoundaryCurve, Disk, Ellipse, ShapeSpec, discretize, normalize
from .gpt import ContractedGPT, extract_flux, extract_trace, unscale
from .oracle import ZeroTensorError, exact_disk_gpt, exact_ellipse_gpt, relative_error
from .solve import solve_system

DEFAULT_KAPPA = 0.5


class RequestError(ValueError):
    """Invalid compute request."""


@dataclass
class ComputeRequest:
    """Tensor properties (shape, contrast, order) plus approximation knobs.

    `basis_pairs` counts polynomial pairs per family (N1 = N2), so the
    polynomial count in the usual sense is 2 * basis_pairs.
    """

    shape: ShapeSpec
    contrast: float
    order: int
    points: int = 256
    basis_pairs: int | None = None
    kappa: float = DEFAULT_KAPPA
    dump_matrix: str | None = None

    def resolved_pairs(self) -> int:
        return self.basis_pairs if self.basis_pairs is not None else self.order + 1

    def validate(self) -> None:
        if self.contrast <= 0:
            raise RequestError("contrast must be positive")
        if self.order < 1:
            raise RequestError("order must be at least 1")
        if self.points < 8:
            raise RequestError("points must be at least 8")
        if not 0.0 < self.kappa < 1.0:
            raise RequestError("kappa must lie in (0, 1)")
        if self.resolved_pairs() < self.order:
            raise RequestError(
                f"basis_pairs={self.resolved_pairs()} cannot represent an order-"
                f"{self.order} tensor; need at least {self.order} pairs"
            )


def pairs_from_polynomial_count(count: int) -> int:
    """Polynomial count as surfaced in plots/UI -> pairs; odd counts round up."""
    if count < 2:
        raise RequestError("polynomial count must be at least 2")
    return (count + 1) // 2


def _oracle_for(spec: ShapeSpec, contrast: float, order: int) -> ContractedGPT | None:
    if isinstance(spec, Disk):
        return exact_disk_gpt(spec.radius, contrast, order)
    if isinstance(spec, Ellipse):
        return exact_ellipse_gpt(
            spec.semiaxis_a, spec.semiaxis_b, contrast, order, tilt=spec.tilt
        )
    return None


def compute_tensor(
    request: ComputeRequest, curve: BoundaryCurve | None = None
) -> tuple[ContractedGPT, dict]:
    """Run the pipeline; returns the de-normalized tensor and diagnostics.

    A pre-discretized curve may be passed for shapes that came from bitmap
    tracing; otherwise the request's shape is discretized.
    """
    request.validate()
    pairs = request.resolved_pairs()
    timings: dict[str, float] = {}

    t0 = time.perf_counter()
    if curve is None:
        curve = discretize(request.shape, request.points)
    normalized, frame = normalize(curve, request.kappa)
    timings["discretize_s"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    system = assemble_system(normalized, request.contrast, pairs, frame=frame)
    timings["assemble_s"] = time.perf_counter() - t0
    if request.dump_matrix:
        dump_system(system, request.dump_matrix)

    t0 = time.perf_counter()
    solution = solve_system(system)
    timings["solve_s"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    flux_gpt = extract_flux(solution, normalized, request.contrast, request.order, frame)
    trace_gpt = extract_trace(solution, normalized, request.contrast, request.order, frame)
    tensor = unscale(flux_gpt)
    tensor_trace = unscale(trace_gpt)
    timings["extract_s"] = time.perf_counter() - t0

    scale_ref = float(np.max(np.abs(tensor.entries)))
    consistency = (
        float(np.max(np.abs(tensor.entries - tensor_trace.entries)) / scale_ref)
        if scale_ref > 0
        else 0.0
    )
    warnings = []
    if pairs == request.order:
        warnings.append(
            "basis_pairs equals the tensor order; accuracy needs the maximal "
            "degree to exceed the order"
        )
    diagnostics = {
        "cond_estimate": solution.cond_estimate,
        "residual": solution.residual,
        "formula_consistency": consistency,
        "backend": backend_name(),
        "warnings": warnings,
        "timings": timings,
        "applied_scale": frame.scale,
    }
    return tensor, diagnostics


def build_document(request: ComputeRequest, tensor: ContractedGPT, diagnostics: dict) -> dict:
    """Assemble the JSON-ready tensor document shared by the CLI and service."""
    timings = dict(diagnostics.pop("timings"))
    timings["total_s"] = sum(timings.values())
    # scale records the normalization that was applied (the emitted entries
    # are already de-normalized); center is the area centroid the tensor is
    # taken about
    doc = {
        "version": __version__,
        "tensor": {
            "order": tensor.order,
            "contrast": tensor.contrast,
            "entries": tensor.entries.tolist(),
            "scale": diagnostics.pop("applied_scale"),
            "center": tensor.frame.shift.tolist(),
            "points": request.points,
            "basis_count": request.resolved_pairs(),
            "polynomial_count": 2 * request.resolved_pairs(),
            "bounding_radius": tensor.bounding_radius,
        },
        "diagnostics": diagnostics,
        "timings": timings,
    }

    exact = _oracle_for(request.shape, request.contrast, tensor.order)
    if exact is not None:
        try:
            report = relative_error(tensor.entries, exact.entries)
            doc["error_report"] = {
                "epsilon": report.max_relative,
                "l1": report.l1,
                "l2": report.l2,
                "linf": report.linf,
                "abs_diff": report.abs_diff.tolist(),
            }
        except ZeroTensorError:
            doc["error_report"] = {
                "epsilon": None,
                "note": "exact tensor is zero (contrast 1); relative error undefined",
            }
    return doc


def compute(request: ComputeRequest, curve: BoundaryCurve | None = None) -> dict:
    """Full pipeline returning the tensor document."""
    tensor, diagnostics = compute_tensor(request, curve=curve)
    return build_document(request, tensor, diagnostics)
