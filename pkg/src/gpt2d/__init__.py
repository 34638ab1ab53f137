"""Contracted generalized polarization tensors of 2-D conductivity inclusions.

A boundary-integral Galerkin engine: harmonic polynomial trial/test spaces
on a discretized inclusion boundary, dense midpoint-rule assembly with
analytic singular corrections, direct solve, and tensor extraction, with
analytic disk/ellipse references for validation.
"""

__version__ = "0.1.0"

from .basis import BasisIndex, eval_dtau, eval_grad, eval_P, eval_Q
from .curve import (
    BoundaryCurve,
    Contour,
    Disk,
    Ellipse,
    FrameTransform,
    Polygon,
    ShapeError,
    ShapeSpec,
    discretize,
    normalize,
    rotate_shape,
    shape_from_dict,
    shape_to_dict,
    signed_area,
)
from .assembly import GalerkinSystem, NormalizationError, assemble_system
from .gpt import (
    ContractedGPT,
    HarmonicFieldCoefficients,
    extract_flux,
    extract_trace,
    farfield_eval,
    rotate_tensor,
    unscale,
)
from .ingest import BinaryMask, MaskError, load_mask, trace_contour
from .oracle import (
    ErrorReport,
    ZeroTensorError,
    exact_disk_gpt,
    exact_ellipse_gpt,
    relative_error,
)
from .pipeline import ComputeRequest, RequestError, compute, pairs_from_polynomial_count
from .solve import BoundarySolution, IllConditionedError, solve_system

__all__ = [
    "__version__",
    "BasisIndex",
    "BinaryMask",
    "BoundaryCurve",
    "BoundarySolution",
    "ComputeRequest",
    "ContractedGPT",
    "Contour",
    "Disk",
    "Ellipse",
    "ErrorReport",
    "FrameTransform",
    "GalerkinSystem",
    "HarmonicFieldCoefficients",
    "IllConditionedError",
    "MaskError",
    "NormalizationError",
    "Polygon",
    "RequestError",
    "ShapeError",
    "ShapeSpec",
    "ZeroTensorError",
    "assemble_system",
    "compute",
    "discretize",
    "eval_P",
    "eval_Q",
    "eval_dtau",
    "eval_grad",
    "exact_disk_gpt",
    "exact_ellipse_gpt",
    "extract_flux",
    "extract_trace",
    "farfield_eval",
    "load_mask",
    "normalize",
    "pairs_from_polynomial_count",
    "relative_error",
    "rotate_shape",
    "rotate_tensor",
    "shape_from_dict",
    "shape_to_dict",
    "signed_area",
    "solve_system",
    "trace_contour",
    "unscale",
]
