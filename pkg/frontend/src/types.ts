/** Wire types for the gpt2d service (mirrors the JSON schemas). */

export interface DiskShape {
  type: "disk";
  center: [number, number];
  radius: number;
}

export interface EllipseShape {
  type: "ellipse";
  center: [number, number];
  a: number;
  b: number;
  tilt: number;
}

export interface PolygonShape {
  type: "polygon";
  vertices: Array<[number, number]>;
}

export interface ContourShape {
  type: "contour";
  points: Array<[number, number]>;
}

export type ShapeDoc = DiskShape | EllipseShape | PolygonShape | ContourShape;

export interface ComputeRequestBody {
  shape: ShapeDoc;
  contrast: number;
  order: number;
  points: number;
  basis_pairs: number;
  kappa?: number;
}

export interface TensorSection {
  order: number;
  contrast: number;
  entries: number[][];
  scale: number;
  center: [number, number];
  points: number;
  basis_count: number;
  polynomial_count: number;
  bounding_radius: number | null;
}

export interface ErrorReport {
  epsilon: number | null;
  l1?: number;
  l2?: number;
  linf?: number;
  abs_diff?: number[][];
  note?: string;
}

export interface Diagnostics {
  cond_estimate: number;
  residual: number;
  formula_consistency: number;
  backend: string;
  warnings: string[];
}

export interface TensorDocument {
  version: string;
  tensor: TensorSection;
  diagnostics: Diagnostics;
  timings: Record<string, number>;
  error_report?: ErrorReport;
}

export interface ServiceError {
  version: string;
  error: {
    code: string;
    message: string;
    cond_estimate?: number;
  };
}

export interface OracleResponse {
  version: string;
  shape: ShapeDoc;
  tensor: {
    order: number;
    contrast: number;
    entries: number[][];
  };
}

export interface ImportResponse {
  version: string;
  shape: ContourShape;
  preview: Array<[number, number]>;
  centroid: [number, number];
  perimeter: number;
}

export function isServiceError(body: unknown): body is ServiceError {
  return typeof body === "object" && body !== null && "error" in body;
}
