/** Session state: one shape, tensor properties, approximation parameters,
 * at most one compute in flight, stale responses discarded by token. */

import { ApiError } from "./api.js";
import { ComputeRequestBody, OracleResponse, ShapeDoc, TensorDocument } from "./types.js";

export interface TensorProperties {
  order: number;
  contrast: number;
}

export interface ApproximationParameters {
  points: number;
  polynomialCount: number;
}

export interface SessionResult {
  document: TensorDocument;
  oracle: OracleResponse | null;
}

export type Listener = () => void;

export function pairsFromPolynomialCount(count: number): number {
  return Math.ceil(count / 2);
}

export class SessionState {
  shape: ShapeDoc | null = null;
  properties: TensorProperties = { order: 4, contrast: 1 / 3 };
  approximation: ApproximationParameters = { points: 256, polynomialCount: 10 };
  inFlight = false;
  result: SessionResult | null = null;
  lastError: ApiError | null = null;

  private token = 0;
  private listeners: Listener[] = [];

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const fn of this.listeners) fn();
  }

  setShape(shape: ShapeDoc | null): void {
    this.shape = shape;
    this.emit();
  }

  /** Parameter edits never touch displayed results (explicit-compute model). */
  setProperties(props: Partial<TensorProperties>): void {
    this.properties = { ...this.properties, ...props };
    this.emit();
  }

  setApproximation(params: Partial<ApproximationParameters>): void {
    this.approximation = { ...this.approximation, ...params };
    this.emit();
  }

  requestBody(): ComputeRequestBody {
    if (!this.shape) throw new Error("no shape selected");
    return {
      shape: this.shape,
      contrast: this.properties.contrast,
      order: this.properties.order,
      points: this.approximation.points,
      basis_pairs: pairsFromPolynomialCount(this.approximation.polynomialCount),
    };
  }

  /** Marks a compute as started; returns the token the response must carry. */
  beginCompute(): number {
    this.token += 1;
    this.inFlight = true;
    this.emit();
    return this.token;
  }

  /** Ignores responses from superseded computes. */
  completeCompute(token: number, result: SessionResult | null, error: ApiError | null): boolean {
    if (token !== this.token) return false;
    this.inFlight = false;
    if (error) {
      this.lastError = error;
    } else {
      this.result = result;
      this.lastError = null;
    }
    this.emit();
    return true;
  }
}
