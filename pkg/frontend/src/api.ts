/** Typed client of the gpt2d service.  The UI never computes tensor values
 * itself: everything displayed comes from these responses. */

import {
  ComputeRequestBody,
  ImportResponse,
  isServiceError,
  OracleResponse,
  ServiceError,
  TensorDocument,
} from "./types.js";

export class ApiError extends Error {
  readonly code: string;
  readonly condEstimate?: number;

  constructor(err: ServiceError["error"]) {
    super(err.message);
    this.code = err.code;
    this.condEstimate = err.cond_estimate;
  }
}

async function parseBody(resp: Response): Promise<unknown> {
  try {
    return await resp.json();
  } catch {
    throw new ApiError({ code: "bad_response", message: `HTTP ${resp.status}` });
  }
}

function unwrap<T>(resp: Response, body: unknown): T {
  if (!resp.ok || isServiceError(body)) {
    if (isServiceError(body)) throw new ApiError(body.error);
    throw new ApiError({ code: "bad_response", message: `HTTP ${resp.status}` });
  }
  return body as T;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: typeof fetch = fetch.bind(globalThis),
  ) {}

  async health(): Promise<{ status: string; version: string }> {
    const resp = await this.fetchFn(`${this.baseUrl}/health`);
    return unwrap(resp, await parseBody(resp));
  }

  async compute(request: ComputeRequestBody): Promise<TensorDocument> {
    const resp = await this.fetchFn(`${this.baseUrl}/compute`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
    });
    return unwrap(resp, await parseBody(resp));
  }

  async importImage(data: Blob | ArrayBuffer, points: number): Promise<ImportResponse> {
    const resp = await this.fetchFn(`${this.baseUrl}/import?points=${points}`, {
      method: "POST",
      headers: { "Content-Type": "application/octet-stream" },
      body: data,
    });
    return unwrap(resp, await parseBody(resp));
  }

  async oracle(params: Record<string, string | number>): Promise<OracleResponse> {
    const query = Object.entries(params)
      .map(([k, v]) => `${encodeURIComponent(k)}=${encodeURIComponent(String(v))}`)
      .join("&");
    const resp = await this.fetchFn(`${this.baseUrl}/oracle?${query}`);
    return unwrap(resp, await parseBody(resp));
  }
}
