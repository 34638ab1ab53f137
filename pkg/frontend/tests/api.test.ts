import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import type { ServiceError, TensorDocument } from "../src/types.js";

import diskDoc from "./fixtures/disk-compute.json";
import illDoc from "./fixtures/ill-conditioned.json";

function fetchReturning(status: number, body: unknown): typeof fetch {
  return async () =>
    new Response(JSON.stringify(body), {
      status,
      headers: { "Content-Type": "application/json" },
    });
}

describe("api client", () => {
  it("returns the tensor document untouched", async () => {
    const api = new ApiClient("", fetchReturning(200, diskDoc));
    const doc = await api.compute({
      shape: { type: "disk", center: [0, 0], radius: 0.5 },
      contrast: 1 / 3,
      order: 4,
      points: 256,
      basis_pairs: 5,
    });
    expect(doc).toEqual(diskDoc as unknown as TensorDocument);
  });

  it("maps structured service errors to ApiError with the verbatim message", async () => {
    const api = new ApiClient("", fetchReturning(422, illDoc));
    const fixture = illDoc as unknown as ServiceError;
    await expect(
      api.compute({
        shape: { type: "disk", center: [0, 0], radius: 0.5 },
        contrast: 1 / 3,
        order: 12,
        points: 16,
        basis_pairs: 13,
      }),
    ).rejects.toMatchObject({
      code: "ill_conditioned",
      message: fixture.error.message,
      condEstimate: fixture.error.cond_estimate,
    });
  });

  it("posts the request body it was given", async () => {
    let captured: string | undefined;
    const spy: typeof fetch = async (_url, init) => {
      captured = init?.body as string;
      return new Response(JSON.stringify(diskDoc), { status: 200 });
    };
    const api = new ApiClient("", spy);
    const body = {
      shape: { type: "disk" as const, center: [0, 0] as [number, number], radius: 0.5 },
      contrast: 0.25,
      order: 2,
      points: 64,
      basis_pairs: 3,
    };
    await api.compute(body);
    expect(JSON.parse(captured!)).toEqual(body);
  });

  it("wraps undecodable responses", async () => {
    const bad: typeof fetch = async () => new Response("not json", { status: 500 });
    const api = new ApiClient("", bad);
    await expect(api.health()).rejects.toBeInstanceOf(ApiError);
  });
});
