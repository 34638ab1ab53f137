/** End-to-end wiring through a mocked fetch: compute button drives the
 * service and the results panel, controls lock while in flight. */

import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { startApp } from "../src/main.js";

import diskDoc from "./fixtures/disk-compute.json";
import oracleDoc from "./fixtures/disk-oracle.json";
import illDoc from "./fixtures/ill-conditioned.json";

function appWith(fetchFn: typeof fetch): HTMLElement {
  document.body.innerHTML = "";
  const root = document.createElement("main");
  document.body.appendChild(root);
  startApp(root, new ApiClient("", fetchFn));
  return root;
}

function respond(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), { status });
}

async function settle(): Promise<void> {
  await new Promise((resolve) => setTimeout(resolve, 0));
  await new Promise((resolve) => setTimeout(resolve, 0));
}

beforeEach(() => {
  document.body.innerHTML = "";
});

describe("application wiring", () => {
  it("computes the default disk and renders bound results", async () => {
    const root = appWith(async (url) => {
      const path = String(url);
      if (path.includes("/compute")) return respond(diskDoc);
      if (path.includes("/oracle")) return respond(oracleDoc);
      return respond({ version: "x", status: "ok" });
    });
    (root.querySelector("#compute-button") as HTMLButtonElement).click();
    await settle();
    expect(root.querySelectorAll("#results-panel [data-bind]").length).toBeGreaterThan(0);
    expect(root.querySelector('[data-role="oracle"]')).not.toBeNull();
  });

  it("locks the compute button while a request is in flight", async () => {
    let release: (() => void) | null = null;
    const gate = new Promise<void>((resolve) => (release = resolve));
    const root = appWith(async (url) => {
      if (String(url).includes("/compute")) {
        await gate;
        return respond(diskDoc);
      }
      return respond(oracleDoc);
    });
    const button = root.querySelector("#compute-button") as HTMLButtonElement;
    button.click();
    await new Promise((resolve) => setTimeout(resolve, 0));
    expect(button.disabled).toBe(true);
    release!();
    await settle();
    expect(button.disabled).toBe(false);
  });

  it("surfaces compute failures in the results panel", async () => {
    const root = appWith(async (url) => {
      if (String(url).includes("/compute")) return respond(illDoc, 422);
      return respond(oracleDoc);
    });
    (root.querySelector("#compute-button") as HTMLButtonElement).click();
    await settle();
    const message = root.querySelector('[data-role="error-message"]');
    expect(message?.textContent).toBe((illDoc as any).error.message);
  });
});
