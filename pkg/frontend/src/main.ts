/** Application wiring: panels, explicit compute button, in-flight locking. */

import { ApiClient, ApiError } from "./api.js";
import { ResultsPanel } from "./results-panel.js";
import { ShapePanel } from "./shape-panel.js";
import { SessionState } from "./state.js";
import { OracleResponse } from "./types.js";

function numberInput(label: string, value: number, step: string): [HTMLElement, HTMLInputElement] {
  const wrap = document.createElement("label");
  wrap.textContent = `${label} `;
  const input = document.createElement("input");
  input.type = "number";
  input.step = step;
  input.value = String(value);
  wrap.appendChild(input);
  return [wrap, input];
}

async function oracleFor(api: ApiClient, state: SessionState): Promise<OracleResponse | null> {
  const shape = state.shape;
  if (!shape) return null;
  const base = { contrast: state.properties.contrast, order: state.properties.order };
  try {
    if (shape.type === "disk") {
      return await api.oracle({ shape: "disk", radius: shape.radius, ...base });
    }
    if (shape.type === "ellipse") {
      return await api.oracle({ shape: "ellipse", a: shape.a, b: shape.b, tilt: shape.tilt, ...base });
    }
  } catch {
    return null; // no analytic reference (e.g. contrast 1): comparison panel stays off
  }
  return null;
}

export function startApp(root: HTMLElement, api: ApiClient = new ApiClient()): SessionState {
  const state = new SessionState();

  const shapeRoot = document.createElement("section");
  shapeRoot.id = "shape-panel";
  const paramsRoot = document.createElement("section");
  paramsRoot.id = "parameter-panel";
  const resultsRoot = document.createElement("section");
  resultsRoot.id = "results-panel";
  root.append(shapeRoot, paramsRoot, resultsRoot);

  new ShapePanel(shapeRoot, state, api);
  const results = new ResultsPanel(resultsRoot);

  const [orderWrap, orderInput] = numberInput("tensor order", state.properties.order, "1");
  const [contrastWrap, contrastInput] = numberInput("contrast", state.properties.contrast, "0.01");
  const [pointsWrap, pointsInput] = numberInput("boundary points", state.approximation.points, "1");
  const [polyWrap, polyInput] = numberInput(
    "polynomial count", state.approximation.polynomialCount, "1",
  );
  orderInput.addEventListener("change", () =>
    state.setProperties({ order: Number(orderInput.value) }));
  contrastInput.addEventListener("change", () =>
    state.setProperties({ contrast: Number(contrastInput.value) }));
  pointsInput.addEventListener("change", () =>
    state.setApproximation({ points: Number(pointsInput.value) }));
  polyInput.addEventListener("change", () =>
    state.setApproximation({ polynomialCount: Number(polyInput.value) }));

  const compute = document.createElement("button");
  compute.id = "compute-button";
  compute.textContent = "Compute";
  paramsRoot.append(orderWrap, contrastWrap, pointsWrap, polyWrap, compute);

  const inputs = [orderInput, contrastInput, pointsInput, polyInput, compute];
  state.subscribe(() => {
    for (const el of inputs) (el as HTMLInputElement | HTMLButtonElement).disabled = state.inFlight;
  });

  compute.addEventListener("click", async () => {
    if (state.inFlight || !state.shape) return;
    const token = state.beginCompute();
    try {
      const [doc, oracle] = await Promise.all([
        api.compute(state.requestBody()),
        oracleFor(api, state),
      ]);
      if (state.completeCompute(token, { document: doc, oracle }, null)) {
        results.render(doc, oracle);
      }
    } catch (err) {
      const apiErr = err instanceof ApiError
        ? err
        : new ApiError({ code: "network", message: String(err) });
      if (state.completeCompute(token, null, apiErr)) {
        results.renderError(apiErr);
      }
    }
  });

  return state;
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  startApp(document.getElementById("app")!);
}
