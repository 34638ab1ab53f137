/** Shape selection: disk/ellipse parameter forms, freehand polygon drawing
 * on a canvas, and bitmap upload with a traced-contour overlay. */

import { ApiClient, ApiError } from "./api.js";
import { Point, polygonArea, polygonIsSimple } from "./geometry.js";
import { SessionState } from "./state.js";
import { ContourShape, ShapeDoc } from "./types.js";

const CANVAS_SIZE = 320;
const WORLD_SPAN = 2.0; // canvas maps to [-1, 1]^2 in shape coordinates

export class ShapePanel {
  private mode: "disk" | "ellipse" | "draw" | "image" = "disk";
  private vertices: Point[] = [];
  private preview: Array<[number, number]> | null = null;
  private uploadedShape: ContourShape | null = null;
  private validationEl: HTMLElement;
  private canvas: HTMLCanvasElement;
  private fields: Record<string, HTMLInputElement> = {};

  constructor(
    private readonly root: HTMLElement,
    private readonly state: SessionState,
    private readonly api: ApiClient,
  ) {
    this.validationEl = document.createElement("p");
    this.validationEl.dataset.role = "shape-validation";
    this.validationEl.className = "warning";
    this.canvas = document.createElement("canvas");
    this.canvas.width = CANVAS_SIZE;
    this.canvas.height = CANVAS_SIZE;
    this.canvas.dataset.role = "shape-canvas";
    this.build();
    this.pushShape();
    this.redraw();
  }

  private numberField(name: string, value: number, step = 0.05): HTMLElement {
    const label = document.createElement("label");
    label.textContent = `${name} `;
    const input = document.createElement("input");
    input.type = "number";
    input.step = String(step);
    input.value = String(value);
    input.name = name;
    input.addEventListener("change", () => {
      this.pushShape();
      this.redraw();
    });
    label.appendChild(input);
    this.fields[name] = input;
    return label;
  }

  private build(): void {
    const modeSelect = document.createElement("select");
    modeSelect.dataset.role = "shape-mode";
    for (const mode of ["disk", "ellipse", "draw", "image"]) {
      const opt = document.createElement("option");
      opt.value = mode;
      opt.textContent = mode;
      modeSelect.appendChild(opt);
    }
    modeSelect.addEventListener("change", () => {
      this.mode = modeSelect.value as typeof this.mode;
      this.pushShape();
      this.redraw();
    });
    this.root.appendChild(modeSelect);

    const form = document.createElement("div");
    form.dataset.role = "shape-fields";
    form.append(
      this.numberField("radius", 0.5),
      this.numberField("a", 0.8),
      this.numberField("b", 0.3),
      this.numberField("tilt", 0.0),
    );
    this.root.appendChild(form);

    const upload = document.createElement("input");
    upload.type = "file";
    upload.accept = "image/*";
    upload.dataset.role = "shape-upload";
    upload.addEventListener("change", () => {
      const file = upload.files?.[0];
      if (file) void this.importImage(file);
    });
    this.root.appendChild(upload);

    const clear = document.createElement("button");
    clear.type = "button";
    clear.textContent = "clear drawing";
    clear.addEventListener("click", () => {
      this.vertices = [];
      this.pushShape();
      this.redraw();
    });
    this.root.appendChild(clear);

    this.canvas.addEventListener("click", (ev) => {
      if (this.mode !== "draw") return;
      const rect = this.canvas.getBoundingClientRect();
      this.addVertex(ev.clientX - rect.left, ev.clientY - rect.top);
    });
    this.root.appendChild(this.canvas);
    this.root.appendChild(this.validationEl);
  }

  /** Canvas pixel -> shape coordinates (y up). */
  addVertex(px: number, py: number): void {
    const x = (px / CANVAS_SIZE - 0.5) * WORLD_SPAN;
    const y = (0.5 - py / CANVAS_SIZE) * WORLD_SPAN;
    this.vertices.push([x, y]);
    this.pushShape();
    this.redraw();
  }

  async importImage(data: Blob): Promise<void> {
    try {
      const result = await this.api.importImage(data, this.state.approximation.points);
      this.uploadedShape = result.shape;
      this.preview = result.preview;
      this.mode = "image";
      this.validationEl.textContent = "";
      this.pushShape();
      this.redraw();
    } catch (err) {
      if (err instanceof ApiError) {
        this.validationEl.textContent = err.message;
        this.uploadedShape = null;
        this.state.setShape(null);
      } else {
        throw err;
      }
    }
  }

  private value(name: string): number {
    return Number(this.fields[name].value);
  }

  /** Current shape document, or null when the editor state is invalid. */
  currentShape(): ShapeDoc | null {
    if (this.mode === "disk") {
      return { type: "disk", center: [0, 0], radius: this.value("radius") };
    }
    if (this.mode === "ellipse") {
      return {
        type: "ellipse",
        center: [0, 0],
        a: this.value("a"),
        b: this.value("b"),
        tilt: this.value("tilt"),
      };
    }
    if (this.mode === "draw") {
      if (this.vertices.length < 3) {
        this.validationEl.textContent = "draw at least three vertices";
        return null;
      }
      if (!polygonIsSimple(this.vertices)) {
        this.validationEl.textContent = "stroke is self-intersecting";
        return null;
      }
      this.validationEl.textContent = "";
      const vertices = polygonArea(this.vertices) > 0
        ? [...this.vertices]
        : [...this.vertices].reverse();
      return { type: "polygon", vertices };
    }
    return this.uploadedShape;
  }

  private pushShape(): void {
    this.state.setShape(this.currentShape());
  }

  private redraw(): void {
    const ctx = this.canvas.getContext("2d");
    if (!ctx) return;
    ctx.clearRect(0, 0, CANVAS_SIZE, CANVAS_SIZE);
    const scale = CANVAS_SIZE / WORLD_SPAN;
    if (this.mode === "disk") {
      ctx.beginPath();
      ctx.arc(CANVAS_SIZE / 2, CANVAS_SIZE / 2, this.value("radius") * scale, 0, 2 * Math.PI);
      ctx.stroke();
    }
    if (this.mode === "ellipse") {
      ctx.beginPath();
      ctx.ellipse(
        CANVAS_SIZE / 2, CANVAS_SIZE / 2,
        this.value("a") * scale, this.value("b") * scale,
        -this.value("tilt"), 0, 2 * Math.PI,
      );
      ctx.stroke();
    }
    if (this.mode === "draw" && this.vertices.length) {
      ctx.beginPath();
      for (const [x, y] of this.vertices) {
        ctx.lineTo((x / WORLD_SPAN + 0.5) * CANVAS_SIZE, (0.5 - y / WORLD_SPAN) * CANVAS_SIZE);
      }
      ctx.closePath();
      ctx.stroke();
    }
    if (this.mode === "image" && this.preview) {
      // overlay the traced contour, normalized to the canvas
      const xs = this.preview.map((p) => p[0]);
      const ys = this.preview.map((p) => p[1]);
      const minX = Math.min(...xs), maxX = Math.max(...xs);
      const minY = Math.min(...ys), maxY = Math.max(...ys);
      const span = Math.max(maxX - minX, maxY - minY) || 1;
      ctx.beginPath();
      for (const [x, y] of this.preview) {
        ctx.lineTo(
          ((x - minX) / span) * (CANVAS_SIZE - 20) + 10,
          CANVAS_SIZE - (((y - minY) / span) * (CANVAS_SIZE - 20) + 10),
        );
      }
      ctx.closePath();
      ctx.stroke();
    }
  }
}
