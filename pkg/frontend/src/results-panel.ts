/** Result views: tensor heatmap and numeric grids, exact-vs-approximate
 * comparison with error measures, conditioning badge, error surfacing.
 *
 * Every rendered number is created through `bindValue`, which resolves a
 * field path inside a service response; nothing numeric is computed on the
 * client.  The binding path is kept on the element (data-doc / data-bind /
 * data-fmt) so tests can re-resolve each one against the raw response.
 */

import { ApiError } from "./api.js";
import { formatInteger, formatValue, resolvePath } from "./format.js";
import { drawHeatmap } from "./heatmap.js";
import { OracleResponse, TensorDocument } from "./types.js";

type DocRef = "result" | "oracle" | "error";
type Fmt = "value" | "int";

export class ResultsPanel {
  private documents: Partial<Record<DocRef, unknown>> = {};

  constructor(private readonly root: HTMLElement) {}

  clear(): void {
    this.root.textContent = "";
    this.documents = {};
  }

  private bindValue(docRef: DocRef, path: string, fmt: Fmt = "value"): HTMLElement {
    const el = document.createElement("span");
    el.dataset.doc = docRef;
    el.dataset.bind = path;
    el.dataset.fmt = fmt;
    const value = resolvePath(this.documents[docRef], path);
    if (typeof value === "number") {
      el.textContent = fmt === "int" ? formatInteger(value) : formatValue(value);
    } else {
      el.textContent = "—";
    }
    return el;
  }

  private section(title: string, role: string): HTMLElement {
    const div = document.createElement("div");
    div.className = "results-section";
    div.dataset.role = role;
    const heading = document.createElement("h3");
    heading.textContent = title;
    div.appendChild(heading);
    this.root.appendChild(div);
    return div;
  }

  private basisLabel(index: number): string {
    const degree = Math.floor(index / 2) + 1;
    return index % 2 === 0 ? `a${degree}` : `b${degree}`;
  }

  private grid(docRef: DocRef, pathPrefix: string, size: number): HTMLTableElement {
    const table = document.createElement("table");
    table.className = "tensor-grid";
    const head = document.createElement("tr");
    head.appendChild(document.createElement("th"));
    for (let j = 0; j < size; j++) {
      const th = document.createElement("th");
      th.textContent = this.basisLabel(j);
      head.appendChild(th);
    }
    table.appendChild(head);
    for (let i = 0; i < size; i++) {
      const row = document.createElement("tr");
      const th = document.createElement("th");
      th.textContent = this.basisLabel(i);
      row.appendChild(th);
      for (let j = 0; j < size; j++) {
        const cell = document.createElement("td");
        cell.appendChild(this.bindValue(docRef, `${pathPrefix}.${i}.${j}`));
        row.appendChild(cell);
      }
      table.appendChild(row);
    }
    return table;
  }

  private badge(label: string, el: HTMLElement, className = ""): HTMLElement {
    const badge = document.createElement("span");
    badge.className = `badge ${className}`.trim();
    const name = document.createElement("label");
    name.textContent = `${label}: `;
    badge.append(name, el);
    return badge;
  }

  renderError(error: ApiError): void {
    this.clear();
    this.documents.error = { error: { cond_estimate: error.condEstimate } };
    const section = this.section("Computation failed", "error");
    const code = document.createElement("p");
    code.dataset.role = "error-code";
    code.textContent = error.code;
    section.appendChild(code);
    // the service message is shown verbatim, not paraphrased
    const message = document.createElement("pre");
    message.dataset.role = "error-message";
    message.textContent = error.message;
    section.appendChild(message);
    if (error.condEstimate !== undefined) {
      section.appendChild(
        this.badge("condition estimate", this.bindValue("error", "error.cond_estimate"), "warn"),
      );
    }
  }

  render(doc: TensorDocument, oracle: OracleResponse | null): void {
    this.clear();
    this.documents.result = doc;
    this.documents.oracle = oracle ?? undefined;

    const summary = this.section("Computed tensor", "summary");
    summary.append(
      this.badge("order", this.bindValue("result", "tensor.order", "int")),
      this.badge("contrast", this.bindValue("result", "tensor.contrast")),
      this.badge("points", this.bindValue("result", "tensor.points", "int")),
      this.badge("polynomials", this.bindValue("result", "tensor.polynomial_count", "int")),
      this.badge(
        "condition estimate",
        this.bindValue("result", "diagnostics.cond_estimate"),
        doc.diagnostics.cond_estimate > 1e8 ? "warn" : "",
      ),
    );
    for (const warning of doc.diagnostics.warnings) {
      const p = document.createElement("p");
      p.className = "warning";
      p.dataset.role = "diagnostic-warning";
      p.textContent = warning;
      summary.appendChild(p);
    }

    const size = 2 * doc.tensor.order;
    const tensorSection = this.section("Entries", "tensor");
    const canvas = document.createElement("canvas");
    canvas.dataset.role = "heatmap";
    tensorSection.appendChild(canvas);
    drawHeatmap(canvas, doc.tensor.entries);
    tensorSection.appendChild(this.grid("result", "tensor.entries", size));

    const report = doc.error_report;
    if (!report) return;

    const errorSection = this.section("Comparison with the exact tensor", "error-report");
    if (report.epsilon === null) {
      const note = document.createElement("p");
      note.dataset.role = "epsilon-disabled";
      note.textContent = report.note ?? "relative error undefined";
      errorSection.appendChild(note);
      return;
    }
    errorSection.append(
      this.badge("max relative error", this.bindValue("result", "error_report.epsilon"),
        report.epsilon < 0.01 ? "good" : "warn"),
      this.badge("L1", this.bindValue("result", "error_report.l1")),
      this.badge("L2", this.bindValue("result", "error_report.l2")),
      this.badge("Linf", this.bindValue("result", "error_report.linf")),
    );
    if (oracle) {
      const exact = this.section("Exact tensor", "oracle");
      exact.appendChild(this.grid("oracle", "tensor.entries", size));
    }
    if (report.abs_diff) {
      const diff = this.section("Absolute difference", "abs-diff");
      diff.appendChild(this.grid("result", "error_report.abs_diff", size));
    }
  }
}
