/** Shared number formatting: every rendered value goes through here so the
 * DOM tests can recompute the expected text from the bound field. */

/** Tensor entries and error measures: six significant digits, exponent
 * notation outside a readable magnitude window. */
export function formatValue(value: number): string {
  if (!Number.isFinite(value)) return String(value);
  if (value === 0) return "0";
  const magnitude = Math.abs(value);
  if (magnitude >= 1e-4 && magnitude < 1e6) {
    return trimZeros(value.toPrecision(6));
  }
  return value.toExponential(3);
}

/** Integers (orders, point counts) rendered exactly. */
export function formatInteger(value: number): string {
  return String(value);
}

function trimZeros(text: string): string {
  if (!text.includes(".")) return text;
  return text.replace(/\.?0+$/, "");
}

/** Resolve a dotted path like "tensor.entries.0.1" inside a document. */
export function resolvePath(doc: unknown, path: string): unknown {
  let node: unknown = doc;
  for (const part of path.split(".")) {
    if (node === null || typeof node !== "object") return undefined;
    node = (node as Record<string, unknown>)[part];
  }
  return node;
}
