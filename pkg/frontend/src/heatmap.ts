/** Canvas heatmap with a signed diverging palette centered at zero
 * (tensor entries change sign with the contrast). */

export interface HeatmapOptions {
  cellSize?: number;
}

/** Blue (negative) through white (zero) to red (positive). */
export function divergingColor(value: number, maxAbs: number): string {
  if (maxAbs <= 0 || !Number.isFinite(value)) return "rgb(255,255,255)";
  const t = Math.max(-1, Math.min(1, value / maxAbs));
  const other = Math.round(255 * (1 - Math.abs(t)));
  return t >= 0
    ? `rgb(255,${other},${other})`
    : `rgb(${other},${other},255)`;
}

export function drawHeatmap(
  canvas: HTMLCanvasElement,
  entries: number[][],
  options: HeatmapOptions = {},
): void {
  const n = entries.length;
  const cell = options.cellSize ?? Math.max(6, Math.floor(240 / Math.max(n, 1)));
  canvas.width = n * cell;
  canvas.height = n * cell;
  const ctx = canvas.getContext("2d");
  if (!ctx) return; // headless test environments have no 2d context
  let maxAbs = 0;
  for (const row of entries) {
    for (const v of row) maxAbs = Math.max(maxAbs, Math.abs(v));
  }
  for (let i = 0; i < n; i++) {
    for (let j = 0; j < n; j++) {
      ctx.fillStyle = divergingColor(entries[i][j], maxAbs);
      ctx.fillRect(j * cell, i * cell, cell, cell);
    }
  }
}
