/** Hand-rolled SVG scatter of empirical confusion rate vs. pair score. */
import type { CorrelationPair } from "../types";

const WIDTH = 420;
const HEIGHT = 260;
const PAD = 30;

export function renderScatter(pairs: CorrelationPair[]): string {
  if (pairs.length === 0) {
    return `<p class="placeholder">No pairs to plot.</p>`;
  }
  const xs = pairs.map((p) => p.isec);
  const ys = pairs.map((p) => p.confusion_rate);
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yMax = Math.max(...ys, 1e-9);
  const xSpan = xMax - xMin || 1;
  const points = pairs
    .map((pair) => {
      const x = PAD + ((pair.isec - xMin) / xSpan) * (WIDTH - 2 * PAD);
      const y = HEIGHT - PAD - (pair.confusion_rate / yMax) * (HEIGHT - 2 * PAD);
      const title = `${pair.label_i} / ${pair.label_j}: rate ${pair.confusion_rate}, score ${pair.isec}`;
      return `<circle cx="${x.toFixed(1)}" cy="${y.toFixed(1)}" r="3"><title>${title}</title></circle>`;
    })
    .join("");
  return `<svg class="scatter" viewBox="0 0 ${WIDTH} ${HEIGHT}" role="img" aria-label="confusion vs score">
    <line x1="${PAD}" y1="${HEIGHT - PAD}" x2="${WIDTH - PAD}" y2="${HEIGHT - PAD}" class="axis"/>
    <line x1="${PAD}" y1="${PAD}" x2="${PAD}" y2="${HEIGHT - PAD}" class="axis"/>
    <text x="${WIDTH / 2}" y="${HEIGHT - 6}" class="axis-label">isec</text>
    <text x="8" y="${HEIGHT / 2}" class="axis-label" transform="rotate(-90 8 ${HEIGHT / 2})">confusion</text>
    ${points}
  </svg>`;
}
