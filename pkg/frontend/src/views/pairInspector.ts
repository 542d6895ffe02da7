/** Operation-by-operation audit of one pair's score.
 *
 * Every number is rendered verbatim from the service response; this view
 * performs no arithmetic at all.
 */
import { escapeHtml, verbatim } from "../format";
import type { PairDetailResponse } from "../types";

export function renderPairInspector(detail: PairDetailResponse | null): string {
  if (detail === null) {
    return `<p class="placeholder">Select a pair to inspect its decomposition.</p>`;
  }
  const banner = detail.flags.includes("duplicate-collision")
    ? `<p class="banner warning">These labels collapse to the same string after case folding &mdash; likely the same category entered twice.</p>`
    : "";
  const opRows = detail.path.ops
    .map(
      (op, index) => `<tr>
        <td>${index + 1}</td>
        <td>${op.kind}</td>
        <td>${escapeHtml(op.chars.join(" → "))}</td>
        <td>${verbatim(op.cost)}</td>
        <td>${op.pos_a}</td>
      </tr>`,
    )
    .join("");
  const decomposition: Array<[string, number]> = [
    ["fmn", detail.fmn],
    ["dsn", detail.dsn],
    ["cm", detail.cm],
    ["cp", detail.cp],
    ["cmp", detail.cmp],
    ["isec", detail.isec],
  ];
  const cells = decomposition
    .map(([name, value]) => `<tr><th>${name}</th><td class="value-${name}">${verbatim(value)}</td></tr>`)
    .join("");
  return `<div class="pair-inspector">
    ${banner}
    <h3>${escapeHtml(detail.label_i)} ↔ ${escapeHtml(detail.label_j)} <small>rank ${detail.rank}</small></h3>
    <table class="decomposition"><tbody>${cells}</tbody></table>
    <h4>edit path (${verbatim(detail.path.total_cost)} total, ${detail.path.n_ops} ops)</h4>
    <table class="ops">
      <thead><tr><th>#</th><th>op</th><th>chars</th><th>cost</th><th>pos</th></tr></thead>
      <tbody>${opRows}</tbody>
    </table>
  </div>`;
}
