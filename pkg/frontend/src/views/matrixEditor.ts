/** Override grid plus the alpha/k sliders and the re-rank action. */
import type { ConfigDraft, RowError } from "../config";
import { validateDraft } from "../config";
import { escapeHtml } from "../format";

const KINDS = ["substitution", "insertion", "deletion", "transposition"] as const;

export function renderMatrixEditor(draft: ConfigDraft, pending: boolean): string {
  const errors = validateDraft(draft);
  const byRow = new Map<number, string>();
  const global: string[] = [];
  for (const error of errors) {
    if (error.index < 0) global.push(error.message);
    else byRow.set(error.index, error.message);
  }
  const rows = draft.rows
    .map((row, index) => {
      const pairKind = row.kind === "substitution" || row.kind === "transposition";
      const error = byRow.get(index);
      const kindOptions = KINDS.map(
        (kind) => `<option value="${kind}"${kind === row.kind ? " selected" : ""}>${kind}</option>`,
      ).join("");
      return `<tr class="override-row${error ? " invalid" : ""}" data-row="${index}">
        <td><select data-field="kind">${kindOptions}</select></td>
        <td><input data-field="charA" maxlength="1" value="${escapeHtml(row.charA)}"></td>
        <td><input data-field="charB" maxlength="1" value="${escapeHtml(row.charB)}"${pairKind ? "" : " disabled"}></td>
        <td><input data-field="cost" type="number" step="0.05" min="0" value="${row.cost}"></td>
        <td><button data-action="remove-row" data-row="${index}">remove</button></td>
        <td class="row-error">${error ? escapeHtml(error) : ""}</td>
      </tr>`;
    })
    .join("");
  const blocked = errors.length > 0 || pending;
  return `<div class="matrix-editor">
    ${global.map((m) => `<p class="inline-error">${escapeHtml(m)}</p>`).join("")}
    <table class="overrides">
      <thead><tr><th>kind</th><th>char</th><th>char 2</th><th>cost</th><th></th><th></th></tr></thead>
      <tbody>${rows}</tbody>
    </table>
    <button data-action="add-row">add override</button>
    <label>alpha <input data-field="alpha" type="range" min="0" max="1" step="0.05" value="${draft.alpha}">
      <span class="alpha-value">${draft.alpha}</span></label>
    <label>k <input data-field="k" type="range" min="0" max="5" step="0.25" value="${draft.k}">
      <span class="k-value">${draft.k}</span></label>
    <label>default cost <input data-field="defaultCost" type="number" step="0.05" min="0" value="${draft.defaultCost}"></label>
    <label><input data-field="symmetricSubs" type="checkbox"${draft.symmetricSubs ? " checked" : ""}> symmetric substitutions</label>
    <div class="actions">
      <button data-action="rerank"${blocked ? " disabled" : ""}>${pending ? "re-ranking…" : "re-rank"}</button>
      <button data-action="export-config">export config</button>
      <label class="import">import config <input data-action="import-config" type="file" accept=".json"></label>
    </div>
  </div>`;
}

export function rerankBlocked(draft: ConfigDraft, pending: boolean): boolean {
  return pending || validateDraft(draft).length > 0;
}

export type { RowError };
