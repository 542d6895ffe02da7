/** Ranking table with rank-delta arrows against the previous snapshot. */
import type { PairDelta } from "../diff";
import { ARROW_GLYPH, diffRankings, pairKey } from "../diff";
import { compact, escapeHtml } from "../format";
import type { RankResponse } from "../types";

/** Morphology columns lose meaning at alpha = 1 (their exponent is zero),
 * so they render greyed to make the slider's effect visible. */
export function morphologyGreyed(alpha: number): boolean {
  return alpha === 1;
}

export function renderRankingTable(
  current: RankResponse | null,
  previous: RankResponse | null,
  alpha: number,
): string {
  if (current === null) {
    return `<p class="placeholder">Upload a dataset and re-rank to see pairs.</p>`;
  }
  const deltas = diffRankings(current.pairs, previous?.pairs ?? null);
  const grey = morphologyGreyed(alpha) ? " greyed" : "";
  const rows = current.pairs
    .map((pair) => {
      const delta = deltas.get(pairKey(pair)) as PairDelta;
      const title =
        delta.arrow === "new"
          ? "not in previous snapshot"
          : `score ${delta.scoreDelta >= 0 ? "+" : ""}${delta.scoreDelta}; moved ${delta.positions} rank(s)`;
      const flags = pair.flags.length
        ? `<span class="flags">${escapeHtml(pair.flags.join(";"))}</span>`
        : "";
      return `<tr data-i="${pair.i}" data-j="${pair.j}" class="pair-row">
        <td>${pair.rank}</td>
        <td class="arrow arrow-${delta.arrow}" title="${escapeHtml(title)}">${ARROW_GLYPH[delta.arrow]}</td>
        <td>${escapeHtml(pair.label_i)}</td>
        <td>${escapeHtml(pair.label_j)}</td>
        <td>${compact(pair.isec)}</td>
        <td>${compact(pair.fmn)}</td>
        <td>${compact(pair.dsn)}</td>
        <td class="morph${grey}">${compact(pair.cm)}</td>
        <td class="morph${grey}">${compact(pair.cp)}</td>
        <td class="morph${grey}">${compact(pair.cmp)}</td>
        <td>${flags}</td>
      </tr>`;
    })
    .join("");
  const warnings = current.warnings.length
    ? `<p class="warnings">${current.warnings.map(escapeHtml).join("; ")}</p>`
    : "";
  return `${warnings}<table class="ranking">
    <thead><tr>
      <th>#</th><th>&Delta;</th><th>label i</th><th>label j</th>
      <th>isec</th><th>fmn</th><th>dsn</th>
      <th class="morph${grey}">cm</th><th class="morph${grey}">cp</th><th class="morph${grey}">cmp</th>
      <th>flags</th>
    </tr></thead>
    <tbody>${rows}</tbody>
  </table>`;
}
