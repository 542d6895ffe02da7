/** Typo-model controls, job progress, and the confusion-vs-score result. */
import { escapeHtml, verbatim } from "../format";
import type { SimulationResult } from "../types";
import { renderScatter } from "./scatter";

export interface SimulationForm {
  trials: number;
  delta: number;
  seed: number;
  eventsPerLabel: number;
}

export function defaultSimulationForm(): SimulationForm {
  return { trials: 5000, delta: 0, seed: 0, eventsPerLabel: 1 };
}

export function renderSimulationPanel(
  form: SimulationForm,
  result: SimulationResult | null,
  running: boolean,
): string {
  let body = "";
  if (running) {
    body = `<p class="placeholder">simulation running…</p>`;
  } else if (result?.status === "error") {
    body = `<p class="inline-error">${escapeHtml(result.error ?? "simulation failed")}</p>`;
  } else if (result?.status === "done" && result.correlation) {
    const corr = result.correlation;
    const headline = corr.degenerate
      ? `<p>No variance in confusion rates &mdash; the taxonomy is resilient under this noise model.</p>`
      : `<p>Spearman rho <strong>${verbatim(corr.rho)}</strong>,
         95% CI [${verbatim(corr.ci_low)}, ${verbatim(corr.ci_high)}]
         over ${corr.n_pairs} pairs.</p>`;
    body = `${headline}${renderScatter(corr.pairs)}`;
  }
  return `<div class="simulation-panel">
    <label>trials <input data-sim="trials" type="number" min="1" value="${form.trials}"></label>
    <label>margin &delta; <input data-sim="delta" type="number" min="0" step="0.1" value="${form.delta}"></label>
    <label>seed <input data-sim="seed" type="number" value="${form.seed}"></label>
    <label>events/trial <input data-sim="eventsPerLabel" type="number" min="0" value="${form.eventsPerLabel}"></label>
    <button data-action="simulate"${running ? " disabled" : ""}>${running ? "running…" : "run simulation"}</button>
    ${body}
  </div>`;
}
