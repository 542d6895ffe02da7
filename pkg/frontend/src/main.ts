/** App wiring: one state object, section renderers, delegated events. */
import { ApiError, ServiceClient } from "./api";
import type { ConfigDraft, OverrideKind } from "./config";
import { draftFromJson, draftToJson, exportDraft } from "./config";
import { escapeHtml } from "./format";
import type { SessionState } from "./state";
import { applyDataset, applyError, applyRanking, initialState } from "./state";
import { renderMatrixEditor, rerankBlocked } from "./views/matrixEditor";
import { renderPairInspector } from "./views/pairInspector";
import type { SimulationForm } from "./views/simulationPanel";
import { defaultSimulationForm, renderSimulationPanel } from "./views/simulationPanel";
import { renderRankingTable } from "./views/rankingTable";

const client = new ServiceClient();
let state: SessionState = initialState();
let simulationForm: SimulationForm = defaultSimulationForm();
let simulationRunning = false;

function section(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing section #${id}`);
  return node;
}

function render(): void {
  section("status").innerHTML = state.error
    ? `<p class="inline-error">${escapeHtml(state.error)}</p>`
    : state.datasetId
      ? `<p>dataset <code>${escapeHtml(state.datasetId)}</code> &middot; ${state.nLabels} labels` +
        (state.current ? ` &middot; fingerprint <code>${escapeHtml(state.current.fingerprint.slice(0, 12))}</code>` : "") +
        `</p>`
      : `<p>No dataset uploaded yet.</p>`;
  section("editor").innerHTML = renderMatrixEditor(state.draft, state.rerankPending);
  section("ranking").innerHTML = renderRankingTable(state.current, state.previous, state.draft.alpha);
  section("inspector").innerHTML = renderPairInspector(state.selectedPair);
  section("simulation").innerHTML = renderSimulationPanel(simulationForm, state.simulation, simulationRunning);
}

function setState(next: SessionState): void {
  state = next;
  render();
}

async function rerank(): Promise<void> {
  if (!state.datasetId || rerankBlocked(state.draft, state.rerankPending)) return;
  setState({ ...state, rerankPending: true, error: null });
  try {
    const ranking = await client.rank(state.datasetId, draftToJson(state.draft));
    setState(applyRanking(state, ranking));
  } catch (error) {
    setState(applyError(state, describe(error)));
  }
}

function describe(error: unknown): string {
  if (error instanceof ApiError) {
    const detail = error.body.detail ? ` (${error.body.detail})` : "";
    return `${error.body.message}${detail}`;
  }
  return String(error);
}

async function selectPair(i: number, j: number): Promise<void> {
  if (!state.datasetId) return;
  try {
    const detail = await client.pairDetail(state.datasetId, i, j);
    setState({ ...state, selectedPair: detail, error: null });
  } catch (error) {
    setState(applyError(state, describe(error)));
  }
}

async function runSimulation(): Promise<void> {
  if (!state.datasetId || simulationRunning) return;
  simulationRunning = true;
  render();
  try {
    const { job_id } = await client.startSimulation(
      state.datasetId,
      { events_per_label: simulationForm.eventsPerLabel },
      simulationForm.trials,
      simulationForm.delta,
      simulationForm.seed,
    );
    const poll = async (): Promise<void> => {
      const status = await client.jobStatus(job_id);
      if (status.status === "running") {
        setTimeout(() => void poll().catch(onPollError), 400);
        return;
      }
      simulationRunning = false;
      setState({ ...state, simulation: status, simulationJob: job_id });
    };
    const onPollError = (error: unknown): void => {
      simulationRunning = false;
      setState(applyError(state, describe(error)));
    };
    await poll();
  } catch (error) {
    simulationRunning = false;
    setState(applyError(state, describe(error)));
  }
}

function updateDraft(mutate: (draft: ConfigDraft) => void): void {
  const draft: ConfigDraft = { ...state.draft, rows: state.draft.rows.map((row) => ({ ...row })) };
  mutate(draft);
  setState({ ...state, draft });
}

function downloadConfig(): void {
  const blob = new Blob([exportDraft(state.draft)], { type: "application/json" });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = "cost-config.json";
  anchor.click();
  URL.revokeObjectURL(url);
}

async function importConfig(file: File): Promise<void> {
  try {
    const draft = draftFromJson(JSON.parse(await file.text()));
    setState({ ...state, draft, error: null });
  } catch (error) {
    setState(applyError(state, `config import failed: ${describe(error)}`));
  }
}

async function uploadDataset(file: File, labelCol: string, freqCol: string): Promise<void> {
  try {
    const info = await client.uploadDataset(file, {
      labelCol: labelCol || undefined,
      freqCol: freqCol || undefined,
    });
    setState(applyDataset(state, info.id, info.n_labels));
  } catch (error) {
    setState(applyError(state, describe(error)));
  }
}

function wireEvents(): void {
  document.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    const action = target.dataset.action;
    if (action === "rerank") void rerank();
    else if (action === "add-row") {
      updateDraft((draft) => {
        draft.rows.push({ kind: "substitution", charA: "", charB: "", cost: 0.5 });
      });
    } else if (action === "remove-row") {
      const index = Number(target.dataset.row);
      updateDraft((draft) => {
        draft.rows.splice(index, 1);
      });
    } else if (action === "export-config") downloadConfig();
    else if (action === "simulate") void runSimulation();
    else {
      const row = target.closest<HTMLElement>("tr.pair-row");
      if (row) void selectPair(Number(row.dataset.i), Number(row.dataset.j));
    }
  });

  document.addEventListener("change", (event) => {
    const target = event.target as HTMLInputElement | HTMLSelectElement;
    if (target.dataset.action === "import-config") {
      const file = (target as HTMLInputElement).files?.[0];
      if (file) void importConfig(file);
      return;
    }
    if (target.dataset.sim) {
      const key = target.dataset.sim as keyof SimulationForm;
      simulationForm = { ...simulationForm, [key]: Number(target.value) };
      render();
      return;
    }
    const rowNode = target.closest<HTMLElement>("tr.override-row");
    const field = target.dataset.field;
    if (!field) return;
    if (rowNode) {
      const index = Number(rowNode.dataset.row);
      updateDraft((draft) => {
        const row = draft.rows[index];
        if (!row) return;
        if (field === "kind") row.kind = target.value as OverrideKind;
        else if (field === "charA") row.charA = target.value;
        else if (field === "charB") row.charB = target.value;
        else if (field === "cost") row.cost = Number(target.value);
      });
    } else if (field === "alpha" || field === "k" || field === "defaultCost") {
      updateDraft((draft) => {
        if (field === "alpha") draft.alpha = Number(target.value);
        else if (field === "k") draft.k = Number(target.value);
        else draft.defaultCost = Number(target.value);
      });
    } else if (field === "symmetricSubs") {
      updateDraft((draft) => {
        draft.symmetricSubs = (target as HTMLInputElement).checked;
      });
    }
  });

  const uploadForm = document.getElementById("upload-form") as HTMLFormElement | null;
  uploadForm?.addEventListener("submit", (event) => {
    event.preventDefault();
    const fileInput = document.getElementById("dataset-file") as HTMLInputElement;
    const labelCol = (document.getElementById("label-col") as HTMLInputElement).value;
    const freqCol = (document.getElementById("freq-col") as HTMLInputElement).value;
    const file = fileInput.files?.[0];
    if (file) void uploadDataset(file, labelCol, freqCol);
  });
}

if (typeof document !== "undefined" && document.getElementById("editor")) {
  wireEvents();
  render();
}
