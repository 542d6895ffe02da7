/** Session state: the dataset, the config draft, and the last two ranking
 * snapshots for diffing. One rerank may be in flight at a time; the action
 * is disabled while pending. */
import type { ConfigDraft } from "./config";
import { emptyDraft } from "./config";
import type { PairDetailResponse, RankResponse, SimulationResult } from "./types";

export interface SessionState {
  datasetId: string | null;
  nLabels: number;
  draft: ConfigDraft;
  current: RankResponse | null;
  previous: RankResponse | null;
  selectedPair: PairDetailResponse | null;
  rerankPending: boolean;
  simulation: SimulationResult | null;
  simulationJob: string | null;
  error: string | null;
}

export function initialState(): SessionState {
  return {
    datasetId: null,
    nLabels: 0,
    draft: emptyDraft(),
    current: null,
    previous: null,
    selectedPair: null,
    rerankPending: false,
    simulation: null,
    simulationJob: null,
    error: null,
  };
}

/** Rotate ranking snapshots: the current one becomes the diff baseline. */
export function applyRanking(state: SessionState, ranking: RankResponse): SessionState {
  return {
    ...state,
    previous: state.current,
    current: ranking,
    rerankPending: false,
    selectedPair: null,
    error: null,
  };
}

export function applyDataset(state: SessionState, datasetId: string, nLabels: number): SessionState {
  return {
    ...initialState(),
    datasetId,
    nLabels,
    draft: state.draft,
  };
}

export function applyError(state: SessionState, message: string): SessionState {
  return { ...state, error: message, rerankPending: false };
}
