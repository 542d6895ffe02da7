/** Wire types for the scoring service. Field names mirror the JSON exactly. */

export interface SubstitutionEntry {
  from: string;
  to: string;
  cost: number;
}

export interface CharEntry {
  char: string;
  cost: number;
}

export interface TranspositionEntry {
  a: string;
  b: string;
  cost: number;
}

/** Exact cost-config schema accepted by the service and the CLI. */
export interface CostConfigJson {
  default_cost: number;
  k: number;
  alpha: number;
  symmetric_subs: boolean;
  substitutions: SubstitutionEntry[];
  insertions: CharEntry[];
  deletions: CharEntry[];
  transpositions: TranspositionEntry[];
}

export interface EditOpJson {
  kind: "insertion" | "deletion" | "substitution" | "transposition";
  chars: string[];
  cost: number;
  pos_a: number;
  pos_b: number;
}

export interface PathJson {
  total_cost: number;
  n_ops: number;
  cm: number;
  cp: number;
  counts: Record<string, number>;
  ops: EditOpJson[];
}

export interface PairJson {
  rank: number;
  i: number;
  j: number;
  label_i: string;
  label_j: string;
  isec: number;
  fmn: number;
  dsn: number;
  cm: number;
  cp: number;
  cmp: number;
  similarity: number;
  flags: string[];
  path?: PathJson | null;
}

export interface RankResponse {
  fingerprint: string;
  index_fingerprint: string;
  config: CostConfigJson;
  summary: Record<string, number | string>;
  total_pairs: number;
  page: number;
  page_size: number;
  warnings: string[];
  pairs: PairJson[];
}

export interface PairDetailResponse extends PairJson {
  path: PathJson;
  fingerprint: string;
}

export interface UploadResponse {
  id: string;
  n_labels: number;
  duplicates: { collisions: Record<string, string[]>; empty_rows: number };
  normalization: Record<string, boolean>;
  index_fingerprint: string;
}

export interface TypoModelJson {
  p_adjacent_sub?: number;
  p_random_sub?: number;
  p_delete?: number;
  p_insert?: number;
  p_transpose?: number;
  adjacency?: Record<string, string>;
  alphabet?: string;
  events_per_label?: number;
}

export interface CorrelationPair {
  label_i: string;
  label_j: string;
  isec: number;
  confusion_rate: number;
  events: number;
}

export interface SimulationResult {
  status: "running" | "done" | "error";
  error?: string;
  confusion?: {
    trials: number;
    delta: number;
    seed: number;
    per_source: Record<string, Record<string, number>>;
  };
  correlation?: {
    rho: number;
    ci_low: number;
    ci_high: number;
    n_pairs: number;
    degenerate: boolean;
    pairs: CorrelationPair[];
  };
}

export interface ServiceError {
  code: string;
  message: string;
  detail: string;
}
