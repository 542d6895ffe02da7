/** Editable cost-config draft and its (de)serialization to the exact schema.
 *
 * The draft is a flat list of override rows so the matrix editor can add and
 * remove entries of any kind in one grid. Serialization groups rows back into
 * the service schema; importing an exported file reproduces the same draft,
 * which is what keeps ranking fingerprints stable across a round trip.
 */
import type { CostConfigJson } from "./types";

export type OverrideKind = "substitution" | "insertion" | "deletion" | "transposition";

export interface OverrideRow {
  kind: OverrideKind;
  charA: string;
  charB: string; // unused for insertion/deletion
  cost: number;
}

export interface ConfigDraft {
  defaultCost: number;
  k: number;
  alpha: number;
  symmetricSubs: boolean;
  rows: OverrideRow[];
}

export function emptyDraft(): ConfigDraft {
  return { defaultCost: 1.0, k: 0.0, alpha: 0.5, symmetricSubs: true, rows: [] };
}

export interface RowError {
  index: number;
  message: string;
}

function isChar(value: string): boolean {
  return [...value].length === 1;
}

/** Client-side validation mirroring the service's rules, so bad drafts are
 * caught inline before a rerank is attempted. */
export function validateDraft(draft: ConfigDraft): RowError[] {
  const errors: RowError[] = [];
  if (!(draft.alpha >= 0 && draft.alpha <= 1)) {
    errors.push({ index: -1, message: `alpha must be in [0, 1], got ${draft.alpha}` });
  }
  if (!(draft.k >= 0)) {
    errors.push({ index: -1, message: `k must be >= 0, got ${draft.k}` });
  }
  if (!(draft.defaultCost >= 0)) {
    errors.push({ index: -1, message: `default cost must be >= 0, got ${draft.defaultCost}` });
  }
  const seen = new Set<string>();
  draft.rows.forEach((row, index) => {
    const pairKind = row.kind === "substitution" || row.kind === "transposition";
    if (!isChar(row.charA) || (pairKind && !isChar(row.charB))) {
      errors.push({ index, message: "characters must be single characters" });
      return;
    }
    if (pairKind && row.charA === row.charB) {
      errors.push({ index, message: "pair overrides need two distinct characters" });
      return;
    }
    if (!(Number.isFinite(row.cost) && row.cost >= 0)) {
      errors.push({ index, message: `cost must be >= 0, got ${row.cost}` });
      return;
    }
    let key: string;
    if (row.kind === "transposition") {
      key = `t:${[row.charA, row.charB].sort().join("")}`;
    } else if (row.kind === "substitution") {
      key = draft.symmetricSubs
        ? `s:${[row.charA, row.charB].sort().join("")}`
        : `s:${row.charA}${row.charB}`;
    } else {
      key = `${row.kind[0]}:${row.charA}`;
    }
    if (seen.has(key)) {
      errors.push({ index, message: "duplicate override for this key" });
      return;
    }
    seen.add(key);
  });
  return errors;
}

/** Serialize to the exact service schema. Entries are sorted so an export is
 * stable regardless of row insertion order. */
export function draftToJson(draft: ConfigDraft): CostConfigJson {
  const substitutions = draft.rows
    .filter((r) => r.kind === "substitution")
    .map((r) => ({ from: r.charA, to: r.charB, cost: r.cost }))
    .sort((x, y) => (x.from + x.to < y.from + y.to ? -1 : 1));
  const insertions = draft.rows
    .filter((r) => r.kind === "insertion")
    .map((r) => ({ char: r.charA, cost: r.cost }))
    .sort((x, y) => (x.char < y.char ? -1 : 1));
  const deletions = draft.rows
    .filter((r) => r.kind === "deletion")
    .map((r) => ({ char: r.charA, cost: r.cost }))
    .sort((x, y) => (x.char < y.char ? -1 : 1));
  const transpositions = draft.rows
    .filter((r) => r.kind === "transposition")
    .map((r) => {
      const [a, b] = [r.charA, r.charB].sort() as [string, string];
      return { a, b, cost: r.cost };
    })
    .sort((x, y) => (x.a + x.b < y.a + y.b ? -1 : 1));
  return {
    default_cost: draft.defaultCost,
    k: draft.k,
    alpha: draft.alpha,
    symmetric_subs: draft.symmetricSubs,
    substitutions,
    insertions,
    deletions,
    transpositions,
  };
}

/** Parse an imported config file back into a draft. Throws on schema drift. */
export function draftFromJson(raw: unknown): ConfigDraft {
  if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
    throw new Error("config must be a JSON object");
  }
  const data = raw as Record<string, unknown>;
  const known = new Set([
    "default_cost", "k", "alpha", "symmetric_subs",
    "substitutions", "insertions", "deletions", "transpositions",
  ]);
  for (const key of Object.keys(data)) {
    if (!known.has(key)) {
      throw new Error(`unknown config key: ${key}`);
    }
  }
  const num = (key: string, fallback: number): number => {
    const value = data[key];
    if (value === undefined) return fallback;
    if (typeof value !== "number" || !Number.isFinite(value)) {
      throw new Error(`${key} must be a number`);
    }
    return value;
  };
  const rows: OverrideRow[] = [];
  const list = (key: string): unknown[] => {
    const value = data[key];
    if (value === undefined) return [];
    if (!Array.isArray(value)) throw new Error(`${key} must be a list`);
    return value;
  };
  for (const entry of list("substitutions")) {
    const e = entry as Record<string, unknown>;
    rows.push({ kind: "substitution", charA: String(e.from), charB: String(e.to), cost: Number(e.cost) });
  }
  for (const entry of list("insertions")) {
    const e = entry as Record<string, unknown>;
    rows.push({ kind: "insertion", charA: String(e.char), charB: "", cost: Number(e.cost) });
  }
  for (const entry of list("deletions")) {
    const e = entry as Record<string, unknown>;
    rows.push({ kind: "deletion", charA: String(e.char), charB: "", cost: Number(e.cost) });
  }
  for (const entry of list("transpositions")) {
    const e = entry as Record<string, unknown>;
    rows.push({ kind: "transposition", charA: String(e.a), charB: String(e.b), cost: Number(e.cost) });
  }
  const draft: ConfigDraft = {
    defaultCost: num("default_cost", 1.0),
    k: num("k", 0.0),
    alpha: num("alpha", 0.5),
    symmetricSubs: data.symmetric_subs === undefined ? true : Boolean(data.symmetric_subs),
    rows,
  };
  const errors = validateDraft(draft);
  if (errors.length > 0) {
    throw new Error(`invalid config: ${errors[0]!.message}`);
  }
  return draft;
}

/** Export as a pretty JSON file body (exact schema, stable ordering). */
export function exportDraft(draft: ConfigDraft): string {
  return JSON.stringify(draftToJson(draft), null, 2) + "\n";
}
