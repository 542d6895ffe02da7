/** Typed client for the scoring service. All numbers displayed anywhere in
 * the UI originate from these responses; nothing is computed client-side. */
import type {
  CostConfigJson,
  PairDetailResponse,
  RankResponse,
  ServiceError,
  SimulationResult,
  TypoModelJson,
  UploadResponse,
} from "./types";

export class ApiError extends Error {
  constructor(
    public status: number,
    public body: ServiceError,
  ) {
    super(`${body.code}: ${body.message}`);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ServiceClient {
  constructor(
    private baseUrl: string = "/api",
    private fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, init);
    const body = await response.json();
    if (!response.ok) {
      const error: ServiceError =
        typeof body === "object" && body !== null && "code" in body
          ? (body as ServiceError)
          : { code: "error", message: String(body), detail: "" };
      throw new ApiError(response.status, error);
    }
    return body as T;
  }

  uploadDataset(file: File, options: { labelCol?: string; freqCol?: string; indexMode?: string } = {}): Promise<UploadResponse> {
    const form = new FormData();
    form.append("file", file);
    if (options.labelCol) form.append("label_col", options.labelCol);
    if (options.freqCol) form.append("freq_col", options.freqCol);
    if (options.indexMode) form.append("index_mode", options.indexMode);
    return this.request<UploadResponse>("/datasets", { method: "POST", body: form });
  }

  rank(datasetId: string, config: CostConfigJson, topK?: number, pageSize = 200): Promise<RankResponse> {
    return this.request<RankResponse>(`/datasets/${datasetId}/rank`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ config, top_k: topK ?? null, page: 1, page_size: pageSize }),
    });
  }

  pairDetail(datasetId: string, i: number, j: number): Promise<PairDetailResponse> {
    return this.request<PairDetailResponse>(`/datasets/${datasetId}/pairs/${i}/${j}`);
  }

  startSimulation(
    datasetId: string,
    model: TypoModelJson,
    trials: number,
    delta: number,
    seed: number,
  ): Promise<{ job_id: string }> {
    return this.request<{ job_id: string }>(`/datasets/${datasetId}/simulate`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ model, trials, delta, seed }),
    });
  }

  jobStatus(jobId: string): Promise<SimulationResult> {
    return this.request<SimulationResult>(`/jobs/${jobId}`);
  }
}
