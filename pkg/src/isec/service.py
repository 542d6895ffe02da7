"""HTTP facade for interactive what-if recomputation.

Uploading a dataset builds its taxonomy, embeddings, and retrieval index
once; rank requests then replay only the morphological and scoring stage
with a new cost configuration. Cost changes can never alter the stored
vectors, which the index fingerprint in every rank response makes checkable.
Simulations run as background jobs polled via ``/jobs/{id}``.

Datasets persist in a working directory as plain files (CSV plus embedding
blob); there is no database. Errors use the body shape
``{"code", "message", "detail"}``.
"""
from __future__ import annotations

import dataclasses
import hashlib
import json
import tempfile
import threading
import uuid
from pathlib import Path

import numpy as np
from fastapi import FastAPI, File, Form, HTTPException, Request, UploadFile
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .ann_index import ExactIndex, HnswIndex, IndexParams, build_index
from .core import RankingResult, Taxonomy, rank_with_index
from .cost_model import ConfigError, CostConfig, config_from_dict, config_to_dict
from .edit_engine import align
from .ingestion import DuplicateReport, IngestionError, NormalizationPolicy, read_dataset
from .perturb import TypoModel, adjacency_from_config, correlate, run_simulation
from .report import config_fingerprint, pair_to_dict, run_summary

__all__ = ["create_app"]

MAX_UPLOAD_BYTES = 50 * 1024 * 1024


class _Dataset:
    def __init__(
        self,
        dataset_id: str,
        tax: Taxonomy,
        duplicates: DuplicateReport,
        policy: NormalizationPolicy,
        index: ExactIndex | HnswIndex,
        params: IndexParams,
    ):
        self.id = dataset_id
        self.tax = tax
        self.duplicates = duplicates
        self.policy = policy
        self.index = index
        self.params = params
        self.lock = threading.Lock()
        self.last_ranking: RankingResult | None = None
        self.last_config: CostConfig | None = None
        self.last_fingerprint: str | None = None
        digest = hashlib.sha256(tax.embeddings.tobytes())
        digest.update(json.dumps(dataclasses.asdict(params), sort_keys=True).encode())
        self.index_fingerprint = digest.hexdigest()

    def persist_meta(self, workdir: Path) -> None:
        meta = {
            "id": self.id,
            "n_labels": self.tax.n,
            "index_fingerprint": self.index_fingerprint,
            "index_params": dataclasses.asdict(self.params),
            "normalization": self.policy.to_dict(),
            "last_config": config_to_dict(self.last_config) if self.last_config else None,
            "last_fingerprint": self.last_fingerprint,
        }
        (workdir / f"{self.id}.meta.json").write_text(
            json.dumps(meta, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )


class RankRequest(BaseModel):
    config: dict = Field(default_factory=dict)
    alpha: float | None = None
    k: float | None = None
    top_k: int | None = None
    page: int = Field(default=1, ge=1)
    page_size: int = Field(default=50, ge=1, le=1000)


class SimulateRequest(BaseModel):
    model: dict = Field(default_factory=dict)
    trials: int = Field(ge=1)
    delta: float = Field(default=0.0, ge=0.0)
    seed: int = 0


def _error(status: int, code: str, message: str, detail: str = "") -> HTTPException:
    return HTTPException(status_code=status, detail={"code": code, "message": message, "detail": detail})


def create_app(data_dir: str | None = None, max_upload_bytes: int = MAX_UPLOAD_BYTES) -> FastAPI:
    app = FastAPI(title="isec calibration service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    workdir = Path(data_dir) if data_dir else Path(tempfile.mkdtemp(prefix="isec-service-"))
    workdir.mkdir(parents=True, exist_ok=True)
    datasets: dict[str, _Dataset] = {}
    jobs: dict[str, dict] = {}
    jobs_lock = threading.Lock()

    @app.exception_handler(HTTPException)
    async def _http_error(request: Request, exc: HTTPException):
        detail = exc.detail
        if not isinstance(detail, dict):
            detail = {"code": "error", "message": str(detail), "detail": ""}
        return JSONResponse(status_code=exc.status_code, content=detail)

    def _get_dataset(dataset_id: str) -> _Dataset:
        ds = datasets.get(dataset_id)
        if ds is None:
            raise _error(404, "dataset-not-found", f"no dataset {dataset_id!r}")
        return ds

    @app.post("/datasets", status_code=201)
    async def upload_dataset(
        file: UploadFile = File(...),
        label_col: str = Form("label"),
        freq_col: str | None = Form(None),
        case_fold: bool = Form(False),
        index_mode: str = Form("hnsw"),
        embedding_dim: int = Form(256),
        seed: int = Form(0),
    ):
        blob = await file.read()
        if len(blob) > max_upload_bytes:
            raise _error(413, "upload-too-large", f"upload exceeds {max_upload_bytes} bytes")
        if not blob.strip():
            raise _error(400, "empty-upload", "uploaded file is empty")
        dataset_id = uuid.uuid4().hex[:12]
        csv_path = workdir / f"{dataset_id}.csv"
        csv_path.write_bytes(blob)
        policy = NormalizationPolicy(case_fold=case_fold)
        try:
            tax, duplicates = read_dataset(
                str(csv_path), label_col, freq_column=freq_col, policy=policy,
                embedding_dim=embedding_dim, embedding_seed=seed,
            )
        except IngestionError as exc:
            csv_path.unlink(missing_ok=True)
            raise _error(400, "ingestion-error", str(exc))
        try:
            params = IndexParams(mode=index_mode, seed=seed, k=min(10, tax.n - 1))
        except ValueError as exc:
            csv_path.unlink(missing_ok=True)
            raise _error(400, "bad-index-params", str(exc))
        index = build_index(tax.embeddings, params)
        np.save(workdir / f"{dataset_id}.npy", tax.embeddings)
        ds = _Dataset(dataset_id, tax, duplicates, policy, index, params)
        ds.persist_meta(workdir)
        datasets[dataset_id] = ds
        return {
            "id": dataset_id,
            "n_labels": tax.n,
            "duplicates": duplicates.to_dict(),
            "normalization": policy.to_dict(),
            "index_fingerprint": ds.index_fingerprint,
        }

    @app.get("/datasets/{dataset_id}")
    def dataset_info(dataset_id: str):
        ds = _get_dataset(dataset_id)
        return {
            "id": ds.id,
            "n_labels": ds.tax.n,
            "labels": list(ds.tax.labels),
            "frequencies": [int(f) for f in ds.tax.frequencies],
            "duplicates": ds.duplicates.to_dict(),
            "normalization": ds.policy.to_dict(),
            "index_fingerprint": ds.index_fingerprint,
            "index_mode": ds.params.mode,
        }

    @app.post("/datasets/{dataset_id}/rank")
    def rank_dataset(dataset_id: str, request: RankRequest):
        ds = _get_dataset(dataset_id)
        try:
            cfg = config_from_dict(request.config)
            updates = {}
            if request.alpha is not None:
                updates["alpha"] = request.alpha
            if request.k is not None:
                updates["k"] = request.k
            if updates:
                cfg = dataclasses.replace(cfg, **updates)
        except ConfigError as exc:
            raise _error(422, "invalid-config", str(exc))
        warnings: list[str] = []
        top_k = request.top_k if request.top_k is not None else ds.params.k
        if top_k < 1:
            raise _error(422, "invalid-config", f"top_k must be >= 1, got {top_k}")
        if top_k > ds.tax.n - 1:
            warnings.append(f"top_k {top_k} clamped to {ds.tax.n - 1}")
            top_k = ds.tax.n - 1
        with ds.lock:
            result = rank_with_index(ds.tax, cfg, ds.index, k=top_k)
            ds.last_ranking = result
            ds.last_config = cfg
            ds.last_fingerprint = config_fingerprint(
                cfg, ds.params, extra={"top_k": top_k, "dataset": ds.id}
            )
            ds.persist_meta(workdir)
        start = (request.page - 1) * request.page_size
        page = result.scores[start : start + request.page_size]
        return {
            "fingerprint": ds.last_fingerprint,
            "index_fingerprint": ds.index_fingerprint,
            "config": config_to_dict(cfg),
            "summary": run_summary(result.stats),
            "total_pairs": len(result.scores),
            "page": request.page,
            "page_size": request.page_size,
            "warnings": warnings,
            "pairs": [
                pair_to_dict(start + offset + 1, score, include_path=False)
                for offset, score in enumerate(page)
            ],
        }

    @app.get("/datasets/{dataset_id}/pairs/{i}/{j}")
    def pair_detail(dataset_id: str, i: int, j: int):
        ds = _get_dataset(dataset_id)
        if ds.last_ranking is None:
            raise _error(404, "no-ranking", "rank the dataset before requesting pair details")
        lo, hi = (i, j) if i < j else (j, i)
        for rank, score in enumerate(ds.last_ranking.scores, start=1):
            if (score.i, score.j) in ((lo, hi), (hi, lo)):
                payload = pair_to_dict(rank, score, include_path=True)
                if payload["path"] is None and ds.last_config is not None:
                    payload["path"] = align(score.label_i, score.label_j, ds.last_config).to_dict()
                payload["fingerprint"] = ds.last_fingerprint
                return payload
        raise _error(
            404,
            "pair-not-scored",
            f"pair ({i}, {j}) is not in the current ranking",
            "the pair was outside every label's retrieved neighbors; raise top_k and rerank",
        )

    def _run_job(job_id: str, ds: _Dataset, model: TypoModel, request: SimulateRequest) -> None:
        try:
            cfg = ds.last_config if ds.last_config is not None else CostConfig()
            stats = run_simulation(
                ds.tax, cfg, model, request.trials, delta=request.delta, seed=request.seed
            )
            if ds.last_ranking is not None:
                scores = ds.last_ranking.scores
            else:
                from .core import brute_force_ranking

                scores = brute_force_ranking(ds.tax, cfg, keep_paths=False).scores
            report = correlate(stats, scores, seed=request.seed)
            with jobs_lock:
                jobs[job_id] = {
                    "status": "done",
                    "confusion": stats.to_dict(),
                    "correlation": report.to_dict(),
                }
        except Exception as exc:  # pragma: no cover - defensive job wrapper
            with jobs_lock:
                jobs[job_id] = {"status": "error", "error": str(exc)}

    @app.post("/datasets/{dataset_id}/simulate", status_code=202)
    def simulate_dataset(dataset_id: str, request: SimulateRequest):
        ds = _get_dataset(dataset_id)
        model_raw = dict(request.model)
        if "adjacency" not in model_raw:
            base = ds.last_config if ds.last_config is not None else CostConfig()
            model_raw["adjacency"] = adjacency_from_config(base)
        try:
            model = TypoModel.from_dict(model_raw)
        except (TypeError, ValueError) as exc:
            raise _error(422, "invalid-model", str(exc))
        job_id = uuid.uuid4().hex[:12]
        with jobs_lock:
            jobs[job_id] = {"status": "running"}
        thread = threading.Thread(target=_run_job, args=(job_id, ds, model, request), daemon=True)
        thread.start()
        return {"job_id": job_id, "status": "running"}

    @app.get("/jobs/{job_id}")
    def job_status(job_id: str):
        with jobs_lock:
            job = jobs.get(job_id)
            if job is None:
                raise _error(404, "job-not-found", f"no job {job_id!r}")
            return dict(job)

    return app
