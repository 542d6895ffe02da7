"""Command-line entry points: analyze, align, simulate, serve."""
from __future__ import annotations

import dataclasses
import json
import sys
import time
from importlib import resources

import click

from .ann_index import IndexParams
from .cost_model import CostConfig, load_config
from .core import rank_taxonomy
from .edit_engine import align as align_labels
from .ingestion import NormalizationPolicy, read_dataset
from .perturb import TypoModel, adjacency_from_config, correlate, run_simulation
from .report import config_fingerprint, run_summary, write_ranking


def _load_cost_config(matrix: str | None, alpha: float | None, k_penalty: float | None) -> CostConfig:
    cfg = load_config(matrix) if matrix else CostConfig()
    updates = {}
    if alpha is not None:
        updates["alpha"] = alpha
    if k_penalty is not None:
        updates["k"] = k_penalty
    return dataclasses.replace(cfg, **updates) if updates else cfg


def _bundled_config(name: str) -> CostConfig:
    with resources.as_file(resources.files("isec.data").joinpath(name)) as path:
        return load_config(str(path))


ingestion_options = [
    click.option("--input", "input_path", required=True, type=click.Path(exists=True), help="CSV dataset."),
    click.option("--label-col", default="label", show_default=True, help="Label column name."),
    click.option("--freq-col", default=None, help="Optional pre-aggregated frequency column."),
    click.option("--case-fold/--no-case-fold", default=False, show_default=True),
    click.option("--trim/--no-trim", default=True, show_default=True),
]

scoring_options = [
    click.option("--matrix", type=click.Path(exists=True), default=None, help="Cost config JSON."),
    click.option("--alpha", type=float, default=None, help="Override the config's alpha."),
    click.option("--k-penalty", type=float, default=None, help="Override the config's k."),
    click.option("--seed", type=int, default=0, show_default=True),
]


def _add_options(options):
    def wrap(fn):
        for option in reversed(options):
            fn = option(fn)
        return fn

    return wrap


@click.group()
def main() -> None:
    """Categorical fragility analysis over nominal taxonomies."""


@main.command()
@_add_options(ingestion_options)
@_add_options(scoring_options)
@click.option("--top-k", type=int, default=10, show_default=True, help="Semantic neighbors per label.")
@click.option("--index-mode", type=click.Choice(["hnsw", "exact"]), default="hnsw", show_default=True)
@click.option("--output", type=click.Path(), required=True, help="Ranking file to write.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--top-m", type=int, default=None, help="Keep only the first M rows.")
@click.option("--embeddings", "embeddings_path", type=click.Path(exists=True), default=None,
              help="Precomputed label vectors (label<TAB>v1 v2 ...).")
@click.option("--embeddings-fallback", is_flag=True, help="Hash-embed labels missing from the vector file.")
@click.option("--dim", type=int, default=256, show_default=True, help="Hash embedding dimension.")
def analyze(
    input_path, label_col, freq_col, case_fold, trim, matrix, alpha, k_penalty, seed,
    top_k, index_mode, output, fmt, top_m, embeddings_path, embeddings_fallback, dim,
) -> None:
    """Rank all label pairs of a dataset by confusion sensitivity."""
    policy = NormalizationPolicy(trim=trim, case_fold=case_fold)
    cfg = _load_cost_config(matrix, alpha, k_penalty)
    started = time.perf_counter()
    tax, duplicates = read_dataset(
        input_path, label_col, freq_column=freq_col, policy=policy,
        embedding_dim=dim, embedding_seed=seed,
        embeddings_path=embeddings_path, embeddings_fallback=embeddings_fallback,
    )
    params = IndexParams(k=min(top_k, tax.n - 1), mode=index_mode, seed=seed)
    result = rank_taxonomy(tax, cfg, params)
    elapsed = time.perf_counter() - started
    fingerprint = config_fingerprint(cfg, params, extra={"dim": dim, "seed": seed})
    write_ranking(
        result.scores, output, fmt, result.stats, fingerprint,
        top_m=top_m, normalization=policy.to_dict(),
    )
    summary = run_summary(result.stats)
    click.echo(json.dumps(summary, sort_keys=True))
    click.echo(
        f"ranked {summary['pairs_scored']} pairs over {tax.n} labels in {elapsed:.2f}s "
        f"({summary['morph_evaluations']} alignments vs {summary['brute_force_equivalent']} brute-force; "
        f"ratio {summary['evaluation_ratio']:.2f}x); wrote {output}"
    )
    if duplicates.collisions:
        click.echo(f"note: {len(duplicates.collisions)} normalized label(s) merged raw variants", err=True)


@main.command(name="align")
@click.argument("label_a")
@click.argument("label_b")
@_add_options(scoring_options)
def align_cmd(label_a, label_b, matrix, alpha, k_penalty, seed) -> None:
    """Print the minimal-cost edit path between two labels as JSON."""
    cfg = _load_cost_config(matrix, alpha, k_penalty)
    if label_a == label_b:
        raise click.ClickException("labels are identical; nothing to align")
    path = align_labels(label_a, label_b, cfg)
    payload = path.to_dict()
    payload["cmp"] = path.cm + cfg.k * path.cp
    click.echo(json.dumps(payload, sort_keys=True, indent=2))


@main.command()
@_add_options(ingestion_options)
@_add_options(scoring_options)
@click.option("--trials", type=int, required=True, help="Number of perturbation trials.")
@click.option("--delta", type=float, default=0.0, show_default=True, help="Indeterminacy margin.")
@click.option("--out", "out_path", type=click.Path(), required=True, help="Stats JSON to write.")
@click.option("--adjacency", "adjacency_path", type=click.Path(exists=True), default=None,
              help="Keyboard map as a cost-override JSON; defaults to the bundled QWERTY file.")
@click.option("--events", type=int, default=1, show_default=True, help="Edit events per trial.")
def simulate(
    input_path, label_col, freq_col, case_fold, trim, matrix, alpha, k_penalty, seed,
    trials, delta, out_path, adjacency_path, events,
) -> None:
    """Inject typos, measure recoverability, and correlate with the ranking."""
    policy = NormalizationPolicy(trim=trim, case_fold=case_fold)
    cfg = _load_cost_config(matrix, alpha, k_penalty)
    tax, _ = read_dataset(input_path, label_col, freq_column=freq_col, policy=policy, embedding_seed=seed)
    adjacency_cfg = load_config(adjacency_path) if adjacency_path else _bundled_config("qwerty_costs.json")
    model = TypoModel(adjacency=adjacency_from_config(adjacency_cfg), events_per_label=events)
    started = time.perf_counter()
    stats = run_simulation(tax, cfg, model, trials, delta=delta, seed=seed)
    from .core import brute_force_ranking

    ranking = brute_force_ranking(tax, cfg, keep_paths=False)
    report = correlate(stats, ranking.scores, seed=seed)
    elapsed = time.perf_counter() - started
    payload = {"confusion": stats.to_dict(), "correlation": report.to_dict()}
    with open(out_path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")
    if report.degenerate:
        click.echo(f"simulated {trials} trials in {elapsed:.2f}s; confusion degenerate (all rates equal)")
    else:
        click.echo(
            f"simulated {trials} trials in {elapsed:.2f}s; spearman rho {report.rho:.4f} "
            f"[{report.ci_low:.4f}, {report.ci_high:.4f}] over {report.n_pairs} pairs"
        )
    click.echo(f"wrote {out_path}")


@main.command()
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--data-dir", type=click.Path(), default=None, help="Where uploaded datasets persist.")
def serve(port, host, data_dir) -> None:
    """Run the what-if recomputation HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(data_dir=data_dir), host=host, port=port)


if __name__ == "__main__":
    sys.exit(main())
