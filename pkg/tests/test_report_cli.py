import json

import pytest
from click.testing import CliRunner

from isec.ann_index import IndexParams
from isec.cli import main
from isec.core import RankStats, Taxonomy, rank_taxonomy
from isec.cost_model import CostConfig
from isec.report import (
    config_fingerprint,
    ranking_to_csv,
    ranking_to_json,
    run_summary,
    write_ranking,
)

import fixtures_data


@pytest.fixture()
def small_ranking(default_cfg):
    tax = Taxonomy.from_labels(fixtures_data.abbreviation_labels())
    return rank_taxonomy(tax, default_cfg, IndexParams(mode="exact", k=4, ef_search=64))


def test_empty_scores_header_only():
    text = ranking_to_csv([])
    assert text == "rank,label_i,label_j,isec,fmn,dsn,cm,cp,cmp,flags\n"


def test_top_m_limits_rows(small_ranking):
    text = ranking_to_csv(small_ranking.scores, top_m=3)
    lines = text.strip().splitlines()
    assert len(lines) == 4
    assert lines[1].startswith("1,")
    assert lines[3].startswith("3,")


def test_same_run_twice_byte_identical(small_ranking, default_cfg, tmp_path):
    params = IndexParams(mode="exact", k=4, ef_search=64)
    fingerprint = config_fingerprint(default_cfg, params)
    paths = []
    for run in (1, 2):
        csv_path = tmp_path / f"r{run}.csv"
        json_path = tmp_path / f"r{run}.json"
        tax = Taxonomy.from_labels(fixtures_data.abbreviation_labels())
        result = rank_taxonomy(tax, default_cfg, params)
        write_ranking(result.scores, str(csv_path), "csv", result.stats, fingerprint)
        write_ranking(result.scores, str(json_path), "json", result.stats, fingerprint)
        paths.append((csv_path.read_bytes(), json_path.read_bytes()))
    assert paths[0] == paths[1]


def test_json_contains_paths_and_fingerprint(small_ranking, default_cfg):
    params = IndexParams(mode="exact", k=4, ef_search=64)
    fingerprint = config_fingerprint(default_cfg, params)
    payload = json.loads(ranking_to_json(small_ranking.scores, small_ranking.stats, fingerprint))
    assert payload["fingerprint"] == fingerprint
    first = payload["pairs"][0]
    assert {"rank", "label_i", "label_j", "isec", "fmn", "dsn", "cm", "cp", "cmp", "flags", "path"} <= set(first)
    assert first["path"]["ops"]


def test_run_summary_speedup_arithmetic():
    stats = RankStats(n_labels=1000, k=10, mode="exact", morph_evaluations=10_000, pairs_scored=9_000)
    summary = run_summary(stats)
    assert summary["brute_force_equivalent"] == 499_500
    assert summary["evaluation_ratio"] == pytest.approx(49.95)


def test_run_summary_tiny_n_reported_honestly():
    stats = RankStats(n_labels=2, k=1, mode="exact", morph_evaluations=2, pairs_scored=1)
    summary = run_summary(stats)
    assert summary["brute_force_equivalent"] == 1
    assert summary["evaluation_ratio"] == pytest.approx(0.5)


def test_run_summary_full_exact_dedup_ratio():
    n = 100
    stats = RankStats(
        n_labels=n, k=n - 1, mode="exact",
        morph_evaluations=n * (n - 1), pairs_scored=n * (n - 1) // 2,
    )
    assert run_summary(stats)["unique_pair_ratio"] == pytest.approx(1.0)


def test_config_fingerprint_sensitivity(default_cfg):
    params = IndexParams()
    base = config_fingerprint(default_cfg, params)
    assert base == config_fingerprint(CostConfig(), params)
    changed = CostConfig(sub_overrides={("a", "b"): 0.5})
    assert config_fingerprint(changed, params) != base


def _write_dataset(tmp_path):
    path = tmp_path / "data.csv"
    rows = ["label"] + ["caba", "caba", "cba", "pba", "gba", "ba", "salta", "chaco"]
    path.write_text("\n".join(rows) + "\n", encoding="utf-8")
    return path


def test_cli_analyze_writes_ranking(tmp_path):
    runner = CliRunner()
    data = _write_dataset(tmp_path)
    out = tmp_path / "ranking.csv"
    result = runner.invoke(
        main,
        ["analyze", "--input", str(data), "--output", str(out), "--index-mode", "exact", "--top-k", "3"],
    )
    assert result.exit_code == 0, result.output
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("rank,")
    assert len(lines) > 3
    assert "evaluation_ratio" in result.output


def test_cli_analyze_deterministic(tmp_path):
    runner = CliRunner()
    data = _write_dataset(tmp_path)
    outputs = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        result = runner.invoke(
            main,
            ["analyze", "--input", str(data), "--output", str(out), "--format", "json",
             "--index-mode", "exact", "--top-k", "3", "--seed", "5"],
        )
        assert result.exit_code == 0, result.output
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]


def test_cli_align_prints_path(tmp_path):
    runner = CliRunner()
    result = runner.invoke(main, ["align", "cba", "caba"])
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    assert payload["total_cost"] == 1.0
    assert payload["ops"][0]["kind"] == "insertion"


def test_cli_align_with_matrix(tmp_path):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text('{"substitutions": [{"from":"g","to":"t","cost":0.35}], "k": 1.0}')
    runner = CliRunner()
    result = runner.invoke(main, ["align", "gato", "tato", "--matrix", str(cfg_path)])
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    assert payload["total_cost"] == 0.35
    assert payload["cmp"] == pytest.approx(0.35 + 1.0 * 0.35)


def test_cli_align_identical_labels_fails():
    runner = CliRunner()
    result = runner.invoke(main, ["align", "same", "same"])
    assert result.exit_code != 0


def test_cli_simulate_writes_stats(tmp_path):
    runner = CliRunner()
    data = _write_dataset(tmp_path)
    out = tmp_path / "stats.json"
    result = runner.invoke(
        main,
        ["simulate", "--input", str(data), "--trials", "700", "--seed", "3", "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    payload = json.loads(out.read_text())
    assert payload["confusion"]["trials"] == 700
    assert "correlation" in payload


def test_cli_simulate_deterministic(tmp_path):
    runner = CliRunner()
    data = _write_dataset(tmp_path)
    blobs = []
    for name in ("s1.json", "s2.json"):
        out = tmp_path / name
        result = runner.invoke(
            main,
            ["simulate", "--input", str(data), "--trials", "500", "--seed", "9", "--out", str(out)],
        )
        assert result.exit_code == 0, result.output
        blobs.append(out.read_bytes())
    assert blobs[0] == blobs[1]
