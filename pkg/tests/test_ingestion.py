import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isec.ingestion import (
    IngestionError,
    NormalizationPolicy,
    normalize_label,
    read_dataset,
)


def write_csv(path, rows, header="label"):
    path.write_text("\n".join([header] + rows) + "\n", encoding="utf-8")


def test_occurrence_counting(tmp_path):
    path = tmp_path / "data.csv"
    write_csv(path, ["caba", "caba", "cba"])
    tax, report = read_dataset(str(path), "label")
    counts = dict(zip(tax.labels, tax.frequencies))
    assert counts == {"caba": 2, "cba": 1}
    assert report.collisions == {}


def test_frequencies_sum_to_row_count(tmp_path):
    path = tmp_path / "data.csv"
    rows = ["a"] * 5 + ["b"] * 3 + ["c"] * 2
    write_csv(path, rows)
    tax, _ = read_dataset(str(path), "label")
    assert int(tax.frequencies.sum()) == len(rows)


def test_case_fold_merges_and_reports(tmp_path):
    path = tmp_path / "data.csv"
    write_csv(path, ["Bizcocho achiras del Huila", "Bizcocho achiras del huila", "otra cosa"])
    policy = NormalizationPolicy(case_fold=True)
    tax, report = read_dataset(str(path), "label", policy=policy)
    assert "bizcocho achiras del huila" in tax.labels
    assert len(tax.labels) == 2
    collision = report.collisions["bizcocho achiras del huila"]
    assert collision == ["Bizcocho achiras del Huila", "Bizcocho achiras del huila"]


def test_without_case_fold_twins_stay_separate(tmp_path):
    path = tmp_path / "data.csv"
    write_csv(path, ["Huila", "huila"])
    tax, report = read_dataset(str(path), "label")
    assert set(tax.labels) == {"Huila", "huila"}
    assert report.collisions == {}


def test_freq_column_summed(tmp_path):
    path = tmp_path / "data.csv"
    path.write_text("label,count\ncaba,10\ncaba,5\ncba,2\n", encoding="utf-8")
    tax, _ = read_dataset(str(path), "label", freq_column="count")
    counts = dict(zip(tax.labels, tax.frequencies))
    assert counts == {"caba": 15, "cba": 2}


def test_non_numeric_freq_cell_names_row(tmp_path):
    path = tmp_path / "data.csv"
    path.write_text("label,count\ncaba,10\ncba,abc\n", encoding="utf-8")
    with pytest.raises(IngestionError, match="row 3"):
        read_dataset(str(path), "label", freq_column="count")


def test_missing_label_column(tmp_path):
    path = tmp_path / "data.csv"
    write_csv(path, ["x"], header="name")
    with pytest.raises(IngestionError, match="label"):
        read_dataset(str(path), "label")


def test_empty_dataset_rejected(tmp_path):
    path = tmp_path / "data.csv"
    path.write_text("", encoding="utf-8")
    with pytest.raises(IngestionError):
        read_dataset(str(path), "label")


def test_single_label_rejected(tmp_path):
    path = tmp_path / "data.csv"
    write_csv(path, ["only", "only"])
    with pytest.raises(IngestionError, match="2 distinct"):
        read_dataset(str(path), "label")


def test_blank_labels_skipped_and_counted(tmp_path):
    path = tmp_path / "data.csv"
    write_csv(path, ["a", '"   "', "b", '""'])
    tax, report = read_dataset(str(path), "label")
    assert set(tax.labels) == {"a", "b"}
    assert report.empty_rows == 2


def test_whitespace_collapse(tmp_path):
    path = tmp_path / "data.csv"
    write_csv(path, ['"santa   fe"', '"santa fe"', "chaco"])
    tax, report = read_dataset(str(path), "label")
    counts = dict(zip(tax.labels, tax.frequencies))
    assert counts["santa fe"] == 2
    assert "santa fe" in report.collisions


@settings(max_examples=200, deadline=None)
@given(raw=st.text(max_size=40))
def test_normalization_idempotent(raw):
    policy = NormalizationPolicy(case_fold=True)
    once = normalize_label(raw, policy)
    assert normalize_label(once, policy) == once
