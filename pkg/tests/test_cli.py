"""Command-line surface: schemas, exit codes, caching, reproducibility."""

import json

import pytest

from powfree import REPORT_COLUMNS, CountCache, Threshold, count_free
from powfree.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


class TestCheck:
    def test_square_detected(self, capsys):
        code, out = run(capsys, "check", "hotshots", "--beta", "2", "--no-timestamp")
        assert code == 1
        doc = json.loads(out)
        assert doc["free"] is False
        assert doc["witness"]["period"] == 4
        assert doc["witness"]["length"] == 8
        assert doc["witness"]["exponent_num"] == "2"

    def test_square_free_word(self, capsys):
        code, out = run(capsys, "check", "minimize", "--beta", "2", "--no-timestamp")
        assert code == 0
        assert json.loads(out)["free"] is True

    def test_plus_flag(self, capsys):
        code, out = run(capsys, "check", "aba", "--beta", "3/2", "--plus", "--no-timestamp")
        assert code == 0

    def test_integer_word(self, capsys):
        code, out = run(capsys, "check", "1,2,1", "--beta", "3/2", "--no-timestamp")
        assert code == 1
        assert json.loads(out)["witness"]["period"] == 2

    def test_csv_schema(self, capsys):
        code, out = run(capsys, "check", "hotshots", "--beta", "2", "--out", "csv")
        lines = out.strip().splitlines()
        assert lines[0] == "word,beta,plus,free,start,period,length,exponent_num,exponent_den"
        assert lines[1] == "hotshots,2,false,false,0,4,8,2,1"

    def test_bad_word_is_usage_error(self, capsys):
        code, _ = run(capsys, "check", "abc!", "--beta", "2")
        assert code == 2

    def test_bad_beta_is_usage_error(self, capsys):
        code, _ = run(capsys, "check", "abc", "--beta", "1")
        assert code == 2


class TestCount:
    def test_json_counts_are_strings(self, capsys):
        code, out = run(capsys, "count", "--k", "3", "--beta", "2", "--max-len", "7",
                        "--no-timestamp")
        assert code == 0
        doc = json.loads(out)
        assert doc["counts"] == ["1", "3", "6", "12", "18", "30", "42", "60"]

    def test_base_case_series(self, capsys):
        code, out = run(capsys, "count", "--k", "5", "--beta", "3/2", "--max-len", "2",
                        "--no-timestamp")
        assert json.loads(out)["counts"] == ["1", "5", "20"]

    def test_plus_series(self, capsys):
        code, out = run(capsys, "count", "--k", "2", "--beta", "2", "--plus",
                        "--max-len", "4", "--no-timestamp")
        assert json.loads(out)["counts"] == ["1", "2", "4", "6", "10"]

    def test_csv_rows(self, capsys):
        code, out = run(capsys, "count", "--k", "3", "--beta", "2", "--max-len", "3",
                        "--out", "csv")
        assert out.splitlines() == ["i,count", "0,1", "1,3", "2,6", "3,12"]

    def test_tail_max(self, capsys):
        code, out = run(capsys, "count", "--k", "3", "--beta", "2", "--max-len", "3",
                        "--tail-max", "1", "--no-timestamp")
        doc = json.loads(out)
        assert doc["counts"] == ["1", "3", "6", "12"]
        assert doc["tail_max"] == 1

    def test_budget_exceeded_exit_code(self, capsys):
        code, _ = run(capsys, "count", "--k", "10", "--beta", "2", "--max-len", "9",
                      "--engine", "naive")
        assert code == 3

    def test_big_counts_round_trip(self, capsys):
        code, out = run(capsys, "count", "--k", "12", "--beta", "3/2", "--max-len", "8",
                        "--engine", "canonical", "--no-timestamp")
        doc = json.loads(out)
        expected = count_free(12, Threshold(3, 2), 8, "canonical")
        assert tuple(int(c) for c in doc["counts"]) == expected.counts


class TestCountCache:
    def test_cache_written_and_reused(self, capsys, tmp_path):
        path = tmp_path / "c.jsonl"
        run(capsys, "count", "--k", "3", "--beta", "2", "--max-len", "8",
            "--cache", str(path), "--no-timestamp")
        assert path.exists()
        first = path.read_bytes()
        # shorter request is served from the cache without rewriting it
        code, out = run(capsys, "count", "--k", "3", "--beta", "2", "--max-len", "5",
                        "--cache", str(path), "--no-timestamp")
        assert json.loads(out)["counts"] == ["1", "3", "6", "12", "18", "30"]
        assert path.read_bytes() == first
        # longer request extends the stored series
        run(capsys, "count", "--k", "3", "--beta", "2", "--max-len", "10",
            "--cache", str(path), "--no-timestamp")
        assert CountCache(path).get(3, Threshold(2)).max_length == 10

    def test_env_var_cache(self, capsys, tmp_path, monkeypatch):
        path = tmp_path / "env.jsonl"
        monkeypatch.setenv("POWFREE_CACHE", str(path))
        run(capsys, "count", "--k", "2", "--beta", "2", "--max-len", "4", "--no-timestamp")
        assert path.exists()

    def test_cache_list_and_clear(self, capsys, tmp_path):
        path = tmp_path / "c.jsonl"
        run(capsys, "count", "--k", "3", "--beta", "2", "--max-len", "4",
            "--cache", str(path), "--no-timestamp")
        code, out = run(capsys, "cache", "list", "--cache", str(path), "--no-timestamp")
        assert code == 0
        entries = json.loads(out)["entries"]
        assert entries == [{"k": 3, "beta": "2", "plus": False, "tail_max": None,
                            "method": "incremental", "max_length": 4}]
        code, _ = run(capsys, "cache", "clear", "--cache", str(path), "--no-timestamp")
        assert code == 0 and not path.exists()

    def test_cache_without_path_is_usage_error(self, capsys, monkeypatch):
        monkeypatch.delenv("POWFREE_CACHE", raising=False)
        code, _ = run(capsys, "cache", "list")
        assert code == 2


class TestCertify:
    def test_certificate_document(self, capsys):
        code, out = run(capsys, "certify", "--k", "20", "--n", "3", "--max-len", "10",
                        "--no-timestamp")
        assert code == 0
        doc = json.loads(out)
        assert doc["status"] == "ok"
        assert doc["verified_up_to"] == 9
        witness = int(doc["x_witness_num"]) / int(doc["x_witness_den"])
        assert abs(witness - 17.8815273) < 1e-4

    def test_no_witness(self, capsys):
        code, out = run(capsys, "certify", "--k", "2", "--n", "2", "--plus",
                        "--no-timestamp")
        assert code == 1
        assert json.loads(out)["status"] == "no-witness"

    def test_k_equal_n_without_plus_is_usage_error(self, capsys):
        code, _ = run(capsys, "certify", "--k", "3", "--n", "3")
        assert code == 2

    def test_poisoned_cache_trips_lemma_canary(self, capsys, tmp_path):
        path = tmp_path / "c.jsonl"
        good = count_free(10, Threshold.dejean(3), 4, "canonical")
        from dataclasses import replace
        CountCache(path).put(replace(good, counts=(1, 10, 90, 9, 1)))
        code, _ = run(capsys, "certify", "--k", "10", "--n", "3", "--max-len", "4",
                      "--cache", str(path))
        assert code == 4


class TestAudit:
    def test_csv_schema_and_exit(self, capsys):
        code, out = run(capsys, "audit", "--k", "4", "--n", "3", "--len", "6",
                        "--out", "csv")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "j,F_j_count,bound,pass"
        assert all(line.endswith("true") for line in lines[1:])

    def test_json_document(self, capsys):
        code, out = run(capsys, "audit", "--k", "3", "--n", "2", "--len", "5",
                        "--no-timestamp")
        doc = json.loads(out)
        assert doc["all_pass"] is True
        assert doc["suffix_determination"] is True
        assert doc["f_total"] == doc["k_Ci_minus_Cnext"]
        assert doc["covered"] >= doc["f_total"]


class TestReport:
    def test_csv_columns(self, capsys):
        code, out = run(capsys, "report", "--n", "3", "--k", "20,30", "--max-len", "4",
                        "--out", "csv")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == ",".join(REPORT_COLUMNS)
        assert len(lines) == 3

    def test_json_nested_by_n_then_k(self, capsys):
        code, out = run(capsys, "report", "--n", "2..3", "--k", "20", "--max-len", "4",
                        "--no-timestamp")
        doc = json.loads(out)
        assert set(doc["rows_by_n_then_k"]) == {"2", "3"}
        entry = doc["rows_by_n_then_k"]["3"]["20"]
        assert entry["target"] == pytest.approx(17.9)
        num, den = entry["witness"].split("/")
        assert abs(int(num) / int(den) - 17.8815273) < 1e-4

    def test_bad_range_is_usage_error(self, capsys):
        code, _ = run(capsys, "report", "--n", "4..2", "--k", "20")
        assert code == 2


class TestReproducibility:
    def test_byte_identical_without_timestamp(self, capsys):
        _, first = run(capsys, "count", "--k", "3", "--beta", "2", "--max-len", "6",
                       "--no-timestamp")
        _, second = run(capsys, "count", "--k", "3", "--beta", "2", "--max-len", "6",
                        "--no-timestamp")
        assert first == second

    def test_timestamp_is_the_only_difference(self, capsys):
        _, first = run(capsys, "count", "--k", "3", "--beta", "2", "--max-len", "6")
        _, second = run(capsys, "count", "--k", "3", "--beta", "2", "--max-len", "6")
        a, b = json.loads(first), json.loads(second)
        a.pop("generated_at")
        b.pop("generated_at")
        assert a == b
