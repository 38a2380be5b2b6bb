"""
CLI Test
========

rdfsim subcommands end to end, exit codes and output formats.
"""

import json

import pytest

from app.cli import EXIT_DATA, EXIT_OK, EXIT_USAGE, main
from conftest import DATA_DIR

TESLA = str(DATA_DIR / "tesla.nt")
EXAMPLE_PROFILE = str(DATA_DIR / "profiles" / "example-3b.json")


@pytest.fixture(scope="module")
def dataset(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "vehicles.nt"
    assert main(["gen", "--seed", "42", "--count", "10", "--out", str(path)]) == EXIT_OK
    return str(path)


class TestGenAndValidate:
    def test_generated_file_validates(self, dataset, capsys):
        assert main(["validate", dataset]) == EXIT_OK
        assert capsys.readouterr().out.strip().endswith("110 triples, 10 entities, 0 errors")

    def test_stdout_matches_file(self, dataset, capsys):
        assert main(["gen", "--seed", "42", "--count", "10"]) == EXIT_OK
        with open(dataset, encoding="utf-8", newline="") as f:
            assert capsys.readouterr().out == f.read()

    def test_invalid_count(self, capsys):
        assert main(["gen", "--count", "0"]) == EXIT_USAGE

    def test_malformed_lines_exit_2(self, tmp_path, capsys):
        path = tmp_path / "bad.nt"
        path.write_text('<http://ex.org/s> <http://ex.org/p> "o" .\n<http://ex.org/s> "p" "o" .\n', encoding="utf-8")
        assert main(["validate", str(path)]) == EXIT_DATA
        out = capsys.readouterr().out
        assert f"{path}:2: error:" in out
        assert "1 triples, 1 entities, 1 errors" in out

    def test_json_report(self, tmp_path, capsys):
        path = tmp_path / "dup.nt"
        path.write_text('<http://ex.org/s> <http://ex.org/p> "o" .\n' * 2, encoding="utf-8")
        assert main(["--json", "validate", str(path)]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["triples"] == 1
        assert payload["diagnostics"] == [
            {"line": 2, "severity": "warning", "message": payload["diagnostics"][0]["message"]}
        ]

    def test_missing_file(self, tmp_path, capsys):
        assert main(["validate", str(tmp_path / "nope.nt")]) == EXIT_DATA
        assert "error:" in capsys.readouterr().err


class TestSim:
    def test_self_similarity(self, dataset, capsys):
        assert main(["sim", "--dataset", dataset, "--left", "m1", "--right", "m1"]) == EXIT_OK
        assert capsys.readouterr().out == "1.0\n"

    def test_json_and_explain(self, dataset, capsys):
        argv = ["--json", "sim", "--dataset", dataset, "--left", "m0001", "--right", "m2",
                "--approach", "P11", "--explain"]
        assert main(argv) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["left"] == "http://example.org/vehicles/m0001"
        assert payload["right"] == "http://example.org/vehicles/m0002"
        assert 0.0 <= payload["score"] <= 1.0
        assert len(payload["slots"]) == 11
        assert {s["weight"] for s in payload["slots"]} == {1.0, 2.0}

    def test_custom_profile(self, capsys):
        argv = ["sim", "--dataset", TESLA, "--profile", EXAMPLE_PROFILE, "--approach", "example-3b",
                "--left", "TeslaModelS", "--right", "http://example.org/vehicles/TeslaModelS"]
        assert main(argv) == EXIT_OK
        assert capsys.readouterr().out == "1.0\n"

    def test_minmax_scaling(self, dataset, capsys):
        argv = ["sim", "--dataset", dataset, "--scaling", "minmax", "--left", "m3", "--right", "m4"]
        assert main(argv) == EXIT_OK
        assert 0.0 <= float(capsys.readouterr().out) <= 1.0

    def test_unknown_entity(self, dataset, capsys):
        assert main(["sim", "--dataset", dataset, "--left", "m1", "--right", "m99"]) == EXIT_DATA
        assert "m99" in capsys.readouterr().err

    def test_unknown_approach(self, dataset):
        assert main(["sim", "--dataset", dataset, "--left", "m1", "--right", "m2", "--approach", "P12"]) == EXIT_DATA

    def test_missing_dataset(self, tmp_path):
        argv = ["sim", "--dataset", str(tmp_path / "none.nt"), "--left", "m1", "--right", "m2"]
        assert main(argv) == EXIT_DATA

    def test_bad_vector_file(self, dataset, tmp_path):
        vectors = tmp_path / "vectors.txt"
        vectors.write_text("2 3\nred 1 0 0\nblue 0 1\n", encoding="utf-8")
        argv = ["sim", "--dataset", dataset, "--vectors", str(vectors), "--left", "m1", "--right", "m2"]
        assert main(argv) == EXIT_DATA

    def test_tfidf_embedding(self, dataset, capsys):
        argv = ["sim", "--dataset", dataset, "--embedding", "tfidf", "--left", "m1", "--right", "m1"]
        assert main(argv) == EXIT_OK
        assert capsys.readouterr().out == "1.0\n"


class TestUsage:
    def test_unknown_flag(self, capsys):
        assert main(["sim", "--bogus"]) == EXIT_USAGE
        assert "usage:" in capsys.readouterr().err

    def test_missing_subcommand(self):
        assert main([]) == EXIT_USAGE

    def test_version(self, capsys):
        assert main(["--version"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("rdfsim ")


class TestMatrix:
    def test_csv_to_stdout(self, dataset, capsys):
        assert main(["matrix", "--dataset", dataset, "--approach", "PJ", "--workers", "1"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 11
        assert lines[0].startswith("id,http://example.org/vehicles/m0001,")

    def test_json(self, dataset, capsys):
        assert main(["--json", "matrix", "--dataset", dataset, "--approach", "PS"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["scores"]) == 10
        assert payload["scores"][0][0] == pytest.approx(1.0)


class TestBench:
    def test_seeded_bundle(self, tmp_path, capsys):
        out = tmp_path / "bundle"
        argv = ["--json", "bench", "--seed", "42", "--count", "10", "--approaches", "PJ,P0,P11",
                "--bins", "10", "--workers", "2", "--out", str(out)]
        assert main(argv) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert [s["approach"] for s in payload["summary"]] == ["PJ", "P0", "P11"]
        assert (out / "dataset.nt").exists() and (out / "manifest.json").exists()

    def test_both_scalings(self, dataset, tmp_path):
        out = tmp_path / "both"
        argv = ["bench", "--dataset", dataset, "--scaling", "both", "--approaches", "P2", "--out", str(out)]
        assert main(argv) == EXIT_OK
        assert (out / "matrix_P2.csv").exists() and (out / "matrix_P2-minmax.csv").exists()

    def test_empty_approach_list(self, dataset, tmp_path):
        argv = ["bench", "--dataset", dataset, "--approaches", " , ", "--out", str(tmp_path / "x")]
        assert main(argv) == EXIT_USAGE

    def test_dataset_and_seed_conflict(self, dataset, tmp_path):
        argv = ["bench", "--dataset", dataset, "--seed", "1", "--out", str(tmp_path / "x")]
        assert main(argv) == EXIT_USAGE

    def test_no_dataset(self, tmp_path):
        assert main(["bench", "--out", str(tmp_path / "x")]) == EXIT_USAGE

    def test_single_entity_dataset(self, tmp_path):
        assert main(["bench", "--dataset", TESLA, "--approaches", "P0", "--out", str(tmp_path / "x")]) == EXIT_DATA
        assert not (tmp_path / "x").exists()


class TestRecommend:
    def test_query_entity(self, dataset, capsys):
        assert main(["recommend", "--dataset", dataset, "--query", "m1", "--top-k", "3"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 3
        assert all("m0001" not in line for line in lines)
        scores = [float(line.split("\t")[0]) for line in lines]
        assert scores == sorted(scores, reverse=True)

    def test_query_file(self, dataset, capsys):
        argv = ["--json", "recommend", "--dataset", dataset, "--query-file", TESLA, "--approach", "PS", "--top-k", "5"]
        assert main(argv) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["query"] == "http://example.org/vehicles/TeslaModelS"
        assert len(payload["neighbours"]) == 5

    def test_query_required(self, dataset):
        assert main(["recommend", "--dataset", dataset]) == EXIT_USAGE
