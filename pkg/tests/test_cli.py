import json
from pathlib import Path

import pytest

from qmeaning.cli import main

DATA = Path(__file__).resolve().parent.parent / "src" / "qmeaning" / "data"
EXAMPLE_CORPUS = DATA / "example_corpus.txt"
EXAMPLE_BASES = DATA / "example_bases.json"
EXAMPLE_SPACE = DATA / "example_meaning_space.txt"

AUTO_CORPUS = (
    "The cat chased the dog near the barn. "
    "The dog chased the cat into the barn. "
    "A cat watched the dog while the dog watched the cat."
)


@pytest.fixture()
def example_model_path(tmp_path):
    out = tmp_path / "model.json"
    code = main([
        "prepare",
        "--corpus", str(EXAMPLE_CORPUS),
        "--bases", str(EXAMPLE_BASES),
        "--w-vn", "1",
        "--out", str(out),
    ])
    assert code == 0
    return out


class TestPrepare:
    def test_example_corpus_model(self, example_model_path, capsys):
        doc = json.loads(example_model_path.read_text())
        assert doc["format_version"] == 1
        assert len(doc["patterns"]) == 8
        assert doc["labels"]["01100"] == "adult,sit,inside"

    def test_summary_lists_bases(self, tmp_path, capsys):
        out = tmp_path / "model.json"
        main([
            "prepare", "--corpus", str(EXAMPLE_CORPUS), "--bases", str(EXAMPLE_BASES),
            "--w-vn", "1", "--out", str(out),
        ])
        text = capsys.readouterr().out
        assert "patterns: 8 of width 5" in text
        assert "adult=00" in text

    def test_empty_corpus_fails(self, tmp_path, capsys):
        empty = tmp_path / "empty.txt"
        empty.write_text("   ")
        code = main([
            "prepare", "--corpus", str(empty), "--bases", str(EXAMPLE_BASES),
            "--w-vn", "1", "--out", str(tmp_path / "m.json"),
        ])
        assert code == 2
        assert "error:" in capsys.readouterr().err

    def test_zero_sentences_diagnostic(self, tmp_path, capsys):
        corpus = tmp_path / "corpus.txt"
        corpus.write_text(
            "cat the the the the the the chased the the the the the the dog\n"
        )
        code = main([
            "prepare", "--corpus", str(corpus),
            "--n-nouns", "2", "--n-verbs", "2",
            "--w-nouns", "1", "--w-verbs", "1", "--w-vn", "1",
            "--out", str(tmp_path / "m.json"),
        ])
        assert code == 2
        err = capsys.readouterr().err
        assert "no viable sentences" in err
        assert not (tmp_path / "m.json").exists()

    def test_manual_bases_still_need_w_vn(self, tmp_path, capsys, monkeypatch):
        monkeypatch.delenv("VERB_NOUN_DIST_CUTOFF", raising=False)
        code = main([
            "prepare", "--corpus", str(EXAMPLE_CORPUS), "--bases", str(EXAMPLE_BASES),
            "--out", str(tmp_path / "m.json"),
        ])
        assert code == 2
        assert "w-vn" in capsys.readouterr().err

    def test_module_entry_point(self):
        import subprocess
        import sys

        result = subprocess.run(
            [sys.executable, "-m", "qmeaning", "--help"],
            capture_output=True, text=True, check=False,
        )
        assert result.returncode == 0
        assert "prepare" in result.stdout

    def test_missing_params_name_env_var(self, tmp_path, capsys, monkeypatch):
        for var in ("NUM_BASIS_NOUN", "NUM_BASIS_VERB", "BASIS_NOUN_DIST_CUTOFF",
                    "BASIS_VERB_DIST_CUTOFF", "VERB_NOUN_DIST_CUTOFF"):
            monkeypatch.delenv(var, raising=False)
        corpus = tmp_path / "corpus.txt"
        corpus.write_text(AUTO_CORPUS)
        code = main(["prepare", "--corpus", str(corpus), "--out", str(tmp_path / "m.json")])
        assert code == 2
        assert "NUM_BASIS_NOUN" in capsys.readouterr().err

    def test_env_vars_supply_params(self, tmp_path, monkeypatch, capsys):
        corpus = tmp_path / "corpus.txt"
        corpus.write_text(AUTO_CORPUS)
        monkeypatch.setenv("NUM_BASIS_NOUN", "2")
        monkeypatch.setenv("NUM_BASIS_VERB", "2")
        monkeypatch.setenv("BASIS_NOUN_DIST_CUTOFF", "4")
        monkeypatch.setenv("BASIS_VERB_DIST_CUTOFF", "4")
        monkeypatch.setenv("VERB_NOUN_DIST_CUTOFF", "3")
        out = tmp_path / "m.json"
        assert main(["prepare", "--corpus", str(corpus), "--out", str(out)]) == 0
        summary = capsys.readouterr().out
        assert "env NUM_BASIS_NOUN" in summary
        doc = json.loads(out.read_text())
        assert doc["params"]["n_nouns"] == 2

    def test_flag_overrides_env(self, tmp_path, monkeypatch, capsys):
        corpus = tmp_path / "corpus.txt"
        corpus.write_text(AUTO_CORPUS)
        for var, value in (
            ("NUM_BASIS_NOUN", "4"), ("NUM_BASIS_VERB", "2"),
            ("BASIS_NOUN_DIST_CUTOFF", "4"), ("BASIS_VERB_DIST_CUTOFF", "4"),
            ("VERB_NOUN_DIST_CUTOFF", "3"),
        ):
            monkeypatch.setenv(var, value)
        out = tmp_path / "m.json"
        code = main([
            "prepare", "--corpus", str(corpus), "--n-nouns", "2", "--out", str(out),
        ])
        assert code == 0
        summary = capsys.readouterr().out
        assert "n_nouns=2 (flag)" in summary
        assert json.loads(out.read_text())["params"]["n_nouns"] == 2


class TestRepresent:
    def test_bypass_file_distribution(self, tmp_path):
        out = tmp_path / "dist.csv"
        code = main([
            "represent", "--patterns", str(EXAMPLE_SPACE),
            "--test", "00000", "--shots", "20000", "--seed", "9",
            "--out", str(out),
        ])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "# qmeaning distribution v1"
        header = lines[3].split(",")
        assert header == ["label", "pattern", "hamming_distance", "probability", "count"]
        rows = [line.split(",") for line in lines[4:]]
        assert len(rows) == 8

    def test_byte_identical_for_fixed_seed(self, tmp_path):
        outs = []
        for name in ("a.csv", "b.csv"):
            out = tmp_path / name
            main([
                "represent", "--patterns", str(EXAMPLE_SPACE),
                "--test", "00111", "--shots", "5000", "--seed", "4",
                "--out", str(out),
            ])
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_patterns_outside_file_never_emitted(self, tmp_path):
        out = tmp_path / "dist.csv"
        main([
            "represent", "--patterns", str(EXAMPLE_SPACE),
            "--test", "00000", "--shots", "50000", "--seed", "1",
            "--out", str(out),
        ])
        stored = {line.split()[0] for line in EXAMPLE_SPACE.read_text().splitlines()}
        emitted = {line.split(",")[-4] for line in out.read_text().splitlines()[4:]}
        assert emitted <= stored

    def test_single_pattern_probability_one(self, tmp_path):
        pat = tmp_path / "single.txt"
        pat.write_text("0101 only,one,here\n")
        out = tmp_path / "dist.csv"
        assert main([
            "represent", "--patterns", str(pat), "--test", "0101", "--out", str(out),
        ]) == 0
        rows = out.read_text().splitlines()[4:]
        assert len(rows) == 1
        assert rows[0].split(",")[-2] == "1.000000000"

    def test_triple_resolution_via_model(self, example_model_path, tmp_path):
        out = tmp_path / "dist.csv"
        code = main([
            "represent", "--model", str(example_model_path),
            "--test", "adult,stand,inside", "--out", str(out),
        ])
        assert code == 0
        assert "test=00000" in out.read_text()

    def test_triple_resolution_via_pattern_labels(self, tmp_path):
        out = tmp_path / "dist.csv"
        code = main([
            "represent", "--patterns", str(EXAMPLE_SPACE),
            "--test", "adult,sit,inside", "--out", str(out),
        ])
        assert code == 0
        assert "test=01100" in out.read_text()

    def test_triple_resolution_via_bases_file(self, tmp_path):
        # "adult,stand,inside" = 00000 is not a stored pattern, so only
        # the basis rings can resolve it in bypass mode
        out = tmp_path / "dist.csv"
        code = main([
            "represent", "--patterns", str(EXAMPLE_SPACE),
            "--bases", str(EXAMPLE_BASES),
            "--test", "adult,stand,inside", "--out", str(out),
        ])
        assert code == 0
        assert "test=00000" in out.read_text()

    def test_bases_width_mismatch_is_an_error(self, tmp_path, capsys):
        pat = tmp_path / "narrow.txt"
        pat.write_text("010\n101\n")
        code = main([
            "represent", "--patterns", str(pat), "--bases", str(EXAMPLE_BASES),
            "--test", "010",
        ])
        assert code == 2
        assert "bits wide" in capsys.readouterr().err

    def test_unknown_token_lists_candidates(self, example_model_path, capsys):
        code = main([
            "represent", "--model", str(example_model_path),
            "--test", "queen,stand,inside",
        ])
        assert code == 2
        err = capsys.readouterr().err
        assert "queen" in err and "adult" in err

    def test_width_mismatch_is_an_error(self, capsys):
        code = main([
            "represent", "--patterns", str(EXAMPLE_SPACE), "--test", "000",
        ])
        assert code == 2
        assert "width" in capsys.readouterr().err


class TestOverlap:
    def test_identical_pair(self, tmp_path):
        out = tmp_path / "overlap.csv"
        code = main([
            "overlap", "--patterns", str(EXAMPLE_SPACE),
            "--test", "00000", "--test", "00000", "--out", str(out),
        ])
        assert code == 0
        row = out.read_text().splitlines()[-1]
        assert row.endswith("1.000000,1.000000")

    def test_ranked_batch(self, tmp_path):
        out = tmp_path / "overlap.csv"
        code = main([
            "overlap", "--patterns", str(EXAMPLE_SPACE),
            "--test", "00000", "--test", "00111", "--test", "01100",
            "--out", str(out),
        ])
        assert code == 0
        rows = out.read_text().splitlines()[3:]
        values = [float(r.rsplit(",", 2)[1]) for r in rows]
        assert values == sorted(values, reverse=True)
        assert values[0] == pytest.approx(0.904508, abs=1e-6)

    def test_candidates_file(self, tmp_path):
        candidates = tmp_path / "candidates.txt"
        candidates.write_text("00111 first,test,here\n01100\n")
        out = tmp_path / "overlap.csv"
        code = main([
            "overlap", "--patterns", str(EXAMPLE_SPACE),
            "--test", "00000", "--candidates", str(candidates),
            "--out", str(out),
        ])
        assert code == 0
        body = out.read_text()
        assert "first,test,here" in body
        assert len(body.splitlines()) == 3 + 2

    def test_bases_file_labels_unstored_candidates(self, tmp_path):
        out = tmp_path / "overlap.csv"
        code = main([
            "overlap", "--patterns", str(EXAMPLE_SPACE),
            "--bases", str(EXAMPLE_BASES),
            "--test", "adult,stand,inside", "--test", "child,move,inside",
            "--out", str(out),
        ])
        assert code == 0
        body = out.read_text()
        assert "reference=00000" in body
        assert "child,move,inside" in body

    def test_needs_two_patterns(self, capsys):
        code = main([
            "overlap", "--patterns", str(EXAMPLE_SPACE), "--test", "00000",
        ])
        assert code == 2
        assert "candidate" in capsys.readouterr().err

    def test_swap_test_mode(self, tmp_path):
        out = tmp_path / "overlap.csv"
        code = main([
            "overlap", "--patterns", str(EXAMPLE_SPACE),
            "--test", "00000", "--test", "00111",
            "--shots", "20000", "--seed", "2", "--out", str(out),
        ])
        assert code == 0
        body = out.read_text()
        assert "method=swap-test" in body
        value = float(body.splitlines()[-1].rsplit(",", 2)[1])
        assert value == pytest.approx(0.8602, abs=0.02)


class TestReportGates:
    def test_report_fields(self, tmp_path, capsys):
        code = main(["report-gates", "--patterns", str(EXAMPLE_SPACE)])
        assert code == 0
        text = capsys.readouterr().out
        assert "patterns: 8" in text
        assert "qubits: 12" in text
        assert "one_qubit_calls: 121" in text
        assert "two_qubit_calls: 1048" in text
        assert "counting_rules:" in text
