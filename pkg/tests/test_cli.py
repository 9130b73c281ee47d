import json
import subprocess
import sys

import pytest

from reident.cli import default_threads, run


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    out = tmp_path_factory.mktemp("corpus")
    assert run(["synthgen", "--size", "1500", "--seed", "5", "--out", str(out)]) == 0
    return out


def test_synthgen_outputs(corpus):
    names = {p.name for p in corpus.iterdir()}
    assert {"dataset.txt", "truth.txt", "directory.txt", "config.json", "manifest.json"} <= names
    manifest = json.loads((corpus / "manifest.json").read_text())
    assert manifest["seed"] == 5 and manifest["exit_status"] == 0
    assert set(manifest["outputs"]) == {str(corpus / n) for n in ("dataset.txt", "truth.txt", "directory.txt",
                                                                   "config.json")}
    assert json.loads((corpus / "config.json").read_text())["population_size"] == 1500


def test_validate(corpus, tmp_path, capsys):
    assert run(["validate", "--dataset", str(corpus / "dataset.txt")]) == 0
    bad = tmp_path / "bad.txt"
    lines = (corpus / "dataset.txt").read_text(encoding="utf-8").splitlines()
    lines[3] = lines[3].replace("|M|", "|Q|").replace("|F|", "|Q|")
    bad.write_text("\n".join(lines) + "\n", encoding="utf-8")
    out = tmp_path / "v.json"
    assert run(["validate", "--dataset", str(bad), "--format", "json", "--out", str(out)]) == 1
    report = json.loads(out.read_text())
    assert report["rejected"] == 1 and report["errors"][0]["line"] == 4
    assert run(["validate", "--dataset", str(bad), "--strict"]) == 1


def test_exit_codes(corpus, tmp_path, capsys):
    assert run(["uniqueness", "--dataset", str(tmp_path / "missing.txt")]) == 2
    assert run(["uniqueness", "--dataset", str(corpus / "dataset.txt"), "--spec", "G,Z"]) == 1
    assert run(["maiden-name", "--dataset", str(corpus / "dataset.txt"), "--victim", "00000000000"]) == 1
    assert run(["cohort", "--dataset", str(corpus / "dataset.txt"), "--sample", "999999"]) == 1
    assert run(["synthgen", "--size", "10", "--out", str(tmp_path / "x"), "--set", "divorce_prob=3"]) == 1
    assert run(["uniqueness", "--dataset", str(corpus / "dataset.txt"), "--config", str(tmp_path / "nope")]) == 2
    err = capsys.readouterr().err
    assert "reident: error:" in err


def test_uniqueness_formats(corpus, tmp_path):
    csv_out, json_out = tmp_path / "u.csv", tmp_path / "u.json"
    ds = str(corpus / "dataset.txt")
    assert run(["uniqueness", "--dataset", ds, "--out", str(csv_out)]) == 0
    assert run(["uniqueness", "--dataset", ds, "--format", "json", "--spec", "G,D0,A0", "--out", str(json_out)]) == 0
    assert csv_out.read_text().startswith("spec,unique_fraction")
    assert [r["spec"] for r in json.loads(json_out.read_text())] == ["G,D0,A0"]
    manifest = json.loads((tmp_path / "u.csv.manifest.json").read_text())
    assert manifest["inputs"] == {ds: manifest["inputs"][ds]} and len(manifest["inputs"][ds]) == 64


def test_maiden_name_json_lines(corpus, tmp_path):
    first = (corpus / "dataset.txt").read_text(encoding="utf-8").splitlines()[1].split("|")[0]
    out = tmp_path / "m.jsonl"
    assert run(["maiden-name", "--dataset", str(corpus / "dataset.txt"), "--victim", first,
                "--H", "15", "25", "--out", str(out)]) == 0
    rows = [json.loads(line) for line in out.read_text(encoding="utf-8").splitlines()]
    assert [r["H"] for r in rows] == [15, 25]
    assert {"victim_id", "status", "path", "candidates"} <= set(rows[0])


def test_cohort_and_directory(corpus, tmp_path):
    ds = str(corpus / "dataset.txt")
    out = tmp_path / "c.csv"
    assert run(["cohort", "--dataset", ds, "--truth", str(corpus / "truth.txt"), "--sample", "200",
                "--H", "15", "35", "--out", str(out)]) == 0
    rows = out.read_text().splitlines()
    assert len(rows) == 1 + 2 * 8 and "recall" in rows[0]
    out = tmp_path / "d.json"
    assert run(["directory", "link", "--dataset", ds, "--directory", str(corpus / "directory.txt"),
                "--truth", str(corpus / "truth.txt"), "--format", "json", "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["owner_in_set"] == report["found"]


def test_replay_is_byte_identical(corpus, tmp_path):
    ds = str(corpus / "dataset.txt")
    commands = {
        "u.csv": ["uniqueness", "--dataset", ds],
        "c.json": ["cohort", "--dataset", ds, "--truth", str(corpus / "truth.txt"), "--sample", "300",
                   "--format", "json"],
        "d.csv": ["directory", "link", "--dataset", ds, "--directory", str(corpus / "directory.txt"),
                  "--sample", "100"],
    }
    for name, argv in commands.items():
        out = tmp_path / name
        assert run(argv + ["--out", str(out)]) == 0
        before = out.read_bytes()
        out.unlink()
        assert run(["replay", f"{out}.manifest.json"]) == 0
        assert out.read_bytes() == before
    gen = tmp_path / "gen"
    assert run(["synthgen", "--size", "800", "--seed", "3", "--out", str(gen)]) == 0
    before = {p.name: p.read_bytes() for p in gen.iterdir() if p.name != "manifest.json"}
    for p in gen.iterdir():
        if p.name != "manifest.json":
            p.unlink()
    assert run(["replay", str(gen / "manifest.json")]) == 0
    assert {p.name: p.read_bytes() for p in gen.iterdir() if p.name != "manifest.json"} == before


def test_config_file_defaults(corpus, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nformat = json\nsample=120\nH = 25\n", encoding="utf-8")
    out = tmp_path / "c.json"
    assert run(["cohort", "--dataset", str(corpus / "dataset.txt"), "--config", str(cfg), "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data[0]["H"] == 25 and data[0]["sample_size"] == 120
    # Explicit flags win over the file.
    assert run(["cohort", "--dataset", str(corpus / "dataset.txt"), "--config", str(cfg), "--sample", "80",
                "--out", str(out)]) == 0
    assert json.loads(out.read_text())[0]["sample_size"] == 80


def test_threads_env(monkeypatch):
    monkeypatch.setenv("REIDENT_THREADS", "3")
    assert default_threads() == 3
    monkeypatch.setenv("REIDENT_THREADS", "junk")
    assert default_threads() >= 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "reident", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and "reident" in proc.stdout
