from __future__ import annotations

import json
import subprocess
import sys
import zipfile

import pytest
from fastapi.testclient import TestClient

from ner_workbench import cli, exporter, store
from ner_workbench.api import ServeConfig, create_app

from fixtures import DEFINITION_CSV, THREE_CHAPTER_FREQS, write_three_chapter_corpus
from mock_annotator import pattern_annotator, predictions_for


@pytest.fixture
def corpus(tmp_path):
    directory = tmp_path / "chapters"
    write_three_chapter_corpus(directory)
    return directory


def run_cli(*argv) -> int:
    return cli.main([str(a) for a in argv])


def test_annotate_writes_bundles_and_summary(corpus, tmp_path, capsys):
    out = tmp_path / "out"
    code = run_cli("annotate", "--in", corpus, "--dict", DEFINITION_CSV, "--out", out)
    assert code == 0
    for name in THREE_CHAPTER_FREQS:
        with zipfile.ZipFile(out / name / "data.zip") as zf:
            assert zf.namelist() == ["Entity.csv", "Alias.csv", "Group.csv"]
    stdout = capsys.readouterr().out
    assert "chapter59.txt" in stdout
    assert "行者" in stdout and "82" in stdout

    # bundles equal a direct module export of the saved project
    project = store.load_snapshot(out / "project.json")
    for name in THREE_CHAPTER_FREQS:
        expected = exporter.export_document(project, name).zip_bytes()
        assert (out / name / "data.zip").read_bytes() == expected


def test_annotate_without_inputs_fails(tmp_path, capsys):
    empty = tmp_path / "none"
    empty.mkdir()
    code = run_cli("annotate", "--in", empty, "--out", tmp_path / "out")
    assert code == 1
    assert "no documents" in capsys.readouterr().err


def test_missing_input_path_is_domain_error(tmp_path, capsys):
    code = run_cli("annotate", "--in", tmp_path / "ghost", "--out", tmp_path / "out")
    assert code == 1
    assert "does not exist" in capsys.readouterr().err


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["annotate"])  # --in and --out are required
    assert exc.value.code == 2


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2


def test_stats_json_matches_api_payload(corpus, tmp_path, capsys):
    out = tmp_path / "out"
    assert run_cli("annotate", "--in", corpus, "--dict", DEFINITION_CSV, "--out", out) == 0
    capsys.readouterr()

    assert run_cli(
        "stats", out / "project.json", "--doc", "chapter59.txt",
        "--chart", "frequency", "--sort-by-frequency", "--format", "json",
    ) == 0
    from_cli = json.loads(capsys.readouterr().out)

    snapshot = (out / "project.json").read_bytes()
    root = tmp_path / "served"
    root.mkdir()
    (root / "cli.json").write_bytes(snapshot)
    with TestClient(create_app(ServeConfig(store_root=root))) as client:
        from_api = client.get(
            "/api/v1/projects/cli/documents/chapter59.txt/charts/frequency",
            params={"sort_by_frequency": "true"},
        ).json()
    assert from_cli == from_api


def test_stats_overview_series_and_positions(corpus, tmp_path, capsys):
    out = tmp_path / "out"
    run_cli("annotate", "--in", corpus, "--dict", DEFINITION_CSV, "--out", out)
    capsys.readouterr()

    assert run_cli(
        "stats", out / "project.json", "--chart", "series", "--target", "行者",
        "--format", "json",
    ) == 0
    series = json.loads(capsys.readouterr().out)
    assert [p["frequency"] for p in series["points"]] == [82, 60, 40]

    assert run_cli(
        "stats", out / "project.json", "--doc", "chapter60.txt", "--chart", "overview",
    ) == 0
    table = capsys.readouterr().out
    assert "PERSON" in table and "Class" in table

    assert run_cli(
        "stats", out / "project.json", "--doc", "chapter61.txt", "--chart", "positions",
        "--mode", "class", "--ids", "LOC", "--format", "json",
    ) == 0
    positions = json.loads(capsys.readouterr().out)
    loc_count = sum(
        THREE_CHAPTER_FREQS["chapter61.txt"][s]
        for s in ("火焰山", "翠雲山", "崑崙山", "峨眉山", "芭蕉洞")
    )
    assert len(positions["points"]) == loc_count


def test_stats_table_aligns_cjk_columns(corpus, tmp_path, capsys):
    out = tmp_path / "out"
    run_cli("annotate", "--in", corpus, "--dict", DEFINITION_CSV, "--out", out)
    capsys.readouterr()
    run_cli("stats", out / "project.json", "--doc", "chapter59.txt", "--sort-by-frequency")
    lines = capsys.readouterr().out.splitlines()
    # each row lines up on the Class column despite double-width entity names
    header = lines[0]
    class_col = header.index("Class")
    for line in lines[2:8]:
        assert cli.display_width(line[:class_col].rstrip()) < cli.display_width(line[:class_col]) + 2
    widths = {cli.display_width(line) for line in lines[:2]}
    assert len(widths) <= 2


def test_export_command_writes_single_doc(corpus, tmp_path, capsys):
    out = tmp_path / "out"
    run_cli("annotate", "--in", corpus, "--dict", DEFINITION_CSV, "--out", out)
    capsys.readouterr()
    exported = tmp_path / "exports"
    assert run_cli(
        "export", out / "project.json", "--doc", "chapter60.txt", "--out", exported
    ) == 0
    assert (exported / "chapter60.txt" / "data.zip").read_bytes() == (
        out / "chapter60.txt" / "data.zip"
    ).read_bytes()


def test_external_backend_equals_offline_predictions(corpus, tmp_path, capsys):
    patterns = {"行者": "PERSON", "芭蕉扇": "WEAPON"}
    texts = {
        name: (corpus / name).read_text(encoding="utf-8") for name in THREE_CHAPTER_FREQS
    }

    out_http = tmp_path / "http"
    with pattern_annotator(patterns) as url:
        assert run_cli(
            "annotate", "--in", corpus, "--backend", "external",
            "--annotator-url", url, "--out", out_http,
        ) == 0

    predictions = tmp_path / "predictions.json"
    predictions.write_text(
        json.dumps(predictions_for(texts, patterns)), encoding="utf-8"
    )
    out_offline = tmp_path / "offline"
    assert run_cli(
        "annotate", "--in", corpus, "--predictions", predictions, "--out", out_offline,
    ) == 0

    for name in THREE_CHAPTER_FREQS:
        assert (out_http / name / "data.zip").read_bytes() == (
            out_offline / name / "data.zip"
        ).read_bytes()
    assert (out_http / "project.json").read_bytes() == (
        out_offline / "project.json"
    ).read_bytes()


def test_module_entry_point_runs(tmp_path):
    result = subprocess.run(
        [sys.executable, "-m", "ner_workbench", "--help"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert "annotate" in result.stdout and "serve" in result.stdout
