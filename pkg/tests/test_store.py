from __future__ import annotations

import json
import os

import pytest

from ner_workbench import analytics, model, store
from ner_workbench.errors import CorruptSnapshot, IoFailure, UnknownProject, UnsupportedVersion

from fixtures import SINGLE_DOC_ID, single_doc_project, three_chapter_project


def test_save_load_save_is_byte_identical(tmp_path):
    project = single_doc_project()
    path = tmp_path / "p.json"
    store.save_snapshot(project, path)
    first = path.read_bytes()
    reloaded = store.load_snapshot(path)
    store.save_snapshot(reloaded, path)
    assert path.read_bytes() == first


def test_occurrences_are_recomputed_not_stored(tmp_path):
    project = single_doc_project()
    path = tmp_path / "p.json"
    store.save_snapshot(project, path)
    raw = json.loads(path.read_text(encoding="utf-8"))
    assert "occurrences" not in raw
    reloaded = store.load_snapshot(path)
    assert reloaded.occurrences == project.occurrences


def test_reload_preserves_analytics(tmp_path):
    project = three_chapter_project()
    path = tmp_path / "p.json"
    store.save_snapshot(project, path)
    reloaded = store.load_snapshot(path)
    for doc_id in project.documents:
        assert analytics.frequency_table(reloaded, doc_id) == analytics.frequency_table(
            project, doc_id
        )
    assert analytics.cross_doc_series(reloaded, "孫悟空") == analytics.cross_doc_series(
        project, "孫悟空"
    )


def test_id_counters_survive_reload(tmp_path):
    project = single_doc_project()
    model.delete_instance(project, "E22")
    path = tmp_path / "p.json"
    store.save_snapshot(project, path)
    reloaded = store.load_snapshot(path)
    inst = model.register_instance(reloaded, "新詞", "PERSON")
    assert inst.instance_id == "E23"  # E22 not recycled


def test_version_gate(tmp_path):
    project = single_doc_project()
    path = tmp_path / "p.json"
    store.save_snapshot(project, path)
    raw = json.loads(path.read_text(encoding="utf-8"))
    raw["format_version"] = store.FORMAT_VERSION + 1
    path.write_text(json.dumps(raw), encoding="utf-8")
    with pytest.raises(UnsupportedVersion):
        store.load_snapshot(path)


@pytest.mark.parametrize(
    "mutate",
    [
        lambda raw: raw.pop("instances"),
        lambda raw: raw["groups"][SINGLE_DOC_ID][0]["members"].append("E99"),
        lambda raw: raw["instances"][0].update(class_label="GHOST"),
        lambda raw: raw["counters"].update(instance=1),  # ids beyond counter
        lambda raw: raw["instances"].append(
            {"instance_id": "E5", "surface": "重複", "class_label": "PERSON"}
        ),
        lambda raw: raw.pop("format_version"),
        lambda raw: raw["aliases"][SINGLE_DOC_ID][0].update(class_label="CARDINAL"),
    ],
)
def test_corrupt_snapshots_fail_closed(tmp_path, mutate):
    project = single_doc_project()
    path = tmp_path / "p.json"
    store.save_snapshot(project, path)
    raw = json.loads(path.read_text(encoding="utf-8"))
    mutate(raw)
    path.write_text(json.dumps(raw, ensure_ascii=False), encoding="utf-8")
    with pytest.raises(CorruptSnapshot):
        store.load_snapshot(path)


def test_unreadable_json_is_corrupt(tmp_path):
    path = tmp_path / "p.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(CorruptSnapshot):
        store.load_snapshot(path)


def test_interrupted_save_leaves_old_snapshot(tmp_path, monkeypatch):
    project = single_doc_project()
    path = tmp_path / "p.json"
    store.save_snapshot(project, path)
    before = path.read_bytes()

    model.register_instance(project, "新角色", "PERSON")

    def boom(src, dst):
        raise OSError("killed between write and rename")

    monkeypatch.setattr(store.os, "replace", boom)
    with pytest.raises(IoFailure):
        store.save_snapshot(project, path)
    monkeypatch.undo()
    assert path.read_bytes() == before
    assert store.load_snapshot(path).instance_by_surface("新角色") is None
    # a committed save then fully replaces the old state
    store.save_snapshot(project, path)
    assert store.load_snapshot(path).instance_by_surface("新角色") is not None


def test_partial_temp_write_never_touches_target(tmp_path, monkeypatch):
    project = single_doc_project()
    path = tmp_path / "p.json"
    store.save_snapshot(project, path)
    before = path.read_bytes()

    real_write = os.write
    state = {"calls": 0}

    def half_write(fd, data):
        state["calls"] += 1
        real_write(fd, data[: len(data) // 2])
        raise OSError("disk full")

    monkeypatch.setattr(store.os, "write", half_write)
    with pytest.raises(IoFailure):
        store.save_snapshot(project, path)
    monkeypatch.undo()
    assert state["calls"] == 1
    assert path.read_bytes() == before


def test_project_store_listing_and_delete(tmp_path):
    root = tmp_path / "projects"
    ps = store.ProjectStore(root)
    assert ps.list_projects() == []
    for pid in ("alpha", "beta", "gamma"):
        project = model.new_project(pid)
        model.add_document(project, "a.txt", "甲")
        ps.save(project)
        os.utime(ps.path_for(pid), (1000, {"alpha": 1000, "beta": 3000, "gamma": 2000}[pid]))
    listing = ps.list_projects()
    assert [e["project_id"] for e in listing] == ["beta", "gamma", "alpha"]
    assert listing[0]["documents"] == 1
    ps.delete("beta")
    assert [e["project_id"] for e in ps.list_projects()] == ["gamma", "alpha"]
    with pytest.raises(UnknownProject):
        ps.delete("beta")
    with pytest.raises(UnknownProject):
        ps.load("beta")


def test_project_store_roundtrip(tmp_path):
    ps = store.ProjectStore(tmp_path / "projects")
    project = single_doc_project()
    ps.save(project)
    reloaded = ps.load(project.project_id)
    assert reloaded.project_id == project.project_id
    assert store.dumps_snapshot(reloaded) == store.dumps_snapshot(project)
