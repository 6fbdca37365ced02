"""Durable project persistence.

Snapshots are versioned, canonical JSON (sorted keys, fixed separators),
so identical project state always serializes to identical bytes.
Occurrences are deliberately absent: they are derived data and the matcher
recomputes them on load, which keeps files small and guarantees snapshots
can never disagree with the selection rule.

Saves are atomic: write to a temp file in the same directory, fsync, then
rename over the target. A crash at any point leaves either the old or the
new snapshot, never a torn file.
"""

from __future__ import annotations

import json
import os
import threading
from collections import defaultdict
from pathlib import Path

from ner_workbench import matcher, model
from ner_workbench.errors import CorruptSnapshot, IoFailure, UnknownProject, UnsupportedVersion
from ner_workbench.model import Project

FORMAT_VERSION = 1


def project_to_snapshot(project: Project) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "project_id": project.project_id,
        "name": project.name,
        "documents": [
            {"doc_id": d.doc_id, "name": d.name, "text": d.text}
            for d in sorted(project.documents.values(), key=lambda d: d.doc_id)
        ],
        "classes": [
            {
                "label": c.label,
                "description": c.description,
                "color_index": c.color_index,
                "builtin": c.builtin,
            }
            for c in project.classes.values()
        ],
        "instances": [
            {"instance_id": i.instance_id, "surface": i.surface, "class_label": i.class_label}
            for i in project.instances.values()
        ],
        "groups": {
            doc_id: [
                {"group_id": g.group_id, "name": g.name, "members": list(g.members)}
                for g in per_doc.values()
            ]
            for doc_id, per_doc in sorted(project.groups.items())
        },
        "aliases": {
            doc_id: [
                {
                    "alias_id": a.alias_id,
                    "name": a.name,
                    "class_label": a.class_label,
                    "members": list(a.members),
                }
                for a in per_doc.values()
            ]
            for doc_id, per_doc in sorted(project.aliases.items())
        },
        "counters": {
            "instance": project.next_instance_seq,
            "class": project.next_class_seq,
            "groups": dict(sorted(project.next_group_seq.items())),
            "aliases": dict(sorted(project.next_alias_seq.items())),
        },
    }


def dumps_snapshot(project: Project) -> bytes:
    return json.dumps(
        project_to_snapshot(project),
        ensure_ascii=False,
        sort_keys=True,
        indent=2,
    ).encode("utf-8")


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise CorruptSnapshot(message)


def project_from_snapshot(data: dict) -> Project:
    """Validate and rebuild; fails closed on any structural problem."""
    _require(isinstance(data, dict), "snapshot must be an object")
    version = data.get("format_version")
    _require(isinstance(version, int), "missing or invalid format_version")
    if version > FORMAT_VERSION:
        raise UnsupportedVersion(f"snapshot version {version} > supported {FORMAT_VERSION}")
    try:
        project = Project(
            project_id=str(data["project_id"]), name=str(data.get("name", ""))
        )
        for c in data["classes"]:
            _require(c["label"] not in project.classes, f"duplicate class {c['label']!r}")
            project.classes[c["label"]] = model.EntityClass(
                label=str(c["label"]),
                description=str(c["description"]),
                color_index=int(c["color_index"]),
                builtin=bool(c["builtin"]),
            )
        for i in data["instances"]:
            _require(
                i["instance_id"] not in project.instances,
                f"duplicate instance {i['instance_id']!r}",
            )
            project.instances[i["instance_id"]] = model.EntityInstance(
                instance_id=str(i["instance_id"]),
                surface=str(i["surface"]),
                class_label=str(i["class_label"]),
            )
        for d in data["documents"]:
            doc_id = str(d["doc_id"])
            _require(doc_id not in project.documents, f"duplicate document {doc_id!r}")
            project.documents[doc_id] = model.Document(
                doc_id=doc_id, name=str(d["name"]), text=str(d["text"])
            )
            project.groups[doc_id] = {}
            project.aliases[doc_id] = {}
            project.next_group_seq[doc_id] = 0
            project.next_alias_seq[doc_id] = 0
        for doc_id, items in data["groups"].items():
            _require(doc_id in project.documents, f"groups for unknown document {doc_id!r}")
            for g in items:
                _require(
                    g["group_id"] not in project.groups[doc_id],
                    f"duplicate group {g['group_id']!r} in {doc_id!r}",
                )
                project.groups[doc_id][g["group_id"]] = model.EntityGroup(
                    group_id=str(g["group_id"]),
                    doc_id=doc_id,
                    name=str(g["name"]),
                    members=[str(m) for m in g["members"]],
                )
        for doc_id, items in data["aliases"].items():
            _require(doc_id in project.documents, f"aliases for unknown document {doc_id!r}")
            for a in items:
                _require(
                    a["alias_id"] not in project.aliases[doc_id],
                    f"duplicate alias {a['alias_id']!r} in {doc_id!r}",
                )
                project.aliases[doc_id][a["alias_id"]] = model.EntityAlias(
                    alias_id=str(a["alias_id"]),
                    doc_id=doc_id,
                    name=str(a["name"]),
                    class_label=str(a["class_label"]),
                    members=[str(m) for m in a["members"]],
                )
        counters = data["counters"]
        project.next_instance_seq = int(counters["instance"])
        project.next_class_seq = int(counters["class"])
        for doc_id, n in counters["groups"].items():
            project.next_group_seq[doc_id] = int(n)
        for doc_id, n in counters["aliases"].items():
            project.next_alias_seq[doc_id] = int(n)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise CorruptSnapshot(f"malformed snapshot: {exc!r}") from None

    model._reindex_documents(project)
    matcher.reannotate_all(project)
    problems = model.integrity_errors(project)
    if problems:
        raise CorruptSnapshot("; ".join(problems[:5]), problems=problems)
    return project


def save_snapshot(project: Project, path: Path | str) -> None:
    path = Path(path)
    data = dumps_snapshot(project)
    tmp = path.with_name(path.name + ".tmp")
    try:
        fd = os.open(str(tmp), os.O_WRONLY | os.O_CREAT | os.O_TRUNC, 0o644)
        try:
            os.write(fd, data)
            os.fsync(fd)
        finally:
            os.close(fd)
        os.replace(tmp, path)
    except OSError as exc:
        try:
            tmp.unlink(missing_ok=True)
        except OSError:
            pass
        raise IoFailure(f"saving {path}: {exc}") from None


def load_snapshot(path: Path | str) -> Project:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except FileNotFoundError:
        raise UnknownProject(f"no snapshot at {path}") from None
    except OSError as exc:
        raise IoFailure(f"reading {path}: {exc}") from None
    try:
        data = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CorruptSnapshot(f"{path}: {exc}") from None
    return project_from_snapshot(data)


class ProjectStore:
    """Snapshot files under one root, one writer lock per project."""

    def __init__(self, root: Path | str):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._locks: defaultdict[str, threading.RLock] = defaultdict(threading.RLock)
        self._locks_guard = threading.Lock()

    def lock(self, project_id: str) -> threading.RLock:
        with self._locks_guard:
            return self._locks[project_id]

    def path_for(self, project_id: str) -> Path:
        return self.root / f"{project_id}.json"

    def save(self, project: Project) -> None:
        with self.lock(project.project_id):
            save_snapshot(project, self.path_for(project.project_id))

    def load(self, project_id: str) -> Project:
        return load_snapshot(self.path_for(project_id))

    def exists(self, project_id: str) -> bool:
        return self.path_for(project_id).exists()

    def delete(self, project_id: str) -> None:
        with self.lock(project_id):
            try:
                self.path_for(project_id).unlink()
            except FileNotFoundError:
                raise UnknownProject(f"no project {project_id!r}") from None
            except OSError as exc:
                raise IoFailure(f"deleting {project_id!r}: {exc}") from None

    def list_projects(self) -> list[dict]:
        """Metadata for every stored project, most recently modified first."""
        entries = []
        for path in self.root.glob("*.json"):
            try:
                stat = path.stat()
                data = json.loads(path.read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError, UnicodeDecodeError):
                continue
            entries.append(
                {
                    "project_id": str(data.get("project_id", path.stem)),
                    "name": str(data.get("name", "")),
                    "documents": len(data.get("documents", [])),
                    "instances": len(data.get("instances", [])),
                    "modified": stat.st_mtime,
                }
            )
        entries.sort(key=lambda e: e["modified"], reverse=True)
        return entries
