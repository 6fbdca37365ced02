"""HTTP surface for the workbench.

A thin mapping of module operations onto /api/v1 endpoints. Every
mutation runs under the project's writer lock and is persisted to the
store before the response returns, so a successful response implies the
snapshot on disk already reflects it; the server keeps no per-session
state beyond the persisted projects.
"""

from __future__ import annotations

import re
import socket
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles

from ner_workbench import backends, charts, exporter, model
from ner_workbench.analytics import DisplayFilter
from ner_workbench.errors import (
    BackendUnreachable,
    BadConfig,
    BadEncoding,
    DuplicateProject,
    PortInUse,
    ValidationError,
    WorkbenchError,
)
from ner_workbench.model import Project
from ner_workbench.store import ProjectStore

_PROJECT_ID_RE = re.compile(r"^[\w.-]{1,64}$")


@dataclass
class ServeConfig:
    host: str = "127.0.0.1"
    port: int = 8765
    store_root: Path = field(default_factory=lambda: Path("projects"))
    annotator_url: str | None = None
    max_documents: int = 100
    ui_dir: Path | None = None


def _parse_filter(mode: str | None, ids: str | None, apply_alias: bool) -> DisplayFilter:
    selected = None
    if ids is not None:
        selected = frozenset(i for i in ids.split(",") if i)
    return DisplayFilter(
        mode=mode or "instance", selected_ids=selected, apply_alias=apply_alias
    )


def _require_str(payload: dict, key: str) -> str:
    value = payload.get(key)
    if not isinstance(value, str) or not value:
        raise ValidationError(f"field {key!r} must be a non-empty string")
    return value


def _optional_members(payload: dict) -> list[str] | None:
    members = payload.get("members")
    if members is None:
        return None
    if not isinstance(members, list) or not all(isinstance(m, str) for m in members):
        raise ValidationError("field 'members' must be a list of instance ids")
    return members


def create_app(config: ServeConfig) -> FastAPI:
    app = FastAPI(title="ner-workbench", docs_url=None, redoc_url=None)
    store = ProjectStore(config.store_root)
    cache: dict[str, Project] = {}

    def get_project(project_id: str) -> Project:
        if project_id not in cache:
            cache[project_id] = store.load(project_id)
        return cache[project_id]

    def read(project_id: str, fn: Callable[[Project], dict]) -> dict:
        with store.lock(project_id):
            return fn(get_project(project_id))

    def mutate(project_id: str, fn: Callable[[Project], object]) -> object:
        # persist before replying: read-your-writes across restarts
        with store.lock(project_id):
            project = get_project(project_id)
            result = fn(project)
            store.save(project)
            return result

    @app.exception_handler(WorkbenchError)
    async def workbench_error(request: Request, exc: WorkbenchError):
        body = {"code": exc.code, "message": str(exc)}
        if exc.details:
            body["details"] = {k: repr(v) for k, v in exc.details.items()}
        return JSONResponse(status_code=exc.http_status, content=body)

    @app.get("/health")
    @app.get("/api/v1/health")
    def health():
        return {"status": "ok"}

    @app.post("/api/v1/projects", status_code=201)
    async def create_project(request: Request):
        payload = await request.json() if await request.body() else {}
        project_id = payload.get("project_id") or uuid.uuid4().hex[:12]
        if not _PROJECT_ID_RE.match(project_id):
            raise ValidationError(f"project_id {project_id!r} must match {_PROJECT_ID_RE.pattern}")
        if store.exists(project_id):
            raise DuplicateProject(f"project {project_id!r} already exists")
        project = model.new_project(project_id, payload.get("name") or project_id)
        cache[project_id] = project
        store.save(project)
        return {"project_id": project.project_id, "name": project.name}

    @app.get("/api/v1/projects")
    def list_projects():
        return {"projects": store.list_projects()}

    @app.delete("/api/v1/projects/{project_id}")
    def delete_project(project_id: str):
        with store.lock(project_id):
            store.delete(project_id)
            cache.pop(project_id, None)
        return {"deleted": project_id}

    @app.post("/api/v1/projects/{project_id}/documents")
    async def upload_documents(project_id: str, request: Request):
        content_type = request.headers.get("content-type", "")
        uploads: list[tuple[str, str]] = []
        if content_type.startswith("multipart/"):
            form = await request.form()
            for upload in form.getlist("files"):
                if isinstance(upload, str):
                    raise ValidationError("'files' parts must be file uploads")
                raw = await upload.read()
                try:
                    text = raw.decode("utf-8-sig")
                except UnicodeDecodeError as exc:
                    raise BadEncoding(f"{upload.filename}: not UTF-8: {exc}") from None
                uploads.append((upload.filename or "upload.txt", text))
        else:
            payload = await request.json() if await request.body() else {}
            text = payload.get("text")
            if not isinstance(text, str):
                raise ValidationError("field 'text' must be a string")
            uploads.append((payload.get("name") or model.PASTED_TEXT_DOC_ID, text))

        def apply(project: Project):
            for name, text in uploads:
                model.add_document(project, name, text, max_documents=config.max_documents)
            return charts.documents_payload(project)

        return mutate(project_id, apply)

    @app.get("/api/v1/projects/{project_id}/documents")
    def list_documents(project_id: str):
        return read(project_id, charts.documents_payload)

    @app.post("/api/v1/projects/{project_id}/auto-annotate")
    async def auto_annotate(project_id: str, request: Request):
        payload = await request.json() if await request.body() else {}
        which = payload.get("backend", "gazetteer")

        def apply(project: Project):
            if which == "gazetteer":
                backend = backends.GazetteerBackend(project)
            elif which == "external":
                if not config.annotator_url:
                    raise BackendUnreachable("no annotator URL configured")
                backend = backends.ExternalBackend(config.annotator_url)
            else:
                raise ValidationError("backend must be 'gazetteer' or 'external'")
            return backends.run_auto_annotation(project, backend)

        return mutate(project_id, apply)

    @app.post("/api/v1/projects/{project_id}/definitions")
    async def upload_definition(project_id: str, request: Request, replace: bool = False):
        content_type = request.headers.get("content-type", "")
        if content_type.startswith("multipart/"):
            form = await request.form()
            upload = form.get("file") or next(iter(form.values()), None)
            if upload is None or isinstance(upload, str):
                raise ValidationError("multipart upload must carry a CSV file part")
            data = await upload.read()
        else:
            data = await request.body()
        definition = backends.parse_definition_csv(data)
        return mutate(
            project_id, lambda project: backends.apply_definition(project, definition, replace)
        )

    @app.post("/api/v1/projects/{project_id}/instances", status_code=201)
    async def register_instance(project_id: str, request: Request):
        payload = await request.json()
        surface = payload.get("surface")
        class_label = _require_str(payload, "class_label")
        if not isinstance(surface, str):
            raise ValidationError("field 'surface' must be a string")

        def apply(project: Project):
            inst = model.register_instance(project, surface, class_label)
            return {
                "instance_id": inst.instance_id,
                "surface": inst.surface,
                "class_label": inst.class_label,
            }

        return mutate(project_id, apply)

    @app.get("/api/v1/projects/{project_id}/instances")
    def list_instances(project_id: str):
        return read(project_id, charts.instances_payload)

    @app.delete("/api/v1/projects/{project_id}/instances/{instance_id}")
    def delete_instance(project_id: str, instance_id: str):
        mutate(project_id, lambda project: model.delete_instance(project, instance_id))
        return {"deleted": instance_id}

    @app.post("/api/v1/projects/{project_id}/classes", status_code=201)
    async def create_class(project_id: str, request: Request):
        payload = await request.json()
        label = _require_str(payload, "label")
        description = payload.get("description") or ""

        def apply(project: Project):
            cls = model.create_class(project, label, description)
            return {
                "label": cls.label,
                "description": cls.description,
                "color_index": cls.color_index,
                "builtin": cls.builtin,
            }

        return mutate(project_id, apply)

    @app.get("/api/v1/projects/{project_id}/classes")
    def list_classes(project_id: str):
        return read(project_id, charts.classes_payload)

    @app.delete("/api/v1/projects/{project_id}/classes/{label}")
    def delete_class(project_id: str, label: str):
        mutate(project_id, lambda project: model.delete_class(project, label))
        return {"deleted": label}

    # ---- per-document groups and aliases

    @app.post("/api/v1/projects/{project_id}/documents/{doc_id}/groups", status_code=201)
    async def create_group(project_id: str, doc_id: str, request: Request):
        payload = await request.json()
        name = _require_str(payload, "name")
        members = _optional_members(payload) or []

        def apply(project: Project):
            group = model.create_group(project, doc_id, name, members)
            return {"group_id": group.group_id, "name": group.name, "members": group.members}

        return mutate(project_id, apply)

    @app.get("/api/v1/projects/{project_id}/documents/{doc_id}/groups")
    def list_groups(project_id: str, doc_id: str):
        return read(project_id, lambda project: charts.groups_payload(project, doc_id))

    @app.put("/api/v1/projects/{project_id}/documents/{doc_id}/groups/{group_id}")
    async def update_group(project_id: str, doc_id: str, group_id: str, request: Request):
        payload = await request.json()
        members = _optional_members(payload)

        def apply(project: Project):
            group = project.groups.get(doc_id, {}).get(group_id)
            if members is not None:
                group = model.set_group_members(project, doc_id, group_id, members)
            return {"group_id": group_id, "members": group.members if group else []}

        return mutate(project_id, apply)

    @app.delete("/api/v1/projects/{project_id}/documents/{doc_id}/groups/{group_id}")
    def delete_group(project_id: str, doc_id: str, group_id: str):
        mutate(project_id, lambda project: model.delete_group(project, doc_id, group_id))
        return {"deleted": group_id}

    @app.post("/api/v1/projects/{project_id}/documents/{doc_id}/aliases", status_code=201)
    async def create_alias(project_id: str, doc_id: str, request: Request):
        payload = await request.json()
        name = _require_str(payload, "name")
        members = _optional_members(payload) or []
        class_label = payload.get("class_label")

        def apply(project: Project):
            alias = model.create_alias(project, doc_id, name, members, class_label)
            return {
                "alias_id": alias.alias_id,
                "name": alias.name,
                "class_label": alias.class_label,
                "members": alias.members,
            }

        return mutate(project_id, apply)

    @app.get("/api/v1/projects/{project_id}/documents/{doc_id}/aliases")
    def list_aliases(project_id: str, doc_id: str):
        return read(project_id, lambda project: charts.aliases_payload(project, doc_id))

    @app.put("/api/v1/projects/{project_id}/documents/{doc_id}/aliases/{alias_id}")
    async def update_alias(project_id: str, doc_id: str, alias_id: str, request: Request):
        payload = await request.json()
        members = _optional_members(payload)

        def apply(project: Project):
            alias = project.aliases.get(doc_id, {}).get(alias_id)
            if members is not None:
                alias = model.set_alias_members(project, doc_id, alias_id, members)
            return {
                "alias_id": alias_id,
                "members": alias.members if alias else [],
                "class_label": alias.class_label if alias else None,
            }

        return mutate(project_id, apply)

    @app.delete("/api/v1/projects/{project_id}/documents/{doc_id}/aliases/{alias_id}")
    def delete_alias(project_id: str, doc_id: str, alias_id: str):
        mutate(project_id, lambda project: model.delete_alias(project, doc_id, alias_id))
        return {"deleted": alias_id}

    # ---- read-only views

    @app.get("/api/v1/projects/{project_id}/documents/{doc_id}/annotations")
    def annotations(
        project_id: str,
        doc_id: str,
        mode: str | None = None,
        ids: str | None = None,
        apply_alias: bool = False,
    ):
        flt = _parse_filter(mode, ids, apply_alias)
        return read(project_id, lambda project: charts.annotations_payload(project, doc_id, flt))

    @app.get("/api/v1/projects/{project_id}/documents/{doc_id}/charts/overview")
    def chart_overview(project_id: str, doc_id: str):
        return read(project_id, lambda project: charts.overview_payload(project, doc_id))

    @app.get("/api/v1/projects/{project_id}/documents/{doc_id}/charts/frequency")
    def chart_frequency(
        project_id: str,
        doc_id: str,
        mode: str | None = None,
        ids: str | None = None,
        apply_alias: bool = False,
        sort_by_frequency: bool = False,
    ):
        flt = _parse_filter(mode, ids, apply_alias)
        return read(
            project_id,
            lambda project: charts.frequency_payload(project, doc_id, flt, sort_by_frequency),
        )

    @app.get("/api/v1/projects/{project_id}/documents/{doc_id}/charts/positions")
    def chart_positions(
        project_id: str,
        doc_id: str,
        mode: str | None = None,
        ids: str | None = None,
        apply_alias: bool = False,
    ):
        flt = _parse_filter(mode, ids, apply_alias)
        return read(project_id, lambda project: charts.positions_payload(project, doc_id, flt))

    @app.get("/api/v1/projects/{project_id}/charts/series")
    def chart_series(project_id: str, target: str):
        return read(project_id, lambda project: charts.series_payload(project, target))

    @app.get("/api/v1/projects/{project_id}/documents/{doc_id}/export")
    def export_document(project_id: str, doc_id: str):
        def build(project: Project):
            return exporter.export_document(project, doc_id).zip_bytes()

        data = read(project_id, build)
        return Response(
            content=data,
            media_type="application/zip",
            headers={"Content-Disposition": 'attachment; filename="data.zip"'},
        )

    if config.ui_dir and Path(config.ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=config.ui_dir, html=True), name="ui")

    return app


def serve(config: ServeConfig) -> None:
    """Run the service with uvicorn; fails fast when the port is taken."""
    import uvicorn

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((config.host, config.port))
    except OSError as exc:
        raise PortInUse(f"{config.host}:{config.port}: {exc}") from None
    finally:
        probe.close()
    if config.max_documents < 0:
        raise BadConfig("max_documents must be >= 0")
    uvicorn.run(create_app(config), host=config.host, port=config.port, log_level="info")
