"""Auto-annotation backends and self-defined class files.

Every backend speaks one wire shape, whether it is the built-in
gazetteer, an external annotator over HTTP, or a predictions file:

    request   {"documents": [{"doc_id": ..., "text": ...}]}
    response  {"predictions": [{"doc_id": ..., "spans": [
                  {"start": ..., "end": ..., "label": ..., "score": ...}]}]}

Offsets are Unicode scalar indices into the full document text.

Predicted spans are never stored as annotations directly. They are folded
into the registry as (surface, label) pairs and the matcher re-derives all
occurrences, so manual and automatic annotation share one representation
and instance management stays global across files.
"""

from __future__ import annotations

import csv
import io
import json
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Protocol

import requests

from ner_workbench import matcher, model
from ner_workbench.errors import (
    BackendProtocolError,
    BackendUnreachable,
    BadEncoding,
    DuplicateClassInFile,
    MissingHeader,
    OffsetOutOfRange,
)

DEFINITION_HEADER = ("Class_Label", "Class_Description", "Instance_List")

# ASCII comma plus the two separators Chinese-locale users actually paste
_SURFACE_SEPARATORS = re.compile("[,，、]")


@dataclass(frozen=True)
class SpanPrediction:
    doc_id: str
    start: int
    end: int
    label: str
    score: float | None = None


@dataclass(frozen=True)
class DefinitionRow:
    class_label: str
    class_description: str
    surfaces: list[str]


@dataclass(frozen=True)
class DefinitionFile:
    rows: list[DefinitionRow] = field(default_factory=list)


def parse_definition_csv(data: bytes) -> DefinitionFile:
    """Parse an uploaded class-definition CSV (UTF-8, BOM tolerated).

    Instance_List cells are split on ASCII/fullwidth commas and the
    enumeration comma; tokens are trimmed and empties dropped. Rows whose
    Class_Label is blank are skipped (spreadsheet exports keep trailing
    empty lines).
    """
    try:
        text = data.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise BadEncoding(f"definition file is not UTF-8: {exc}") from None
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise MissingHeader("definition file is empty") from None
    if [h.strip() for h in header] != list(DEFINITION_HEADER):
        raise MissingHeader(
            f"expected header {','.join(DEFINITION_HEADER)}, got {','.join(header)}"
        )
    rows: list[DefinitionRow] = []
    seen: set[str] = set()
    for cells in reader:
        label = cells[0].strip() if cells else ""
        if not label:
            continue
        if label in seen:
            raise DuplicateClassInFile(f"class {label!r} defined twice")
        seen.add(label)
        description = cells[1].strip() if len(cells) > 1 else ""
        raw_list = cells[2] if len(cells) > 2 else ""
        surfaces = [t.strip() for t in _SURFACE_SEPARATORS.split(raw_list)]
        surfaces = [s for s in surfaces if s]
        rows.append(DefinitionRow(label, description, surfaces))
    return DefinitionFile(rows=rows)


def apply_definition(
    project: model.Project, definition: DefinitionFile, replace: bool
) -> dict[str, int]:
    """Fold a definition file into the registry and re-tag all documents.

    replace=True reproduces a clean slate: instances absent from the file
    and custom classes absent from the file are dropped first (builtin
    classes stay). Surfaces keep their ids when re-registered, so applying
    the same file twice is a fixed point.
    """
    if replace:
        keep_labels = {row.class_label for row in definition.rows}
        keep_surfaces = {s for row in definition.rows for s in row.surfaces}
        for label in [
            c.label
            for c in project.classes.values()
            if not c.builtin and c.label not in keep_labels
        ]:
            model.delete_class(project, label, reannotate=False)
        for instance_id in [
            i.instance_id
            for i in project.instances.values()
            if i.surface not in keep_surfaces
        ]:
            model.delete_instance(project, instance_id, reannotate=False)
    classes_created = 0
    instances_registered = 0
    for row in definition.rows:
        if row.class_label not in project.classes:
            model.create_class(project, row.class_label, row.class_description)
            classes_created += 1
        for surface in row.surfaces:
            model.register_instance(project, surface, row.class_label, reannotate=False)
            instances_registered += 1
    matcher.reannotate_all(project)
    return {
        "classes_created": classes_created,
        "instances_registered": instances_registered,
    }


class AnnotatorBackend(Protocol):
    def predict(self, documents: list[model.Document]) -> dict: ...


class GazetteerBackend:
    """Dictionary-only annotator: predicts exactly the current registry."""

    def __init__(self, project: model.Project):
        self._project = project

    def predict(self, documents: list[model.Document]) -> dict:
        registry = self._project
        dictionary = matcher.compile_dictionary(
            (i.surface, i.instance_id) for i in registry.instances.values()
        )
        predictions = []
        for doc in documents:
            spans = [
                {
                    "start": start,
                    "end": end,
                    "label": registry.instances[pid].class_label,
                    "score": None,
                }
                for start, end, pid in matcher.annotate(doc.text, dictionary)
            ]
            predictions.append({"doc_id": doc.doc_id, "spans": spans})
        return {"predictions": predictions}


class ExternalBackend:
    """HTTP client for an annotator service implementing POST /v1/annotate."""

    def __init__(self, base_url: str, timeout: float = 120.0):
        base_url = base_url.rstrip("/")
        if not base_url.endswith("/v1/annotate"):
            base_url += "/v1/annotate"
        self.endpoint = base_url
        self.timeout = timeout

    def predict(self, documents: list[model.Document]) -> dict:
        payload = {
            "documents": [{"doc_id": d.doc_id, "text": d.text} for d in documents]
        }
        try:
            response = requests.post(self.endpoint, json=payload, timeout=self.timeout)
        except requests.RequestException as exc:
            raise BackendUnreachable(f"annotator at {self.endpoint}: {exc}") from None
        if response.status_code != 200:
            raise BackendUnreachable(
                f"annotator returned HTTP {response.status_code}",
                body=response.text[:500],
            )
        try:
            return response.json()
        except ValueError:
            raise BackendProtocolError("annotator response is not JSON") from None


@dataclass(frozen=True)
class ImportedPredictions:
    """Offline backend: a response document used as-is."""

    response: dict

    def predict(self, documents: list[model.Document]) -> dict:
        return self.response


def load_predictions(data: bytes) -> ImportedPredictions:
    try:
        response = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise BackendProtocolError(f"predictions file unreadable: {exc}") from None
    return ImportedPredictions(response)


def _validate_response(project: model.Project, response: object) -> list[SpanPrediction]:
    # full validation before any mutation: a bad response must change nothing
    if not isinstance(response, dict) or not isinstance(response.get("predictions"), list):
        raise BackendProtocolError("response must be {'predictions': [...]}")
    spans: list[SpanPrediction] = []
    for item in response["predictions"]:
        if not isinstance(item, dict):
            raise BackendProtocolError("prediction entries must be objects")
        doc_id = item.get("doc_id")
        doc = project.documents.get(doc_id) if isinstance(doc_id, str) else None
        if doc is None:
            raise BackendProtocolError(f"prediction for unknown document {doc_id!r}")
        raw_spans = item.get("spans")
        if not isinstance(raw_spans, list):
            raise BackendProtocolError(f"{doc_id}: spans must be a list")
        for raw in raw_spans:
            if not isinstance(raw, dict):
                raise BackendProtocolError(f"{doc_id}: span entries must be objects")
            start, end = raw.get("start"), raw.get("end")
            if type(start) is not int or type(end) is not int:
                raise BackendProtocolError(f"{doc_id}: span offsets must be integers")
            if not (0 <= start < end <= len(doc.text)):
                raise OffsetOutOfRange(
                    f"{doc_id}: span {start}..{end} outside text of length {len(doc.text)}"
                )
            label = raw.get("label")
            if not isinstance(label, str) or not label:
                raise BackendProtocolError(f"{doc_id}: span label must be a non-empty string")
            score = raw.get("score")
            if score is not None:
                if not isinstance(score, (int, float)) or isinstance(score, bool):
                    raise BackendProtocolError(f"{doc_id}: score must be a number or null")
                if not (0.0 <= float(score) <= 1.0):
                    raise BackendProtocolError(f"{doc_id}: score {score} outside [0, 1]")
                score = float(score)
            spans.append(SpanPrediction(doc_id, start, end, label, score))
    return spans


def run_auto_annotation(project: model.Project, backend: AnnotatorBackend) -> dict[str, int]:
    """Call the backend on every document and fold the result.

    Folding is dictionary induction: each predicted span contributes a
    (surface, label) vote. A surface predicted with several labels takes
    the majority label; ties go to the label of the earliest span in the
    lowest-order document. Surfaces register in first-appearance order,
    then the matcher re-derives every occurrence set.
    """
    documents = project.documents_in_order()
    response = backend.predict(documents)
    spans = _validate_response(project, response)

    order = {d.doc_id: d.order_index for d in documents}
    spans.sort(key=lambda s: (order[s.doc_id], s.start, s.end, s.label))
    votes: dict[str, Counter[str]] = {}
    first_pos: dict[tuple[str, str], int] = {}
    appearance: dict[str, int] = {}
    for rank, span in enumerate(spans):
        surface = project.documents[span.doc_id].text[span.start : span.end]
        votes.setdefault(surface, Counter())[span.label] += 1
        first_pos.setdefault((surface, span.label), rank)
        appearance.setdefault(surface, rank)

    classes_created = 0
    registered = 0
    for surface in sorted(appearance, key=appearance.get):
        counts = votes[surface]
        top = max(counts.values())
        label = min(
            (l for l, c in counts.items() if c == top),
            key=lambda l: first_pos[(surface, l)],
        )
        if label not in project.classes:
            model.create_class(project, label)
            classes_created += 1
        model.register_instance(project, surface, label, reannotate=False)
        registered += 1
    matcher.reannotate_all(project)
    return {
        "documents": len(documents),
        "spans": len(spans),
        "surfaces": registered,
        "classes_created": classes_created,
    }
