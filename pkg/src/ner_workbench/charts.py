"""JSON-shaped payload builders shared by the HTTP API and the CLI.

Both surfaces must emit byte-identical analytics for the same project
state, so the dict construction lives here and nowhere else.
"""

from __future__ import annotations

from ner_workbench import analytics
from ner_workbench.analytics import DisplayFilter
from ner_workbench.model import Project


def overview_payload(project: Project, doc_id: str) -> dict:
    return {
        "doc_id": doc_id,
        "classes": [
            {
                "class_label": label,
                "distinct_instances": count,
                "color_index": project.classes[label].color_index,
            }
            for label, count in analytics.class_overview(project, doc_id)
        ],
    }


def frequency_payload(
    project: Project,
    doc_id: str,
    flt: DisplayFilter | None = None,
    sort_by_frequency: bool = False,
) -> dict:
    rows = analytics.frequency_table(project, doc_id, flt, sort_by_frequency)
    return {
        "doc_id": doc_id,
        "apply_alias": bool(flt and flt.apply_alias),
        "sorted_by_frequency": sort_by_frequency,
        "rows": [
            {
                "instance_id": r.instance_id,
                "surface": r.surface,
                "class_label": r.class_label,
                "frequency": r.frequency,
                "display_frequency": r.display_frequency,
                "alias": None
                if r.alias_context is None
                else {"name": r.alias_context[0], "frequency": r.alias_context[1]},
            }
            for r in rows
        ],
    }


def positions_payload(
    project: Project, doc_id: str, flt: DisplayFilter | None = None
) -> dict:
    data = analytics.positions(project, doc_id, flt)
    return {
        "doc_id": doc_id,
        "doc_length": data.doc_length,
        "points": [
            {
                "instance_id": instance_id,
                "surface": project.instances[instance_id].surface,
                "start": start,
            }
            for instance_id, start in data.points
        ],
    }


def series_payload(project: Project, target: str) -> dict:
    return {
        "target": target,
        "points": [
            {
                "doc_id": doc_id,
                "name": project.documents[doc_id].name,
                "frequency": frequency,
            }
            for doc_id, frequency in analytics.cross_doc_series(project, target)
        ],
    }


def annotations_payload(
    project: Project, doc_id: str, flt: DisplayFilter | None = None
) -> dict:
    doc = project.document(doc_id)
    selected = set(analytics.resolve_filter(project, doc_id, flt))
    spans = [
        {
            "start": occ.start,
            "end": occ.end,
            "instance_id": occ.instance_id,
            "surface": project.instances[occ.instance_id].surface,
            "class_label": project.instances[occ.instance_id].class_label,
        }
        for occ in project.occurrences.get(doc_id, [])
        if occ.instance_id in selected
    ]
    return {
        "doc_id": doc_id,
        "name": doc.name,
        "text": doc.text,
        "spans": spans,
        "classes": {
            c.label: {
                "description": c.description,
                "color_index": c.color_index,
                "builtin": c.builtin,
            }
            for c in project.classes.values()
        },
    }


def documents_payload(project: Project) -> dict:
    return {
        "documents": [
            {
                "doc_id": d.doc_id,
                "name": d.name,
                "order_index": d.order_index,
                "length": len(d.text),
            }
            for d in project.documents_in_order()
        ]
    }


def classes_payload(project: Project) -> dict:
    return {
        "classes": [
            {
                "label": c.label,
                "description": c.description,
                "color_index": c.color_index,
                "builtin": c.builtin,
            }
            for c in project.classes.values()
        ]
    }


def instances_payload(project: Project) -> dict:
    return {
        "instances": [
            {"instance_id": i.instance_id, "surface": i.surface, "class_label": i.class_label}
            for i in project.instances.values()
        ]
    }


def groups_payload(project: Project, doc_id: str) -> dict:
    project.document(doc_id)
    counts = {
        g.group_id: analytics.group_frequency(project, doc_id, g.group_id)
        for g in project.groups.get(doc_id, {}).values()
    }
    return {
        "groups": [
            {
                "group_id": g.group_id,
                "name": g.name,
                "members": list(g.members),
                "frequency": counts[g.group_id],
            }
            for g in project.groups.get(doc_id, {}).values()
        ]
    }


def aliases_payload(project: Project, doc_id: str) -> dict:
    project.document(doc_id)
    counts = {
        a.alias_id: analytics.alias_frequency(project, doc_id, a.alias_id)
        for a in project.aliases.get(doc_id, {}).values()
    }
    return {
        "aliases": [
            {
                "alias_id": a.alias_id,
                "name": a.name,
                "class_label": a.class_label,
                "members": list(a.members),
                "frequency": counts[a.alias_id],
            }
            for a in project.aliases.get(doc_id, {}).values()
        ]
    }
