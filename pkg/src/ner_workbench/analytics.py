"""Read-only analytics over a project snapshot.

Everything the charts and the sidebar show is computed here: per-class
instance counts, frequency tables with alias context, occurrence position
data, and cross-document frequency series. All functions are pure reads.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from ner_workbench.errors import (
    InvalidFilter,
    SingleDocumentProject,
    UnknownAlias,
    UnknownGroup,
    UnknownTarget,
)
from ner_workbench.model import Project, id_number

FILTER_MODES = ("instance", "class", "group", "alias")


@dataclass(frozen=True)
class DisplayFilter:
    """Restriction of a view to selected instances/classes/groups/aliases.

    selected_ids of None means unrestricted; an empty set selects nothing.
    apply_alias switches the displayed frequency of alias members to the
    alias total (rows stay separate).
    """

    mode: str = "instance"
    selected_ids: frozenset[str] | None = None
    apply_alias: bool = False


@dataclass(frozen=True)
class FrequencyRow:
    instance_id: str
    surface: str
    class_label: str
    frequency: int
    display_frequency: int
    alias_context: tuple[str, int] | None = None


@dataclass(frozen=True)
class PositionData:
    doc_length: int
    points: list[tuple[str, int]]  # (instance_id, start offset)


def _doc_counts(project: Project, doc_id: str) -> Counter[str]:
    project.document(doc_id)
    counts: Counter[str] = Counter()
    for occ in project.occurrences.get(doc_id, []):
        counts[occ.instance_id] += 1
    return counts


def instance_frequency(project: Project, doc_id: str, instance_id: str) -> int:
    project.instance(instance_id)
    return _doc_counts(project, doc_id)[instance_id]


def resolve_filter(project: Project, doc_id: str, flt: DisplayFilter | None) -> list[str]:
    """Instance ids passing the filter, in registration order."""
    project.document(doc_id)
    if flt is None:
        flt = DisplayFilter()
    if flt.mode not in FILTER_MODES:
        raise InvalidFilter(f"mode must be one of {FILTER_MODES}, not {flt.mode!r}")
    ids = flt.selected_ids
    if flt.mode == "instance":
        if ids is None:
            return list(project.instances)
        unknown = ids - project.instances.keys()
        if unknown:
            raise InvalidFilter(f"unknown instances {sorted(unknown)}")
        return [i for i in project.instances if i in ids]
    if flt.mode == "class":
        if ids is None:
            labels = set(project.classes)
        else:
            unknown = ids - project.classes.keys()
            if unknown:
                raise InvalidFilter(f"unknown classes {sorted(unknown)}")
            labels = set(ids)
        return [i for i, inst in project.instances.items() if inst.class_label in labels]
    collections = project.groups if flt.mode == "group" else project.aliases
    available = collections.get(doc_id, {})
    if ids is None:
        chosen = list(available.values())
    else:
        unknown = ids - available.keys()
        if unknown:
            raise InvalidFilter(f"unknown {flt.mode} ids {sorted(unknown)} in {doc_id!r}")
        chosen = [available[i] for i in ids]
    member_set = {m for item in chosen for m in item.members}
    return [i for i in project.instances if i in member_set]


def class_overview(project: Project, doc_id: str) -> list[tuple[str, int]]:
    """Distinct occurring instances per class; zero-count classes omitted."""
    counts = _doc_counts(project, doc_id)
    per_class: Counter[str] = Counter()
    for instance_id, n in counts.items():
        if n > 0:
            per_class[project.instances[instance_id].class_label] += 1
    return [(label, per_class[label]) for label in project.classes if per_class[label]]


def frequency_table(
    project: Project,
    doc_id: str,
    flt: DisplayFilter | None = None,
    sort_by_frequency: bool = False,
) -> list[FrequencyRow]:
    counts = _doc_counts(project, doc_id)
    apply_alias = bool(flt and flt.apply_alias)
    rows = []
    for instance_id in resolve_filter(project, doc_id, flt):
        inst = project.instances[instance_id]
        frequency = counts[instance_id]
        alias = project.alias_of_instance(doc_id, instance_id)
        alias_context = None
        display = frequency
        if alias is not None:
            total = sum(counts[m] for m in alias.members)
            alias_context = (alias.name, total)
            if apply_alias:
                display = total
        rows.append(
            FrequencyRow(
                instance_id=instance_id,
                surface=inst.surface,
                class_label=inst.class_label,
                frequency=frequency,
                display_frequency=display,
                alias_context=alias_context,
            )
        )
    if sort_by_frequency:
        rows.sort(key=lambda r: (-r.display_frequency, id_number(r.instance_id)))
    return rows


def positions(
    project: Project, doc_id: str, flt: DisplayFilter | None = None
) -> PositionData:
    """One point per occurrence; consumers normalize by document length."""
    doc = project.document(doc_id)
    selected = set(resolve_filter(project, doc_id, flt))
    by_instance: dict[str, list[int]] = {}
    for occ in project.occurrences.get(doc_id, []):
        if occ.instance_id in selected:
            by_instance.setdefault(occ.instance_id, []).append(occ.start)
    points = [
        (instance_id, start)
        for instance_id in project.instances
        if instance_id in by_instance
        for start in sorted(by_instance[instance_id])
    ]
    return PositionData(doc_length=len(doc.text), points=points)


def group_frequency(project: Project, doc_id: str, group_id: str) -> int:
    project.document(doc_id)
    group = project.groups.get(doc_id, {}).get(group_id)
    if group is None:
        raise UnknownGroup(f"no group {group_id!r} in {doc_id!r}")
    counts = _doc_counts(project, doc_id)
    return sum(counts[m] for m in group.members)


def alias_frequency(project: Project, doc_id: str, alias_id: str) -> int:
    project.document(doc_id)
    alias = project.aliases.get(doc_id, {}).get(alias_id)
    if alias is None:
        raise UnknownAlias(f"no alias {alias_id!r} in {doc_id!r}")
    counts = _doc_counts(project, doc_id)
    return sum(counts[m] for m in alias.members)


def cross_doc_series(project: Project, target: str) -> list[tuple[str, int]]:
    """Frequency of an instance or a named alias across all documents.

    Aliases are per-document objects, so a name resolves independently in
    each document; documents without that name contribute zero. Only
    meaningful with at least two documents.
    """
    if len(project.documents) < 2:
        raise SingleDocumentProject("the series chart needs at least two documents")
    documents = project.documents_in_order()
    if target in project.instances:
        return [
            (doc.doc_id, _doc_counts(project, doc.doc_id)[target]) for doc in documents
        ]
    alias_docs = {
        doc.doc_id: alias
        for doc in documents
        for alias in project.aliases.get(doc.doc_id, {}).values()
        if alias.name == target
    }
    if alias_docs:
        series = []
        for doc in documents:
            alias = alias_docs.get(doc.doc_id)
            if alias is None:
                series.append((doc.doc_id, 0))
            else:
                counts = _doc_counts(project, doc.doc_id)
                series.append((doc.doc_id, sum(counts[m] for m in alias.members)))
        return series
    by_surface = project.instance_by_surface(target)
    if by_surface is not None:
        return cross_doc_series(project, by_surface.instance_id)
    raise UnknownTarget(f"{target!r} is neither an instance id, an alias name, nor a surface")
