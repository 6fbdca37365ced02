"""Domain model: documents, entity classes, instances, groups, aliases.

All registry mutations live here and enforce the effect-scope rules:
instance and class edits apply to every document (the occurrence sets are
re-derived project-wide), while group and alias edits touch only the
document they belong to.

Scope summary:

==================  =====================
instances, classes  all documents
groups, aliases     one document
==================  =====================
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ner_workbench import matcher
from ner_workbench.errors import (
    DuplicateClass,
    DuplicateDocumentName,
    DuplicateName,
    EmptyMembers,
    EmptySurface,
    MemberAlreadyAliased,
    MixedClasses,
    TooManyDocuments,
    UnknownAlias,
    UnknownClass,
    UnknownDocument,
    UnknownGroup,
    UnknownInstance,
    UnknownMember,
)

# Entity classes every new project starts with, in palette order.
# Descriptions are the Traditional Chinese category names shown in the UI
# (e.g. the class picker renders "人物|PERSON").
BUILTIN_CLASSES: tuple[tuple[str, str], ...] = (
    ("CARDINAL", "數字"),
    ("DATE", "日期"),
    ("EVENT", "事件"),
    ("FAC", "設施"),
    ("GPE", "行政區"),
    ("LANGUAGE", "語言"),
    ("LAW", "法律"),
    ("LOC", "地理區"),
    ("MONEY", "金錢"),
    ("NORP", "民族、宗教、政治團體"),
    ("ORDINAL", "序數"),
    ("ORG", "組織"),
    ("PERCENT", "百分比率"),
    ("PERSON", "人物"),
    ("PRODUCT", "產品"),
    ("QUANTITY", "數量"),
    ("TIME", "時間"),
    ("WORK_OF_ART", "作品"),
)

PASTED_TEXT_DOC_ID = "pasted-text"

PALETTE_SIZE = 20


@dataclass
class Document:
    doc_id: str
    name: str
    text: str
    order_index: int = 0


@dataclass
class EntityClass:
    label: str
    description: str = ""
    color_index: int = 0
    builtin: bool = False


@dataclass
class EntityInstance:
    instance_id: str
    surface: str
    class_label: str


@dataclass(frozen=True)
class Occurrence:
    doc_id: str
    instance_id: str
    start: int
    end: int


@dataclass
class EntityGroup:
    group_id: str
    doc_id: str
    name: str
    members: list[str] = field(default_factory=list)


@dataclass
class EntityAlias:
    alias_id: str
    doc_id: str
    name: str
    class_label: str
    members: list[str] = field(default_factory=list)


@dataclass
class Project:
    """One annotation session: corpus, registry, curation, counters.

    Dict insertion order is meaningful: `classes` and `instances` iterate
    in creation/registration order, `groups`/`aliases` in id order.
    Occurrences are derived data, recomputed by the matcher, never edited.
    Id counters only ever grow; ids are not recycled after deletion.
    """

    project_id: str
    name: str = ""
    documents: dict[str, Document] = field(default_factory=dict)
    classes: dict[str, EntityClass] = field(default_factory=dict)
    instances: dict[str, EntityInstance] = field(default_factory=dict)
    occurrences: dict[str, list[Occurrence]] = field(default_factory=dict)
    groups: dict[str, dict[str, EntityGroup]] = field(default_factory=dict)
    aliases: dict[str, dict[str, EntityAlias]] = field(default_factory=dict)
    next_instance_seq: int = 0
    next_class_seq: int = 0
    next_group_seq: dict[str, int] = field(default_factory=dict)
    next_alias_seq: dict[str, int] = field(default_factory=dict)

    def document(self, doc_id: str) -> Document:
        try:
            return self.documents[doc_id]
        except KeyError:
            raise UnknownDocument(f"no document {doc_id!r}") from None

    def instance(self, instance_id: str) -> EntityInstance:
        try:
            return self.instances[instance_id]
        except KeyError:
            raise UnknownInstance(f"no instance {instance_id!r}") from None

    def instance_by_surface(self, surface: str) -> EntityInstance | None:
        for inst in self.instances.values():
            if inst.surface == surface:
                return inst
        return None

    def documents_in_order(self) -> list[Document]:
        return sorted(self.documents.values(), key=lambda d: d.order_index)

    def alias_of_instance(self, doc_id: str, instance_id: str) -> EntityAlias | None:
        for alias in self.aliases.get(doc_id, {}).values():
            if instance_id in alias.members:
                return alias
        return None


def id_number(entity_id: str) -> int:
    """Numeric part of an E/G/A id, for sorting (E10 after E2)."""
    return int(entity_id[1:])


def new_project(project_id: str, name: str = "") -> Project:
    project = Project(project_id=project_id, name=name or project_id)
    for label, zh in BUILTIN_CLASSES:
        project.classes[label] = EntityClass(
            label=label,
            description=zh,
            color_index=project.next_class_seq,
            builtin=True,
        )
        project.next_class_seq += 1
    return project


def _reindex_documents(project: Project) -> None:
    # alphabetical by display name; doc_id breaks ties so the order is total
    ordered = sorted(project.documents.values(), key=lambda d: (d.name, d.doc_id))
    for i, doc in enumerate(ordered):
        doc.order_index = i


def add_document(
    project: Project,
    name: str,
    text: str,
    doc_id: str | None = None,
    max_documents: int = 0,
) -> Document:
    """Register a document; the uploaded file name is its stable key.

    max_documents of 0 means unlimited.
    """
    doc_id = doc_id or name
    if doc_id in project.documents:
        raise DuplicateDocumentName(f"document {doc_id!r} already exists")
    if max_documents and len(project.documents) >= max_documents:
        raise TooManyDocuments(f"limit is {max_documents} documents")
    doc = Document(doc_id=doc_id, name=name, text=text)
    project.documents[doc_id] = doc
    project.groups.setdefault(doc_id, {})
    project.aliases.setdefault(doc_id, {})
    project.next_group_seq.setdefault(doc_id, 0)
    project.next_alias_seq.setdefault(doc_id, 0)
    _reindex_documents(project)
    dictionary = matcher.compile_dictionary(
        (inst.surface, inst.instance_id) for inst in project.instances.values()
    )
    project.occurrences[doc_id] = [
        Occurrence(doc_id, pid, start, end)
        for start, end, pid in matcher.annotate(text, dictionary)
    ]
    return doc


def register_instance(
    project: Project, surface: str, class_label: str, reannotate: bool = True
) -> EntityInstance:
    """Add-or-modify: a new surface gets the next E id, an existing one
    keeps its id and has its class replaced. Every document is re-tagged."""
    if not surface:
        raise EmptySurface("surface must be non-empty")
    if class_label not in project.classes:
        raise UnknownClass(f"no entity class {class_label!r}")
    existing = project.instance_by_surface(surface)
    if existing is not None:
        existing.class_label = class_label
        inst = existing
    else:
        inst = EntityInstance(
            instance_id=f"E{project.next_instance_seq}",
            surface=surface,
            class_label=class_label,
        )
        project.next_instance_seq += 1
        project.instances[inst.instance_id] = inst
    if reannotate:
        matcher.reannotate_all(project)
    return inst


def _scrub_membership(project: Project, instance_id: str) -> None:
    # empty groups/aliases survive; only the membership shrinks
    for per_doc in project.groups.values():
        for group in per_doc.values():
            if instance_id in group.members:
                group.members.remove(instance_id)
    for per_doc in project.aliases.values():
        for alias in per_doc.values():
            if instance_id in alias.members:
                alias.members.remove(instance_id)


def delete_instance(project: Project, instance_id: str, reannotate: bool = True) -> None:
    if instance_id not in project.instances:
        raise UnknownInstance(f"no instance {instance_id!r}")
    del project.instances[instance_id]
    _scrub_membership(project, instance_id)
    if reannotate:
        # a shorter surface shadowed by the deleted one may match again
        matcher.reannotate_all(project)


def create_class(project: Project, label: str, description: str = "") -> EntityClass:
    if not label:
        raise DuplicateClass("class label must be non-empty")
    if label in project.classes:
        raise DuplicateClass(f"class {label!r} already exists")
    cls = EntityClass(
        label=label,
        description=description,
        color_index=project.next_class_seq,
        builtin=False,
    )
    project.next_class_seq += 1
    project.classes[label] = cls
    return cls


def delete_class(project: Project, label: str, reannotate: bool = True) -> None:
    """Remove the class and every instance of it, in all documents."""
    if label not in project.classes:
        raise UnknownClass(f"no entity class {label!r}")
    del project.classes[label]
    doomed = [i.instance_id for i in project.instances.values() if i.class_label == label]
    for instance_id in doomed:
        delete_instance(project, instance_id, reannotate=False)
    if reannotate:
        matcher.reannotate_all(project)


def _check_members(project: Project, members: list[str]) -> list[str]:
    deduped: list[str] = []
    for member in members:
        if member not in project.instances:
            raise UnknownMember(f"no instance {member!r}")
        if member not in deduped:
            deduped.append(member)
    return deduped


def create_group(
    project: Project, doc_id: str, name: str, members: list[str]
) -> EntityGroup:
    project.document(doc_id)
    if not name:
        raise DuplicateName("group name must be non-empty")
    if any(g.name == name for g in project.groups[doc_id].values()):
        raise DuplicateName(f"group {name!r} already exists in {doc_id!r}")
    group = EntityGroup(
        group_id=f"G{project.next_group_seq[doc_id]}",
        doc_id=doc_id,
        name=name,
        members=_check_members(project, members),
    )
    project.next_group_seq[doc_id] += 1
    project.groups[doc_id][group.group_id] = group
    return group


def delete_group(project: Project, doc_id: str, group_id: str) -> None:
    project.document(doc_id)
    if group_id not in project.groups[doc_id]:
        raise UnknownGroup(f"no group {group_id!r} in {doc_id!r}")
    del project.groups[doc_id][group_id]


def set_group_members(
    project: Project, doc_id: str, group_id: str, members: list[str]
) -> EntityGroup:
    project.document(doc_id)
    group = project.groups[doc_id].get(group_id)
    if group is None:
        raise UnknownGroup(f"no group {group_id!r} in {doc_id!r}")
    group.members = _check_members(project, members)
    return group


def _check_alias_members(
    project: Project,
    doc_id: str,
    members: list[str],
    class_label: str | None,
    own_alias_id: str | None,
) -> tuple[list[str], str]:
    members = _check_members(project, members)
    classes = {project.instances[m].class_label for m in members}
    if class_label is not None:
        classes.add(class_label)
    if len(classes) > 1:
        raise MixedClasses(f"alias members span classes {sorted(classes)}")
    if not classes:
        raise EmptyMembers("an alias needs members or an explicit class_label")
    for member in members:
        holder = project.alias_of_instance(doc_id, member)
        if holder is not None and holder.alias_id != own_alias_id:
            raise MemberAlreadyAliased(
                f"{member} already belongs to alias {holder.alias_id} in {doc_id!r}"
            )
    return members, classes.pop()


def create_alias(
    project: Project,
    doc_id: str,
    name: str,
    members: list[str],
    class_label: str | None = None,
) -> EntityAlias:
    project.document(doc_id)
    if not name:
        raise DuplicateName("alias name must be non-empty")
    if any(a.name == name for a in project.aliases[doc_id].values()):
        raise DuplicateName(f"alias {name!r} already exists in {doc_id!r}")
    if class_label is not None and class_label not in project.classes:
        raise UnknownClass(f"no entity class {class_label!r}")
    members, shared = _check_alias_members(project, doc_id, members, class_label, None)
    alias = EntityAlias(
        alias_id=f"A{project.next_alias_seq[doc_id]}",
        doc_id=doc_id,
        name=name,
        class_label=shared,
        members=members,
    )
    project.next_alias_seq[doc_id] += 1
    project.aliases[doc_id][alias.alias_id] = alias
    return alias


def delete_alias(project: Project, doc_id: str, alias_id: str) -> None:
    project.document(doc_id)
    if alias_id not in project.aliases[doc_id]:
        raise UnknownAlias(f"no alias {alias_id!r} in {doc_id!r}")
    del project.aliases[doc_id][alias_id]


def set_alias_members(
    project: Project, doc_id: str, alias_id: str, members: list[str]
) -> EntityAlias:
    project.document(doc_id)
    alias = project.aliases[doc_id].get(alias_id)
    if alias is None:
        raise UnknownAlias(f"no alias {alias_id!r} in {doc_id!r}")
    if members:
        members, shared = _check_alias_members(
            project, doc_id, members, None, alias.alias_id
        )
        alias.members = members
        alias.class_label = shared
    else:
        alias.members = []  # emptied alias keeps its class
    return alias


def integrity_errors(project: Project) -> list[str]:
    """Full-scan referential integrity check; empty list means consistent."""
    problems: list[str] = []
    surfaces: dict[str, str] = {}
    for instance_id, inst in project.instances.items():
        if inst.instance_id != instance_id:
            problems.append(f"instance key {instance_id} != id {inst.instance_id}")
        if not inst.surface:
            problems.append(f"{instance_id}: empty surface")
        if inst.surface in surfaces:
            problems.append(f"surface {inst.surface!r} shared by {surfaces[inst.surface]} and {instance_id}")
        surfaces[inst.surface] = instance_id
        if inst.class_label not in project.classes:
            problems.append(f"{instance_id}: unknown class {inst.class_label!r}")
        if id_number(instance_id) >= project.next_instance_seq:
            problems.append(f"{instance_id}: id beyond counter {project.next_instance_seq}")
    for doc_id, occs in project.occurrences.items():
        doc = project.documents.get(doc_id)
        if doc is None:
            problems.append(f"occurrences for unknown document {doc_id!r}")
            continue
        prev_end = 0
        for occ in occs:
            if not (0 <= occ.start < occ.end <= len(doc.text)):
                problems.append(f"{doc_id}: span {occ.start}..{occ.end} out of bounds")
                continue
            if occ.start < prev_end:
                problems.append(f"{doc_id}: overlapping span at {occ.start}")
            prev_end = occ.end
            inst = project.instances.get(occ.instance_id)
            if inst is None:
                problems.append(f"{doc_id}: occurrence of unknown {occ.instance_id}")
            elif doc.text[occ.start:occ.end] != inst.surface:
                problems.append(f"{doc_id}: span text != surface at {occ.start}")
    for kind, per_doc, counters in (
        ("group", project.groups, project.next_group_seq),
        ("alias", project.aliases, project.next_alias_seq),
    ):
        for doc_id, items in per_doc.items():
            if doc_id not in project.documents:
                problems.append(f"{kind}s for unknown document {doc_id!r}")
            for item_id, item in items.items():
                if id_number(item_id) >= counters.get(doc_id, 0):
                    problems.append(f"{doc_id}/{item_id}: id beyond counter")
                seen: set[str] = set()
                for member in item.members:
                    if member in seen:
                        problems.append(f"{doc_id}/{item_id}: duplicate member {member}")
                    seen.add(member)
                    if member not in project.instances:
                        problems.append(f"{doc_id}/{item_id}: dangling member {member}")
    for doc_id, items in project.aliases.items():
        claimed: dict[str, str] = {}
        for alias in items.values():
            if alias.class_label not in project.classes:
                problems.append(f"{doc_id}/{alias.alias_id}: unknown class {alias.class_label!r}")
            for member in alias.members:
                inst = project.instances.get(member)
                if inst is not None and inst.class_label != alias.class_label:
                    problems.append(f"{doc_id}/{alias.alias_id}: member {member} class mismatch")
                if member in claimed:
                    problems.append(f"{doc_id}: {member} in aliases {claimed[member]} and {alias.alias_id}")
                claimed[member] = alias.alias_id
    expected_order = {
        doc.doc_id: i
        for i, doc in enumerate(sorted(project.documents.values(), key=lambda d: (d.name, d.doc_id)))
    }
    for doc in project.documents.values():
        if doc.order_index != expected_order[doc.doc_id]:
            problems.append(f"{doc.doc_id}: order_index {doc.order_index} != {expected_order[doc.doc_id]}")
    return problems
