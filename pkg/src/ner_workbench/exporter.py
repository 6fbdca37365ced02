"""Per-document CSV export and its inverse.

The bundle is three CSV files (Entity, Alias, Group) packed as data.zip.
List-valued cells are serialized in bracketed single-quote style, e.g.
['G0', 'A0'], with groups listed before aliases; cells containing commas
are CSV-quoted. Output is UTF-8 without BOM, LF line endings, and fully
deterministic so identical project state exports identical bytes.

The importer exists as the round-trip oracle for the exporter: it rebuilds
registry state from the three files, re-derives all occurrences from the
document text, and refuses the data if any recomputed frequency disagrees
with the Frequency columns.
"""

from __future__ import annotations

import ast
import csv
import io
import zipfile
from dataclasses import dataclass

from ner_workbench import model
from ner_workbench.errors import FrequencyMismatch, MalformedCsv
from ner_workbench.model import Project, id_number

ENTITY_HEADER = ["ID_E", "Entity", "EntityClass", "Frequency", "Relations", "Relation_Name"]
ALIAS_HEADER = ["ID_A", "AliasName", "AliasClass", "AliasFrequency", "AliasMembers", "AliasMembers_Name"]
GROUP_HEADER = ["ID_G", "GroupName", "GroupFrequency", "GroupMembers", "GroupMembers_Name"]

_FIXED_ZIP_TIME = (1980, 1, 1, 0, 0, 0)


@dataclass(frozen=True)
class ExportBundle:
    doc_id: str
    entity_csv: bytes
    alias_csv: bytes
    group_csv: bytes

    def zip_bytes(self) -> bytes:
        """data.zip holding exactly the three CSVs, with fixed metadata."""
        buffer = io.BytesIO()
        with zipfile.ZipFile(buffer, "w", zipfile.ZIP_DEFLATED) as archive:
            for name, data in (
                ("Entity.csv", self.entity_csv),
                ("Alias.csv", self.alias_csv),
                ("Group.csv", self.group_csv),
            ):
                info = zipfile.ZipInfo(name, date_time=_FIXED_ZIP_TIME)
                info.compress_type = zipfile.ZIP_DEFLATED
                info.external_attr = 0o644 << 16
                archive.writestr(info, data)
        return buffer.getvalue()


def _list_cell(items: list[str]) -> str:
    return repr(list(items))


def _write_csv(header: list[str], rows: list[list[str]]) -> bytes:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return out.getvalue().encode("utf-8")


def export_document(project: Project, doc_id: str) -> ExportBundle:
    """Export every registered instance (zero-frequency ones included)
    plus this document's groups and aliases."""
    project.document(doc_id)
    counts: dict[str, int] = {}
    for occ in project.occurrences.get(doc_id, []):
        counts[occ.instance_id] = counts.get(occ.instance_id, 0) + 1

    groups = sorted(project.groups.get(doc_id, {}).values(), key=lambda g: id_number(g.group_id))
    aliases = sorted(project.aliases.get(doc_id, {}).values(), key=lambda a: id_number(a.alias_id))

    entity_rows = []
    for inst in sorted(project.instances.values(), key=lambda i: id_number(i.instance_id)):
        relations = [g for g in groups if inst.instance_id in g.members]
        related_aliases = [a for a in aliases if inst.instance_id in a.members]
        relation_ids = [g.group_id for g in relations] + [a.alias_id for a in related_aliases]
        relation_names = [g.name for g in relations] + [a.name for a in related_aliases]
        entity_rows.append(
            [
                inst.instance_id,
                inst.surface,
                inst.class_label,
                str(counts.get(inst.instance_id, 0)),
                _list_cell(relation_ids),
                _list_cell(relation_names),
            ]
        )

    alias_rows = [
        [
            alias.alias_id,
            alias.name,
            alias.class_label,
            str(sum(counts.get(m, 0) for m in alias.members)),
            _list_cell(alias.members),
            _list_cell([project.instances[m].surface for m in alias.members]),
        ]
        for alias in aliases
    ]
    group_rows = [
        [
            group.group_id,
            group.name,
            str(sum(counts.get(m, 0) for m in group.members)),
            _list_cell(group.members),
            _list_cell([project.instances[m].surface for m in group.members]),
        ]
        for group in groups
    ]

    return ExportBundle(
        doc_id=doc_id,
        entity_csv=_write_csv(ENTITY_HEADER, entity_rows),
        alias_csv=_write_csv(ALIAS_HEADER, alias_rows),
        group_csv=_write_csv(GROUP_HEADER, group_rows),
    )


def _parse_csv(data: bytes, header: list[str], what: str) -> list[list[str]]:
    try:
        rows = list(csv.reader(io.StringIO(data.decode("utf-8-sig"))))
    except UnicodeDecodeError as exc:
        raise MalformedCsv(f"{what}: not UTF-8: {exc}") from None
    if not rows or rows[0] != header:
        raise MalformedCsv(f"{what}: expected header {','.join(header)}")
    body = [r for r in rows[1:] if r]
    for row in body:
        if len(row) != len(header):
            raise MalformedCsv(f"{what}: row has {len(row)} cells, expected {len(header)}")
    return body


def _parse_list(cell: str, what: str) -> list[str]:
    try:
        value = ast.literal_eval(cell)
    except (ValueError, SyntaxError):
        raise MalformedCsv(f"{what}: unparsable list cell {cell!r}") from None
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise MalformedCsv(f"{what}: list cell must hold strings: {cell!r}")
    return value


def _parse_id(cell: str, prefix: str, what: str) -> int:
    if not cell.startswith(prefix) or not cell[len(prefix):].isdigit():
        raise MalformedCsv(f"{what}: bad id {cell!r}")
    return int(cell[len(prefix):])


def _parse_count(cell: str, what: str) -> int:
    if not cell.isdigit():
        raise MalformedCsv(f"{what}: bad frequency {cell!r}")
    return int(cell)


def import_document_state(
    entity_csv: bytes,
    alias_csv: bytes,
    group_csv: bytes,
    text: str,
    doc_id: str = "imported",
) -> Project:
    """Rebuild a one-document project from an export bundle.

    Ids, registration order, and membership order are taken verbatim from
    the files; class descriptions default to empty. Occurrences are
    re-derived from the text and must reproduce every Frequency column,
    otherwise the matcher and the bundle disagree and the import fails.
    """
    entity_rows = _parse_csv(entity_csv, ENTITY_HEADER, "Entity.csv")
    alias_rows = _parse_csv(alias_csv, ALIAS_HEADER, "Alias.csv")
    group_rows = _parse_csv(group_csv, GROUP_HEADER, "Group.csv")

    project = model.new_project("imported")

    instances: dict[str, tuple[str, str, int, list[str], list[str]]] = {}
    for row in entity_rows:
        _parse_id(row[0], "E", "Entity.csv")
        if row[0] in instances:
            raise MalformedCsv(f"Entity.csv: duplicate id {row[0]}")
        if not row[1]:
            raise MalformedCsv(f"Entity.csv: empty surface in {row[0]}")
        relations = _parse_list(row[4], "Entity.csv")
        relation_names = _parse_list(row[5], "Entity.csv")
        if len(relations) != len(relation_names):
            raise MalformedCsv(f"Entity.csv: {row[0]} relation lists differ in length")
        instances[row[0]] = (row[1], row[2], _parse_count(row[3], "Entity.csv"), relations, relation_names)

    def collection_rows(rows: list[list[str]], prefix: str, members_at: int, what: str):
        # members list and the parallel name list sit in adjacent columns
        parsed = {}
        for row in rows:
            _parse_id(row[0], prefix, what)
            if row[0] in parsed:
                raise MalformedCsv(f"{what}: duplicate id {row[0]}")
            members = _parse_list(row[members_at], what)
            names = _parse_list(row[members_at + 1], what)
            if len(members) != len(names):
                raise MalformedCsv(f"{what}: {row[0]} member lists differ in length")
            for member, name in zip(members, names):
                if member not in instances:
                    raise MalformedCsv(f"{what}: {row[0]} references unknown {member}")
                if instances[member][0] != name:
                    raise MalformedCsv(f"{what}: {row[0]} member name {name!r} != surface")
            parsed[row[0]] = (row, members)
        return parsed

    parsed_aliases = collection_rows(alias_rows, "A", 4, "Alias.csv")
    parsed_groups = collection_rows(group_rows, "G", 3, "Group.csv")

    # cross-check the Relations columns against the membership lists
    for instance_id, (_, _, _, relations, relation_names) in instances.items():
        expected_ids = [
            gid for gid, (_, members) in parsed_groups.items() if instance_id in members
        ] + [
            aid for aid, (_, members) in parsed_aliases.items() if instance_id in members
        ]
        expected_names = [
            (parsed_groups if i.startswith("G") else parsed_aliases)[i][0][1]
            for i in expected_ids
        ]
        if relations != expected_ids or relation_names != expected_names:
            raise MalformedCsv(f"Entity.csv: {instance_id} Relations disagree with memberships")

    for label in {row[2] for row in entity_rows} | {row[2] for row in alias_rows}:
        if not label:
            raise MalformedCsv("empty class label")
        if label not in project.classes:
            model.create_class(project, label)

    for instance_id, (surface, class_label, _, _, _) in instances.items():
        project.instances[instance_id] = model.EntityInstance(
            instance_id=instance_id, surface=surface, class_label=class_label
        )
    project.next_instance_seq = 1 + max((id_number(i) for i in instances), default=-1)
    if len({v[0] for v in instances.values()}) != len(instances):
        raise MalformedCsv("Entity.csv: duplicate surfaces")

    model.add_document(project, doc_id, text)

    for alias_id, (row, members) in parsed_aliases.items():
        project.aliases[doc_id][alias_id] = model.EntityAlias(
            alias_id=alias_id,
            doc_id=doc_id,
            name=row[1],
            class_label=row[2],
            members=members,
        )
    for group_id, (row, members) in parsed_groups.items():
        project.groups[doc_id][group_id] = model.EntityGroup(
            group_id=group_id,
            doc_id=doc_id,
            name=row[1],
            members=members,
        )
    project.next_alias_seq[doc_id] = 1 + max((id_number(a) for a in parsed_aliases), default=-1)
    project.next_group_seq[doc_id] = 1 + max((id_number(g) for g in parsed_groups), default=-1)

    counts: dict[str, int] = {}
    for occ in project.occurrences[doc_id]:
        counts[occ.instance_id] = counts.get(occ.instance_id, 0) + 1
    for instance_id, (surface, _, recorded, _, _) in instances.items():
        actual = counts.get(instance_id, 0)
        if actual != recorded:
            raise FrequencyMismatch(
                f"{instance_id} ({surface}): recorded {recorded}, recomputed {actual}"
            )
    for alias_id, (row, members) in parsed_aliases.items():
        actual = sum(counts.get(m, 0) for m in members)
        if actual != _parse_count(row[3], "Alias.csv"):
            raise FrequencyMismatch(f"{alias_id}: recorded {row[3]}, recomputed {actual}")
    for group_id, (row, members) in parsed_groups.items():
        actual = sum(counts.get(m, 0) for m in members)
        if actual != _parse_count(row[2], "Group.csv"):
            raise FrequencyMismatch(f"{group_id}: recorded {row[2]}, recomputed {actual}")

    return project
