from __future__ import annotations

import pytest

from ner_workbench import analytics, model
from ner_workbench.analytics import DisplayFilter
from ner_workbench.errors import (
    InvalidFilter,
    SingleDocumentProject,
    UnknownAlias,
    UnknownGroup,
    UnknownTarget,
)

from fixtures import SINGLE_DOC_ID, SINGLE_DOC_ROWS, single_doc_project, three_chapter_project


@pytest.fixture(scope="module")
def sample():
    return single_doc_project()


@pytest.fixture(scope="module")
def chapters():
    return three_chapter_project()


def test_class_overview_counts_distinct_instances(sample):
    overview = dict(analytics.class_overview(sample, SINGLE_DOC_ID))
    assert overview == {
        "PERSON": 10,
        "ORDINAL": 1,
        "CARDINAL": 4,
        "GPE": 2,
        "DATE": 2,
        "TIME": 4,
    }


def test_class_overview_constructed_case():
    p = model.new_project("p")
    model.add_document(p, "a.txt", "甲甲甲甲甲乙。丙丙丙丙丙丙丙丙丙")
    model.create_class(p, "X")
    model.create_class(p, "Y")
    model.register_instance(p, "甲", "X")
    model.register_instance(p, "乙", "X")
    model.register_instance(p, "丙", "Y")
    model.register_instance(p, "丁", "Y")  # zero occurrences, not counted
    assert analytics.class_overview(p, "a.txt") == [("X", 2), ("Y", 1)]


def test_class_overview_empty_document():
    p = model.new_project("p")
    model.add_document(p, "a.txt", "")
    model.register_instance(p, "甲", "PERSON")
    assert analytics.class_overview(p, "a.txt") == []


def test_frequency_table_registration_order_and_alias_context(sample):
    rows = analytics.frequency_table(sample, SINGLE_DOC_ID)
    assert [r.surface for r in rows] == [s for s, _, _ in SINGLE_DOC_ROWS]
    assert [r.frequency for r in rows] == [n for _, _, n in SINGLE_DOC_ROWS]
    by_surface = {r.surface: r for r in rows}
    assert by_surface["獻忠"].alias_context == ("Alias_許獻忠", 31)
    assert by_surface["淑玉"].alias_context == ("Alias_蕭淑玉", 15)
    assert by_surface["包公"].alias_context is None
    assert by_surface["獻忠"].display_frequency == 13  # no apply_alias


def test_frequency_table_apply_alias_display(sample):
    rows = analytics.frequency_table(
        sample, SINGLE_DOC_ID, DisplayFilter(apply_alias=True)
    )
    by_surface = {r.surface: r for r in rows}
    assert by_surface["獻忠"].frequency == 13  # underlying count untouched
    assert by_surface["獻忠"].display_frequency == 31
    assert by_surface["許生"].display_frequency == 31
    assert by_surface["許獻忠"].display_frequency == 31
    assert by_surface["包公"].display_frequency == 20


def test_frequency_table_sorting_with_id_tiebreak(sample):
    rows = analytics.frequency_table(sample, SINGLE_DOC_ID, sort_by_frequency=True)
    freqs = [r.frequency for r in rows]
    assert freqs == sorted(freqs, reverse=True)
    # 獻忠 (E6) and 淑玉 (E9) both have 13: lower id first
    thirteen = [r.instance_id for r in rows if r.frequency == 13]
    assert thirteen == ["E6", "E9"]


def test_frequency_table_class_filter(sample):
    rows = analytics.frequency_table(
        sample, SINGLE_DOC_ID, DisplayFilter(mode="class", selected_ids=frozenset({"PERSON"}))
    )
    assert len(rows) == 10
    assert all(r.class_label == "PERSON" for r in rows)


def test_frequency_table_group_and_alias_filters(sample):
    rows = analytics.frequency_table(
        sample, SINGLE_DOC_ID, DisplayFilter(mode="group", selected_ids=frozenset({"G0"}))
    )
    assert {r.instance_id for r in rows} == {"E6", "E18", "E11", "E9", "E21", "E20"}
    rows = analytics.frequency_table(
        sample, SINGLE_DOC_ID, DisplayFilter(mode="alias", selected_ids=frozenset({"A0"}))
    )
    assert {r.surface for r in rows} == {"獻忠", "許生", "許獻忠"}


def test_empty_selection_yields_empty_table(sample):
    rows = analytics.frequency_table(
        sample, SINGLE_DOC_ID, DisplayFilter(mode="instance", selected_ids=frozenset())
    )
    assert rows == []


def test_filter_validation(sample):
    with pytest.raises(InvalidFilter):
        analytics.frequency_table(sample, SINGLE_DOC_ID, DisplayFilter(mode="banana"))
    with pytest.raises(InvalidFilter):
        analytics.frequency_table(
            sample, SINGLE_DOC_ID, DisplayFilter(mode="instance", selected_ids=frozenset({"E99"}))
        )
    with pytest.raises(InvalidFilter):
        analytics.frequency_table(
            sample, SINGLE_DOC_ID, DisplayFilter(mode="group", selected_ids=frozenset({"G7"}))
        )


def test_empty_document_table():
    p = model.new_project("p")
    model.add_document(p, "a.txt", "")
    assert analytics.frequency_table(p, "a.txt") == []


def test_positions_offsets_and_length():
    p = model.new_project("p")
    model.add_document(p, "a.txt", "AB AB")
    model.register_instance(p, "AB", "PERSON")
    model.register_instance(p, "ZZ", "PERSON")
    data = analytics.positions(p, "a.txt")
    assert data.doc_length == 5
    assert data.points == [("E0", 0), ("E0", 3)]  # freq-0 instance has no points


def test_positions_point_count_equals_frequency(sample):
    data = analytics.positions(sample, SINGLE_DOC_ID)
    counts: dict[str, int] = {}
    for instance_id, _ in data.points:
        counts[instance_id] = counts.get(instance_id, 0) + 1
    for row in analytics.frequency_table(sample, SINGLE_DOC_ID):
        assert counts.get(row.instance_id, 0) == row.frequency


def test_conservation_of_occurrences(sample):
    rows = analytics.frequency_table(sample, SINGLE_DOC_ID)
    assert sum(r.frequency for r in rows) == len(sample.occurrences[SINGLE_DOC_ID])


def test_group_and_alias_frequency_sums(sample):
    assert analytics.alias_frequency(sample, SINGLE_DOC_ID, "A0") == 31
    assert analytics.alias_frequency(sample, SINGLE_DOC_ID, "A1") == 15
    assert analytics.alias_frequency(sample, SINGLE_DOC_ID, "A2") == 6
    assert analytics.group_frequency(sample, SINGLE_DOC_ID, "G0") == 46
    with pytest.raises(UnknownGroup):
        analytics.group_frequency(sample, SINGLE_DOC_ID, "G9")
    with pytest.raises(UnknownAlias):
        analytics.alias_frequency(sample, SINGLE_DOC_ID, "A9")


def test_empty_group_has_zero_frequency(sample):
    model.create_group(sample, SINGLE_DOC_ID, "empty-group", [])
    group_id = next(
        g.group_id for g in sample.groups[SINGLE_DOC_ID].values() if g.name == "empty-group"
    )
    assert analytics.group_frequency(sample, SINGLE_DOC_ID, group_id) == 0


def test_multi_chapter_sums(chapters):
    assert analytics.alias_frequency(chapters, "chapter59.txt", "A0") == 104
    assert analytics.group_frequency(chapters, "chapter59.txt", "G0") == 118


def test_series_for_alias_is_decreasing(chapters):
    series = analytics.cross_doc_series(chapters, "孫悟空")
    assert series == [
        ("chapter59.txt", 104),
        ("chapter60.txt", 75),
        ("chapter61.txt", 50),
    ]


def test_series_for_instance_follows_document_order():
    p = model.new_project("p")
    model.add_document(p, "b.txt", "A")
    model.add_document(p, "a.txt", "AA")
    model.register_instance(p, "A", "PERSON")
    assert analytics.cross_doc_series(p, "E0") == [("a.txt", 2), ("b.txt", 1)]


def test_series_alias_missing_in_some_documents(chapters):
    model.create_alias(chapters, "chapter60.txt", "牛家", [
        next(i.instance_id for i in chapters.instances.values() if i.surface == "牛王"),
    ])
    series = analytics.cross_doc_series(chapters, "牛家")
    assert series == [("chapter59.txt", 0), ("chapter60.txt", 25), ("chapter61.txt", 0)]


def test_series_absent_instance_is_all_zero(chapters):
    model.register_instance(chapters, "不存在之詞", "PERSON")
    target = chapters.instance_by_surface("不存在之詞").instance_id
    assert all(n == 0 for _, n in analytics.cross_doc_series(chapters, target))


def test_series_requires_multiple_documents(sample):
    with pytest.raises(SingleDocumentProject):
        analytics.cross_doc_series(sample, "E0")


def test_series_unknown_target(chapters):
    with pytest.raises(UnknownTarget):
        analytics.cross_doc_series(chapters, "芝麻")


def test_filtering_never_changes_counts(sample):
    base = {r.instance_id: r.frequency for r in analytics.frequency_table(sample, SINGLE_DOC_ID)}
    for flt in (
        DisplayFilter(mode="class", selected_ids=frozenset({"PERSON"})),
        DisplayFilter(mode="group", selected_ids=frozenset({"G0"})),
        DisplayFilter(mode="alias", selected_ids=frozenset({"A0"}), apply_alias=True),
    ):
        for row in analytics.frequency_table(sample, SINGLE_DOC_ID, flt):
            assert row.frequency == base[row.instance_id]
