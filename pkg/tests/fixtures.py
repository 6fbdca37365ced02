"""Shared corpus fixtures.

The single-document fixture rebuilds the Bao Gong sample session: the
instance registry in its original registration order, the two aliases and
the main-characters group, over a synthetic text engineered so that every
surface matches exactly its published frequency under the leftmost-longest
rule. Block construction keeps that honest: each surface is repeated its
target count, separated by 。 which no surface contains, so nested
surfaces (獻忠 inside 許獻忠, 淑玉 inside 蕭淑玉, 一 inside 第一/一夜)
only count where they stand alone.

The three-chapter fixture does the same for the Journey-to-the-West
session: the class-definition file populates the registry and each chapter
gets its own 孫悟空 alias with a decreasing total.
"""

from __future__ import annotations

from pathlib import Path

from ner_workbench import backends, model

DATA_DIR = Path(__file__).parent / "data"
DEFINITION_CSV = DATA_DIR / "xiyouji_classes.csv"

# (surface, class label, frequency) in registration order
SINGLE_DOC_ROWS: list[tuple[str, str, int]] = [
    ("包公", "PERSON", 20),
    ("第一", "ORDINAL", 1),
    ("一", "CARDINAL", 24),
    ("189", "CARDINAL", 1),
    ("德安府", "GPE", 1),
    ("孝感縣", "GPE", 1),
    ("獻忠", "PERSON", 13),
    ("十八", "CARDINAL", 1),
    ("蕭鍾漢", "PERSON", 6),
    ("淑玉", "PERSON", 13),
    ("十七歲", "DATE", 1),
    ("許生", "PERSON", 12),
    ("兩", "CARDINAL", 5),
    ("連夜", "TIME", 5),
    ("半夜", "DATE", 2),
    ("一夜", "TIME", 1),
    ("明早", "PERSON", 10),  # a model mistake the user kept; preserved verbatim
    ("今夜", "TIME", 1),
    ("許獻忠", "PERSON", 6),
    ("昨夜", "TIME", 2),
    ("蕭美", "PERSON", 1),
    ("蕭淑玉", "PERSON", 1),
    ("王忠", "PERSON", 4),
]

SINGLE_DOC_ID = "pasted-text"

# chapter -> surface -> frequency; the 孫悟空 alias members decrease 104/75/50
THREE_CHAPTER_FREQS: dict[str, dict[str, int]] = {
    "chapter59.txt": {
        "三藏": 16, "悟空": 8, "行者": 82, "大聖": 14, "八戒": 13, "沙僧": 9,
        "白馬": 1, "牛王": 21, "牛魔王": 4, "公主": 5, "羅剎": 47, "菩薩": 12,
        "芭蕉扇": 14, "金箍棒": 1,
        "火焰山": 11, "翠雲山": 6, "崑崙山": 1, "峨眉山": 2, "芭蕉洞": 5,
    },
    "chapter60.txt": {
        "三藏": 10, "悟空": 5, "行者": 60, "大聖": 10, "八戒": 9, "沙僧": 4,
        "白馬": 1, "牛王": 25, "牛魔王": 12, "公主": 4, "羅剎": 30, "菩薩": 2,
        "芭蕉扇": 9, "金箍棒": 2,
        "火焰山": 6, "翠雲山": 4, "崑崙山": 0, "峨眉山": 1, "芭蕉洞": 3,
    },
    "chapter61.txt": {
        "三藏": 8, "悟空": 3, "行者": 40, "大聖": 7, "八戒": 11, "沙僧": 5,
        "白馬": 2, "牛王": 30, "牛魔王": 22, "公主": 3, "羅剎": 18, "菩薩": 6,
        "芭蕉扇": 12, "金箍棒": 3,
        "火焰山": 9, "翠雲山": 2, "崑崙山": 1, "峨眉山": 0, "芭蕉洞": 1,
    },
}


def block_text(frequencies: dict[str, int]) -> str:
    return "".join(surface + "。" for surface, n in frequencies.items() for _ in range(n))


def single_doc_project() -> model.Project:
    project = model.new_project("bao-gong-sample")
    text = block_text({s: n for s, _, n in SINGLE_DOC_ROWS})
    model.add_document(project, SINGLE_DOC_ID, text, doc_id=SINGLE_DOC_ID)
    for surface, class_label, _ in SINGLE_DOC_ROWS:
        model.register_instance(project, surface, class_label, reannotate=False)
    from ner_workbench.matcher import reannotate_all

    reannotate_all(project)
    model.create_group(
        project, SINGLE_DOC_ID, "第一義主人公",
        ["E6", "E18", "E11", "E9", "E21", "E20"],
    )
    model.create_alias(
        project, SINGLE_DOC_ID, "Alias_許獻忠", ["E6", "E11", "E18"]
    )
    model.create_alias(
        project, SINGLE_DOC_ID, "Alias_蕭淑玉", ["E21", "E20", "E9"]
    )
    model.create_alias(project, SINGLE_DOC_ID, "Alias_蕭鍾漢", ["E8"])
    return project


def write_three_chapter_corpus(directory: Path) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, freqs in THREE_CHAPTER_FREQS.items():
        path = directory / name
        path.write_text(block_text(freqs), encoding="utf-8")
        paths.append(path)
    return paths


def three_chapter_project(with_aliases: bool = True) -> model.Project:
    project = model.new_project("xiyouji-sample")
    for name, freqs in THREE_CHAPTER_FREQS.items():
        model.add_document(project, name, block_text(freqs))
    definition = backends.parse_definition_csv(DEFINITION_CSV.read_bytes())
    backends.apply_definition(project, definition, replace=True)
    if with_aliases:
        by_surface = {i.surface: i.instance_id for i in project.instances.values()}
        sun_wukong = [by_surface[s] for s in ("行者", "悟空", "大聖")]
        for doc_id in THREE_CHAPTER_FREQS:
            model.create_alias(project, doc_id, "孫悟空", sun_wukong)
        model.create_group(
            project, "chapter59.txt", "悟空和芭蕉扇",
            [by_surface[s] for s in ("行者", "悟空", "芭蕉扇", "大聖")],
        )
    return project
