"""Entity annotation workbench for Chinese corpora.

Core pieces: a global surface registry with per-document curation
(groups/aliases), a leftmost-longest dictionary matcher that derives all
occurrences, pluggable auto-annotation backends, chart analytics, CSV
export, durable project snapshots, and an HTTP/CLI surface over it all.
"""

from ner_workbench.analytics import DisplayFilter, FrequencyRow
from ner_workbench.matcher import CompiledDictionary, annotate, compile_dictionary
from ner_workbench.model import (
    BUILTIN_CLASSES,
    Document,
    EntityAlias,
    EntityClass,
    EntityGroup,
    EntityInstance,
    Occurrence,
    Project,
    new_project,
)

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_CLASSES",
    "CompiledDictionary",
    "DisplayFilter",
    "Document",
    "EntityAlias",
    "EntityClass",
    "EntityGroup",
    "EntityInstance",
    "FrequencyRow",
    "Occurrence",
    "Project",
    "annotate",
    "compile_dictionary",
    "new_project",
    "__version__",
]
