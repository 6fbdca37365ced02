"""Annotator service speaking the workbench wire protocol.

POST /v1/annotate takes {"documents": [{"doc_id", "text"}]} and answers
{"predictions": [{"doc_id", "spans": [{"start", "end", "label", "score"}]}]}
with Unicode-scalar offsets into the full original text. Long documents
are chunked with overlap; chunk output is remapped to global offsets and
deduplicated, so callers never see the chunking.
"""

from annotator_adapter.chunking import annotate_text, chunk_text
from annotator_adapter.config import AdapterConfig
from annotator_adapter.service import ModelLoadFailure, create_app

__all__ = [
    "AdapterConfig",
    "ModelLoadFailure",
    "annotate_text",
    "chunk_text",
    "create_app",
]
