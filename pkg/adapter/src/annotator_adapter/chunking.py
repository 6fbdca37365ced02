"""Overlapped chunking with global-offset remapping.

The classifier sees windows of at most max_chunk scalars; consecutive
windows share `overlap` scalars so an entity cut by one window boundary
appears whole in the next. Window-local spans are shifted by the window
offset and exact duplicates (same start, end, label) collapse to one,
keeping the highest score.
"""

from __future__ import annotations

from typing import Callable, Iterable

# (start, end, label, score) in window-local offsets
LocalSpan = tuple[int, int, str, float | None]
Classifier = Callable[[str], Iterable[LocalSpan]]


def chunk_text(text: str, max_chunk: int, overlap: int) -> list[tuple[int, str]]:
    """(offset, window) pairs covering the whole text."""
    if max_chunk <= 0 or not (0 <= overlap < max_chunk):
        raise ValueError("need max_chunk > 0 and 0 <= overlap < max_chunk")
    if len(text) <= max_chunk:
        return [(0, text)]
    step = max_chunk - overlap
    chunks = []
    offset = 0
    while True:
        chunks.append((offset, text[offset : offset + max_chunk]))
        if offset + max_chunk >= len(text):
            return chunks
        offset += step


def annotate_text(
    text: str, classifier: Classifier, max_chunk: int, overlap: int
) -> list[dict]:
    """Global spans for one document, sorted and deduplicated."""
    best: dict[tuple[int, int, str], float | None] = {}
    for offset, window in chunk_text(text, max_chunk, overlap):
        for start, end, label, score in classifier(window):
            if not (0 <= start < end <= len(window)) or not label:
                continue  # defensive: a confused model must not leak bad offsets
            key = (start + offset, end + offset, label)
            previous = best.get(key, -1.0)
            if key not in best or (score or 0.0) > (previous or 0.0):
                best[key] = score
    return [
        {"start": start, "end": end, "label": label, "score": best[(start, end, label)]}
        for start, end, label in sorted(best)
    ]
