"""Brute-force reference matcher used to check the automaton.

Deliberately naive: at every uncovered position, try every pattern with
str.startswith and take the longest. Quadratic, but obviously correct,
and kept free of any code shared with the production matcher.
"""

from __future__ import annotations


def greedy_leftmost_longest(text: str, patterns: dict[str, str]) -> list[tuple[int, int, str]]:
    """Return (start, end, pattern_id) spans, non-overlapping, sorted by start.

    `patterns` maps surface -> pattern id. Scanning left to right, at each
    position not covered by an accepted match, the longest surface starting
    there wins; the scan resumes after its end.
    """
    spans = []
    i = 0
    n = len(text)
    while i < n:
        best_surface = None
        for surface in patterns:
            if text.startswith(surface, i):
                if best_surface is None or len(surface) > len(best_surface):
                    best_surface = surface
        if best_surface is None:
            i += 1
        else:
            spans.append((i, i + len(best_surface), patterns[best_surface]))
            i += len(best_surface)
    return spans


def frequencies(text: str, patterns: dict[str, str]) -> dict[str, int]:
    """Occurrence counts per pattern id under the same greedy rule."""
    counts = {pid: 0 for pid in patterns.values()}
    for _, _, pid in greedy_leftmost_longest(text, patterns):
        counts[pid] += 1
    return counts
