"""Multi-pattern matching over the registered surface dictionary.

The dictionary is compiled into an Aho-Corasick automaton (trie plus
failure links) over Unicode scalars. Annotation applies a greedy
leftmost-longest selection on top of the raw hits: scanning left to
right, at each position not yet covered by an accepted match, the
longest surface starting there wins and the scan resumes after its end.
This guarantees pairwise-disjoint spans and makes the output a pure
function of (text, surface set), independent of registration order.

Matching is exact on Unicode scalars: no normalization and no
simplified/traditional folding.
"""

from __future__ import annotations

from collections import deque
from typing import TYPE_CHECKING, Iterable, Iterator

if TYPE_CHECKING:  # pragma: no cover
    from ner_workbench.model import Project

Span = tuple[int, int, str]


class CompiledDictionary:
    """Automaton recognizing exactly the compiled (surface, id) set."""

    __slots__ = ("patterns", "_goto", "_fail", "_hits")

    def __init__(self, pairs: Iterable[tuple[str, str]]):
        pairs = list(pairs)
        surfaces = [s for s, _ in pairs]
        if any(not s for s in surfaces):
            raise ValueError("surfaces must be non-empty")
        if len(set(surfaces)) != len(surfaces):
            raise ValueError("surfaces must be distinct")
        self.patterns: frozenset[tuple[str, str]] = frozenset(pairs)

        # state 0 is the root; _goto[s] maps char -> state
        goto: list[dict[str, int]] = [{}]
        # (length, pattern_id) of the pattern ending exactly at each state
        own: list[tuple[int, str] | None] = [None]
        for surface, pid in pairs:
            state = 0
            for ch in surface:
                nxt = goto[state].get(ch)
                if nxt is None:
                    nxt = len(goto)
                    goto[state][ch] = nxt
                    goto.append({})
                    own.append(None)
                state = nxt
            own[state] = (len(surface), pid)

        # breadth-first failure links; _hits[s] lists every pattern ending
        # at s, own match first, then the failure chain's
        fail = [0] * len(goto)
        hits: list[tuple[tuple[int, str], ...]] = [()] * len(goto)
        queue: deque[int] = deque()
        for state in goto[0].values():
            queue.append(state)
            hits[state] = (own[state],) if own[state] else ()
        while queue:
            state = queue.popleft()
            for ch, nxt in goto[state].items():
                queue.append(nxt)
                f = fail[state]
                while f and ch not in goto[f]:
                    f = fail[f]
                fail[nxt] = goto[f].get(ch, 0)
                base = (own[nxt],) if own[nxt] else ()
                hits[nxt] = base + hits[fail[nxt]]

        self._goto = goto
        self._fail = fail
        self._hits = hits

    def __len__(self) -> int:
        return len(self.patterns)

    def iter_raw_matches(self, text: str) -> Iterator[Span]:
        """Every hit of every pattern, nested and overlapping included."""
        goto, fail, hits = self._goto, self._fail, self._hits
        state = 0
        for i, ch in enumerate(text):
            while state and ch not in goto[state]:
                state = fail[state]
            state = goto[state].get(ch, 0)
            for length, pid in hits[state]:
                yield (i + 1 - length, i + 1, pid)


def compile_dictionary(pairs: Iterable[tuple[str, str]]) -> CompiledDictionary:
    """Build the automaton from (surface, instance_id) pairs.

    An empty pair set is valid and matches nothing.
    """
    return CompiledDictionary(pairs)


def annotate(text: str, dictionary: CompiledDictionary) -> list[Span]:
    """Greedy leftmost-longest non-overlapping spans, sorted by start."""
    n = len(text)
    if n == 0 or not dictionary.patterns:
        return []

    best_len = [0] * n
    best_id = [""] * n
    goto, fail, hits = dictionary._goto, dictionary._fail, dictionary._hits
    state = 0
    for i, ch in enumerate(text):
        while state and ch not in goto[state]:
            state = fail[state]
        state = goto[state].get(ch, 0)
        for length, pid in hits[state]:
            start = i + 1 - length
            if length > best_len[start]:
                best_len[start] = length
                best_id[start] = pid

    spans: list[Span] = []
    i = 0
    while i < n:
        length = best_len[i]
        if length:
            spans.append((i, i + length, best_id[i]))
            i += length
        else:
            i += 1
    return spans


def reannotate_all(project: "Project") -> None:
    """Recompute every document's occurrence set from the registry.

    Full recompute, not incremental: occurrences are derived data and the
    automaton is linear, so correctness wins over cleverness.
    """
    from ner_workbench.model import Occurrence

    dictionary = compile_dictionary(
        (inst.surface, inst.instance_id) for inst in project.instances.values()
    )
    for doc in project.documents.values():
        project.occurrences[doc.doc_id] = [
            Occurrence(doc.doc_id, pid, start, end)
            for start, end, pid in annotate(doc.text, dictionary)
        ]
