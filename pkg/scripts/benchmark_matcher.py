"""Timing check for the matcher's linearity claim.

Builds a 10k-pattern dictionary over a CJK-range alphabet, annotates a
1 MB text, and prints compile/annotate wall times plus the match count.

Run:  python3 scripts/benchmark_matcher.py [scalars] [patterns]
"""

from __future__ import annotations

import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from ner_workbench.matcher import annotate, compile_dictionary


def main() -> int:
    n_scalars = int(sys.argv[1]) if len(sys.argv) > 1 else 1_000_000
    n_patterns = int(sys.argv[2]) if len(sys.argv) > 2 else 10_000
    rng = random.Random(7)
    alphabet = [chr(0x4E00 + i) for i in range(64)]

    text = "".join(rng.choice(alphabet) for _ in range(n_scalars))
    surfaces: set[str] = set()
    while len(surfaces) < n_patterns:
        length = rng.randrange(1, 6)
        surfaces.add("".join(rng.choice(alphabet) for _ in range(length)))

    started = time.perf_counter()
    dictionary = compile_dictionary((s, f"E{i}") for i, s in enumerate(sorted(surfaces)))
    compiled = time.perf_counter()
    spans = annotate(text, dictionary)
    done = time.perf_counter()

    print(f"text: {n_scalars:,} scalars, dictionary: {n_patterns:,} patterns")
    print(f"compile:  {compiled - started:8.3f} s")
    print(f"annotate: {done - compiled:8.3f} s  ({len(spans):,} non-overlapping spans)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
