"""Pure-Python support-counting kernel; the fallback when the compiled kernel is absent."""

from __future__ import annotations


def count_candidates(rows, candidates, n_items: int) -> list[int]:
    """For each candidate itemset (tuple of item indices), count the rows containing it.

    rows are sets of item indices. n_items is unused here; the compiled
    kernel needs it to size its bitsets and both kernels share a signature.
    """
    counts = []
    for cand in candidates:
        cand_set = set(cand)
        counts.append(sum(1 for row in rows if cand_set <= row))
    return counts
