# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled support-counting kernel: packed-bitset subset tests over all rows."""

import numpy as np


def count_candidates(rows, candidates, int n_items):
    """For each candidate itemset (tuple of item indices), count the rows containing it.

    Rows and candidates are packed into 64-bit bitset matrices once, then a
    tight C loop tests (row & cand) == cand word by word.
    """
    cdef Py_ssize_t n_rows = len(rows)
    cdef Py_ssize_t n_cands = len(candidates)
    cdef int n_words = (n_items + 63) >> 6
    if n_words == 0:
        n_words = 1

    row_bits_np = np.zeros((max(n_rows, 1), n_words), dtype=np.uint64)
    cand_bits_np = np.zeros((max(n_cands, 1), n_words), dtype=np.uint64)

    cdef Py_ssize_t r, c
    cdef long i
    for r in range(n_rows):
        for i in rows[r]:
            row_bits_np[r, i >> 6] |= np.uint64(1) << np.uint64(i & 63)
    for c in range(n_cands):
        for i in candidates[c]:
            cand_bits_np[c, i >> 6] |= np.uint64(1) << np.uint64(i & 63)

    counts_np = np.zeros(max(n_cands, 1), dtype=np.int64)
    cdef unsigned long long[:, ::1] row_bits = row_bits_np
    cdef unsigned long long[:, ::1] cand_bits = cand_bits_np
    cdef long long[::1] counts = counts_np

    cdef Py_ssize_t w
    cdef int n_w = n_words
    cdef long long hit_count
    cdef bint contained
    for c in range(n_cands):
        hit_count = 0
        for r in range(n_rows):
            contained = True
            for w in range(n_w):
                if (row_bits[r, w] & cand_bits[c, w]) != cand_bits[c, w]:
                    contained = False
                    break
            if contained:
                hit_count += 1
        counts[c] = hit_count

    return counts_np[:n_cands].tolist()
