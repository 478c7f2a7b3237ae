#!/usr/bin/env python3
"""Times the compiled counting kernel against the pure-Python fallback.

Generates synthetic transaction sets of growing size, runs the full mining
pass once per kernel, verifies both produce identical itemsets, and prints
a timing table. Run after an editable install:

    python benchmarks/bench_mining.py
"""

import random
import time

from atrs.mining import MiningConfig, apriori
from atrs.mining import _counting_py
from atrs.mining import core, kernels

try:
    from atrs.mining import _counting_cy
except ImportError:
    _counting_cy = None

SCENARIOS = [
    # (transactions, universe size, items per transaction, min_support)
    (500, 60, 8, 0.02),
    (2000, 120, 10, 0.01),
    (7500, 120, 12, 0.005),
]


def run_with_kernel(kernel_fn, transactions, config):
    original = core.count_candidates
    core.count_candidates = kernel_fn
    try:
        start = time.perf_counter()
        itemsets = apriori(transactions, config)
        return time.perf_counter() - start, itemsets
    finally:
        core.count_candidates = original


def synthesize(rng, n_transactions, n_items, width):
    universe = [f"item{k}" for k in range(n_items)]
    # zipf-ish skew so some itemsets actually co-occur
    weights = [1.0 / (rank + 1) for rank in range(n_items)]
    return [
        frozenset(rng.choices(universe, weights=weights, k=width))
        for _ in range(n_transactions)
    ]


def main() -> None:
    print(f"selected kernel at import: {kernels.KERNEL_NAME}")
    if _counting_cy is None:
        print("compiled kernel unavailable; timing the pure-Python kernel only\n")
    header = f"{'rows':>6} {'items':>6} {'min_supp':>9} {'itemsets':>9} {'python':>9} {'cython':>9} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    rng = random.Random(13)
    for n_transactions, n_items, width, min_support in SCENARIOS:
        transactions = synthesize(rng, n_transactions, n_items, width)
        config = MiningConfig(min_support=min_support, min_confidence=0.5)
        py_time, py_itemsets = run_with_kernel(
            _counting_py.count_candidates, transactions, config
        )
        if _counting_cy is not None:
            cy_time, cy_itemsets = run_with_kernel(
                _counting_cy.count_candidates, transactions, config
            )
            assert py_itemsets == cy_itemsets, "kernels disagree"
            speedup = f"{py_time / cy_time:7.1f}x"
            cy_str = f"{cy_time:8.3f}s"
        else:
            speedup, cy_str = "-", "-"
        print(
            f"{n_transactions:>6} {n_items:>6} {min_support:>9} {len(py_itemsets):>9} "
            f"{py_time:8.3f}s {cy_str:>9} {speedup:>8}"
        )


if __name__ == "__main__":
    main()
