#!/usr/bin/env python3
"""Regenerates tests/data/vectors_16d.vec, the synthetic 50-token fixture table.

Tokens are grouped into topical clusters; each vector is its cluster center
(a scaled basis vector) plus small seeded jitter, so cosine similarity is
high within a cluster and near zero across clusters. Deterministic: rerun
produces the identical file.
"""

from pathlib import Path

import numpy as np

DIMENSION = 16
SCALE = 2.0
JITTER = 0.15
SEED = 20240111

CLUSTERS: dict[int, list[str]] = {
    0: ["aerosol", "paint", "gas", "tear", "spray", "gel", "ice", "packs"],
    1: ["book", "books", "magazine", "comic", "newspaper"],
    2: ["laptop", "ipod", "dvd", "players", "desktop"],
    3: ["electronics", "power", "bank", "fuel", "cells", "battery"],
    4: ["beverage", "coffee", "tea", "juice"],
    5: ["instruments", "piano", "guitar", "flute", "violin"],
    6: ["food", "pickle", "apple", "sandwich"],
    7: ["clothing", "jacket", "shoes", "socks"],
    8: ["toiletries", "baby", "powder", "wipes", "shampoo", "toothpaste"],
    9: ["sharp", "knife", "scissors"],
}


def main() -> None:
    rng = np.random.default_rng(SEED)
    rows: list[str] = []
    count = sum(len(tokens) for tokens in CLUSTERS.values())
    for axis, tokens in CLUSTERS.items():
        center = np.zeros(DIMENSION)
        center[axis] = SCALE
        for token in tokens:
            vec = center + rng.uniform(-JITTER, JITTER, size=DIMENSION)
            values = " ".join(f"{v:.6f}" for v in vec)
            rows.append(f"{token} {values}")

    out = Path(__file__).resolve().parent.parent / "tests" / "data" / "vectors_16d.vec"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(f"{count} {DIMENSION}\n" + "\n".join(rows) + "\n", encoding="utf-8")
    print(f"wrote {count} vectors of dimension {DIMENSION} -> {out}")


if __name__ == "__main__":
    main()
