"""Typed baggage-item dataset: loading, lookup, similarity ranking, category assignment."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace

import numpy as np

from .embeddings import EmbeddingTable, PhraseVector, cosine, embed_phrase, normalize_name, tokenize

REQUIRED_COLUMNS = ("item name", "carry on", "check in", "prohibited", "category")
OPTIONAL_COLUMNS = ("itemdescription",)


class CatalogError(ValueError):
    """Raised for schema or invariant violations in a catalog file."""


@dataclass(frozen=True)
class Item:
    """One catalog row: verdicts plus category for a single baggage item."""

    name: str
    carry_on: bool
    check_in: bool
    prohibited: bool
    category: str = ""
    description: str | None = None


@dataclass(frozen=True)
class ScoredItem:
    item: Item
    score: float


@dataclass(frozen=True)
class Catalog:
    items: tuple[Item, ...]

    @property
    def categories(self) -> set[str]:
        return {it.category for it in self.items if it.category}

    def __len__(self) -> int:
        return len(self.items)


@dataclass(frozen=True)
class CatalogStats:
    """Counts behind the distribution views of the dataset."""

    total: int
    carry_on: dict[str, int]
    check_in: dict[str, int]
    prohibited: dict[str, int]
    by_category: dict[str, int]
    carry_on_by_check_in: dict[str, int]
    prohibited_by_category: dict[str, int]


def _parse_flag(raw: str, column: str, row_num: int) -> bool:
    value = raw.strip().lower()
    if value == "yes":
        return True
    if value == "no":
        return False
    raise CatalogError(f"row {row_num}: column {column!r} must be yes/no, got {raw!r}")


def load_catalog(source) -> Catalog:
    """Load and validate the catalog CSV.

    Column names are matched case-insensitively after stripping whitespace.
    Item names are normalized (tokenized and re-joined). A row marked
    prohibited but also carry-on or check-in aborts the load with its row
    number: silent data loss in a safety-advice dataset is worse than a
    hard error.
    """
    reader = csv.reader(source)
    try:
        raw_header = next(reader)
    except StopIteration:
        raise CatalogError("empty catalog file") from None

    header = [h.strip().lower() for h in raw_header]
    positions: dict[str, int] = {}
    for idx, name in enumerate(header):
        if name in REQUIRED_COLUMNS + OPTIONAL_COLUMNS and name not in positions:
            positions[name] = idx
    missing = [c for c in REQUIRED_COLUMNS if c not in positions]
    if missing:
        raise CatalogError(f"missing required column(s): {', '.join(missing)}")

    items: list[Item] = []
    seen: set[str] = set()
    for row_num, row in enumerate(reader, start=2):
        if not any(cell.strip() for cell in row):
            continue
        if len(row) < len(header):
            row = row + [""] * (len(header) - len(row))
        name = normalize_name(row[positions["item name"]])
        if not name:
            raise CatalogError(f"row {row_num}: empty item name")
        if name in seen:
            raise CatalogError(f"row {row_num}: duplicate item name {name!r} after normalization")
        carry_on = _parse_flag(row[positions["carry on"]], "Carry on", row_num)
        check_in = _parse_flag(row[positions["check in"]], "Check in", row_num)
        prohibited = _parse_flag(row[positions["prohibited"]], "Prohibited", row_num)
        if prohibited and (carry_on or check_in):
            raise CatalogError(
                f"row {row_num}: prohibited item {name!r} marked as carry-on or check-in"
            )
        category = row[positions["category"]].strip()
        description = None
        if "itemdescription" in positions:
            desc = row[positions["itemdescription"]].strip()
            description = desc or None
        seen.add(name)
        items.append(
            Item(
                name=name,
                carry_on=carry_on,
                check_in=check_in,
                prohibited=prohibited,
                category=category,
                description=description,
            )
        )
    return Catalog(items=tuple(items))


def exact_lookup(catalog: Catalog, query: str) -> Item | None:
    """Match on normalized-name equality."""
    name = normalize_name(query)
    if not name:
        return None
    for item in catalog.items:
        if item.name == name:
            return item
    return None


def partial_matches(catalog: Catalog, query: str) -> list[Item]:
    """Items whose normalized name contains the normalized query, excluding exact matches.

    An empty query matches nothing: substring-of-everything is useless output.
    """
    needle = normalize_name(query)
    if not needle:
        return []
    return [it for it in catalog.items if needle in it.name and it.name != needle]


def item_vector(table: EmbeddingTable, item: Item) -> PhraseVector | None:
    return embed_phrase(table, item.name.split())


def top_similar(catalog: Catalog, table: EmbeddingTable, query: str, n: int) -> list[ScoredItem]:
    """Rank items by cosine similarity to the query phrase vector, descending.

    Ties break by ascending name. Items with no in-vocabulary token are
    skipped; a fully out-of-vocabulary query yields an empty list.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    query_vec = embed_phrase(table, tokenize(query))
    if query_vec is None:
        return []
    scored = []
    for item in catalog.items:
        vec = item_vector(table, item)
        if vec is None:
            continue
        scored.append(ScoredItem(item=item, score=cosine(query_vec.values, vec.values)))
    scored.sort(key=lambda si: (-si.score, si.item.name))
    return scored[:n]


def assign_categories(catalog: Catalog, table: EmbeddingTable, category_labels) -> Catalog:
    """Re-categorize each item to its most-similar label by phrase-vector cosine.

    Items with no phrase vector keep their file-supplied category. Ties are
    broken by ascending label, so assignment is deterministic.
    """
    labels = sorted(set(category_labels))
    if not labels:
        raise ValueError("category label list is empty")
    label_vecs: list[tuple[str, np.ndarray]] = []
    for label in labels:
        vec = embed_phrase(table, tokenize(label))
        if vec is None:
            raise ValueError(f"category label {label!r} has no in-vocabulary token")
        label_vecs.append((label, vec.values))

    updated = []
    for item in catalog.items:
        vec = item_vector(table, item)
        if vec is None:
            updated.append(item)
            continue
        best_label, best_score = None, -2.0
        for label, lvec in label_vecs:
            score = cosine(vec.values, lvec)
            if score > best_score:
                best_label, best_score = label, score
        updated.append(replace(item, category=best_label))
    return Catalog(items=tuple(updated))


def distribution_stats(catalog: Catalog) -> CatalogStats:
    """Yes/no counts per flag, per-category tallies, and the carry-on x check-in cross-tab."""
    carry = {"yes": 0, "no": 0}
    check = {"yes": 0, "no": 0}
    prohib = {"yes": 0, "no": 0}
    by_category: dict[str, int] = {}
    cross: dict[str, int] = {"yes/yes": 0, "yes/no": 0, "no/yes": 0, "no/no": 0}
    prohibited_by_category: dict[str, int] = {}
    for item in catalog.items:
        carry["yes" if item.carry_on else "no"] += 1
        check["yes" if item.check_in else "no"] += 1
        prohib["yes" if item.prohibited else "no"] += 1
        by_category[item.category] = by_category.get(item.category, 0) + 1
        key = f"{'yes' if item.carry_on else 'no'}/{'yes' if item.check_in else 'no'}"
        cross[key] += 1
        if item.prohibited:
            prohibited_by_category[item.category] = prohibited_by_category.get(item.category, 0) + 1
    return CatalogStats(
        total=len(catalog.items),
        carry_on=carry,
        check_in=check,
        prohibited=prohib,
        by_category=by_category,
        carry_on_by_check_in=cross,
        prohibited_by_category=prohibited_by_category,
    )
