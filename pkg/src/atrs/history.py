"""Timestamped search sessions: the personalization memory and the mining input.

The history CSV schema is exactly index, item columns, timestamp. No
personal identifiers are ever written.
"""

from __future__ import annotations

import csv
import threading
from dataclasses import dataclass, field
from datetime import datetime

from .embeddings import normalize_name

TIMESTAMP_FORMAT = "%Y-%m-%d %H:%M:%S"


class HistoryError(ValueError):
    """Raised for malformed history files or invalid sessions."""


@dataclass(frozen=True)
class SearchSession:
    """One recorded interaction; doubles as a transaction for mining."""

    index: int
    items: tuple[str, ...]
    timestamp: datetime


@dataclass
class HistoryStore:
    """Append-only session log. record_in_catalog controls whether known items are stored."""

    sessions: list[SearchSession] = field(default_factory=list)
    record_in_catalog: bool = False
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.sessions)


def record_search(
    store: HistoryStore, items, now: datetime, in_catalog: bool
) -> SearchSession | None:
    """Append a session unless the search hit the catalog and the store skips those.

    Returns the stored session, or None when the interaction was
    deliberately not persisted.
    """
    normalized = [normalize_name(raw) for raw in items]
    normalized = [n for n in normalized if n]
    if not normalized:
        raise HistoryError("nothing to record: all items empty after normalization")
    if in_catalog and not store.record_in_catalog:
        return None
    with store._lock:
        next_index = store.sessions[-1].index + 1 if store.sessions else 0
        session = SearchSession(
            index=next_index,
            items=tuple(normalized),
            timestamp=now.replace(microsecond=0),
        )
        store.sessions.append(session)
    return session


def save_history(store: HistoryStore, sink) -> None:
    """Write header index,item_1..item_K,timestamp with blank padding for short sessions."""
    width = max((len(s.items) for s in store.sessions), default=1)
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(["index"] + [f"item_{i}" for i in range(1, width + 1)] + ["timestamp"])
    for session in store.sessions:
        padded = list(session.items) + [""] * (width - len(session.items))
        writer.writerow([session.index] + padded + [session.timestamp.strftime(TIMESTAMP_FORMAT)])


def load_history(source, record_in_catalog: bool = False) -> HistoryStore:
    """Read a history CSV back into a store.

    Cells between the index and the trailing timestamp are items; blank
    cells (padding on short sessions) are ignored.
    """
    reader = csv.reader(source)
    try:
        header = next(reader)
    except StopIteration:
        raise HistoryError("empty history file: missing header") from None
    cols = [h.strip().lower() for h in header]
    if not cols or cols[0] != "index" or cols[-1] != "timestamp":
        raise HistoryError(
            "malformed history header: expected 'index,item_1,...,timestamp'"
        )

    sessions: list[SearchSession] = []
    for row_num, row in enumerate(reader, start=2):
        if not any(cell.strip() for cell in row):
            continue
        if len(row) < 3:
            raise HistoryError(f"row {row_num}: expected index, at least one item, timestamp")
        try:
            index = int(row[0])
        except ValueError:
            raise HistoryError(f"row {row_num}: unparseable index {row[0]!r}") from None
        try:
            timestamp = datetime.strptime(row[-1].strip(), TIMESTAMP_FORMAT)
        except ValueError:
            raise HistoryError(f"row {row_num}: malformed timestamp {row[-1]!r}") from None
        items = tuple(cell.strip() for cell in row[1:-1] if cell.strip())
        if not items:
            raise HistoryError(f"row {row_num}: session has no items")
        sessions.append(SearchSession(index=index, items=items, timestamp=timestamp))

    indices = [s.index for s in sessions]
    if any(b <= a for a, b in zip(indices, indices[1:])):
        raise HistoryError("history indices must be strictly increasing")
    return HistoryStore(sessions=sessions, record_in_catalog=record_in_catalog)


def to_transactions(store: HistoryStore) -> tuple[list[frozenset[str]], list[str]]:
    """One item set per session plus the sorted universe of distinct items."""
    transactions = [frozenset(s.items) for s in store.sessions if s.items]
    universe = sorted({item for t in transactions for item in t})
    return transactions, universe
