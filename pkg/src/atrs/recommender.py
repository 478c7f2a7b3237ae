"""The query pipeline: catalog answers, embedding top-N, and rule-driven suggestions."""

from __future__ import annotations

import sys
import threading
from dataclasses import dataclass, field, replace
from datetime import datetime
from pathlib import Path

from .catalog import Catalog, Item, ScoredItem, exact_lookup, load_catalog, partial_matches, top_similar
from .embeddings import EmbeddingTable, cosine, embed_phrase, load_embeddings, normalize_name, tokenize
from .history import HistoryStore, load_history, record_search, save_history, to_transactions
from .mining import AssociationRule, MiningConfig, apriori, generate_rules


@dataclass(frozen=True)
class RecommenderConfig:
    top_n: int = 5
    mining: MiningConfig = field(default_factory=MiningConfig)
    remine_every: int = 1

    def __post_init__(self) -> None:
        if self.top_n < 1:
            raise ValueError(f"top_n must be >= 1, got {self.top_n}")
        if self.remine_every < 1:
            raise ValueError(f"remine_every must be >= 1, got {self.remine_every}")


@dataclass(frozen=True)
class Advice:
    """Everything the pipeline has to say about one query."""

    query: str
    exact: Item | None
    partials: list[Item]
    similar: list[ScoredItem]
    rule_recommendations: list[ScoredItem]
    recorded: bool


def _rule_candidates(rules: list[AssociationRule], anchors: set[str]) -> set[str]:
    """Items from rules touching an anchor; all rule items when nothing intersects."""
    touched: set[str] = set()
    everything: set[str] = set()
    for rule in rules:
        mentioned = rule.mentioned_items()
        everything |= mentioned
        if mentioned & anchors:
            touched |= mentioned
    return touched or everything


def rank_rule_recommendations(
    query: str,
    catalog: Catalog,
    table: EmbeddingTable,
    rules: list[AssociationRule],
    anchors: set[str],
    top_n: int,
) -> list[ScoredItem]:
    """Rank rule-mentioned items by cosine to the query vector, best first.

    Candidates that are not catalog items (searches for unknown items feed
    the history, so rules can name them) are returned with neutral verdict
    flags and an empty category.
    """
    query_vec = embed_phrase(table, tokenize(query))
    if query_vec is None:
        return []
    scored: list[ScoredItem] = []
    for name in _rule_candidates(rules, anchors):
        vec = embed_phrase(table, name.split())
        if vec is None:
            continue
        item = exact_lookup(catalog, name) or Item(
            name=name, carry_on=False, check_in=False, prohibited=False, category=""
        )
        scored.append(ScoredItem(item=item, score=cosine(query_vec.values, vec.values)))
    scored.sort(key=lambda si: (-si.score, si.item.name))
    return scored[:top_n]


def advise(
    query: str,
    catalog: Catalog,
    table: EmbeddingTable,
    history: HistoryStore,
    rules: list[AssociationRule],
    config: RecommenderConfig | None = None,
    *,
    now: datetime | None = None,
    record: bool = True,
) -> Advice:
    """Answer one query: exact verdict, partials, similar items, rule suggestions.

    Degraded inputs degrade output fields independently; an all-OOV query
    yields empty similar and rule_recommendations but still resolves exact
    and partial matches. The query is recorded to history per the store's
    policy unless record is False.
    """
    config = config or RecommenderConfig()
    exact = exact_lookup(catalog, query)
    partials = partial_matches(catalog, query)
    similar = top_similar(catalog, table, query, config.top_n)

    anchors = {item for session in history.sessions for item in session.items}
    if exact is not None:
        anchors.add(exact.name)
    rule_recommendations = rank_rule_recommendations(
        query, catalog, table, rules, anchors, config.top_n
    )

    recorded = False
    if record and normalize_name(query):
        session = record_search(
            history,
            [query],
            now=now or datetime.now(),
            in_catalog=exact is not None,
        )
        recorded = session is not None
    return Advice(
        query=query,
        exact=exact,
        partials=partials,
        similar=similar,
        rule_recommendations=rule_recommendations,
        recorded=recorded,
    )


class Engine:
    """Owns the loaded catalog, embeddings, history, and the current rule snapshot.

    Mining re-runs after every `remine_every` history appends; the rule list
    is swapped atomically so concurrent readers always see a complete
    snapshot. If a history path is set, every append is persisted.
    """

    def __init__(
        self,
        catalog: Catalog,
        table: EmbeddingTable,
        store: HistoryStore,
        config: RecommenderConfig | None = None,
        history_path: Path | str | None = None,
        clock=None,
    ) -> None:
        self.catalog = catalog
        self.table = table
        self.store = store
        self.config = config or RecommenderConfig()
        self.history_path = Path(history_path) if history_path else None
        self.clock = clock or datetime.now
        self.rules: list[AssociationRule] = []
        self.universe: list[str] = []
        self._appends_since_mine = 0
        self._write_lock = threading.Lock()
        self.refresh_rules()

    def refresh_rules(self) -> None:
        transactions, universe = to_transactions(self.store)
        if transactions:
            itemsets = apriori(transactions, self.config.mining)
            rules = generate_rules(itemsets, transactions, self.config.mining)
        else:
            rules = []
        self.rules = rules
        self.universe = universe
        self._appends_since_mine = 0

    def mine_with(self, mining: MiningConfig) -> list[AssociationRule]:
        """One-off mining pass over the current history with explicit thresholds."""
        transactions, _ = to_transactions(self.store)
        if not transactions:
            return []
        return generate_rules(apriori(transactions, mining), transactions, mining)

    def persist(self) -> None:
        if self.history_path is None:
            return
        if not self.store.sessions and not self.history_path.exists():
            # nothing recorded and no file to refresh: leave the filesystem alone
            return
        with open(self.history_path, "w", encoding="utf-8", newline="") as fh:
            save_history(self.store, fh)

    def _after_append(self) -> None:
        # one writer at a time: persist and the snapshot swap stay ordered
        with self._write_lock:
            self.persist()
            self._appends_since_mine += 1
            if self._appends_since_mine >= self.config.remine_every:
                self.refresh_rules()

    def advise(self, query: str, record: bool = True, top_n: int | None = None) -> Advice:
        config = self.config
        if top_n is not None and top_n != config.top_n:
            config = replace(config, top_n=top_n)
        advice = advise(
            query,
            self.catalog,
            self.table,
            self.store,
            self.rules,
            config,
            now=self.clock(),
            record=record,
        )
        if advice.recorded:
            self._after_append()
        return advice

    def record_items(self, items) -> object:
        """Record a multi-item session (service POST path); returns the session or None."""
        known = all(exact_lookup(self.catalog, item) is not None for item in items)
        session = record_search(self.store, items, now=self.clock(), in_catalog=known)
        if session is not None:
            self._after_append()
        return session


def load_engine(
    catalog_path: Path | str,
    embeddings_path: Path | str,
    history_path: Path | str | None = None,
    config: RecommenderConfig | None = None,
    record_in_catalog: bool = False,
    clock=None,
) -> Engine:
    """Build an Engine from file paths; a missing history file starts an empty store."""
    with open(catalog_path, "r", encoding="utf-8", newline="") as fh:
        catalog = load_catalog(fh)
    with open(embeddings_path, "r", encoding="utf-8") as fh:
        table = load_embeddings(fh)
    store = HistoryStore(record_in_catalog=record_in_catalog)
    if history_path and Path(history_path).exists():
        with open(history_path, "r", encoding="utf-8", newline="") as fh:
            store = load_history(fh, record_in_catalog=record_in_catalog)
    return Engine(catalog, table, store, config, history_path=history_path, clock=clock)


def _format_flag(value: bool) -> str:
    return "yes" if value else "no"


def format_advice(advice: Advice) -> str:
    """Human-readable advice block for the REPL and one-shot CLI."""
    lines: list[str] = []
    if advice.exact is not None:
        item = advice.exact
        lines.append(item.name)
        lines.append(
            f"  carry on: {_format_flag(item.carry_on)} | "
            f"check in: {_format_flag(item.check_in)} | "
            f"prohibited: {_format_flag(item.prohibited)}"
        )
        if item.category:
            lines.append(f"  category: {item.category}")
    else:
        lines.append(f"no exact match for {advice.query!r}")
    if advice.partials:
        lines.append("partial matches: " + ", ".join(it.name for it in advice.partials))
    # prohibited items are never listed without their verdict
    for title, scored in (
        ("similar items:", advice.similar),
        ("searched together with:", advice.rule_recommendations),
    ):
        if not scored:
            continue
        lines.append(title)
        for rank, si in enumerate(scored, start=1):
            marker = "  [prohibited]" if si.item.prohibited else ""
            lines.append(f"  {rank}. {si.item.name}  {si.score:.4f}{marker}")
    return "\n".join(lines)


def run_repl(
    config: RecommenderConfig | None = None,
    catalog_path: Path | str = "catalog.csv",
    embeddings_path: Path | str = "vectors.vec",
    history_path: Path | str = "user_searches.csv",
    record_in_catalog: bool = False,
    stdin=None,
    stdout=None,
) -> int:
    """Interactive loop: one query per line until the literal input 'exit'.

    History persists on every append and again on exit. Unreadable catalog
    or embedding files abort with a nonzero status and a diagnostic.
    """
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    try:
        engine = load_engine(
            catalog_path,
            embeddings_path,
            history_path,
            config,
            record_in_catalog=record_in_catalog,
        )
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    interactive = stdin.isatty() if hasattr(stdin, "isatty") else False
    while True:
        if interactive:
            stdout.write("item> ")
            stdout.flush()
        line = stdin.readline()
        if not line:
            break
        query = line.strip()
        if not query:
            continue
        if query == "exit":
            break
        advice = engine.advise(query)
        print(format_advice(advice), file=stdout)
        print("", file=stdout)
    engine.persist()
    return 0
