"""Apriori frequent-itemset mining and association-rule generation with the full metric suite."""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .kernels import count_candidates

DEFAULT_MIN_SUPPORT = 0.1
DEFAULT_MIN_CONFIDENCE = 0.5
DEFAULT_CANDIDATE_WARN_THRESHOLD = 1_000_000


@dataclass(frozen=True)
class MiningConfig:
    min_support: float = DEFAULT_MIN_SUPPORT
    min_confidence: float = DEFAULT_MIN_CONFIDENCE
    max_itemset_size: int | None = None
    candidate_warn_threshold: int = DEFAULT_CANDIDATE_WARN_THRESHOLD

    def __post_init__(self) -> None:
        if not 0.0 < self.min_support <= 1.0:
            raise ValueError(f"min_support must be in (0, 1], got {self.min_support}")
        if not 0.0 < self.min_confidence <= 1.0:
            raise ValueError(f"min_confidence must be in (0, 1], got {self.min_confidence}")
        if self.max_itemset_size is not None and self.max_itemset_size < 1:
            raise ValueError(f"max_itemset_size must be >= 1, got {self.max_itemset_size}")


@dataclass(frozen=True)
class FrequentItemset:
    items: frozenset[str]
    support: float


@dataclass(frozen=True)
class AssociationRule:
    """Antecedent -> consequent with support, confidence, lift, leverage, conviction.

    conviction is math.inf when confidence is exactly 1.
    """

    antecedent: frozenset[str]
    consequent: frozenset[str]
    support: float
    confidence: float
    lift: float
    leverage: float
    conviction: float

    def mentioned_items(self) -> frozenset[str]:
        return self.antecedent | self.consequent


def one_hot(transactions, universe) -> np.ndarray:
    """Boolean matrix: cell [r][c] is True iff transaction r contains universe[c]."""
    universe = list(universe)
    if sorted(set(universe)) != universe:
        raise ValueError("universe must be sorted and duplicate-free")
    index = {item: i for i, item in enumerate(universe)}
    matrix = np.zeros((len(transactions), len(universe)), dtype=bool)
    for r, transaction in enumerate(transactions):
        for item in transaction:
            if item not in index:
                raise ValueError(f"transaction {r} contains item {item!r} not in universe")
            matrix[r, index[item]] = True
    return matrix


def support(transactions, itemset) -> float:
    """Proportion of transactions containing the itemset; the empty set is in every one."""
    transactions = list(transactions)
    if not transactions:
        raise ValueError("support is undefined over an empty transaction list")
    target = frozenset(itemset)
    hits = sum(1 for t in transactions if target <= frozenset(t))
    return hits / len(transactions)


def _join_candidates(frequent_prev: list[tuple[int, ...]], k: int) -> list[tuple[int, ...]]:
    """Join frequent (k-1)-sets sharing a (k-2)-prefix; prune candidates with an infrequent subset."""
    prev_set = set(frequent_prev)
    candidates: list[tuple[int, ...]] = []
    n = len(frequent_prev)
    start = 0
    while start < n:
        prefix = frequent_prev[start][:-1]
        end = start + 1
        while end < n and frequent_prev[end][:-1] == prefix:
            end += 1
        for a in range(start, end):
            for b in range(a + 1, end):
                cand = frequent_prev[a] + (frequent_prev[b][-1],)
                if all(cand[:m] + cand[m + 1 :] in prev_set for m in range(k)):
                    candidates.append(cand)
        start = end
    return candidates


def apriori(transactions, config: MiningConfig | None = None) -> list[FrequentItemset]:
    """Level-wise Apriori over the transactions.

    Returns exactly the itemsets whose support meets min_support, capped at
    max_itemset_size, sorted by (size, lexicographic items). Candidate
    generation joins frequent (k-1)-sets on a shared (k-2)-prefix under
    lexicographic item order and prunes any candidate with an infrequent
    (k-1)-subset, so the downward-closure property is exploited at every
    level. A warning fires once if a level's candidate count passes the
    configured guardrail threshold.
    """
    config = config or MiningConfig()
    txs = [frozenset(t) for t in transactions]
    if not txs:
        raise ValueError("apriori requires at least one transaction")
    n = len(txs)

    universe = sorted({item for t in txs for item in t})
    index = {item: i for i, item in enumerate(universe)}
    rows = [frozenset(index[item] for item in t) for t in txs]

    singles = [(i,) for i in range(len(universe))]
    counts = count_candidates(rows, singles, len(universe))
    result: list[FrequentItemset] = []
    frequent: list[tuple[int, ...]] = []
    support_by_set: dict[tuple[int, ...], float] = {}
    for cand, count in zip(singles, counts):
        supp = count / n
        if supp >= config.min_support:
            frequent.append(cand)
            support_by_set[cand] = supp

    warned = False
    k = 2
    while frequent and (config.max_itemset_size is None or k <= config.max_itemset_size):
        candidates = _join_candidates(frequent, k)
        if not candidates:
            break
        if not warned and len(candidates) > config.candidate_warn_threshold:
            warnings.warn(
                f"{len(candidates)} candidate itemsets at size {k} exceed the "
                f"guardrail threshold of {config.candidate_warn_threshold}; "
                "consider raising min_support or capping max_itemset_size",
                RuntimeWarning,
                stacklevel=2,
            )
            warned = True
        counts = count_candidates(rows, candidates, len(universe))
        frequent = []
        for cand, count in zip(candidates, counts):
            supp = count / n
            if supp >= config.min_support:
                frequent.append(cand)
                support_by_set[cand] = supp
        k += 1

    for cand in sorted(support_by_set, key=lambda c: (len(c), c)):
        result.append(
            FrequentItemset(
                items=frozenset(universe[i] for i in cand),
                support=support_by_set[cand],
            )
        )
    return result


def generate_rules(
    itemsets, transactions, config: MiningConfig | None = None
) -> list[AssociationRule]:
    """Every antecedent/consequent split of every frequent itemset, filtered by min_confidence.

    confidence = supp(A u C) / supp(A); lift = confidence / supp(C);
    leverage = supp(A u C) - supp(A) * supp(C); conviction =
    (1 - supp(C)) / (1 - confidence), infinite when confidence is 1.
    Output is sorted by (lift desc, confidence desc, antecedent, consequent).
    """
    config = config or MiningConfig()
    itemsets = list(itemsets)
    supports: dict[frozenset[str], float] = {fs.items: fs.support for fs in itemsets}
    txs = [frozenset(t) for t in transactions]

    def support_of(s: frozenset[str]) -> float:
        if s in supports:
            return supports[s]
        # only reachable when itemsets did not come from apriori on these transactions
        if not txs:
            raise ValueError(f"support of {set(s)!r} unknown and no transactions given")
        value = sum(1 for t in txs if s <= t) / len(txs)
        supports[s] = value
        return value

    rules: list[AssociationRule] = []
    for fs in itemsets:
        if len(fs.items) < 2:
            continue
        members = sorted(fs.items)
        for size in range(1, len(members)):
            for antecedent_items in combinations(members, size):
                antecedent = frozenset(antecedent_items)
                consequent = fs.items - antecedent
                supp_a = support_of(antecedent)
                supp_c = support_of(consequent)
                confidence = fs.support / supp_a
                if confidence < config.min_confidence:
                    continue
                lift = confidence / supp_c
                leverage = fs.support - supp_a * supp_c
                if confidence >= 1.0:
                    conviction = math.inf
                else:
                    conviction = (1.0 - supp_c) / (1.0 - confidence)
                rules.append(
                    AssociationRule(
                        antecedent=antecedent,
                        consequent=consequent,
                        support=fs.support,
                        confidence=confidence,
                        lift=lift,
                        leverage=leverage,
                        conviction=conviction,
                    )
                )
    rules.sort(
        key=lambda r: (-r.lift, -r.confidence, sorted(r.antecedent), sorted(r.consequent))
    )
    return rules


def load_basket_transactions(source) -> tuple[list[frozenset[str]], list[str]]:
    """Headerless transactions CSV: one transaction per row, items as cells.

    Blank cells and blank rows are skipped. Returns the transactions and the
    sorted item universe.
    """
    transactions: list[frozenset[str]] = []
    for row in csv.reader(source):
        items = frozenset(cell.strip() for cell in row if cell.strip())
        if items:
            transactions.append(items)
    universe = sorted({item for t in transactions for item in t})
    return transactions, universe


RULES_CSV_HEADER = [
    "antecedent",
    "consequent",
    "support",
    "confidence",
    "lift",
    "leverage",
    "conviction",
]


def write_rules_csv(rules, sink) -> None:
    """Rules CSV: items ';'-joined, one rule per row; empty conviction cell means +inf."""
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(RULES_CSV_HEADER)
    for rule in rules:
        writer.writerow(
            [
                ";".join(sorted(rule.antecedent)),
                ";".join(sorted(rule.consequent)),
                repr(rule.support),
                repr(rule.confidence),
                repr(rule.lift),
                repr(rule.leverage),
                "" if math.isinf(rule.conviction) else repr(rule.conviction),
            ]
        )


def read_rules_csv(source) -> list[AssociationRule]:
    reader = csv.reader(source)
    header = next(reader, None)
    if header is None or [h.strip().lower() for h in header] != RULES_CSV_HEADER:
        raise ValueError(f"malformed rules CSV header: expected {','.join(RULES_CSV_HEADER)}")
    rules = []
    for row_num, row in enumerate(reader, start=2):
        if not any(cell.strip() for cell in row):
            continue
        if len(row) != len(RULES_CSV_HEADER):
            raise ValueError(f"rules CSV row {row_num}: expected {len(RULES_CSV_HEADER)} cells")
        antecedent = frozenset(x for x in row[0].split(";") if x)
        consequent = frozenset(x for x in row[1].split(";") if x)
        if not antecedent or not consequent:
            raise ValueError(f"rules CSV row {row_num}: empty antecedent or consequent")
        conviction = math.inf if row[6].strip() == "" else float(row[6])
        rules.append(
            AssociationRule(
                antecedent=antecedent,
                consequent=consequent,
                support=float(row[2]),
                confidence=float(row[3]),
                lift=float(row[4]),
                leverage=float(row[5]),
                conviction=conviction,
            )
        )
    return rules
