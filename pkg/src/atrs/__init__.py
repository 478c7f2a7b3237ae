"""Air-travel baggage advisory engine.

Answers "can I carry item X, and what goes with it?" by combining
word-embedding similarity over a typed item catalog with association rules
mined from accumulated search history.
"""

from .catalog import Catalog, CatalogStats, Item, ScoredItem
from .embeddings import EmbeddingTable, PhraseVector
from .evaluation import EvalSummary
from .history import HistoryStore, SearchSession
from .mining import AssociationRule, FrequentItemset, MiningConfig
from .recommender import Advice, Engine, RecommenderConfig

__version__ = "0.1.0"

__all__ = [
    "Advice",
    "AssociationRule",
    "Catalog",
    "CatalogStats",
    "EmbeddingTable",
    "Engine",
    "EvalSummary",
    "FrequentItemset",
    "HistoryStore",
    "Item",
    "MiningConfig",
    "PhraseVector",
    "RecommenderConfig",
    "ScoredItem",
    "SearchSession",
    "__version__",
]
