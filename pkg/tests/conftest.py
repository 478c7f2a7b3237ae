from pathlib import Path

import pytest

from atrs.catalog import load_catalog
from atrs.embeddings import load_embeddings

DATA_DIR = Path(__file__).parent / "data"
VECTORS_PATH = DATA_DIR / "vectors_16d.vec"
CATALOG_PATH = DATA_DIR / "catalog_fixture.csv"

CATEGORY_LABELS = [
    "aerosol",
    "beverage",
    "book",
    "clothing",
    "electronics",
    "food",
    "instruments",
    "laptop",
    "sharp",
    "toiletries",
]

# F4: the four-session mining fixture; two co-occurring triples and two singletons
F4_TRANSACTIONS = [
    frozenset({"coffee", "ipod", "piano"}),
    frozenset({"coffee", "ipod", "piano"}),
    frozenset({"aerosol"}),
    frozenset({"guitar"}),
]


@pytest.fixture(scope="session")
def vec_table():
    with open(VECTORS_PATH, "r", encoding="utf-8") as fh:
        return load_embeddings(fh)


@pytest.fixture(scope="session")
def catalog():
    with open(CATALOG_PATH, "r", encoding="utf-8", newline="") as fh:
        return load_catalog(fh)


@pytest.fixture()
def f4_transactions():
    return list(F4_TRANSACTIONS)
