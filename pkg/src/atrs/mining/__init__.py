from .core import (
    AssociationRule,
    FrequentItemset,
    MiningConfig,
    apriori,
    generate_rules,
    load_basket_transactions,
    one_hot,
    read_rules_csv,
    support,
    write_rules_csv,
)
from .kernels import KERNEL_NAME

__all__ = [
    "AssociationRule",
    "FrequentItemset",
    "MiningConfig",
    "apriori",
    "generate_rules",
    "load_basket_transactions",
    "one_hot",
    "read_rules_csv",
    "support",
    "write_rules_csv",
    "KERNEL_NAME",
]
