"""Aggregate metric summaries over mined rules and the two-dataset comparison."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .mining import AssociationRule


@dataclass(frozen=True)
class EvalSummary:
    """Rule-set aggregates; infinite convictions are counted, never averaged."""

    dataset_label: str
    rule_count: int
    mean_support: float
    max_support: float
    mean_confidence: float
    max_confidence: float
    mean_lift: float
    max_lift: float
    mean_leverage: float
    max_leverage: float
    mean_conviction: float
    max_conviction: float
    infinite_conviction_count: int
    coverage: float

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ComparisonRow:
    metric: str
    value_a: float
    value_b: float
    delta: float


_EMPTY = dict(
    rule_count=0,
    mean_support=0.0,
    max_support=0.0,
    mean_confidence=0.0,
    max_confidence=0.0,
    mean_lift=0.0,
    max_lift=0.0,
    mean_leverage=0.0,
    max_leverage=0.0,
    mean_conviction=0.0,
    max_conviction=0.0,
    infinite_conviction_count=0,
    coverage=0.0,
)


def evaluate(rules, universe, dataset_label: str = "") -> EvalSummary:
    """Mean/max per metric plus coverage: rule-mentioned items over the universe."""
    rules = list(rules)
    universe = list(universe)
    if not rules:
        return EvalSummary(dataset_label=dataset_label, **_EMPTY)

    supports = [r.support for r in rules]
    confidences = [r.confidence for r in rules]
    lifts = [r.lift for r in rules]
    leverages = [r.leverage for r in rules]
    finite_convictions = [r.conviction for r in rules if math.isfinite(r.conviction)]
    infinite_count = len(rules) - len(finite_convictions)

    mentioned: set[str] = set()
    for rule in rules:
        mentioned |= rule.mentioned_items()
    coverage = len(mentioned) / len(universe) if universe else 0.0

    def mean(xs) -> float:
        return sum(xs) / len(xs) if xs else 0.0

    return EvalSummary(
        dataset_label=dataset_label,
        rule_count=len(rules),
        mean_support=mean(supports),
        max_support=max(supports),
        mean_confidence=mean(confidences),
        max_confidence=max(confidences),
        mean_lift=mean(lifts),
        max_lift=max(lifts),
        mean_leverage=mean(leverages),
        max_leverage=max(leverages),
        mean_conviction=mean(finite_convictions),
        max_conviction=max(finite_convictions) if finite_convictions else 0.0,
        infinite_conviction_count=infinite_count,
        coverage=coverage,
    )


COMPARED_METRICS = (
    "rule_count",
    "coverage",
    "mean_support",
    "max_support",
    "mean_confidence",
    "max_confidence",
    "mean_lift",
    "max_lift",
    "mean_leverage",
    "max_leverage",
    "mean_conviction",
    "max_conviction",
    "infinite_conviction_count",
)


def compare(summary_a: EvalSummary, summary_b: EvalSummary) -> list[ComparisonRow]:
    """Paired per-metric rows (a, b, delta) suitable for external plotting."""
    rows = []
    a = summary_a.to_dict()
    b = summary_b.to_dict()
    for metric in COMPARED_METRICS:
        va, vb = float(a[metric]), float(b[metric])
        rows.append(ComparisonRow(metric=metric, value_a=va, value_b=vb, delta=va - vb))
    return rows
