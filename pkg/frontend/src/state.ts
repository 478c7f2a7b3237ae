/** View state and the pure helpers that transform it. */

import type { Advice, Metrics, Rule, Session } from "./api.js";

export type RuleSortKey =
  | "antecedent"
  | "consequent"
  | "support"
  | "confidence"
  | "lift"
  | "leverage"
  | "conviction";

export interface RuleSort {
  key: RuleSortKey;
  descending: boolean;
}

export interface ViewState {
  query: string;
  advice: Advice | null;
  history: Session[];
  rules: Rule[];
  ruleSort: RuleSort;
  metrics: Metrics | null;
  comparison: Metrics | null;
  error: string | null;
}

export function initialState(): ViewState {
  return {
    query: "",
    advice: null,
    history: [],
    rules: [],
    ruleSort: { key: "lift", descending: true },
    metrics: null,
    comparison: null,
    error: null,
  };
}

function ruleValue(rule: Rule, key: RuleSortKey): number | string {
  if (key === "antecedent" || key === "consequent") {
    return rule[key].join(";");
  }
  if (key === "conviction") {
    return rule.conviction_infinite ? Number.POSITIVE_INFINITY : (rule.conviction ?? 0);
  }
  return rule[key];
}

/** Stable sort of the rules table by one column; never mutates the input. */
export function sortRules(rules: Rule[], sort: RuleSort): Rule[] {
  const direction = sort.descending ? -1 : 1;
  return rules
    .map((rule, position) => ({ rule, position }))
    .sort((a, b) => {
      const va = ruleValue(a.rule, sort.key);
      const vb = ruleValue(b.rule, sort.key);
      if (va < vb) return -direction;
      if (va > vb) return direction;
      return a.position - b.position;
    })
    .map(({ rule }) => rule);
}

export function toggleSort(current: RuleSort, key: RuleSortKey): RuleSort {
  if (current.key === key) {
    return { key, descending: !current.descending };
  }
  // metric columns start descending (biggest first), name columns ascending
  const descending = key !== "antecedent" && key !== "consequent";
  return { key, descending };
}

/** True when a rule mentions every one of the given items. */
export function ruleMentionsAll(rule: Rule, items: string[]): boolean {
  const mentioned = new Set([...rule.antecedent, ...rule.consequent]);
  return items.every((item) => mentioned.has(item));
}

export interface MetricBar {
  metric: string;
  a: number;
  b: number | null;
  /* bar widths normalized to the larger of the pair, in [0, 1] */
  aShare: number;
  bShare: number;
}

const CHARTED_METRICS: (keyof Metrics & string)[] = [
  "coverage",
  "mean_support",
  "mean_confidence",
  "mean_lift",
  "mean_leverage",
  "mean_conviction",
];

/** Paired bars for the metrics panel; values come straight from the service. */
export function metricBars(metrics: Metrics, comparison: Metrics | null): MetricBar[] {
  return CHARTED_METRICS.map((metric) => {
    const a = metrics[metric] as number;
    const b = comparison ? (comparison[metric] as number) : null;
    const top = Math.max(Math.abs(a), Math.abs(b ?? 0), 1e-12);
    return {
      metric,
      a,
      b,
      aShare: Math.abs(a) / top,
      bShare: b === null ? 0 : Math.abs(b) / top,
    };
  });
}
