/** DOM rendering. Everything shown comes verbatim from the service payload. */

import type { Advice, Constraint, Item, Metrics, Rule, ScoredItem, Session } from "./api.js";
import { badgeClass, verdictBadges } from "./badges.js";
import { metricBars, type RuleSort, type RuleSortKey } from "./state.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderBadges(item: Item): HTMLElement {
  const wrap = el("span", "badges");
  for (const badge of verdictBadges(item)) {
    wrap.appendChild(el("span", badgeClass(badge.kind), badge.label));
  }
  return wrap;
}

function renderScoredList(title: string, entries: ScoredItem[]): HTMLElement {
  const section = el("div", "scored-list");
  section.appendChild(el("h3", undefined, title));
  if (entries.length === 0) {
    section.appendChild(el("p", "empty-state", "no suggestions"));
    return section;
  }
  const list = el("ol");
  for (const entry of entries) {
    const row = el("li", "scored-item");
    row.appendChild(el("span", "item-name", entry.item.name));
    row.appendChild(el("span", "score", entry.score.toFixed(4)));
    if (entry.in_catalog) {
      row.appendChild(renderBadges(entry.item));
    } else {
      row.appendChild(el("span", "badge badge-muted", "NOT IN CATALOG"));
    }
    list.appendChild(row);
  }
  section.appendChild(list);
  return section;
}

export function renderAdvice(advice: Advice | null): HTMLElement {
  const panel = el("div", "advice-panel");
  panel.id = "advice";
  if (advice === null) {
    panel.appendChild(el("p", "empty-state", "type an item to check"));
    return panel;
  }
  if (advice.exact) {
    const verdict = el("div", "verdict");
    verdict.appendChild(el("span", "item-name", advice.exact.name));
    verdict.appendChild(renderBadges(advice.exact));
    if (advice.exact.category) {
      verdict.appendChild(el("span", "category", advice.exact.category));
    }
    panel.appendChild(verdict);
  } else {
    panel.appendChild(el("p", "no-exact", `no exact match for "${advice.query}"`));
  }
  if (advice.partials.length > 0) {
    const partials = el("p", "partials");
    partials.textContent = `partial matches: ${advice.partials.map((p) => p.name).join(", ")}`;
    panel.appendChild(partials);
  }
  panel.appendChild(renderScoredList("similar items", advice.similar));
  panel.appendChild(renderScoredList("searched together with", advice.rule_recommendations));
  return panel;
}

export function renderHistory(sessions: Session[]): HTMLElement {
  const panel = el("div", "history-panel");
  panel.id = "history";
  panel.appendChild(el("h3", undefined, `history (${sessions.length})`));
  if (sessions.length === 0) {
    panel.appendChild(el("p", "empty-state", "nothing recorded yet"));
    return panel;
  }
  const list = el("ul");
  for (const session of [...sessions].reverse()) {
    list.appendChild(
      el("li", "session", `#${session.index} ${session.items.join(", ")} @ ${session.timestamp}`),
    );
  }
  panel.appendChild(list);
  return panel;
}

const RULE_COLUMNS: { key: RuleSortKey; label: string }[] = [
  { key: "antecedent", label: "if searched" },
  { key: "consequent", label: "also searched" },
  { key: "support", label: "support" },
  { key: "confidence", label: "confidence" },
  { key: "lift", label: "lift" },
  { key: "leverage", label: "leverage" },
  { key: "conviction", label: "conviction" },
];

export function renderRulesTable(
  rules: Rule[],
  sort: RuleSort,
  onSort: (key: RuleSortKey) => void,
): HTMLElement {
  const panel = el("div", "rules-panel");
  panel.id = "rules";
  panel.appendChild(el("h3", undefined, `rules (${rules.length})`));
  if (rules.length === 0) {
    panel.appendChild(el("p", "empty-state", "no rules mined yet"));
    return panel;
  }
  const table = el("table", "rules-table");
  const head = el("tr");
  for (const column of RULE_COLUMNS) {
    const cell = el("th", undefined, column.label);
    cell.dataset.key = column.key;
    if (sort.key === column.key) {
      cell.classList.add("sorted");
      cell.textContent += sort.descending ? " ↓" : " ↑";
    }
    cell.addEventListener("click", () => onSort(column.key));
    head.appendChild(cell);
  }
  table.appendChild(head);
  for (const rule of rules) {
    const row = el("tr", "rule-row");
    row.appendChild(el("td", undefined, rule.antecedent.join(", ")));
    row.appendChild(el("td", undefined, rule.consequent.join(", ")));
    row.appendChild(el("td", undefined, rule.support.toFixed(4)));
    row.appendChild(el("td", undefined, rule.confidence.toFixed(4)));
    row.appendChild(el("td", undefined, rule.lift.toFixed(4)));
    row.appendChild(el("td", undefined, rule.leverage.toFixed(4)));
    row.appendChild(
      el("td", undefined, rule.conviction_infinite ? "∞" : (rule.conviction ?? 0).toFixed(4)),
    );
    table.appendChild(row);
  }
  panel.appendChild(table);
  return panel;
}

export function renderMetrics(metrics: Metrics | null, comparison: Metrics | null): HTMLElement {
  const panel = el("div", "metrics-panel");
  panel.id = "metrics";
  panel.appendChild(el("h3", undefined, "metrics"));
  if (metrics === null) {
    panel.appendChild(el("p", "empty-state", "no metrics yet"));
    return panel;
  }
  const caption = comparison
    ? `${metrics.dataset_label} vs ${comparison.dataset_label}`
    : metrics.dataset_label;
  panel.appendChild(el("p", "metrics-caption", caption));
  const chart = el("div", "bar-chart");
  for (const bar of metricBars(metrics, comparison)) {
    const row = el("div", "bar-row");
    row.appendChild(el("span", "bar-label", bar.metric));
    const barsWrap = el("div", "bars");
    const barA = el("div", "bar bar-a");
    barA.style.width = `${(bar.aShare * 100).toFixed(1)}%`;
    barA.title = String(bar.a);
    barsWrap.appendChild(barA);
    if (bar.b !== null) {
      const barB = el("div", "bar bar-b");
      barB.style.width = `${(bar.bShare * 100).toFixed(1)}%`;
      barB.title = String(bar.b);
      barsWrap.appendChild(barB);
    }
    row.appendChild(barsWrap);
    row.appendChild(
      el("span", "bar-values", bar.b === null ? bar.a.toFixed(4) : `${bar.a.toFixed(4)} / ${bar.b.toFixed(4)}`),
    );
    chart.appendChild(row);
  }
  panel.appendChild(chart);
  return panel;
}

function describeWeight(weight: Constraint["cabin_weight_kg"]): string {
  if (weight === null) return "no published cap";
  if (Array.isArray(weight)) return `${weight[0]}–${weight[1]} kg`;
  return `up to ${weight} kg`;
}

export function renderConstraints(constraints: Constraint[]): HTMLElement {
  const panel = el("div", "constraints-panel");
  panel.id = "constraints";
  panel.appendChild(el("h3", undefined, "airline baggage allowances"));
  const table = el("table", "constraints-table");
  const head = el("tr");
  for (const label of ["airline", "cabin weight", "cabin dimensions (cm)", "check-in allowance"]) {
    head.appendChild(el("th", undefined, label));
  }
  table.appendChild(head);
  for (const constraint of constraints) {
    const row = el("tr");
    row.appendChild(el("td", undefined, constraint.airline));
    row.appendChild(el("td", undefined, describeWeight(constraint.cabin_weight_kg)));
    row.appendChild(el("td", undefined, constraint.cabin_dimensions_cm.join(" x ")));
    row.appendChild(el("td", undefined, constraint.checkin_allowance));
    table.appendChild(row);
  }
  panel.appendChild(table);
  return panel;
}
