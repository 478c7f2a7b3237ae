/** Typed client for the advisory JSON API. The UI never recomputes metrics. */

export interface Item {
  name: string;
  carry_on: boolean;
  check_in: boolean;
  prohibited: boolean;
  category: string;
  description?: string | null;
}

export interface ScoredItem {
  item: Item;
  score: number;
  in_catalog: boolean;
}

export interface Advice {
  query: string;
  exact: Item | null;
  partials: Item[];
  similar: ScoredItem[];
  rule_recommendations: ScoredItem[];
  recorded: boolean;
}

export interface Rule {
  antecedent: string[];
  consequent: string[];
  support: number;
  confidence: number;
  lift: number;
  leverage: number;
  conviction: number | null;
  conviction_infinite: boolean;
}

export interface Session {
  index: number;
  items: string[];
  timestamp: string;
}

export interface SearchResult {
  recorded: boolean;
  session: Session | null;
}

export interface Metrics {
  dataset_label: string;
  rule_count: number;
  mean_support: number;
  max_support: number;
  mean_confidence: number;
  max_confidence: number;
  mean_lift: number;
  max_lift: number;
  mean_leverage: number;
  max_leverage: number;
  mean_conviction: number;
  max_conviction: number;
  infinite_conviction_count: number;
  coverage: number;
}

export interface Constraint {
  airline: string;
  cabin_weight_kg: number | [number, number] | null;
  cabin_dimensions_cm: [number, number, number];
  checkin_allowance: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

async function readJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let code = "error";
    let message = `request failed with status ${response.status}`;
    try {
      const body = (await response.json()) as { error?: { code: string; message: string } };
      if (body.error) {
        code = body.error.code;
        message = body.error.message;
      }
    } catch {
      // non-JSON error body; keep the generic message
    }
    throw new ApiError(response.status, code, message);
  }
  return (await response.json()) as T;
}

export function recommendUrl(
  baseUrl: string,
  query: string,
  n: number,
  record: boolean,
): string {
  const params = new URLSearchParams({ q: query, n: String(n), record: String(record) });
  return `${baseUrl}/api/recommend?${params}`;
}

export class ApiClient {
  constructor(readonly baseUrl: string) {}

  /** Preview lookups pass record=false so keystrokes never pollute history. */
  recommend(
    query: string,
    options: { n?: number; record?: boolean; signal?: AbortSignal } = {},
  ): Promise<Advice> {
    const { n = 5, record = false, signal } = options;
    return fetch(recommendUrl(this.baseUrl, query, n, record), { signal }).then(
      (response) => readJson<Advice>(response),
    );
  }

  item(name: string): Promise<Item> {
    return fetch(`${this.baseUrl}/api/items/${encodeURIComponent(name)}`).then(
      (response) => readJson<Item>(response),
    );
  }

  history(): Promise<Session[]> {
    return fetch(`${this.baseUrl}/api/history`).then((response) => readJson<Session[]>(response));
  }

  commitSearch(items: string[]): Promise<SearchResult> {
    return fetch(`${this.baseUrl}/api/search`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ items }),
    }).then((response) => readJson<SearchResult>(response));
  }

  rules(thresholds: { minSupport?: number; minConfidence?: number } = {}): Promise<Rule[]> {
    const params = new URLSearchParams();
    if (thresholds.minSupport !== undefined) {
      params.set("min_support", String(thresholds.minSupport));
    }
    if (thresholds.minConfidence !== undefined) {
      params.set("min_confidence", String(thresholds.minConfidence));
    }
    const suffix = params.size ? `?${params}` : "";
    return fetch(`${this.baseUrl}/api/rules${suffix}`).then((response) =>
      readJson<Rule[]>(response),
    );
  }

  metrics(): Promise<Metrics> {
    return fetch(`${this.baseUrl}/api/metrics`).then((response) => readJson<Metrics>(response));
  }

  constraints(): Promise<Constraint[]> {
    return fetch(`${this.baseUrl}/api/constraints`).then((response) =>
      readJson<Constraint[]>(response),
    );
  }
}
